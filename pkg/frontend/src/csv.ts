import { readFileSync } from "node:fs";
import Papa from "papaparse";

/** Raised when an input file or column the figure needs is absent. */
export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface Table {
  meta: Record<string, string>;
  columns: string[];
  rows: Record<string, unknown>[];
}

/** Parse a simulator CSV: leading `# key: value` metadata, then a header row. */
export function parseTable(text: string): Table {
  const meta: Record<string, string> = {};
  const lines = text.split(/\r?\n/);
  let body = 0;
  for (; body < lines.length; body++) {
    const line = lines[body];
    if (!line.startsWith("#")) break;
    const sep = line.indexOf(": ");
    if (sep > 0) meta[line.slice(1, sep).trim()] = line.slice(sep + 2);
  }
  const parsed = Papa.parse<Record<string, unknown>>(lines.slice(body).join("\n"), {
    header: true,
    skipEmptyLines: true,
  });
  const columns = parsed.meta.fields ?? [];
  return { meta, columns, rows: parsed.data };
}

export function readTable(path: string): Table {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new SchemaError(`missing input file: ${path}`);
  }
  return parseTable(text);
}

export function requireColumns(table: Table, names: string[], path: string): void {
  for (const name of names) {
    if (!table.columns.includes(name)) {
      throw new SchemaError(`missing column "${name}" in ${path}`);
    }
  }
}

/** Numeric view of one column; non-numeric cells become NaN. */
export function column(table: Table, name: string): number[] {
  return table.rows.map((row) => Number(row[name]));
}

/** Column names matching a prefix followed by an integer, in index order. */
export function indexedColumns(table: Table, prefix: string): string[] {
  const hits: [number, string][] = [];
  for (const name of table.columns) {
    if (!name.startsWith(prefix)) continue;
    const tail = name.slice(prefix.length);
    if (/^\d+$/.test(tail)) hits.push([Number(tail), name]);
  }
  hits.sort((a, b) => a[0] - b[0]);
  return hits.map(([, name]) => name);
}

/** Metadata value as a finite number, or undefined when absent or non-numeric. */
export function metaNumber(table: Table, key: string): number | undefined {
  const raw = table.meta[key];
  if (raw === undefined) return undefined;
  const value = Number(raw);
  return Number.isFinite(value) ? value : undefined;
}
