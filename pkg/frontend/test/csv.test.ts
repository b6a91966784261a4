import { describe, expect, it } from "vitest";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import {
  column,
  indexedColumns,
  metaNumber,
  parseTable,
  readTable,
  requireColumns,
  SchemaError,
} from "../src/csv.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const SAMPLE = `# scenario: fig2
# t_A: 0.5
# points: not located (never rises)
t,D_S,D_E_1,D_E_2,D_E_10
0.0,1.0,0.1,0.2,0.3
0.5,nan,0.2,0.3,0.4
`;

describe("parseTable", () => {
  it("splits metadata from the column table", () => {
    const table = parseTable(SAMPLE);
    expect(table.meta.scenario).toBe("fig2");
    expect(table.meta.t_A).toBe("0.5");
    expect(table.meta.points).toBe("not located (never rises)");
    expect(table.columns).toEqual(["t", "D_S", "D_E_1", "D_E_2", "D_E_10"]);
    expect(table.rows).toHaveLength(2);
  });

  it("reads columns as numbers with nan preserved", () => {
    const table = parseTable(SAMPLE);
    expect(column(table, "t")).toEqual([0.0, 0.5]);
    const ds = column(table, "D_S");
    expect(ds[0]).toBe(1.0);
    expect(Number.isNaN(ds[1])).toBe(true);
  });

  it("orders indexed columns numerically", () => {
    const table = parseTable(SAMPLE);
    expect(indexedColumns(table, "D_E_")).toEqual(["D_E_1", "D_E_2", "D_E_10"]);
    expect(indexedColumns(table, "I_F_")).toEqual([]);
  });

  it("exposes numeric metadata only when it parses", () => {
    const table = parseTable(SAMPLE);
    expect(metaNumber(table, "t_A")).toBe(0.5);
    expect(metaNumber(table, "points")).toBeUndefined();
    expect(metaNumber(table, "t_B")).toBeUndefined();
  });
});

describe("requireColumns", () => {
  it("names the missing column and file", () => {
    const table = parseTable(SAMPLE);
    expect(() => requireColumns(table, ["t", "sigma_E"], "x.csv")).toThrow(SchemaError);
    expect(() => requireColumns(table, ["t", "sigma_E"], "x.csv")).toThrow(/"sigma_E".*x\.csv/);
  });

  it("accepts present columns", () => {
    const table = parseTable(SAMPLE);
    expect(() => requireColumns(table, ["t", "D_S"], "x.csv")).not.toThrow();
  });
});

describe("readTable", () => {
  it("reads a fixture file", () => {
    const table = readTable(join(FIXTURES, "run", "fig2.csv"));
    expect(table.meta.scenario).toBe("fig2");
    expect(table.rows).toHaveLength(5);
  });

  it("reports a missing file as a schema problem", () => {
    expect(() => readTable(join(FIXTURES, "nope.csv"))).toThrow(SchemaError);
    expect(() => readTable(join(FIXTURES, "nope.csv"))).toThrow(/nope\.csv/);
  });
});
