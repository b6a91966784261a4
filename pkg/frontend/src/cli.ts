#!/usr/bin/env node
import { mkdirSync, realpathSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";
import { pathToFileURL } from "node:url";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { SchemaError } from "./csv.js";
import { FIGURE_IDS, FigureId, renderFigureId } from "./figures.js";

/** Exit codes: 0 drawn, 1 bad arguments or input schema, 2 output I/O failure. */
export function main(argv: string[]): number {
  let args: { in: string; fig: string; out: string };
  try {
    args = yargs(argv)
      .scriptName("render")
      .usage("$0 --in DIR --fig ID --out PATH")
      .command(["$0", "render"], "draw one figure from simulator CSV files")
      .option("in", { type: "string", demandOption: true, describe: "directory holding simulator CSV files" })
      .option("fig", { type: "string", choices: FIGURE_IDS, demandOption: true, describe: "figure to draw" })
      .option("out", { type: "string", demandOption: true, describe: "destination SVG path" })
      .strict()
      .exitProcess(false)
      .fail((msg, err) => {
        throw err ?? new Error(msg);
      })
      .parseSync();
  } catch (err) {
    console.error((err as Error).message);
    return 1;
  }

  let svg: string;
  try {
    svg = renderFigureId(args.in, args.fig as FigureId);
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema error: ${err.message}`);
      return 1;
    }
    throw err;
  }

  try {
    mkdirSync(dirname(args.out), { recursive: true });
    writeFileSync(args.out, svg);
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  console.log(args.out);
  return 0;
}

const invoked = process.argv[1] ? pathToFileURL(realpathSync(process.argv[1])).href : "";
if (import.meta.url === invoked) {
  process.exitCode = main(hideBin(process.argv));
}
