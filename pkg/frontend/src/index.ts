export { column, indexedColumns, metaNumber, parseTable, readTable, requireColumns, SchemaError } from "./csv.js";
export type { Table } from "./csv.js";
export { FIGURE_IDS, renderFigureId } from "./figures.js";
export type { FigureId } from "./figures.js";
export { grayRamp, linePath, PALETTE, renderFigure, ticks } from "./svg.js";
export type { Marker, Panel, Series } from "./svg.js";
export { main } from "./cli.js";
