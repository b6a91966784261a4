import { existsSync } from "node:fs";
import { join } from "node:path";
import {
  column,
  indexedColumns,
  metaNumber,
  readTable,
  requireColumns,
  SchemaError,
  Table,
} from "./csv.js";
import { grayRamp, Marker, PALETTE, Panel, renderFigure, Series } from "./svg.js";

export const FIGURE_IDS = ["fig2", "fig3", "sm1", "sm2", "sm3", "sm4", "sm5"] as const;
export type FigureId = (typeof FIGURE_IDS)[number];

function tableFrom(dir: string, names: string[]): { table: Table; path: string } {
  for (const name of names) {
    const path = join(dir, name);
    if (existsSync(path)) {
      const table = readTable(path);
      if (table.rows.length === 0) throw new SchemaError(`no data rows in ${path}`);
      return { table, path };
    }
  }
  throw new SchemaError(`missing input file: ${join(dir, names[0])}`);
}

/** Vertical guides at the times recorded by the simulator, when it found them. */
function pointMarkers(table: Table): Marker[] {
  const markers: Marker[] = [];
  for (const label of ["A", "B", "C"]) {
    const t = metaNumber(table, `t_${label}`);
    if (t !== undefined) markers.push({ label, x: t });
  }
  return markers;
}

function runTitle(table: Table): string {
  const parts: string[] = [];
  if (table.meta.scenario) parts.push(table.meta.scenario);
  if (table.meta.n_per_chain) parts.push(`N = ${table.meta.n_per_chain}`);
  if (table.meta.j_se_over_je) parts.push(`J_SE/J_E = ${table.meta.j_se_over_je}`);
  return parts.join(", ");
}

function distancePanels(dir: string): Panel[] {
  const { table, path } = tableFrom(dir, ["fig2.csv", "custom.csv"]);
  requireColumns(table, ["t", "D_S", "D_E", "D_E_1", "sigma_S", "sigma_E"], path);
  const t = column(table, "t");
  const markers = pointMarkers(table);

  const perQubit = indexedColumns(table, "D_E_");
  const envSeries: Series[] = perQubit.map((name, i) => ({
    label: name.replace("D_E_", "k = "),
    x: t,
    y: column(table, name),
    color: grayRamp(i, perQubit.length),
  }));
  envSeries.unshift({ label: "D_E", x: t, y: column(table, "D_E"), color: PALETTE[1] });

  return [
    {
      tag: "(a)",
      yLabel: "D_S",
      series: [{ label: "D_S", x: t, y: column(table, "D_S"), color: PALETTE[0] }],
      markers,
      legend: false,
    },
    { tag: "(b)", yLabel: "D_E", series: envSeries, markers },
    {
      tag: "(c)",
      yLabel: "slope of D",
      xLabel: "t",
      series: [
        { label: "sigma_S", x: t, y: column(table, "sigma_S"), color: PALETTE[0] },
        { label: "sigma_E", x: t, y: column(table, "sigma_E"), color: PALETTE[1] },
      ],
      markers,
    },
  ];
}

function fragmentInfoPanel(dir: string): { panels: Panel[]; title: string } {
  const { table, path } = tableFrom(dir, ["fig3.csv"]);
  requireColumns(table, ["m", "I_at_A", "I_at_B", "I_at_C"], path);
  const m = column(table, "m");
  const series: Series[] = ["A", "B", "C"].map((label, i) => ({
    label: `at ${label}`,
    x: m,
    y: column(table, `I_at_${label}`),
    color: PALETTE[i],
    points: true,
  }));
  return {
    panels: [{ yLabel: "I(S:F_m)", xLabel: "m", series }],
    title: runTitle(table),
  };
}

function inequalityPanel(dir: string): { panels: Panel[]; title: string } {
  const { table, path } = tableFrom(dir, ["sm_inequality.csv"]);
  requireColumns(table, ["t", "lhs_sup", "d_env", "corr_plus", "corr_minus", "slack"], path);
  const t = column(table, "t");
  const names = ["lhs_sup", "d_env", "corr_plus", "corr_minus", "slack"];
  const dashes: (string | undefined)[] = [undefined, undefined, undefined, "5 3", "2 2"];
  const series: Series[] = names.map((name, i) => ({
    label: name,
    x: t,
    y: column(table, name),
    color: PALETTE[i],
    dash: dashes[i],
  }));
  return {
    panels: [{ yLabel: "trace distance", xLabel: "t", series }],
    title: runTitle(table),
  };
}

function sweepPanel(dir: string, knob: "j_e" | "j_se"): { panels: Panel[]; title: string } {
  const { table, path } = tableFrom(dir, ["sweep_summary.csv"]);
  requireColumns(table, ["j_se_over_je", "t_A", "t_B"], path);
  const swept = table.meta.swept_coupling;
  if (swept !== undefined && swept !== knob) {
    throw new SchemaError(`${path} was swept over ${swept}; this figure expects ${knob}`);
  }
  const ratio = column(table, "j_se_over_je");
  const series: Series[] = ["t_A", "t_B"].map((name, i) => ({
    label: name,
    x: ratio,
    y: column(table, name),
    color: PALETTE[i],
    points: true,
  }));
  return {
    panels: [{ yLabel: "t", xLabel: "J_SE / J_E", series }],
    title: `swept_coupling = ${knob}` + (table.meta.n_per_chain ? `, N = ${table.meta.n_per_chain}` : ""),
  };
}

function infoVsTimePanels(dir: string): { panels: Panel[]; title: string } {
  const { table, path } = tableFrom(dir, ["sm_mi_time.csv"]);
  requireColumns(table, ["t", "I_F_1", "I_q_1"], path);
  const t = column(table, "t");
  const family = (prefix: string): Series[] =>
    indexedColumns(table, prefix).map((name, i) => ({
      label: name.replace(prefix, "m = "),
      x: t,
      y: column(table, name),
      color: PALETTE[i % PALETTE.length],
    }));
  return {
    panels: [
      { tag: "(a)", yLabel: "I(S:F_m)", series: family("I_F_") },
      { tag: "(b)", yLabel: "max Holevo", xLabel: "t", series: family("I_q_") },
    ],
    title: runTitle(table),
  };
}

function discordPanels(dir: string): { panels: Panel[]; title: string } {
  const panels: Panel[] = [];
  let title = "";
  ["A", "B", "C"].forEach((label, i) => {
    const { table, path } = tableFrom(dir, [`sm_discord_${label}.csv`]);
    requireColumns(table, ["m", "discord", "mutual_information", "holevo_max"], path);
    const m = column(table, "m");
    const names = ["mutual_information", "holevo_max", "discord"];
    panels.push({
      tag: `(${"abc"[i]}) ${table.meta.evaluated_at ?? `at ${label}`}`,
      yLabel: "information",
      xLabel: i === 2 ? "m" : undefined,
      series: names.map((name, j) => ({
        label: name,
        x: m,
        y: column(table, name),
        color: PALETTE[j],
        points: true,
      })),
    });
    if (!title) title = runTitle(table);
  });
  return { panels, title };
}

export function renderFigureId(dir: string, fig: FigureId): string {
  switch (fig) {
    case "fig2": {
      const panels = distancePanels(dir);
      return renderFigure(panels);
    }
    case "fig3": {
      const { panels, title } = fragmentInfoPanel(dir);
      return renderFigure(panels, title);
    }
    case "sm1": {
      const { panels, title } = inequalityPanel(dir);
      return renderFigure(panels, title);
    }
    case "sm2": {
      const { panels, title } = sweepPanel(dir, "j_e");
      return renderFigure(panels, title);
    }
    case "sm3": {
      const { panels, title } = sweepPanel(dir, "j_se");
      return renderFigure(panels, title);
    }
    case "sm4": {
      const { panels, title } = infoVsTimePanels(dir);
      return renderFigure(panels, title);
    }
    case "sm5": {
      const { panels, title } = discordPanels(dir);
      return renderFigure(panels, title);
    }
  }
}
