export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dash?: string;
  points?: boolean;
}

export interface Marker {
  label: string;
  x: number;
}

export interface Panel {
  tag?: string;
  yLabel: string;
  xLabel?: string;
  series: Series[];
  markers?: Marker[];
  legend?: boolean;
}

export const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
];

/** Evenly spaced grays, dark to light, for families of related curves. */
export function grayRamp(i: number, n: number): string {
  const g = Math.round(120 + (70 * i) / Math.max(1, n - 1));
  return `rgb(${g},${g},${g})`;
}

const FONT = "Helvetica, Arial, sans-serif";
const WIDTH = 640;
const MARGIN = { left: 60, right: 16 };
const PLOT_H = 150;

/** Fixed two-decimal coordinates keep output byte-stable across runs. */
export function fmt(v: number): string {
  const s = v.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function niceStep(span: number, target: number): number {
  const raw = span / Math.max(1, target);
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag * (1 + 1e-9)) return m * mag;
  }
  return 10 * mag;
}

export function ticks(lo: number, hi: number, target = 5): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep(hi - lo, target);
  const out: number[] = [];
  const first = Math.ceil(lo / step - 1e-9);
  const last = Math.floor(hi / step + 1e-9);
  for (let k = first; k <= last; k++) out.push(k === 0 ? 0 : k * step);
  return out;
}

function tickLabel(v: number, step: number): string {
  const decimals = Math.max(0, -Math.floor(Math.log10(step) + 1e-9));
  return v.toFixed(Math.min(decimals, 6));
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  return [lo, hi];
}

function scale(d0: number, d1: number, r0: number, r1: number): (v: number) => number {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Path for one series; non-finite points lift the pen instead of drawing. */
export function linePath(
  xs: number[],
  ys: number[],
  sx: (v: number) => number,
  sy: (v: number) => number,
): string {
  const parts: string[] = [];
  let pen = false;
  for (let i = 0; i < xs.length; i++) {
    if (!Number.isFinite(xs[i]) || !Number.isFinite(ys[i])) {
      pen = false;
      continue;
    }
    parts.push(`${pen ? "L" : "M"}${fmt(sx(xs[i]))},${fmt(sy(ys[i]))}`);
    pen = true;
  }
  return parts.join(" ");
}

function renderPanel(panel: Panel, top: number, out: string[]): number {
  const left = MARGIN.left;
  const right = WIDTH - MARGIN.right;
  const plotTop = top + 18;
  const plotBottom = plotTop + PLOT_H;

  const xs = panel.series.flatMap((s) => s.x).concat((panel.markers ?? []).map((m) => m.x));
  const ys = panel.series.flatMap((s) => s.y);
  const [x0, x1] = extent(xs);
  let [y0, y1] = extent(ys);
  const pad = (y1 - y0) * 0.06;
  y0 -= pad;
  y1 += pad;
  const sx = scale(x0, x1, left, right);
  const sy = scale(y0, y1, plotBottom, plotTop);

  out.push(
    `<rect x="${fmt(left)}" y="${fmt(plotTop)}" width="${fmt(right - left)}" height="${fmt(PLOT_H)}" fill="none" stroke="#333" stroke-width="1"/>`,
  );

  const xstep = niceStep(x1 - x0 || 1, 6);
  for (const t of ticks(x0, x1, 6)) {
    const px = fmt(sx(t));
    out.push(`<line x1="${px}" y1="${fmt(plotBottom)}" x2="${px}" y2="${fmt(plotBottom + 4)}" stroke="#333"/>`);
    out.push(
      `<text x="${px}" y="${fmt(plotBottom + 15)}" font-family="${FONT}" font-size="10" text-anchor="middle">${tickLabel(t, xstep)}</text>`,
    );
  }
  const ystep = niceStep(y1 - y0 || 1, 4);
  for (const t of ticks(y0, y1, 4)) {
    const py = fmt(sy(t));
    out.push(`<line x1="${fmt(left - 4)}" y1="${py}" x2="${fmt(left)}" y2="${py}" stroke="#333"/>`);
    out.push(
      `<text x="${fmt(left - 7)}" y="${py}" dy="3" font-family="${FONT}" font-size="10" text-anchor="end">${tickLabel(t, ystep)}</text>`,
    );
  }

  for (const m of panel.markers ?? []) {
    const px = fmt(sx(m.x));
    out.push(
      `<line x1="${px}" y1="${fmt(plotTop)}" x2="${px}" y2="${fmt(plotBottom)}" stroke="#888" stroke-dasharray="4 3"/>`,
    );
    out.push(
      `<text x="${px}" y="${fmt(plotTop - 4)}" font-family="${FONT}" font-size="11" text-anchor="middle">${escapeXml(m.label)}</text>`,
    );
  }

  for (const s of panel.series) {
    const path = linePath(s.x, s.y, sx, sy);
    if (path) {
      out.push(
        `<path d="${path}" fill="none" stroke="${s.color}" stroke-width="1.5"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`,
      );
    }
    if (s.points) {
      for (let i = 0; i < s.x.length; i++) {
        if (!Number.isFinite(s.x[i]) || !Number.isFinite(s.y[i])) continue;
        out.push(`<circle cx="${fmt(sx(s.x[i]))}" cy="${fmt(sy(s.y[i]))}" r="2.5" fill="${s.color}"/>`);
      }
    }
  }

  if (panel.tag) {
    out.push(
      `<text x="${fmt(left + 6)}" y="${fmt(plotTop + 14)}" font-family="${FONT}" font-size="12" font-weight="bold">${escapeXml(panel.tag)}</text>`,
    );
  }
  out.push(
    `<text x="12" y="${fmt((plotTop + plotBottom) / 2)}" font-family="${FONT}" font-size="11" text-anchor="middle" transform="rotate(-90 12 ${fmt((plotTop + plotBottom) / 2)})">${escapeXml(panel.yLabel)}</text>`,
  );
  if (panel.xLabel) {
    out.push(
      `<text x="${fmt((left + right) / 2)}" y="${fmt(plotBottom + 30)}" font-family="${FONT}" font-size="11" text-anchor="middle">${escapeXml(panel.xLabel)}</text>`,
    );
  }

  if (panel.legend !== false) {
    let ly = plotTop + 8;
    for (const s of panel.series) {
      const lx = right - 108;
      out.push(
        `<line x1="${fmt(lx)}" y1="${fmt(ly)}" x2="${fmt(lx + 18)}" y2="${fmt(ly)}" stroke="${s.color}" stroke-width="1.5"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`,
      );
      out.push(
        `<text x="${fmt(lx + 23)}" y="${fmt(ly)}" dy="3" font-family="${FONT}" font-size="10">${escapeXml(s.label)}</text>`,
      );
      ly += 13;
    }
  }

  return plotBottom + (panel.xLabel ? 36 : 22);
}

export function renderFigure(panels: Panel[], title?: string): string {
  const out: string[] = [];
  let top = title ? 24 : 6;
  if (title) {
    out.push(
      `<text x="${fmt(WIDTH / 2)}" y="16" font-family="${FONT}" font-size="12" text-anchor="middle">${escapeXml(title)}</text>`,
    );
  }
  for (const panel of panels) {
    top = renderPanel(panel, top, out);
  }
  const height = top + 2;
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${height}" viewBox="0 0 ${WIDTH} ${height}">`,
    `<rect width="${WIDTH}" height="${height}" fill="white"/>`,
    ...out,
    "</svg>",
    "",
  ].join("\n");
}
