import { describe, expect, it } from "vitest";
import { escapeXml, fmt, linePath, renderFigure, ticks } from "../src/svg.js";

describe("ticks", () => {
  it("uses 1-2-5 steps inside the domain", () => {
    expect(ticks(0, 10, 6)).toEqual([0, 2, 4, 6, 8, 10]);
    expect(ticks(0, 1, 4)).toEqual([0, 0.5, 1]);
  });

  it("handles negative and degenerate spans", () => {
    expect(ticks(-1, 1, 4)).toEqual([-1, -0.5, 0, 0.5, 1]);
    expect(ticks(3, 3)).toEqual([3]);
  });
});

describe("fmt", () => {
  it("is fixed precision and never minus zero", () => {
    expect(fmt(1 / 3)).toBe("0.33");
    expect(fmt(-0.001)).toBe("0.00");
  });
});

describe("linePath", () => {
  const id = (v: number) => v;

  it("joins finite points", () => {
    expect(linePath([0, 1, 2], [0, 1, 0], id, id)).toBe("M0.00,0.00 L1.00,1.00 L2.00,0.00");
  });

  it("lifts the pen over non-finite values", () => {
    expect(linePath([0, 1, 2], [0, NaN, 2], id, id)).toBe("M0.00,0.00 M2.00,2.00");
  });
});

describe("renderFigure", () => {
  const panel = {
    yLabel: "y",
    xLabel: "t",
    series: [{ label: "a", x: [0, 1], y: [0, 1], color: "#000" }],
    markers: [{ label: "A", x: 0.5 }],
  };

  it("emits a standalone svg document", () => {
    const svg = renderFigure([panel], "title");
    expect(svg.startsWith("<svg xmlns=")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    expect(svg).toContain("stroke-dasharray");
    expect(svg).toContain(">A<");
  });

  it("is byte-stable across calls", () => {
    expect(renderFigure([panel], "title")).toBe(renderFigure([panel], "title"));
  });
});

describe("escapeXml", () => {
  it("escapes markup characters", () => {
    expect(escapeXml("a < b & c > d")).toBe("a &lt; b &amp; c &gt; d");
  });
});
