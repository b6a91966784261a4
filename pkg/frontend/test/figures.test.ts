import { mkdtempSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";
import { SchemaError } from "../src/csv.js";
import { renderFigureId } from "../src/figures.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));
const RUN = join(FIXTURES, "run");
const SM = join(FIXTURES, "sm");

describe("fig2", () => {
  it("draws three tagged panels with A/B/C markers", () => {
    const svg = renderFigureId(RUN, "fig2");
    for (const tag of ["(a)", "(b)", "(c)"]) expect(svg).toContain(tag);
    for (const label of [">A<", ">B<", ">C<"]) expect(svg).toContain(label);
    expect(svg).toContain("sigma_S");
    expect(svg).toContain("k = 1");
    expect(svg).toContain("k = 2");
    expect(svg).toContain(">t<");
  });

  it("is byte-stable across calls", () => {
    expect(renderFigureId(RUN, "fig2")).toBe(renderFigureId(RUN, "fig2"));
  });

  it("names a missing column", () => {
    const dir = join(FIXTURES, "broken");
    expect(() => renderFigureId(dir, "fig2")).toThrow(SchemaError);
    expect(() => renderFigureId(dir, "fig2")).toThrow(/"sigma_E"/);
  });

  it("names the missing file on an empty directory", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    expect(() => renderFigureId(dir, "fig2")).toThrow(/fig2\.csv/);
  });
});

describe("fig3", () => {
  it("draws one curve per readout point", () => {
    const svg = renderFigureId(RUN, "fig3");
    for (const label of ["at A", "at B", "at C"]) expect(svg).toContain(label);
    expect(svg).toContain("I(S:F_m)");
    expect(svg).toContain("<circle");
  });

  it("names the missing file when only distances were exported", () => {
    expect(() => renderFigureId(SM, "fig3")).toThrow(/fig3\.csv/);
  });
});

describe("sm1", () => {
  it("draws every bound term", () => {
    const svg = renderFigureId(SM, "sm1");
    for (const label of ["lhs_sup", "d_env", "corr_plus", "corr_minus", "slack"]) {
      expect(svg).toContain(label);
    }
  });
});

describe("sweep figures", () => {
  it("sm3 accepts a j_se sweep", () => {
    const svg = renderFigureId(SM, "sm3");
    expect(svg).toContain("t_A");
    expect(svg).toContain("J_SE / J_E");
  });

  it("sm2 accepts a j_e sweep", () => {
    const svg = renderFigureId(join(FIXTURES, "sweepje"), "sm2");
    expect(svg).toContain("swept_coupling = j_e");
  });

  it("rejects the wrong knob", () => {
    expect(() => renderFigureId(SM, "sm2")).toThrow(SchemaError);
    expect(() => renderFigureId(SM, "sm2")).toThrow(/swept over j_se/);
  });
});

describe("sm4", () => {
  it("splits mutual information and its accessible part", () => {
    const svg = renderFigureId(SM, "sm4");
    expect(svg).toContain("I(S:F_m)");
    expect(svg).toContain("max Holevo");
    expect(svg).toContain("m = 2");
  });
});

describe("sm5", () => {
  it("draws one panel per readout point with its time", () => {
    const svg = renderFigureId(SM, "sm5");
    for (const label of ["t_A = 0.5", "t_B = 1.0", "t_C = 1.5"]) expect(svg).toContain(label);
    expect(svg).toContain("discord");
    expect(svg).toContain("mutual_information");
    expect(svg).toContain("holevo_max");
  });

  it("names whichever point file is absent", () => {
    expect(() => renderFigureId(RUN, "sm5")).toThrow(/sm_discord_A\.csv/);
  });
});
