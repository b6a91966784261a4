import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";
import { main } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));
const RUN = join(FIXTURES, "run");

let logs: string[];
let errors: string[];

beforeEach(() => {
  logs = [];
  errors = [];
  vi.spyOn(console, "log").mockImplementation((msg) => logs.push(String(msg)));
  vi.spyOn(console, "error").mockImplementation((msg) => errors.push(String(msg)));
});

afterEach(() => {
  vi.restoreAllMocks();
});

describe("render cli", () => {
  it("writes the figure and prints its path", () => {
    const out = join(mkdtempSync(join(tmpdir(), "render-")), "fig2.svg");
    expect(main(["--in", RUN, "--fig", "fig2", "--out", out])).toBe(0);
    expect(logs).toEqual([out]);
    expect(readFileSync(out, "utf8").startsWith("<svg")).toBe(true);
  });

  it("accepts the spelled-out command word", () => {
    const out = join(mkdtempSync(join(tmpdir(), "render-")), "fig2.svg");
    expect(main(["render", "--in", RUN, "--fig", "fig2", "--out", out])).toBe(0);
  });

  it("writes identical bytes on re-render", () => {
    const dir = mkdtempSync(join(tmpdir(), "render-"));
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    expect(main(["--in", RUN, "--fig", "fig3", "--out", a])).toBe(0);
    expect(main(["--in", RUN, "--fig", "fig3", "--out", b])).toBe(0);
    expect(readFileSync(a, "utf8")).toBe(readFileSync(b, "utf8"));
  });

  it("fails with the column name on a schema hole", () => {
    const out = join(mkdtempSync(join(tmpdir(), "render-")), "fig2.svg");
    const code = main(["--in", join(FIXTURES, "broken"), "--fig", "fig2", "--out", out]);
    expect(code).toBe(1);
    expect(errors.join("\n")).toMatch(/schema error: .*"sigma_E"/);
  });

  it("fails on an empty input directory", () => {
    const empty = mkdtempSync(join(tmpdir(), "render-"));
    const out = join(empty, "fig.svg");
    expect(main(["--in", empty, "--fig", "sm1", "--out", out])).toBe(1);
    expect(errors.join("\n")).toContain("sm_inequality.csv");
  });

  it("rejects an unknown figure id", () => {
    expect(main(["--in", RUN, "--fig", "fig9", "--out", "/tmp/x.svg"])).toBe(1);
    expect(errors.join("\n")).toContain("fig");
  });

  it("rejects missing flags", () => {
    expect(main(["--in", RUN])).toBe(1);
  });

  it("reports an unwritable destination", () => {
    const dir = mkdtempSync(join(tmpdir(), "render-"));
    const block = join(dir, "block");
    writeFileSync(block, "");
    const code = main(["--in", RUN, "--fig", "fig2", "--out", join(block, "deep", "fig.svg")]);
    expect(code).toBe(2);
    expect(errors.length).toBeGreaterThan(0);
  });
});
