import { execFileSync, spawnSync } from "node:child_process";
import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { describe, expect, it } from "vitest";
import { gflops, measure } from "../src/bench.js";
import { CSV_HEADER, headerLine, rowLine } from "../src/csv.js";

const PARAMS = { g: 1.0, dt: 0.01, softeningSq: 1e-9 };

describe("gflops", () => {
  it("uses the shared 20*n^2*steps convention", () => {
    expect(gflops(1000, 100, 2.0)).toBe(1.0);
  });

  it("rejects non-positive times", () => {
    expect(() => gflops(10, 10, 0)).toThrow();
  });
});

describe("measurement", () => {
  it("best time is the minimum and checksums are finite", () => {
    const row = measure({
      n: 64, steps: 3, seed: 42n, variant: "typed",
      repetitions: 3, warmupRuns: 1, params: PARAMS,
    });
    expect(row.bestTimeS).toBeLessThanOrEqual(row.meanTimeS);
    expect(Number.isFinite(row.checksum)).toBe(true);
    expect(row.gflopsBest).toBe(gflops(64, 3, row.bestTimeS));
  });

  it("typed arrays beat naive object lists by at least 3x at N=4096", () => {
    const shared = { n: 4096, steps: 2, seed: 42n, repetitions: 1, warmupRuns: 1, params: PARAMS };
    const naive = measure({ ...shared, variant: "naive" });
    const typed = measure({ ...shared, variant: "typed" });
    const ratio = typed.gflopsBest / naive.gflopsBest;
    console.log(`naive ${naive.gflopsBest.toFixed(3)} GFLOPS, ` +
      `typed ${typed.gflopsBest.toFixed(3)} GFLOPS, ratio ${ratio.toFixed(1)}x`);
    expect(ratio).toBeGreaterThanOrEqual(3.0);
  });

  it("naive completes N=1024, steps=10 in bounded time", () => {
    const t0 = process.hrtime.bigint();
    measure({
      n: 1024, steps: 10, seed: 42n, variant: "naive",
      repetitions: 1, warmupRuns: 0, params: PARAMS,
    });
    const seconds = Number(process.hrtime.bigint() - t0) * 1e-9;
    console.log(`naive N=1024 steps=10: ${seconds.toFixed(2)}s`);
    expect(seconds).toBeLessThan(120);
  });
});

describe("CSV contract", () => {
  it("header matches the primary schema exactly", () => {
    expect(headerLine()).toBe(
      "variant,layout,math_form,block_size,threads,precision,n_bodies,steps," +
      "seed,repetitions,best_time_s,mean_time_s,gflops_best,gflops_mean," +
      "checksum,status,host_label,timestamp_utc",
    );
  });

  it("rows carry one value per column with no stray commas", () => {
    const row = measure({
      n: 32, steps: 2, seed: 42n, variant: "naive",
      repetitions: 1, warmupRuns: 0, params: PARAMS,
    });
    const cells = rowLine(row).split(",");
    expect(cells.length).toBe(CSV_HEADER.length);
    expect(cells[0]).toBe("ts_naive");
    expect(cells[15]).toBe("ok");
    expect(parseFloat(cells[12])).toBe(gflops(32, 2, parseFloat(cells[10])));
  });

  it("emitted rows parse under the primary report pipeline unchanged", () => {
    const probe = spawnSync("python3", ["-c", "import nbodybench"]);
    if (probe.status !== 0) {
      console.warn("primary package not importable; skipping pipeline check");
      return;
    }
    const dir = fs.mkdtempSync(path.join(os.tmpdir(), "baseline-"));
    const csvPath = path.join(dir, "baseline.csv");
    const rows = (["naive", "typed"] as const).map((variant) =>
      measure({
        n: 64, steps: 2, seed: 42n, variant,
        repetitions: 2, warmupRuns: 0, params: PARAMS,
      }),
    );
    fs.writeFileSync(csvPath, [headerLine(), ...rows.map(rowLine)].join("\n") + "\n");
    const report = execFileSync(
      "python3", ["-m", "nbodybench", "report", csvPath],
      { encoding: "utf-8" },
    );
    expect(report).toContain("| ts_naive | double | 1 |");
    expect(report).toContain("| ts_typed | double | 1 |");
    expect(report).toContain("rows: 2 ok");
  });
});
