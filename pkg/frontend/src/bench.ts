/**
 * Timing protocol shared with the primary harness: monotonic clock around
 * the simulation only (initialization and warm-up excluded), best-of-R as
 * the headline number, GFLOPS = 20 * n^2 * steps / (t * 1e9).
 */

import { initBodies, initTyped } from "./init.js";
import { checksumBodies, checksumTyped } from "./checksum.js";
import { BaselineVariant, SimParams, simulateNaive, simulateTyped } from "./sim.js";
import { BenchRow } from "./csv.js";

export function gflops(n: number, steps: number, seconds: number): number {
  if (!(seconds > 0)) {
    throw new Error(`seconds must be positive, got ${seconds}`);
  }
  return (20 * n * n * steps) / (seconds * 1e9);
}

function monotonicSeconds(): number {
  return Number(process.hrtime.bigint()) * 1e-9;
}

export interface MeasureOptions {
  n: number;
  steps: number;
  seed: bigint;
  variant: BaselineVariant;
  repetitions: number;
  warmupRuns: number;
  params: Omit<SimParams, "steps">;
}

export function measure(opts: MeasureOptions): BenchRow {
  const { n, steps, seed, variant, repetitions, warmupRuns, params } = opts;
  const full: SimParams = { ...params, steps };

  const once = (): number => {
    if (variant === "naive") {
      const bodies = initBodies(n, seed);
      simulateNaive(bodies, full);
      return checksumBodies(bodies);
    }
    const state = initTyped(n, seed);
    simulateTyped(state, full);
    return checksumTyped(state);
  };

  for (let i = 0; i < warmupRuns; i++) once();

  const times: number[] = [];
  let checksum = 0;
  for (let r = 0; r < repetitions; r++) {
    const t0 = monotonicSeconds();
    checksum = once();
    times.push(monotonicSeconds() - t0);
  }
  const best = Math.min(...times);
  const mean = times.reduce((a, b) => a + b, 0) / times.length;
  return {
    variant, n, steps, seed, repetitions,
    bestTimeS: best,
    meanTimeS: mean,
    gflopsBest: gflops(n, steps, best),
    gflopsMean: gflops(n, steps, mean),
    checksum,
  };
}
