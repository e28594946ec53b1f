/**
 * Benchmark rows in the exact CSV schema of the primary artifact, so
 * baseline results feed the same report pipeline with no changes.
 */

import * as os from "node:os";
import { formatChecksum } from "./checksum.js";
import { BaselineVariant } from "./sim.js";

export const CSV_HEADER = [
  "variant", "layout", "math_form", "block_size", "threads", "precision",
  "n_bodies", "steps", "seed", "repetitions", "best_time_s", "mean_time_s",
  "gflops_best", "gflops_mean", "checksum", "status", "host_label",
  "timestamp_utc",
] as const;

export interface BenchRow {
  variant: BaselineVariant;
  n: number;
  steps: number;
  seed: bigint;
  repetitions: number;
  bestTimeS: number;
  meanTimeS: number;
  gflopsBest: number;
  gflopsMean: number;
  checksum: number;
}

export function variantLabel(variant: BaselineVariant): string {
  return variant === "naive" ? "ts_naive" : "ts_typed";
}

export function headerLine(): string {
  return CSV_HEADER.join(",");
}

export function rowLine(row: BenchRow): string {
  const timestamp = new Date().toISOString().replace(/\.\d{3}Z$/, "Z");
  const host = `${os.hostname()}/${os.arch()}/node`.replace(/,/g, ";");
  const cells = [
    variantLabel(row.variant),
    row.variant === "naive" ? "aos" : "soa",
    row.variant === "naive" ? "pow" : "recip",
    "",
    "1",
    "double",
    String(row.n),
    String(row.steps),
    row.seed.toString(),
    String(row.repetitions),
    String(row.bestTimeS),
    String(row.meanTimeS),
    String(row.gflopsBest),
    String(row.gflopsMean),
    formatChecksum(row.checksum),
    "ok",
    host,
    timestamp,
  ];
  return cells.join(",");
}
