#!/usr/bin/env node
/**
 * Baseline CLI: `run` prints a checksum, `bench` writes CSV rows in the
 * shared schema.  Flag names mirror the primary CLI where applicable.
 */

import * as fs from "node:fs";
import { baselineSimulate, BaselineVariant, DEFAULT_PARAMS } from "./sim.js";
import { measure } from "./bench.js";
import { headerLine, rowLine } from "./csv.js";
import { formatChecksum } from "./checksum.js";

interface Flags {
  [key: string]: string | boolean;
}

function parseFlags(argv: string[]): Flags {
  const flags: Flags = {};
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (!arg.startsWith("--")) {
      throw new Error(`unexpected argument ${arg}`);
    }
    const name = arg.slice(2);
    const next = argv[i + 1];
    if (next === undefined || next.startsWith("--")) {
      flags[name] = true;
    } else {
      flags[name] = next;
      i++;
    }
  }
  return flags;
}

function str(flags: Flags, name: string, fallback: string): string {
  const v = flags[name];
  return typeof v === "string" ? v : fallback;
}

function parseVariants(token: string): BaselineVariant[] {
  if (token === "all" || token === "both") return ["naive", "typed"];
  const out: BaselineVariant[] = [];
  for (const t of token.split(",")) {
    if (t !== "naive" && t !== "typed") {
      throw new Error(`unknown variant ${t} (expected naive, typed, or all)`);
    }
    out.push(t);
  }
  return out;
}

function main(argv: string[]): number {
  const [sub, ...rest] = argv;
  if (sub !== "run" && sub !== "bench") {
    console.error("usage: nbody-baseline <run|bench> [--n ...] [--steps ...] [--seed ...]");
    return 1;
  }
  let flags: Flags;
  try {
    flags = parseFlags(rest);
  } catch (err) {
    console.error(`usage error: ${(err as Error).message}`);
    return 1;
  }

  const params = {
    g: parseFloat(str(flags, "g", "1.0")),
    dt: parseFloat(str(flags, "dt", "0.01")),
    softeningSq: parseFloat(str(flags, "softening-sq", "1e-9")),
  };
  const steps = parseInt(str(flags, "steps", String(DEFAULT_PARAMS.steps)), 10);
  const seed = BigInt(str(flags, "seed", "42"));

  if (sub === "run") {
    const n = parseInt(str(flags, "n", "1024"), 10);
    const variant = parseVariants(str(flags, "variant", "typed"))[0];
    const checksum = baselineSimulate(n, steps, seed, params, variant);
    console.log(`variant:  ts_${variant}`);
    console.log(`n=${n} steps=${steps} seed=${seed}`);
    console.log(`checksum: ${formatChecksum(checksum)}`);
    return 0;
  }

  const nValues = str(flags, "n", "256,512,1024").split(",").map((t) => parseInt(t, 10));
  const variants = parseVariants(str(flags, "variant", "all"));
  const repetitions = parseInt(str(flags, "reps", "3"), 10);
  const warmupRuns = parseInt(str(flags, "warmup", "1"), 10);
  const out = str(flags, "out", "baseline.csv");

  const lines = [headerLine()];
  for (const variant of variants) {
    for (const n of [...nValues].sort((a, b) => a - b)) {
      console.error(`measuring ts_${variant} n=${n} steps=${steps}`);
      const row = measure({ n, steps, seed, variant, repetitions, warmupRuns, params });
      lines.push(rowLine(row));
    }
  }
  fs.writeFileSync(out, lines.join("\n") + "\n");
  console.error(`wrote ${lines.length - 1} rows to ${out}`);
  return 0;
}

process.exit(main(process.argv.slice(2)));
