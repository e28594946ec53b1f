export { splitmix64, splitmixOutputs, toUnit } from "./splitmix64.js";
export { initBodies, initTyped } from "./init.js";
export type { Body, TypedState, Vec3 } from "./init.js";
export {
  baselineSimulate,
  naiveAccelerations,
  simulateNaive,
  simulateTyped,
  typedAccelerations,
  DEFAULT_PARAMS,
} from "./sim.js";
export type { BaselineVariant, SimParams } from "./sim.js";
export { checksumBodies, checksumTyped, formatChecksum } from "./checksum.js";
export { gflops, measure } from "./bench.js";
export { CSV_HEADER, headerLine, rowLine, variantLabel } from "./csv.js";
