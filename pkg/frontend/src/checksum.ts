/**
 * The cross-runtime equivalence key: sum of (x + y + z) over all bodies,
 * accumulated in double precision in body-index order.  JavaScript numbers
 * are IEEE-754 doubles, so the accumulation semantics match the primary
 * artifact exactly.
 */

import { Body, TypedState } from "./init.js";

export function checksumBodies(bodies: Body[]): number {
  let total = 0.0;
  for (const b of bodies) {
    total += b.pos.x + b.pos.y + b.pos.z;
  }
  return total;
}

export function checksumTyped(state: TypedState): number {
  let total = 0.0;
  for (let i = 0; i < state.px.length; i++) {
    total += state.px[i] + state.py[i] + state.pz[i];
  }
  return total;
}

/** Render with 17 significant digits (round-trip safe for doubles). */
export function formatChecksum(value: number): string {
  return value.toPrecision(17);
}
