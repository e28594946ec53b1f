import { splitmix64, toUnit } from "./splitmix64.js";

export interface Vec3 {
  x: number;
  y: number;
  z: number;
}

/** One body as a plain object: the "naive lists" data representation. */
export interface Body {
  pos: Vec3;
  vel: Vec3;
  mass: number;
}

/** Flat structure-of-arrays state: the "typed" data representation. */
export interface TypedState {
  px: Float64Array;
  py: Float64Array;
  pz: Float64Array;
  vx: Float64Array;
  vy: Float64Array;
  vz: Float64Array;
  mass: Float64Array;
}

/**
 * Deterministic initial conditions, consuming four stream values per body in
 * ascending index order as (x, y, z, mass-draw): positions uniform in
 * [0,1)^3, masses 1-u in (0,1], velocities zero.
 */
export function initBodies(n: number, seed: bigint): Body[] {
  if (!Number.isInteger(n) || n < 1) {
    throw new Error(`n must be a positive integer, got ${n}`);
  }
  const gen = splitmix64(seed);
  const draw = () => toUnit(gen.next().value as bigint);
  const bodies: Body[] = [];
  for (let i = 0; i < n; i++) {
    const pos = { x: draw(), y: draw(), z: draw() };
    const mass = 1.0 - draw();
    bodies.push({ pos, vel: { x: 0, y: 0, z: 0 }, mass });
  }
  return bodies;
}

export function initTyped(n: number, seed: bigint): TypedState {
  const bodies = initBodies(n, seed);
  const state: TypedState = {
    px: new Float64Array(n),
    py: new Float64Array(n),
    pz: new Float64Array(n),
    vx: new Float64Array(n),
    vy: new Float64Array(n),
    vz: new Float64Array(n),
    mass: new Float64Array(n),
  };
  bodies.forEach((b, i) => {
    state.px[i] = b.pos.x;
    state.py[i] = b.pos.y;
    state.pz[i] = b.pos.z;
    state.mass[i] = b.mass;
  });
  return state;
}
