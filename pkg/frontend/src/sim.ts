/**
 * The two interpreted-runtime baselines.
 *
 * naive: bodies as plain objects, per-pair helper functions returning fresh
 * vectors — the idiomatic-but-slow style the optimized rungs are measured
 * against.  typed: flat Float64Array state with allocation-free loops.
 *
 * Both apply the same softened all-pairs update as the primary kernels:
 * per step, all accelerations are computed before any body moves; the step
 * loop is velocity Verlet (trapezoid velocity kick completed by the next
 * step's accelerations, one synchronizing evaluation after the last step).
 */

import { Body, TypedState, Vec3, initBodies, initTyped } from "./init.js";

export interface SimParams {
  g: number;
  dt: number;
  softeningSq: number;
  steps: number;
}

export const DEFAULT_PARAMS: SimParams = { g: 1.0, dt: 0.01, softeningSq: 1e-9, steps: 100 };

export type BaselineVariant = "naive" | "typed";

// ---------------------------------------------------------------------------
// naive object-list implementation

function sub(a: Vec3, b: Vec3): Vec3 {
  return { x: a.x - b.x, y: a.y - b.y, z: a.z - b.z };
}

function lengthSqSoftened(d: Vec3, eps2: number): number {
  return d.x * d.x + d.y * d.y + d.z * d.z + eps2;
}

function pairTerm(d: Vec3, mass: number, denom: number): Vec3 {
  return { x: (mass * d.x) / denom, y: (mass * d.y) / denom, z: (mass * d.z) / denom };
}

function addInPlace(a: Vec3, b: Vec3): void {
  a.x += b.x;
  a.y += b.y;
  a.z += b.z;
}

export function naiveAccelerations(bodies: Body[], g: number, eps2: number): Vec3[] {
  const acc: Vec3[] = [];
  for (let i = 0; i < bodies.length; i++) {
    const sum: Vec3 = { x: 0, y: 0, z: 0 };
    for (let j = 0; j < bodies.length; j++) {
      if (j === i) continue;
      const d = sub(bodies[j].pos, bodies[i].pos);
      const denom = Math.pow(lengthSqSoftened(d, eps2), 1.5);
      addInPlace(sum, pairTerm(d, bodies[j].mass, denom));
    }
    acc.push({ x: g * sum.x, y: g * sum.y, z: g * sum.z });
  }
  return acc;
}

function naiveIntegrate(bodies: Body[], acc: Vec3[], dt: number): void {
  for (let i = 0; i < bodies.length; i++) {
    const b = bodies[i];
    const dvx = acc[i].x * dt;
    const dvy = acc[i].y * dt;
    const dvz = acc[i].z * dt;
    b.pos.x += (b.vel.x + 0.5 * dvx) * dt;
    b.pos.y += (b.vel.y + 0.5 * dvy) * dt;
    b.pos.z += (b.vel.z + 0.5 * dvz) * dt;
    b.vel.x += dvx;
    b.vel.y += dvy;
    b.vel.z += dvz;
  }
}

function naiveKick(bodies: Body[], acc: Vec3[], prev: Vec3[], halfDt: number): void {
  for (let i = 0; i < bodies.length; i++) {
    bodies[i].vel.x += (acc[i].x - prev[i].x) * halfDt;
    bodies[i].vel.y += (acc[i].y - prev[i].y) * halfDt;
    bodies[i].vel.z += (acc[i].z - prev[i].z) * halfDt;
  }
}

export function simulateNaive(bodies: Body[], params: SimParams): void {
  const { g, dt, softeningSq, steps } = params;
  const halfDt = 0.5 * dt;
  let prev: Vec3[] | null = null;
  for (let step = 0; step < steps; step++) {
    const acc = naiveAccelerations(bodies, g, softeningSq);
    if (prev !== null) naiveKick(bodies, acc, prev, halfDt);
    naiveIntegrate(bodies, acc, dt);
    prev = acc;
  }
  if (prev !== null) {
    naiveKick(bodies, naiveAccelerations(bodies, g, softeningSq), prev, halfDt);
  }
}

// ---------------------------------------------------------------------------
// typed-array implementation

export function typedAccelerations(
  state: TypedState,
  g: number,
  eps2: number,
  ax: Float64Array,
  ay: Float64Array,
  az: Float64Array,
): void {
  const { px, py, pz, mass } = state;
  const n = px.length;
  for (let i = 0; i < n; i++) {
    const pxi = px[i];
    const pyi = py[i];
    const pzi = pz[i];
    let sx = 0;
    let sy = 0;
    let sz = 0;
    for (let j = 0; j < n; j++) {
      if (j === i) continue;
      const dx = px[j] - pxi;
      const dy = py[j] - pyi;
      const dz = pz[j] - pzi;
      const d2 = dx * dx + dy * dy + dz * dz + eps2;
      const w = mass[j] * (1.0 / (d2 * Math.sqrt(d2)));
      sx += dx * w;
      sy += dy * w;
      sz += dz * w;
    }
    ax[i] = g * sx;
    ay[i] = g * sy;
    az[i] = g * sz;
  }
}

export function simulateTyped(state: TypedState, params: SimParams): void {
  const { g, dt, softeningSq, steps } = params;
  const halfDt = 0.5 * dt;
  const n = state.px.length;
  let ax = new Float64Array(n);
  let ay = new Float64Array(n);
  let az = new Float64Array(n);
  let bx = new Float64Array(n);
  let by = new Float64Array(n);
  let bz = new Float64Array(n);
  let havePrev = false;
  for (let step = 0; step < steps; step++) {
    typedAccelerations(state, g, softeningSq, ax, ay, az);
    if (havePrev) {
      for (let i = 0; i < n; i++) {
        state.vx[i] += (ax[i] - bx[i]) * halfDt;
        state.vy[i] += (ay[i] - by[i]) * halfDt;
        state.vz[i] += (az[i] - bz[i]) * halfDt;
      }
    }
    for (let i = 0; i < n; i++) {
      const dvx = ax[i] * dt;
      const dvy = ay[i] * dt;
      const dvz = az[i] * dt;
      state.px[i] += (state.vx[i] + 0.5 * dvx) * dt;
      state.py[i] += (state.vy[i] + 0.5 * dvy) * dt;
      state.pz[i] += (state.vz[i] + 0.5 * dvz) * dt;
      state.vx[i] += dvx;
      state.vy[i] += dvy;
      state.vz[i] += dvz;
    }
    [ax, bx] = [bx, ax];
    [ay, by] = [by, ay];
    [az, bz] = [bz, az];
    havePrev = true;
  }
  typedAccelerations(state, g, softeningSq, ax, ay, az);
  for (let i = 0; i < n; i++) {
    state.vx[i] += (ax[i] - bx[i]) * halfDt;
    state.vy[i] += (ay[i] - by[i]) * halfDt;
    state.vz[i] += (az[i] - bz[i]) * halfDt;
  }
}

// ---------------------------------------------------------------------------

import { checksumBodies, checksumTyped } from "./checksum.js";

/** Initialize from the shared stream, simulate, and return the checksum. */
export function baselineSimulate(
  n: number,
  steps: number,
  seed: bigint,
  params: Omit<SimParams, "steps">,
  variant: BaselineVariant,
): number {
  const full: SimParams = { ...params, steps };
  if (variant === "naive") {
    const bodies = initBodies(n, seed);
    simulateNaive(bodies, full);
    return checksumBodies(bodies);
  }
  const state = initTyped(n, seed);
  simulateTyped(state, full);
  return checksumTyped(state);
}
