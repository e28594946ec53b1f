/**
 * Pinned splitmix64 generator shared with the primary artifact: the stream,
 * its [0,1) mapping, and the consumption order are the cross-runtime
 * initialization contract, so every constant here must match bit for bit.
 */

const MASK64 = (1n << 64n) - 1n;
const GAMMA = 0x9e3779b97f4a7c15n;
const MIX1 = 0xbf58476d1ce4e5b9n;
const MIX2 = 0x94d049bb133111ebn;

export function* splitmix64(seed: bigint): Generator<bigint> {
  let state = seed & MASK64;
  for (;;) {
    state = (state + GAMMA) & MASK64;
    let z = state;
    z = ((z ^ (z >> 30n)) * MIX1) & MASK64;
    z = ((z ^ (z >> 27n)) * MIX2) & MASK64;
    yield z ^ (z >> 31n);
  }
}

export function splitmixOutputs(seed: bigint, count: number): bigint[] {
  const gen = splitmix64(seed);
  const out: bigint[] = [];
  for (let i = 0; i < count; i++) {
    out.push(gen.next().value as bigint);
  }
  return out;
}

/** Map one output to [0, 1): (z >> 11) * 2^-53, exact in a double. */
export function toUnit(z: bigint): number {
  return Number(z >> 11n) * 2 ** -53;
}
