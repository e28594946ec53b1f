"""Correctness checks for the kernel variants: a brute-force double-precision
oracle (independent code path, no kernel code shared) and physics
diagnostics (energy, momentum, checksum).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .core import ParticleSystem, Precision, Seed, SimParams, checksum, init_system
from .kernels import AccelerationBuffer, KernelVariant

__all__ = [
    "Diagnostics",
    "VariantCheck",
    "ValidationReport",
    "reference_accelerations",
    "reference_simulate",
    "diagnostics",
    "cross_validate",
    "energy_drift",
    "CHECKSUM_RTOL",
]

# Relative checksum/position tolerances vs the oracle.  Wide enough to admit
# summation-order differences from tiling and threading, tight enough to
# reject algorithmic errors.  Calibration constants; adjust per CI host.
CHECKSUM_RTOL = {Precision.DOUBLE: 1e-9, Precision.SINGLE: 5e-4}


def _ordered_rowsum(rows: np.ndarray) -> np.ndarray:
    """Strict ascending-index sum along the last axis (no pairwise regroup)."""
    return np.add.accumulate(rows, axis=-1)[..., -1]


def _state_of(sys_: ParticleSystem) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    pos = sys_.position_matrix()
    vx, vy, vz = (np.asarray(v, dtype=np.float64) for v in sys_.coord_views("velocities"))
    vel = np.stack([vx, vy, vz], axis=1)
    masses = sys_.masses.astype(np.float64)
    return pos, vel, masses


def _pow15(d2: np.ndarray) -> np.ndarray:
    """Element-wise d2**1.5 through libm pow (np.power rounds differently by
    up to 1 ulp, which would spoil ulp-level kernel comparison)."""
    flat = d2.ravel()
    out = np.empty_like(flat)
    chunk = 1 << 16
    for lo in range(0, flat.shape[0], chunk):
        part = flat[lo : lo + chunk].tolist()
        out[lo : lo + len(part)] = [math.pow(v, 1.5) for v in part]
    return out.reshape(d2.shape)


def _oracle_accel(pos: np.ndarray, masses: np.ndarray, g: float, eps2: float) -> np.ndarray:
    """Full-matrix softened pairwise sum, float64, self term exactly zero.

    Term values mirror the kernels' algebra op for op; only the code path
    differs.  Rows are summed in strict ascending-j order so the result is
    directly comparable with the sequential kernels at the ulp level.
    """
    delta = pos[np.newaxis, :, :] - pos[:, np.newaxis, :]  # delta[i, j] = p_j - p_i
    d2 = delta[:, :, 0] * delta[:, :, 0] + delta[:, :, 1] * delta[:, :, 1]
    d2 = d2 + delta[:, :, 2] * delta[:, :, 2] + eps2
    with np.errstate(divide="ignore", invalid="ignore"):
        s = _pow15(d2)
        w = masses[np.newaxis, :, np.newaxis] * delta / s[:, :, np.newaxis]
    idx = np.arange(pos.shape[0])
    w[idx, idx, :] = 0.0
    acc = np.empty_like(pos)
    for k in range(3):
        acc[:, k] = g * _ordered_rowsum(w[:, :, k])
    return acc


def reference_accelerations(sys_: ParticleSystem, params: SimParams) -> AccelerationBuffer:
    """Oracle accelerations for the current state, always in double precision."""
    pos, _, masses = _state_of(sys_)
    acc = _oracle_accel(pos, masses, params.gravitational_constant, params.softening_sq)
    return AccelerationBuffer(
        np.ascontiguousarray(acc[:, 0]),
        np.ascontiguousarray(acc[:, 1]),
        np.ascontiguousarray(acc[:, 2]),
    )


def reference_simulate(sys_: ParticleSystem, params: SimParams) -> Tuple[np.ndarray, np.ndarray]:
    """Oracle trajectory: velocity Verlet in float64 matrix arithmetic.

    Returns final (positions, velocities) as (N, 3) arrays.  Matches the
    kernel step structure (per-step correction kick, final synchronization)
    without sharing any kernel code.
    """
    pos, vel, masses = _state_of(sys_)
    g, eps2, dt = params.gravitational_constant, params.softening_sq, params.dt
    prev: Optional[np.ndarray] = None
    for _ in range(params.steps):
        acc = _oracle_accel(pos, masses, g, eps2)
        if prev is not None:
            vel = vel + (acc - prev) * (0.5 * dt)
        dv = acc * dt
        pos = pos + (vel + 0.5 * dv) * dt
        vel = vel + dv
        prev = acc
    acc = _oracle_accel(pos, masses, g, eps2)
    vel = vel + (acc - prev) * (0.5 * dt)
    return pos, vel


@dataclass(frozen=True)
class Diagnostics:
    """Physics observables of one state, computed in double precision."""

    kinetic_energy: float
    potential_energy: float
    total_momentum: Tuple[float, float, float]
    checksum: float

    @property
    def total_energy(self) -> float:
        return self.kinetic_energy + self.potential_energy

    @property
    def momentum_magnitude(self) -> float:
        return math.sqrt(sum(c * c for c in self.total_momentum))


def diagnostics(sys_: ParticleSystem, params: SimParams) -> Diagnostics:
    pos, vel, masses = _state_of(sys_)
    ke = 0.5 * float(np.sum(masses * np.sum(vel * vel, axis=1)))
    g, eps2 = params.gravitational_constant, params.softening_sq
    pe = 0.0
    with np.errstate(divide="ignore", invalid="ignore"):
        for i in range(pos.shape[0] - 1):
            d = pos[i + 1 :] - pos[i]
            d2 = np.sum(d * d, axis=1) + eps2
            pe -= g * masses[i] * float(np.sum(masses[i + 1 :] / np.sqrt(d2)))
    mom = tuple(float(c) for c in masses @ vel)
    return Diagnostics(ke, pe, mom, checksum(sys_))


@dataclass(frozen=True)
class VariantCheck:
    """Oracle comparison for one (variant, precision) combination."""

    variant: KernelVariant
    precision: Precision
    checksum_dev: float
    position_dev: float
    accel_dev: float
    tolerance: float
    passed: bool
    reason: str = ""

    @property
    def label(self) -> str:
        return f"{self.variant.name} T={self.variant.threads} {self.precision.value}"


@dataclass
class ValidationReport:
    n_bodies: int
    steps: int
    seed: Seed
    checks: List[VariantCheck] = field(default_factory=list)
    momentum_drift: float = 0.0
    energy_drift_ratio: float = 0.0

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def render(self) -> str:
        lines = [
            f"validation: N={self.n_bodies} steps={self.steps} seed={self.seed.value}",
            f"reference momentum drift: {self.momentum_drift:.3e}",
            f"reference energy drift:   {self.energy_drift_ratio:.3e}",
            "",
            f"{'variant':<28} {'checksum dev':>13} {'position dev':>13} {'accel dev':>13} {'tol':>8}  result",
        ]
        for c in self.checks:
            status = "pass" if c.passed else f"FAIL {c.reason}".rstrip()
            lines.append(
                f"{c.label:<28} {c.checksum_dev:>13.3e} {c.position_dev:>13.3e} "
                f"{c.accel_dev:>13.3e} {c.tolerance:>8.0e}  {status}"
            )
        lines.append("")
        lines.append("result: " + ("all variants pass" if self.all_passed else "FAILURES present"))
        return "\n".join(lines)


def _rel_dev(value: float, reference: float) -> float:
    if reference == 0.0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def _position_dev(final: ParticleSystem, ref_pos: np.ndarray) -> float:
    """Max body displacement from the oracle, relative to the system scale."""
    diff = final.position_matrix() - ref_pos
    scale = float(np.max(np.linalg.norm(ref_pos, axis=1)))
    worst = float(np.max(np.linalg.norm(diff, axis=1)))
    return worst / scale if scale > 0 else worst


def _accel_dev(sys0: ParticleSystem, params: SimParams, variant: KernelVariant,
               want: AccelerationBuffer) -> float:
    """Max component-wise deviation of initial accelerations, relative to the
    body's oracle acceleration magnitude (robust to component cancellation).
    """
    got = AccelerationBuffer.allocate(sys0.count, sys0.precision)
    kernels.compute_accelerations(sys0, params, variant, got)
    norm = np.sqrt(want.x * want.x + want.y * want.y + want.z * want.z)
    denom = np.maximum(norm, np.finfo(np.float64).tiny)
    worst = 0.0
    for g_arr, w_arr in ((got.x, want.x), (got.y, want.y), (got.z, want.z)):
        g64 = np.asarray(g_arr, dtype=np.float64)
        worst = max(worst, float(np.max(np.abs(g64 - w_arr) / denom)))
    return worst


def cross_validate(n: int, steps: int, seed: Seed, params: SimParams,
                   variants: Sequence[KernelVariant],
                   precisions: Iterable[Precision] = (Precision.DOUBLE, Precision.SINGLE),
                   ) -> ValidationReport:
    """Simulate every variant from identical initial conditions and compare
    checksums, final positions, and initial accelerations against the oracle.
    """
    params = SimParams(params.gravitational_constant, params.dt, params.softening_sq, steps)
    report = ValidationReport(n_bodies=n, steps=steps, seed=seed)

    for precision in precisions:
        base = init_system(n, seed, precision)
        ref_acc = reference_accelerations(base, params)
        ref_pos, _ = reference_simulate(base, params)
        ref_checksum = 0.0
        per_body = (ref_pos[:, 0] + ref_pos[:, 1]) + ref_pos[:, 2]
        for v in per_body.tolist():
            ref_checksum += v
        tol = CHECKSUM_RTOL[precision]

        for variant in variants:
            sys0 = init_system(n, seed, precision, variant.layout)
            try:
                final = kernels.simulate(sys0, params, variant)
                cs = checksum(final)
                if not math.isfinite(cs):
                    report.checks.append(VariantCheck(
                        variant, precision, math.inf, math.inf, math.inf, tol,
                        passed=False, reason="non-finite state"))
                    continue
                cs_dev = _rel_dev(cs, ref_checksum)
                pos_dev = _position_dev(final, ref_pos)
                acc_dev = _accel_dev(sys0, params, variant, ref_acc)
                # Pass/fail gates on the checksum and on the pre-trajectory
                # acceleration comparison; the per-body position deviation is
                # reported but not gated (trajectory divergence amplifies
                # rounding far beyond the checksum, which cancels across
                # bodies).
                passed = cs_dev <= tol and acc_dev <= tol
                report.checks.append(VariantCheck(
                    variant, precision, cs_dev, pos_dev, acc_dev, tol, passed,
                    reason="" if passed else "tolerance exceeded"))
            except ValueError as exc:
                report.checks.append(VariantCheck(
                    variant, precision, math.inf, math.inf, math.inf, tol,
                    passed=False, reason=str(exc)))

    ref = kernels.reference_variant()
    sys0 = init_system(n, seed, Precision.DOUBLE)
    d0 = diagnostics(sys0, params)
    final = kernels.simulate(sys0, params, ref)
    d1 = diagnostics(final, params)
    v = np.stack([np.asarray(a, np.float64) for a in final.coord_views("velocities")], axis=1)
    m = final.masses.astype(np.float64)
    momentum_scale = float(np.sum(m * np.linalg.norm(v, axis=1)))
    report.momentum_drift = (
        d1.momentum_magnitude / momentum_scale if momentum_scale > 0 else d1.momentum_magnitude
    )
    report.energy_drift_ratio = (
        abs(d1.total_energy - d0.total_energy) / abs(d0.total_energy)
        if d0.total_energy != 0 else abs(d1.total_energy)
    )
    return report


def energy_drift(sys0: ParticleSystem, params: SimParams, variant: KernelVariant) -> float:
    """|E_final - E_initial| / |E_initial| over params.steps (absolute drift
    when the initial energy is exactly zero).
    """
    e0 = diagnostics(sys0, params).total_energy
    final = kernels.simulate(sys0, params, variant)
    e1 = diagnostics(final, params).total_energy
    if e0 == 0.0:
        return abs(e1 - e0)
    return abs(e1 - e0) / abs(e0)
