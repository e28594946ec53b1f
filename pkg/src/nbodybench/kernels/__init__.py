"""Force-and-integrate kernels for every point on the optimization ladder
(layout x math form x blocking x threads), backed by a compiled extension
with a NumPy fallback selected at import time.

Each simulation step obeys two data dependencies: every acceleration is
computed before any body moves, and every body moves before the next step
starts.  The step loop realizes velocity Verlet with one force evaluation
per step: the stored acceleration of the previous step completes each
trapezoidal velocity kick, and one extra evaluation after the last step
synchronizes the velocities with the final positions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import numpy as np

from ..core import Layout, ParticleSystem, Precision, SimParams

__all__ = [
    "MathForm",
    "KernelVariant",
    "AccelerationBuffer",
    "compute_accelerations",
    "integrate_step",
    "simulate",
    "reference_variant",
    "ladder",
    "get_backend",
    "set_backend",
    "available_backends",
]

try:
    from . import _accel_cy

    _HAVE_COMPILED = True
except ImportError:
    _accel_cy = None
    _HAVE_COMPILED = False

from . import _accel_np

_BACKENDS = {"numpy": _accel_np}
if _HAVE_COMPILED:
    _BACKENDS["cext"] = _accel_cy

_DEFAULT = os.environ.get("NBODYBENCH_BACKEND", "cext" if _HAVE_COMPILED else "numpy")
if _DEFAULT not in _BACKENDS:
    raise ImportError(
        f"NBODYBENCH_BACKEND={_DEFAULT!r} is not available; "
        f"choose from {sorted(_BACKENDS)}"
    )
_impl = _BACKENDS[_DEFAULT]


def available_backends() -> list:
    return sorted(_BACKENDS)


def get_backend() -> str:
    return _impl.NAME


def set_backend(name: str) -> str:
    """Switch the active kernel backend; returns the previous backend name.

    Not thread-safe; the harness runs one measurement at a time.
    """
    global _impl
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; available: {sorted(_BACKENDS)}")
    previous = _impl.NAME
    _impl = _BACKENDS[name]
    return previous


class MathForm(Enum):
    POW_THEN_DIVIDE = "pow"
    RECIPROCAL_MULTIPLY = "recip"

    @classmethod
    def parse(cls, token: str) -> "MathForm":
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"unknown math form {token!r} (expected 'pow' or 'recip')")


@dataclass(frozen=True)
class KernelVariant:
    """One point on the optimization ladder.

    The aos rung predates every later optimization, so it admits only the
    pow-then-divide math form, no blocking, and a single thread.
    """

    layout: Layout = Layout.SOA
    math_form: MathForm = MathForm.POW_THEN_DIVIDE
    block: Optional[int] = None
    threads: int = 1

    def __post_init__(self):
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.block is not None and self.block < 1:
            raise ValueError("block size must be >= 1 when given")
        if self.layout is Layout.AOS:
            if self.math_form is not MathForm.POW_THEN_DIVIDE:
                raise ValueError("aos layout supports only the pow math form")
            if self.block is not None:
                raise ValueError("aos layout does not support blocking")
            if self.threads != 1:
                raise ValueError("aos layout is sequential (threads must be 1)")

    def validate_for(self, n: int) -> None:
        if self.block is not None and self.block > n:
            raise ValueError(f"block size {self.block} exceeds body count {n}")

    def with_threads(self, threads: int) -> "KernelVariant":
        return replace(self, threads=threads)

    @property
    def name(self) -> str:
        """Display name: layout, then non-default math form, then block size."""
        parts = [self.layout.value]
        if self.math_form is MathForm.RECIPROCAL_MULTIPLY:
            parts.append("recip")
        if self.block is not None:
            parts.append(f"b{self.block}")
        return "-".join(parts)


def reference_variant() -> KernelVariant:
    """Unblocked sequential soa pow-then-divide: the comparison baseline."""
    return KernelVariant(Layout.SOA, MathForm.POW_THEN_DIVIDE, None, 1)


def ladder(blocks=(8, 64, 256), thread_counts=(1, 2, 4)) -> list:
    """Every ladder rung: aos, then soa across math form, blocking, threads."""
    variants = [KernelVariant(Layout.AOS)]
    for math_form in MathForm:
        for block in (None, *blocks):
            for threads in thread_counts:
                variants.append(KernelVariant(Layout.SOA, math_form, block, threads))
    return variants


@dataclass
class AccelerationBuffer:
    """Per-axis acceleration accumulators, matching the system precision."""

    x: np.ndarray
    y: np.ndarray
    z: np.ndarray

    @classmethod
    def allocate(cls, n: int, precision: Precision) -> "AccelerationBuffer":
        dtype = precision.dtype
        return cls(np.zeros(n, dtype), np.zeros(n, dtype), np.zeros(n, dtype))

    @property
    def count(self) -> int:
        return int(self.x.shape[0])


def _check(sys_: ParticleSystem, variant: KernelVariant, out: AccelerationBuffer) -> None:
    if sys_.layout is not variant.layout:
        raise ValueError(
            f"system layout {sys_.layout.value} does not match variant layout {variant.layout.value}"
        )
    variant.validate_for(sys_.count)
    if out.count != sys_.count:
        raise ValueError("acceleration buffer length must equal the body count")
    if out.x.dtype != sys_.precision.dtype:
        raise ValueError("acceleration buffer precision must match the system")


def compute_accelerations(sys_: ParticleSystem, params: SimParams,
                          variant: KernelVariant, out: AccelerationBuffer) -> None:
    """Softened all-pairs gravitational accelerations.

    out_i = G * sum_j m_j (p_j - p_i) / (|p_j - p_i|^2 + eps2)^(3/2), the
    self term contributing exactly zero.  All variants compute the same
    quantity; they differ in layout, tiling, thread partitioning, and the
    algebraic form of the denominator.  With softening_sq = 0 and coincident
    bodies the output is non-finite; kernels do not check.
    """
    _check(sys_, variant, out)
    g = params.gravitational_constant
    eps2 = params.softening_sq
    if variant.layout is Layout.AOS:
        _impl.accel_aos(sys_.positions, sys_.masses, g, eps2, out.x, out.y, out.z)
    else:
        px, py, pz = sys_.positions
        recip = variant.math_form is MathForm.RECIPROCAL_MULTIPLY
        _impl.accel_soa(px, py, pz, sys_.masses, g, eps2, recip,
                        variant.block or 0, variant.threads, out.x, out.y, out.z)


def integrate_step(sys_: ParticleSystem, acc: AccelerationBuffer,
                   params: SimParams, variant: KernelVariant) -> None:
    """One kick-drift update from freshly computed accelerations:
    v += a*dt and p += (v_old + a*dt/2)*dt for every body.
    """
    _check(sys_, variant, acc)
    dt = params.dt
    if variant.layout is Layout.AOS:
        _impl.step_aos(sys_.positions, sys_.velocities, acc.x, acc.y, acc.z, dt)
    else:
        px, py, pz = sys_.positions
        vx, vy, vz = sys_.velocities
        _impl.step_soa(px, py, pz, vx, vy, vz, acc.x, acc.y, acc.z, dt, variant.threads)


def _kick(sys_: ParticleSystem, new: AccelerationBuffer, old: AccelerationBuffer,
          factor: float) -> None:
    """v += (new - old) * factor, in system precision, for either layout."""
    f = sys_.precision.dtype.type(factor)
    vx, vy, vz = sys_.coord_views("velocities")
    vx += (new.x - old.x) * f
    vy += (new.y - old.y) * f
    vz += (new.z - old.z) * f


def simulate(sys_: ParticleSystem, params: SimParams,
             variant: KernelVariant) -> ParticleSystem:
    """Run `params.steps` force/update iterations and return the final system.

    The input system is left untouched.  Each iteration computes all
    accelerations, completes the previous step's trapezoidal velocity kick,
    then moves every body; a final force evaluation synchronizes velocities
    with the final positions (steps + 1 evaluations in total).  Deterministic
    for fixed inputs, variant, and thread count.
    """
    state = sys_.copy()
    n = state.count
    acc = AccelerationBuffer.allocate(n, state.precision)
    prev = AccelerationBuffer.allocate(n, state.precision)
    half_dt = 0.5 * params.dt
    for step in range(params.steps):
        compute_accelerations(state, params, variant, acc)
        if step > 0:
            _kick(state, acc, prev, half_dt)
        integrate_step(state, acc, params, variant)
        acc, prev = prev, acc
    compute_accelerations(state, params, variant, acc)
    _kick(state, acc, prev, half_dt)
    return state
