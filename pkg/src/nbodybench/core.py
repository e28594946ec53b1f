"""Particle-system data model: deterministic initialization, precision and
memory-layout handling, and the order-fixed position checksum shared by every
kernel variant and by external reimplementations.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "Precision",
    "Layout",
    "Seed",
    "SimParams",
    "ParticleSystem",
    "init_system",
    "convert_layout",
    "checksum",
    "format_checksum",
    "system_from_arrays",
    "splitmix64_stream",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class Precision(Enum):
    SINGLE = "single"
    DOUBLE = "double"

    @property
    def dtype(self) -> np.dtype:
        return np.dtype(np.float32 if self is Precision.SINGLE else np.float64)

    @classmethod
    def parse(cls, token: str) -> "Precision":
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"unknown precision {token!r} (expected 'single' or 'double')")


class Layout(Enum):
    AOS = "aos"
    SOA = "soa"

    @classmethod
    def parse(cls, token: str) -> "Layout":
        try:
            return cls(token)
        except ValueError:
            raise ValueError(f"unknown layout {token!r} (expected 'aos' or 'soa')")


@dataclass(frozen=True)
class Seed:
    """64-bit unsigned seed for the pinned splitmix64 generator."""

    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or not 0 <= self.value <= _MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.value!r}")


@dataclass(frozen=True)
class SimParams:
    """Physics constants governing one simulation."""

    gravitational_constant: float = 1.0
    dt: float = 0.01
    softening_sq: float = 1e-9
    steps: int = 100

    def __post_init__(self):
        if not self.gravitational_constant > 0:
            raise ValueError("gravitational_constant must be positive")
        if not self.dt > 0:
            raise ValueError("dt must be positive")
        if self.softening_sq < 0:
            raise ValueError("softening_sq must be non-negative")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")


def splitmix64_stream(seed: int, count: int) -> np.ndarray:
    """First `count` outputs of splitmix64 for `seed`, as uint64.

    Recurrence: state += 0x9E3779B97F4A7C15; z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
    output z ^ (z >> 31); all arithmetic mod 2**64.

    The additive state walk has the closed form state_k = seed + k*gamma,
    so the stream vectorizes; uint64 ops wrap mod 2**64 like the recurrence.
    """
    k = np.arange(1, count + 1, dtype=np.uint64)
    z = np.uint64(seed & _MASK64) + k * np.uint64(_GAMMA)
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def _units(seed: int, count: int) -> np.ndarray:
    """splitmix64 outputs mapped to [0, 1) via (z >> 11) * 2**-53, float64."""
    z = splitmix64_stream(seed, count)
    return (z >> np.uint64(11)).astype(np.float64) * 2.0**-53


@dataclass
class ParticleSystem:
    """State of N bodies in a declared memory layout and precision.

    soa: positions/velocities are (x, y, z) tuples of contiguous 1-D arrays.
    aos: positions/velocities are C-contiguous (N, 3) record arrays.
    """

    layout: Layout
    precision: Precision
    positions: object
    velocities: object
    masses: np.ndarray

    @property
    def count(self) -> int:
        return int(self.masses.shape[0])

    def coord_views(self, field: str = "positions"):
        """(x, y, z) 1-D views of positions or velocities, for either layout."""
        data = getattr(self, field)
        if self.layout is Layout.SOA:
            return data
        return data[:, 0], data[:, 1], data[:, 2]

    def position_matrix(self) -> np.ndarray:
        """Positions as a float64 (N, 3) matrix (always a copy)."""
        if self.layout is Layout.AOS:
            return self.positions.astype(np.float64)
        x, y, z = self.positions
        return np.stack([x, y, z], axis=1).astype(np.float64)

    def copy(self) -> "ParticleSystem":
        if self.layout is Layout.SOA:
            pos = tuple(a.copy() for a in self.positions)
            vel = tuple(a.copy() for a in self.velocities)
        else:
            pos = self.positions.copy()
            vel = self.velocities.copy()
        return ParticleSystem(self.layout, self.precision, pos, vel, self.masses.copy())

    def validate(self) -> None:
        n = self.count
        if n < 1:
            raise ValueError("particle system must contain at least one body")
        dtype = self.precision.dtype
        if self.layout is Layout.SOA:
            arrays = [*self.positions, *self.velocities, self.masses]
            for a in arrays:
                if a.ndim != 1 or a.shape[0] != n:
                    raise ValueError("soa buffers must be 1-D with one entry per body")
                if not a.flags["C_CONTIGUOUS"]:
                    raise ValueError("soa buffers must be contiguous")
        else:
            for a in (self.positions, self.velocities):
                if a.shape != (n, 3) or not a.flags["C_CONTIGUOUS"]:
                    raise ValueError("aos buffers must be contiguous (N, 3) arrays")
            arrays = [self.positions, self.velocities, self.masses]
        for a in arrays:
            if a.dtype != dtype:
                raise ValueError(f"buffer dtype {a.dtype} does not match precision {self.precision.value}")
            if not np.all(np.isfinite(a)):
                raise ValueError("particle state contains non-finite values")
        if not np.all(self.masses > 0):
            raise ValueError("all masses must be strictly positive")


def system_from_arrays(positions, velocities, masses, layout=Layout.SOA,
                       precision=Precision.DOUBLE) -> ParticleSystem:
    """Build a validated system from (N, 3)-shaped position/velocity arrays."""
    layout = Layout(layout) if not isinstance(layout, Layout) else layout
    precision = Precision(precision) if not isinstance(precision, Precision) else precision
    dtype = precision.dtype
    pos = np.ascontiguousarray(positions, dtype=dtype)
    vel = np.ascontiguousarray(velocities, dtype=dtype)
    m = np.ascontiguousarray(masses, dtype=dtype)
    if layout is Layout.SOA:
        pos = tuple(np.ascontiguousarray(pos[:, k]) for k in range(3))
        vel = tuple(np.ascontiguousarray(vel[:, k]) for k in range(3))
    sys_ = ParticleSystem(layout, precision, pos, vel, m)
    sys_.validate()
    return sys_


def init_system(n: int, seed: Seed, precision: Precision = Precision.DOUBLE,
                layout: Layout = Layout.SOA) -> ParticleSystem:
    """Deterministic initial conditions from the pinned splitmix64 stream.

    Per body, in ascending index order, four stream values are consumed as
    (x, y, z, mass-draw): positions uniform in [0,1)^3, masses 1-u in (0,1],
    velocities zero.  The stream is generated in double precision and rounded
    once when a single-precision system is requested, so single and double
    systems share initial conditions up to rounding.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    if not isinstance(seed, Seed):
        seed = Seed(int(seed))
    draws = _units(seed.value, 4 * n).reshape(n, 4)
    px, py, pz = draws[:, 0].copy(), draws[:, 1].copy(), draws[:, 2].copy()
    masses = 1.0 - draws[:, 3]

    dtype = precision.dtype
    px, py, pz = px.astype(dtype), py.astype(dtype), pz.astype(dtype)
    masses = masses.astype(dtype)
    zeros = lambda: np.zeros(n, dtype=dtype)

    sys_ = ParticleSystem(Layout.SOA, precision, (px, py, pz),
                          (zeros(), zeros(), zeros()), masses)
    if layout is Layout.AOS:
        sys_ = convert_layout(sys_, Layout.AOS)
    return sys_


def convert_layout(sys_: ParticleSystem, target: Layout) -> ParticleSystem:
    """Rebuild `sys_` in `target` layout; every scalar is bitwise preserved."""
    target = Layout(target) if not isinstance(target, Layout) else target
    if target is sys_.layout:
        return sys_.copy()
    if target is Layout.AOS:
        pos = np.ascontiguousarray(np.stack(sys_.positions, axis=1))
        vel = np.ascontiguousarray(np.stack(sys_.velocities, axis=1))
    else:
        pos = tuple(np.ascontiguousarray(sys_.positions[:, k]) for k in range(3))
        vel = tuple(np.ascontiguousarray(sys_.velocities[:, k]) for k in range(3))
    return ParticleSystem(target, sys_.precision, pos, vel, sys_.masses.copy())


def checksum(sys_: ParticleSystem) -> float:
    """Sum of (x + y + z) over all bodies, accumulated in double precision in
    body-index order.  Layout-invariant because the per-body values and the
    accumulation order are fixed.
    """
    x, y, z = (np.asarray(c, dtype=np.float64) for c in sys_.coord_views("positions"))
    per_body = (x + y) + z
    total = 0.0
    for v in per_body.tolist():
        total += v
    return total


def format_checksum(value: float) -> str:
    """Render a checksum with 17 significant digits (round-trip safe)."""
    return f"{value:.17g}"
