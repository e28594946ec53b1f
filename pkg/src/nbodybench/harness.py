"""Benchmark harness: times kernel configurations with a monotonic clock and
converts wall time to GFLOPS via the 20*N^2*I convention (20 floating-point
operations per pairwise interaction, a reporting constant).

The harness itself is single-threaded; kernels parallelize internally.
Initialization and warm-up runs are never part of reported times.
"""

from __future__ import annotations

import logging
import math
import platform
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Callable, List, Optional, Set, Tuple

from . import kernels
from .core import ParticleSystem, Precision, Seed, SimParams, checksum, init_system
from .kernels import KernelVariant

__all__ = [
    "BenchConfig",
    "BenchResult",
    "SweepPlan",
    "gflops",
    "measure",
    "run_sweep",
    "result_key",
    "host_label",
]

log = logging.getLogger(__name__)

FLOPS_PER_INTERACTION = 20


def gflops(n: int, steps: int, seconds: float) -> float:
    """GFLOPS = 20 * n^2 * steps / (seconds * 1e9)."""
    if n < 1:
        raise ValueError("n must be positive")
    if steps < 1:
        raise ValueError("steps must be positive")
    if not seconds > 0:
        raise ValueError(f"seconds must be positive, got {seconds!r}")
    return (FLOPS_PER_INTERACTION * float(n) * float(n) * float(steps)) / (seconds * 1e9)


def host_label() -> str:
    import os

    return f"{platform.node() or 'unknown'}/{platform.machine()}/{os.cpu_count()}c"


@dataclass(frozen=True)
class BenchConfig:
    """One measurable configuration."""

    n_bodies: int
    steps: int
    variant: KernelVariant
    precision: Precision = Precision.DOUBLE
    seed: Seed = Seed(42)
    repetitions: int = 5
    warmup_runs: int = 1
    gravitational_constant: float = 1.0
    dt: float = 0.01
    softening_sq: float = 1e-9

    def __post_init__(self):
        if self.n_bodies < 1:
            raise ValueError("n_bodies must be >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        if self.warmup_runs < 0:
            raise ValueError("warmup_runs must be >= 0")

    def sim_params(self) -> SimParams:
        return SimParams(self.gravitational_constant, self.dt, self.softening_sq, self.steps)


@dataclass
class BenchResult:
    """Outcome of one configuration: all repetition times plus derived stats.

    status is "ok", "skipped", or "error:<reason>"; metric fields are None
    for rows that were never measured.
    """

    config: BenchConfig
    times_s: List[float] = field(default_factory=list)
    best_time_s: Optional[float] = None
    mean_time_s: Optional[float] = None
    gflops_best: Optional[float] = None
    gflops_mean: Optional[float] = None
    checksum: Optional[float] = None
    status: str = "ok"
    backend: str = ""
    host_label: str = ""
    timestamp_utc: str = ""
    # Thread count the sweep asked for; differs from config.variant.threads
    # only for skipped records whose combination cannot be constructed.
    threads: Optional[int] = None

    def __post_init__(self):
        if self.threads is None:
            self.threads = self.config.variant.threads

    @property
    def variant_label(self) -> str:
        suffix = "@numpy" if self.backend == "numpy" else ""
        return self.config.variant.name + suffix


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def measure(config: BenchConfig, *,
            init_fn: Callable[..., ParticleSystem] = init_system,
            clock: Callable[[], float] = time.perf_counter,
            simulate_fn=None) -> BenchResult:
    """Time `repetitions` simulations of one configuration.

    The system is initialized once (outside the clock); each repetition
    simulates a fresh copy of it.  Warm-up runs are identical but untimed.
    The reported checksum comes from the final state of the last repetition.
    """
    simulate = simulate_fn or kernels.simulate
    params = config.sim_params()
    variant = config.variant
    sys0 = init_fn(config.n_bodies, config.seed, config.precision, variant.layout)

    for _ in range(config.warmup_runs):
        simulate(sys0, params, variant)

    times: List[float] = []
    final = None
    for _ in range(config.repetitions):
        t0 = clock()
        final = simulate(sys0, params, variant)
        t1 = clock()
        times.append(t1 - t0)

    cs = checksum(final)
    best = min(times)
    mean = sum(times) / len(times)
    status = "ok" if math.isfinite(cs) else "error:non-finite checksum"
    return BenchResult(
        config=config,
        times_s=times,
        best_time_s=best,
        mean_time_s=mean,
        gflops_best=gflops(config.n_bodies, config.steps, best),
        gflops_mean=gflops(config.n_bodies, config.steps, mean),
        checksum=cs,
        status=status,
        backend=kernels.get_backend(),
        host_label=host_label(),
        timestamp_utc=_utc_now(),
    )


@dataclass(frozen=True)
class SweepPlan:
    """Cross product of sweep axes; invalid combinations are skipped and logged."""

    n_values: Tuple[int, ...]
    thread_counts: Tuple[int, ...] = (1,)
    variants: Tuple[KernelVariant, ...] = ()
    precisions: Tuple[Precision, ...] = (Precision.DOUBLE,)
    steps: int = 100
    seed: Seed = Seed(42)
    repetitions: int = 5
    warmup_runs: int = 1
    gravitational_constant: float = 1.0
    dt: float = 0.01
    softening_sq: float = 1e-9

    def combinations(self):
        """Deterministic order: variants outer, then precision, threads, and
        n ascending innermost."""
        for template in self.variants:
            for precision in self.precisions:
                for threads in self.thread_counts:
                    for n in sorted(self.n_values):
                        yield template, precision, threads, n


def result_key(variant_label: str, n: int, threads: int, precision: Precision) -> tuple:
    """Resume identity of one sweep row."""
    return (variant_label, int(n), int(threads), precision.value)


def _backend_suffix() -> str:
    return "@numpy" if kernels.get_backend() == "numpy" else ""


def run_sweep(plan: SweepPlan, sink: Optional[Callable[[BenchResult], None]] = None,
              skip_keys: Optional[Set[tuple]] = None) -> List[BenchResult]:
    """Measure every valid combination, streaming each result to `sink` as it
    completes.  Invalid combinations become `skipped` records; a failing
    measurement becomes an `error:` record and the sweep continues.
    Combinations whose resume key is in `skip_keys` are not re-run.
    """
    skip_keys = skip_keys or set()
    results: List[BenchResult] = []
    suffix = _backend_suffix()

    for template, precision, threads, n in plan.combinations():
        try:
            variant = template.with_threads(threads)
            variant.validate_for(n)
            invalid_reason = None
        except ValueError as exc:
            variant = template  # keep the template identity for the record
            invalid_reason = str(exc)

        label = (variant.name if invalid_reason is None else template.name) + suffix
        key = result_key(label, n, threads, precision)
        if key in skip_keys:
            log.info("resume: skipping completed %s", key)
            continue

        config = BenchConfig(
            n_bodies=n, steps=plan.steps, variant=variant, precision=precision,
            seed=plan.seed, repetitions=plan.repetitions, warmup_runs=plan.warmup_runs,
            gravitational_constant=plan.gravitational_constant, dt=plan.dt,
            softening_sq=plan.softening_sq,
        )

        if invalid_reason is not None:
            log.warning("skipping %s n=%d T=%d %s: %s", template.name, n, threads,
                        precision.value, invalid_reason)
            result = BenchResult(config=config, status="skipped",
                                 backend=kernels.get_backend(),
                                 host_label=host_label(), timestamp_utc=_utc_now(),
                                 threads=threads)
        else:
            log.info("measuring %s n=%d T=%d %s", variant.name, n, threads, precision.value)
            try:
                result = measure(config)
            except Exception as exc:  # record and continue
                log.error("measurement failed for %s: %s", key, exc)
                reason = str(exc).replace(",", ";").replace("\n", " ")
                result = BenchResult(config=config, status=f"error:{reason}",
                                     backend=kernels.get_backend(),
                                     host_label=host_label(), timestamp_utc=_utc_now())

        results.append(result)
        if sink is not None:
            sink(result)
    return results
