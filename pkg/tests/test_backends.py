"""Compiled-extension vs NumPy-fallback agreement, and a small benchmark
comparing the two (the fallback exists for portability; the extension is the
performance path)."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import nbodybench as nb
from nbodybench.harness import BenchConfig, measure

from conftest import DEFAULT_PARAMS, GOLDEN_SIM_CHECKSUM, GOLDEN_SIM_RTOL

needs_both = pytest.mark.skipif(
    "cext" not in nb.kernels.available_backends(),
    reason="compiled extension not available",
)


def _with_backend(name, fn):
    previous = nb.set_backend(name)
    try:
        return fn()
    finally:
        nb.set_backend(previous)


@needs_both
@pytest.mark.parametrize("variant", [
    nb.reference_variant(),
    nb.KernelVariant(nb.Layout.AOS),
    nb.KernelVariant(nb.Layout.SOA, nb.MathForm.RECIPROCAL_MULTIPLY),
    nb.KernelVariant(nb.Layout.SOA, block=32),
    nb.reference_variant().with_threads(2),
], ids=lambda v: f"{v.name}-T{v.threads}")
def test_backends_accelerations_agree(variant):
    sys_ = nb.init_system(128, nb.Seed(42), layout=variant.layout)

    def compute():
        out = nb.AccelerationBuffer.allocate(128, nb.Precision.DOUBLE)
        nb.compute_accelerations(sys_, DEFAULT_PARAMS, variant, out)
        return out

    a = _with_backend("cext", compute)
    b = _with_backend("numpy", compute)
    assert_allclose(b.x, a.x, rtol=1e-13)
    assert_allclose(b.y, a.y, rtol=1e-13)
    assert_allclose(b.z, a.z, rtol=1e-13)


@needs_both
def test_backends_simulation_checksums_agree():
    def run():
        sys_ = nb.init_system(256, nb.Seed(42))
        return nb.checksum(nb.simulate(sys_, DEFAULT_PARAMS, nb.reference_variant()))

    a = _with_backend("cext", run)
    b = _with_backend("numpy", run)
    assert abs(a - b) / abs(a) <= 1e-12
    for value in (a, b):
        assert abs(value - GOLDEN_SIM_CHECKSUM) <= GOLDEN_SIM_RTOL * abs(GOLDEN_SIM_CHECKSUM)


@needs_both
def test_backend_env_override(monkeypatch):
    assert nb.get_backend() in nb.kernels.available_backends()
    with pytest.raises(ValueError):
        nb.set_backend("fortran")


@needs_both
@pytest.mark.perf
def test_benchmark_compiled_vs_fallback(capsys):
    """Informational comparison; asserts only that both produce valid results."""
    rows = []
    for backend in ("cext", "numpy"):
        def bench():
            config = BenchConfig(n_bodies=1024, steps=2, variant=nb.reference_variant(),
                                 repetitions=2, warmup_runs=1)
            return measure(config)

        result = _with_backend(backend, bench)
        assert result.status == "ok"
        rows.append((backend, result.best_time_s, result.gflops_best))

    with capsys.disabled():
        print("\nbackend comparison (N=1024, steps=2, best of 2):")
        for backend, t, g in rows:
            print(f"  {backend:>6}: {t:.4f} s  {g:8.3f} GFLOPS")
        print(f"  compiled speedup over fallback: {rows[1][1] / rows[0][1]:.1f}x")
