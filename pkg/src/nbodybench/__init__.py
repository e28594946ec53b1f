"""All-pairs gravitational N-body kernels with an incremental optimization
ladder (memory layout, blocking, math form, precision, threads), a GFLOPS
benchmark harness, and a brute-force validation oracle.
"""

from .core import (Layout, ParticleSystem, Precision, Seed, SimParams,
                   checksum, convert_layout, format_checksum, init_system,
                   system_from_arrays)
from .harness import BenchConfig, BenchResult, SweepPlan, gflops, measure, run_sweep
from .kernels import (AccelerationBuffer, KernelVariant, MathForm,
                      compute_accelerations, get_backend, integrate_step,
                      ladder, reference_variant, set_backend, simulate)
from .validation import (Diagnostics, ValidationReport, cross_validate,
                         diagnostics, energy_drift, reference_accelerations,
                         reference_simulate)

__version__ = "0.1.0"

__all__ = [
    "Layout", "ParticleSystem", "Precision", "Seed", "SimParams",
    "checksum", "convert_layout", "format_checksum", "init_system",
    "system_from_arrays",
    "BenchConfig", "BenchResult", "SweepPlan", "gflops", "measure", "run_sweep",
    "AccelerationBuffer", "KernelVariant", "MathForm",
    "compute_accelerations", "integrate_step", "simulate",
    "ladder", "reference_variant", "get_backend", "set_backend",
    "Diagnostics", "ValidationReport", "cross_validate", "diagnostics",
    "energy_drift", "reference_accelerations", "reference_simulate",
    "__version__",
]
