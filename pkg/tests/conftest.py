import numpy as np
import pytest

import nbodybench as nb

# Golden constants, frozen from the independent pure-Python oracle
# (splitmix64 recurrence + brute-force pairwise sum + order-fixed checksum).
SPLITMIX64_SEED42_FIRST16 = [
    13679457532755275413, 2949826092126892291, 5139283748462763858,
    6349198060258255764, 701532786141963250, 16015981125662989062,
    4028864712777624925, 14769051326987775908, 6270620877612482005,
    11408980392250668974, 3779771651426294207, 9094045341461139646,
    9470486766231111398, 9592552252706221495, 12270025419241524956,
    3752715396868486130,
]

UNIT_DOUBLES_SEED42_FIRST4 = [
    0.7415648787718233, 0.1599103928769201,
    0.27860113025513866, 0.34419071652363753,
]

# checksum(init_system(256, Seed(42), double)); exact (shared order-fixed path)
GOLDEN_INIT_CHECKSUM = 375.32938863228213

# checksum after simulate(N=256, steps=10, seed=42, G=1, dt=0.01, eps2=1e-9,
# double, reference variant); compiled kernels reproduce it bitwise, the
# NumPy fallback to ~8e-14 (pairwise reduction), hence the shared tolerance.
GOLDEN_SIM_CHECKSUM = 387.73663935192604
GOLDEN_SIM_RTOL = 1e-12

DEFAULT_PARAMS = nb.SimParams(1.0, 0.01, 1e-9, 10)


def two_body_system(precision=nb.Precision.DOUBLE, layout=nb.Layout.SOA):
    """Unit two-body case: masses 1,1 at (0,0,0) and (1,0,0), at rest."""
    return nb.system_from_arrays(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
        np.zeros((2, 3)),
        [1.0, 1.0],
        layout=layout,
        precision=precision,
    )


def unit_square_system():
    """Four unit masses on the corners of the unit square in the z=0 plane."""
    return nb.system_from_arrays(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [1.0, 1.0, 0.0]],
        np.zeros((4, 3)),
        np.ones(4),
    )


@pytest.fixture(params=nb.kernels.available_backends())
def backend(request):
    """Run a test under every available kernel backend."""
    previous = nb.set_backend(request.param)
    yield request.param
    nb.set_backend(previous)


@pytest.fixture
def compiled_only():
    if "cext" not in nb.kernels.available_backends():
        pytest.skip("compiled extension not available")
    previous = nb.set_backend("cext")
    yield "cext"
    nb.set_backend(previous)
