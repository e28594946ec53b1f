import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import nbodybench as nb
from nbodybench.core import splitmix64_stream

from conftest import (GOLDEN_INIT_CHECKSUM, SPLITMIX64_SEED42_FIRST16,
                      UNIT_DOUBLES_SEED42_FIRST4)

MASK64 = (1 << 64) - 1


def splitmix64_recurrence(seed, count):
    """Sequential reference recurrence, independent of the vectorized path."""
    out, state = [], seed & MASK64
    for _ in range(count):
        state = (state + 0x9E3779B97F4A7C15) & MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        out.append(z ^ (z >> 31))
    return out


def test_splitmix64_golden_first16():
    got = [int(v) for v in splitmix64_stream(42, 16)]
    assert got == SPLITMIX64_SEED42_FIRST16


@given(seed=st.integers(min_value=0, max_value=MASK64))
@settings(max_examples=50, deadline=None)
def test_splitmix64_matches_recurrence(seed):
    got = [int(v) for v in splitmix64_stream(seed, 8)]
    assert got == splitmix64_recurrence(seed, 8)


def test_seed_validation():
    nb.Seed(0)
    nb.Seed(MASK64)
    with pytest.raises(ValueError):
        nb.Seed(-1)
    with pytest.raises(ValueError):
        nb.Seed(1 << 64)


def test_init_rejects_zero_bodies():
    with pytest.raises(ValueError):
        nb.init_system(0, nb.Seed(1))


def test_init_deterministic():
    a = nb.init_system(17, nb.Seed(7))
    b = nb.init_system(17, nb.Seed(7))
    for u, v in zip(a.positions, b.positions):
        assert np.array_equal(u, v)
    assert np.array_equal(a.masses, b.masses)


def test_init_body0_is_first_three_outputs():
    sys_ = nb.init_system(2, nb.Seed(42))
    px, py, pz = sys_.positions
    assert px[0] == UNIT_DOUBLES_SEED42_FIRST4[0]
    assert py[0] == UNIT_DOUBLES_SEED42_FIRST4[1]
    assert pz[0] == UNIT_DOUBLES_SEED42_FIRST4[2]
    # fourth draw is the mass draw: mass = 1 - u
    assert sys_.masses[0] == 1.0 - UNIT_DOUBLES_SEED42_FIRST4[3]


def test_init_distribution_bounds():
    sys_ = nb.init_system(512, nb.Seed(3))
    for c in sys_.positions:
        assert np.all((c >= 0.0) & (c < 1.0))
    for v in sys_.velocities:
        assert np.all(v == 0.0)
    assert np.all((sys_.masses > 0.0) & (sys_.masses <= 1.0))


def test_single_is_rounded_double():
    d = nb.init_system(64, nb.Seed(9), nb.Precision.DOUBLE)
    s = nb.init_system(64, nb.Seed(9), nb.Precision.SINGLE)
    for cd, cs in zip(d.positions, s.positions):
        assert np.array_equal(cd.astype(np.float32), cs)
    assert np.array_equal(d.masses.astype(np.float32), s.masses)


@given(n=st.integers(min_value=1, max_value=48),
       seed=st.integers(min_value=0, max_value=MASK64),
       precision=st.sampled_from(list(nb.Precision)))
@settings(max_examples=40, deadline=None)
def test_layout_round_trip_bitwise(n, seed, precision):
    soa = nb.init_system(n, nb.Seed(seed), precision)
    back = nb.convert_layout(nb.convert_layout(soa, nb.Layout.AOS), nb.Layout.SOA)
    for u, v in zip(soa.positions, back.positions):
        assert np.array_equal(u, v)
    for u, v in zip(soa.velocities, back.velocities):
        assert np.array_equal(u, v)
    assert np.array_equal(soa.masses, back.masses)


def test_convert_layout_identity_is_copy():
    sys_ = nb.init_system(8, nb.Seed(5))
    same = nb.convert_layout(sys_, nb.Layout.SOA)
    assert same is not sys_
    assert same.positions[0] is not sys_.positions[0]
    assert np.array_equal(same.positions[0], sys_.positions[0])


def test_layout_definitions_two_body():
    soa = nb.system_from_arrays([[0, 0, 0], [1, 0, 0]], np.zeros((2, 3)), [1, 1])
    assert list(soa.positions[0]) == [0.0, 1.0]
    aos = nb.convert_layout(soa, nb.Layout.AOS)
    assert aos.positions.tolist() == [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]]


def test_checksum_zero_and_direct_sum():
    zero = nb.system_from_arrays(np.zeros((3, 3)), np.zeros((3, 3)), np.ones(3))
    assert nb.checksum(zero) == 0.0
    two = nb.system_from_arrays([[1, 2, 3], [4, 5, 6]], np.zeros((2, 3)), [1, 1])
    assert nb.checksum(two) == 21.0


def test_checksum_golden_init():
    sys_ = nb.init_system(256, nb.Seed(42))
    assert nb.checksum(sys_) == GOLDEN_INIT_CHECKSUM


@given(n=st.integers(min_value=1, max_value=64),
       seed=st.integers(min_value=0, max_value=MASK64))
@settings(max_examples=30, deadline=None)
def test_checksum_layout_invariant(n, seed):
    soa = nb.init_system(n, nb.Seed(seed))
    aos = nb.convert_layout(soa, nb.Layout.AOS)
    assert nb.checksum(soa) == nb.checksum(aos)


def test_format_checksum_17_digits():
    rendered = nb.format_checksum(GOLDEN_INIT_CHECKSUM)
    assert rendered == "375.32938863228213"
    assert float(rendered) == GOLDEN_INIT_CHECKSUM
    assert nb.format_checksum(1.0 / 3.0) == "0.33333333333333331"


def test_sim_params_validation():
    nb.SimParams(1.0, 0.01, 0.0, 1)
    with pytest.raises(ValueError):
        nb.SimParams(dt=0.0)
    with pytest.raises(ValueError):
        nb.SimParams(steps=0)
    with pytest.raises(ValueError):
        nb.SimParams(softening_sq=-1e-9)
    with pytest.raises(ValueError):
        nb.SimParams(gravitational_constant=0.0)


def test_system_validation_catches_bad_state():
    sys_ = nb.init_system(4, nb.Seed(1))
    sys_.validate()
    sys_.masses[0] = 0.0
    with pytest.raises(ValueError):
        sys_.validate()
    sys_.masses[0] = math.inf
    with pytest.raises(ValueError):
        sys_.validate()
