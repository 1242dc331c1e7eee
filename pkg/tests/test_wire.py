import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from spinwire import (
    InvalidParamsError,
    NormalizationError,
    WaveFunction,
    WireParams,
    build_hamiltonian,
    initial_excitation_state,
)


def test_minimal_wire_has_no_internal_bond():
    H = build_hamiltonian(WireParams(n=1, a=0.5))
    assert H.dim == 3
    assert_array_equal(H.offdiag, [0.5, 0.5])
    assert_array_equal(H.diag, np.zeros(3))


def test_unit_coupling_gives_uniform_path():
    H = build_hamiltonian(WireParams(n=2, a=1.0))
    assert_array_equal(H.offdiag, [1.0, 1.0, 1.0])


def test_long_wire_pattern():
    H = build_hamiltonian(WireParams(n=198, a=0.01))
    assert H.dim == 200
    assert H.offdiag[0] == 0.01 and H.offdiag[-1] == 0.01
    assert_array_equal(H.offdiag[1:-1], np.ones(197))


def test_dense_matches_apply():
    H = build_hamiltonian(WireParams(n=4, a=0.3))
    rng = np.random.default_rng(7)
    v = rng.normal(size=H.dim)
    assert_allclose(H.apply(v.copy()), H.dense() @ v, atol=1e-14)


@given(n=st.integers(1, 60), a=st.floats(0.0, 1.4))
@settings(max_examples=40, deadline=None)
def test_offdiag_is_palindromic(n, a):
    H = build_hamiltonian(WireParams(n=n, a=a))
    assert_array_equal(H.offdiag, H.offdiag[::-1])


def test_build_is_deterministic():
    p = WireParams(n=17, a=0.37)
    first, second = build_hamiltonian(p), build_hamiltonian(p)
    assert first.offdiag.tobytes() == second.offdiag.tobytes()
    assert first.diag.tobytes() == second.diag.tobytes()


@pytest.mark.parametrize("n,expected", [(1, 3), (2, 4)])
def test_initial_excitation_is_on_the_source(n, expected):
    psi = initial_excitation_state(WireParams(n=n, a=1.0))
    assert psi.dim == expected
    assert psi.amps[0] == 1.0
    assert_array_equal(psi.amps[1:], np.zeros(expected - 1))


@given(n=st.integers(1, 80))
@settings(max_examples=20, deadline=None)
def test_initial_excitation_is_normalized(n):
    psi = initial_excitation_state(WireParams(n=n, a=0.5))
    assert abs(np.linalg.norm(psi.amps) - 1.0) < 1e-15


@pytest.mark.parametrize("n,a", [(0, 1.0), (-3, 1.0), (5, -0.1)])
def test_invalid_params_rejected(n, a):
    with pytest.raises(InvalidParamsError):
        WireParams(n=n, a=a)


def test_non_integer_length_rejected():
    with pytest.raises(InvalidParamsError):
        WireParams(n=2.5, a=1.0)


def test_zero_coupling_is_accepted():
    assert build_hamiltonian(WireParams(n=3, a=0.0)).offdiag[0] == 0.0


def test_wavefunction_requires_unit_norm():
    with pytest.raises(NormalizationError):
        WaveFunction(np.array([1.0, 1.0, 0.0]))


def test_wavefunction_is_immutable():
    psi = initial_excitation_state(WireParams(n=2, a=1.0))
    with pytest.raises(ValueError):
        psi.amps[0] = 0.0
