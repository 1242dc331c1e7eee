import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from spinwire import (
    InvalidParamsError,
    NormalizationError,
    PoleEvaluationError,
    RegimeError,
    SingularCouplingError,
    SpectralRoot,
    WireParams,
    analytic_eigendecomposition,
    build_hamiltonian,
    characteristic_function,
    compare_decompositions,
    default_decomposition,
    eigenvector_from_root,
    oracle_eigendecomposition,
    rhs_constant,
    solve_gammas,
    zero_mode_parity,
)


def uniform_path_spectrum(dim: int) -> np.ndarray:
    """Closed form for the path graph with all couplings 1: 2*cos(k*pi/(dim+1))."""
    k = np.arange(1, dim + 1)
    return np.sort(2.0 * np.cos(k * np.pi / (dim + 1)))


def uniform_path_vector(dim: int, k: int) -> np.ndarray:
    j = np.arange(1, dim + 1)
    v = np.sin(j * k * np.pi / (dim + 1))
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------- rhs_constant

def test_rhs_constant_values():
    assert rhs_constant(1.0) == pytest.approx(1.0, abs=1e-15)
    assert rhs_constant(0.0) == 0.0


def test_rhs_constant_singular_at_sqrt2():
    with pytest.raises(SingularCouplingError):
        rhs_constant(math.sqrt(2.0))


# ------------------------------------------------------ characteristic_function

def test_uniform_path_eigenangle_even_branch():
    # cot(pi/5)*cot(3*pi/10) == 1 exactly: both factors are cofunctions.
    left = (math.cos(math.pi / 5) / math.sin(math.pi / 5)) * (
        math.cos(0.3 * math.pi) / math.sin(0.3 * math.pi)
    )
    assert left == pytest.approx(1.0, abs=1e-15)
    f = characteristic_function(math.pi / 5, 1, WireParams(n=2, a=1.0))
    assert abs(f) < 1e-12


def test_uniform_path_eigenangle_odd_branch():
    # The second path eigenangle 2*pi/5 has antisymmetric ends: it solves
    # the mu=-1 branch (-cot(72deg)tan(108deg) = 1), not the mu=+1 one.
    f = characteristic_function(2 * math.pi / 5, -1, WireParams(n=2, a=1.0))
    assert abs(f) < 1e-12
    f_wrong = characteristic_function(2 * math.pi / 5, 1, WireParams(n=2, a=1.0))
    assert abs(f_wrong) > 1.0


def test_midband_value_is_finite_for_odd_n():
    # For n = 3 the second factor of the mu=-1 branch vanishes at pi/2, so
    # f(pi/2) = -rhs exactly; the zero mode is not a sign crossing there.
    params = WireParams(n=3, a=0.1)
    f = characteristic_function(math.pi / 2, -1, params)
    assert f == pytest.approx(-rhs_constant(0.1), abs=1e-12)


def test_pole_evaluation_rejected():
    params = WireParams(n=3, a=0.5)
    with pytest.raises(PoleEvaluationError):
        characteristic_function(2 * math.pi / 4, 1, params)  # sin(2*gamma) = 0
    with pytest.raises(PoleEvaluationError):
        characteristic_function(math.pi / 2, -1, WireParams(n=1, a=0.5))


def test_characteristic_function_domain_checks():
    params = WireParams(n=2, a=0.5)
    with pytest.raises(InvalidParamsError):
        characteristic_function(-0.1, 1, params)
    with pytest.raises(InvalidParamsError):
        characteristic_function(1.0, 2, params)


# ----------------------------------------------------------------- solve_gammas

def test_uniform_4site_angles():
    roots = solve_gammas(WireParams(n=2, a=1.0))
    gammas = sorted(r.gamma for r in roots)
    assert_allclose(gammas, [np.pi / 5, 2 * np.pi / 5, 3 * np.pi / 5, 4 * np.pi / 5], atol=1e-12)
    lams = sorted(r.lam for r in roots)
    assert_allclose(lams, uniform_path_spectrum(4), atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 6, 15])
def test_unit_coupling_reduces_to_path(n):
    roots = solve_gammas(WireParams(n=n, a=1.0))
    assert len(roots) == n + 2
    assert_allclose(sorted(r.lam for r in roots), uniform_path_spectrum(n + 2), atol=1e-12)


def test_fig5_odd_gap():
    roots = solve_gammas(WireParams(n=199, a=0.01))
    lam_hat = min(r.lam for r in roots if r.lam > 1e-12)
    assert lam_hat == pytest.approx(1.41e-3, rel=0.02)


def test_fig5_even_gap():
    roots = solve_gammas(WireParams(n=198, a=0.01))
    lam_hat = min(r.lam for r in roots if r.lam > 1e-12)
    assert lam_hat == pytest.approx(1e-4, rel=0.10)


def test_root_residuals_vanish():
    params = WireParams(n=30, a=0.6)
    for root in solve_gammas(params):
        if root.lam == 0.0:
            continue
        assert abs(characteristic_function(root.gamma, root.mu, params)) < 1e-9


def test_regime_gates():
    with pytest.raises(RegimeError):
        solve_gammas(WireParams(n=5, a=0.0))
    with pytest.raises(RegimeError):
        solve_gammas(WireParams(n=5, a=1.5))
    with pytest.raises(SingularCouplingError):
        solve_gammas(WireParams(n=5, a=math.sqrt(2.0)))


def test_zero_mode_parity_matches_null_vector():
    # Direct null-vector construction: odd sites vanish, even sites alternate.
    for n in (1, 3, 5, 9, 199):
        expected = 1 if ((n + 1) // 2) % 2 == 0 else -1
        assert zero_mode_parity(n) == expected
    with pytest.raises(InvalidParamsError):
        zero_mode_parity(4)


# ------------------------------------------------------- eigenvector_from_root

def test_eigenpair_satisfies_eigen_equation():
    params = WireParams(n=30, a=0.6)
    H = build_hamiltonian(params).dense()
    for root in solve_gammas(params):
        pair = eigenvector_from_root(root, params)
        residual = np.max(np.abs(H @ pair.vector - pair.lam * pair.vector))
        assert residual < 1e-9


def test_eigenvector_matches_dense_oracle():
    params = WireParams(n=2, a=1.0)
    root = next(
        r for r in solve_gammas(params) if abs(r.gamma - np.pi / 5) < 1e-10
    )
    pair = eigenvector_from_root(root, params)
    w, V = np.linalg.eigh(build_hamiltonian(params).dense())
    idx = int(np.argmin(np.abs(w - pair.lam)))
    expected = V[:, idx] * np.sign(V[0, idx])
    assert_allclose(pair.vector, expected, atol=1e-9)
    assert_allclose(pair.vector, uniform_path_vector(4, 1), atol=1e-9)


def test_end_concentration_at_small_coupling():
    params = WireParams(n=198, a=0.01)
    roots = solve_gammas(params)
    root = min((r for r in roots if r.lam > 1e-12), key=lambda r: r.lam)
    pair = eigenvector_from_root(root, params)
    assert abs(pair.vector[0]) == pytest.approx(1 / math.sqrt(2), abs=0.02)
    assert abs(pair.vector[-1]) == pytest.approx(1 / math.sqrt(2), abs=0.02)


def test_wrong_root_fails_normalization_check():
    params = WireParams(n=12, a=0.5)
    fake = SpectralRoot(gamma=0.3, mu=1, lam=2 * math.cos(0.3))
    with pytest.raises(NormalizationError):
        eigenvector_from_root(fake, params)


# ------------------------------------------------------------- decompositions

def test_analytic_spectrum_for_uniform_4site():
    decomp = analytic_eigendecomposition(WireParams(n=2, a=1.0))
    phi = (1 + math.sqrt(5)) / 2  # 2*cos(pi/5); 2*cos(2*pi/5) = phi - 1
    assert_allclose(decomp.lambdas, [-phi, 1 - phi, phi - 1, phi], atol=1e-12)


def test_analytic_agrees_with_oracle_mid_regime():
    params = WireParams(n=30, a=0.6)
    analytic = analytic_eigendecomposition(params)
    oracle = oracle_eigendecomposition(build_hamiltonian(params))
    report = compare_decompositions(analytic, oracle)
    assert report["max_lambda_diff"] < 1e-8
    assert report["max_vector_diff"] < 1e-7


def test_odd_chain_has_single_zero_mode():
    decomp = analytic_eigendecomposition(WireParams(n=199, a=0.01))
    assert int(np.sum(np.abs(decomp.lambdas) < 1e-12)) == 1


def test_oracle_minimal_chain():
    decomp = oracle_eigendecomposition(build_hamiltonian(WireParams(n=1, a=1.0)))
    assert_allclose(decomp.lambdas, [-math.sqrt(2), 0.0, math.sqrt(2)], atol=1e-14)


def test_oracle_out_of_band_states():
    # a^2 > 2 pushes end-dominated modes out of the band; they come in
    # +/- pairs, so four of the seven eigenvalues exceed the band edge.
    params = WireParams(n=5, a=2.0)
    decomp = oracle_eigendecomposition(build_hamiltonian(params))
    assert decomp.lambdas.size == 7
    assert np.all(np.isreal(decomp.lambdas))
    assert int(np.sum(np.abs(decomp.lambdas) > 2.0)) == 4
    assert np.isnan(decomp.gammas[0]) and np.isnan(decomp.gammas[-1])
    with pytest.raises(RegimeError):
        analytic_eigendecomposition(params)


def test_oracle_handles_decoupled_ends():
    decomp = oracle_eigendecomposition(build_hamiltonian(WireParams(n=4, a=0.0)))
    assert int(np.sum(np.abs(decomp.lambdas) < 1e-12)) == 2
    gram = decomp.vectors.T @ decomp.vectors
    assert np.max(np.abs(gram - np.eye(6))) < 1e-10


def test_default_decomposition_routes():
    assert default_decomposition(WireParams(n=4, a=0.7)).method == "analytic"
    assert default_decomposition(WireParams(n=4, a=0.0)).method == "oracle"
    assert default_decomposition(WireParams(n=4, a=1.5)).method == "oracle"
    assert default_decomposition(WireParams(n=4, a=math.sqrt(2))).method == "oracle"


# ------------------------------------------------------------------ invariants

@pytest.mark.parametrize(
    "n,a,method",
    [
        (10, 0.3, "analytic"),
        (31, 0.8, "analytic"),
        (31, 0.8, "oracle"),
        (100, 0.05, "analytic"),
        (24, 1.35, "analytic"),
    ],
)
def test_decomposition_invariants(n, a, method):
    params = WireParams(n=n, a=a)
    if method == "analytic":
        decomp = analytic_eigendecomposition(params)
    else:
        decomp = oracle_eigendecomposition(build_hamiltonian(params))
    dim = params.dim

    assert decomp.lambdas.size == dim
    assert np.all(np.diff(decomp.lambdas) > 0)

    # spectrum symmetric about zero: lam_k = -lam_{dim-1-k}
    assert np.max(np.abs(decomp.lambdas + decomp.lambdas[::-1])) < 1e-9

    gram = decomp.vectors.T @ decomp.vectors
    assert np.max(np.abs(gram - np.eye(dim))) < 1e-10

    H = build_hamiltonian(params).dense()
    recon = (decomp.vectors * decomp.lambdas) @ decomp.vectors.T
    assert np.max(np.abs(recon - H)) < 1e-9

    # end relation and parity bookkeeping
    ends = decomp.vectors[-1, :] - decomp.parities * decomp.vectors[0, :]
    assert np.max(np.abs(ends)) < 1e-9
    if dim % 2 == 0:
        counts = np.bincount((decomp.parities + 1) // 2, minlength=2)
        assert counts[0] == counts[1]


@given(
    n=st.integers(1, 40),
    a=st.floats(0.05, 1.35),
)
@settings(max_examples=25, deadline=None)
def test_route_equivalence_property(n, a):
    params = WireParams(n=n, a=a)
    analytic = analytic_eigendecomposition(params)
    oracle = oracle_eigendecomposition(build_hamiltonian(params))
    assert analytic.dim == n + 2
    report = compare_decompositions(analytic, oracle)
    assert report["max_lambda_diff"] < 1e-8
    assert report["max_vector_diff"] < 1e-7


@pytest.mark.parametrize("n,a", [(300, 0.005), (250, 1.4), (301, 0.005)])
def test_route_equivalence_envelope(n, a):
    # corners of the covered regime: long chains, near-degenerate gap pair
    # at tiny a, and roots squeezed against the poles as a^2 -> 2
    params = WireParams(n=n, a=a)
    analytic = analytic_eigendecomposition(params)
    oracle = oracle_eigendecomposition(build_hamiltonian(params))
    report = compare_decompositions(analytic, oracle)
    assert report["max_lambda_diff"] < 1e-8
    assert report["max_vector_diff"] < 1e-7


def test_roots_carry_consistent_eigenvalues():
    for root in solve_gammas(WireParams(n=13, a=0.7)):
        assert abs(root.lam - 2.0 * math.cos(root.gamma)) < 1e-14


def test_eigenpair_views():
    decomp = analytic_eigendecomposition(WireParams(n=3, a=0.9))
    pairs = decomp.pairs
    assert len(pairs) == 5
    assert pairs[0].lam == decomp.lambdas[0]
    assert pairs[2].parity in (-1, 1)
