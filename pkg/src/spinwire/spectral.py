"""Eigendecomposition of the end-coupled chain by two independent routes.

Closed-form route: every in-band eigenvalue can be written lam = 2*cos(gamma)
with gamma in (0, pi) a root of

    f_mu(gamma) = mu * cot(gamma) * cot^mu((n+1)*gamma/2) - a^2/(2 - a^2)

on one of two parity branches mu = +/-1, where mu is the sign relating the
eigenvector's end components, v[n+1] = mu * v[0]. The eigenvector belonging
to a root has the explicit sine-series components implemented in
`eigenvector_from_root`; the closed-form normalization constant there is
exact at a root (and only at a root, which is what the consistency check
exploits).

This parametrization covers 0 < a^2 < 2. For a = 0 the ends decouple and
for a^2 >= 2 some states leave the band |lam| <= 2 (the angle would turn
complex), so those regimes are served exclusively by the numerical route.

Numerical route: LAPACK bisection + inverse iteration on the tridiagonal
matrix (`eigh_tridiagonal` with the stebz/stein driver pair). It is valid
for every a >= 0 and acts as the independent oracle for the closed form.

Two structural facts the solver relies on (both provable from the matrix):

* The spectrum is symmetric under lam -> -lam (zero diagonal, bipartite
  path), and for odd n the dimension n + 2 is odd, so lam = 0 is always an
  eigenvalue. Yet gamma = pi/2 is not a sign crossing of either branch:
  the branch whose second factor has a pole there tends to the finite
  limit -2/(n+1) - rhs (the pole cancels the zero of cot), the other
  branch evaluates to exactly -rhs, and both are negative. The zero mode
  is therefore appended explicitly, with end parity (-1)**((n+1)/2) read
  off the null-vector recursion (odd sites vanish, even sites alternate).
* For odd n and small a, the pair of roots nearest pi/2 sits at
  gamma = pi/2 -+ sqrt(rhs/nu) on a single branch, closer together than any
  fixed grid step once a is small enough. Evaluating the branch function at
  pi/2 itself (where it equals -rhs < 0) splits the dip into two brackets,
  so the scan cannot lose the pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    ConvergenceError,
    DimensionMismatchError,
    InvalidParamsError,
    NormalizationError,
    PoleEvaluationError,
    RegimeError,
    RootCountError,
    SingularCouplingError,
)
from .wire import TridiagonalHamiltonian, WireParams, build_hamiltonian, _frozen

SINGULAR_TOL = 1e-12
POLE_TOL = 1e-12
EDGE_OFFSET = 1e-9
MIN_GAMMA_GAP = 1e-10
GRID_FACTOR = 20
NORM_CHECK_TOL = 1e-6
PARITY_TOL = 1e-12
MAX_BISECT_ITER = 200


@dataclass(frozen=True)
class SpectralRoot:
    """Eigen-angle gamma on branch mu, with eigenvalue lam = 2*cos(gamma)."""

    gamma: float
    mu: int
    lam: float


@dataclass(frozen=True)
class Eigenpair:
    lam: float
    vector: np.ndarray
    parity: int
    gamma: float


@dataclass(frozen=True)
class EigenDecomposition:
    """Full spectrum, eigenvalues ascending, eigenvectors as columns.

    `parities` holds the end-relation sign v[n+1] = parity * v[0]; it is 0
    for degenerate modes where that relation is undefined (only at a = 0).
    `gammas` holds arccos(lam/2), NaN outside the band |lam| <= 2.
    """

    lambdas: np.ndarray
    vectors: np.ndarray
    parities: np.ndarray
    gammas: np.ndarray
    method: str

    def __post_init__(self) -> None:
        for name in ("lambdas", "vectors", "parities", "gammas"):
            object.__setattr__(self, name, _frozen(np.asarray(getattr(self, name))))

    @property
    def dim(self) -> int:
        return self.lambdas.size

    @property
    def pairs(self) -> tuple[Eigenpair, ...]:
        return tuple(
            Eigenpair(
                lam=float(self.lambdas[k]),
                vector=self.vectors[:, k],
                parity=int(self.parities[k]),
                gamma=float(self.gammas[k]),
            )
            for k in range(self.dim)
        )


def rhs_constant(a: float) -> float:
    """Right-hand side a^2 / (2 - a^2) of the eigenvalue condition."""
    if a < 0:
        raise InvalidParamsError(f"end coupling must be >= 0, got {a}")
    if abs(a * a - 2.0) < SINGULAR_TOL:
        raise SingularCouplingError(
            "a^2 = 2 makes the eigenvalue condition singular"
        )
    return a * a / (2.0 - a * a)


def _branch_poles(mu: int, n: int) -> np.ndarray:
    """Interior poles of f_mu on (0, pi).

    Branch +1 diverges at zeros of sin((n+1)*gamma/2), branch -1 at zeros
    of cos((n+1)*gamma/2); cot(gamma) itself has no interior pole.
    """
    m = n + 1
    if mu == 1:
        nums = np.arange(2, m, 2)
    else:
        nums = np.arange(1, m, 2)
    return nums * (math.pi / m)


def _charfun_scalar(gamma: float, mu: int, n: int, rhs: float) -> float:
    nu = 0.5 * (n + 1)
    cot = math.cos(gamma) / math.sin(gamma)
    if mu == 1:
        second = math.cos(nu * gamma) / math.sin(nu * gamma)
    else:
        second = -math.sin(nu * gamma) / math.cos(nu * gamma)
    return cot * second - rhs


def _charfun_grid(gammas: np.ndarray, mu: int, n: int, rhs: float) -> np.ndarray:
    nu = 0.5 * (n + 1)
    cot = np.cos(gammas) / np.sin(gammas)
    if mu == 1:
        second = np.cos(nu * gammas) / np.sin(nu * gammas)
    else:
        second = -np.sin(nu * gammas) / np.cos(nu * gammas)
    return cot * second - rhs


def characteristic_function(gamma: float, mu: int, params: WireParams) -> float:
    """f_mu(gamma); its roots on (0, pi) are the in-band eigen-angles.

    Raises close to a pole of the branch -- callers are expected to bracket
    roots strictly between poles.
    """
    if mu not in (1, -1):
        raise InvalidParamsError(f"mu must be +1 or -1, got {mu!r}")
    gamma = float(gamma)
    if not 0.0 < gamma < math.pi:
        raise InvalidParamsError(f"gamma must lie in (0, pi), got {gamma}")
    rhs = rhs_constant(params.a)
    if min(gamma, math.pi - gamma) < POLE_TOL:
        raise PoleEvaluationError(f"gamma={gamma} is within {POLE_TOL} of a pole")
    poles = _branch_poles(mu, params.n)
    if poles.size and np.min(np.abs(poles - gamma)) < POLE_TOL:
        raise PoleEvaluationError(f"gamma={gamma} is within {POLE_TOL} of a pole")
    return _charfun_scalar(gamma, mu, params.n, rhs)


def _bisect_to_machine(f, lo: float, hi: float, flo: float) -> float:
    """Shrink a sign-change bracket until it cannot shrink further.

    The iteration cap is purely defensive; a double-precision bracket
    collapses in under 60 steps.
    """
    for _ in range(MAX_BISECT_ITER):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0.0) == (flo > 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_branch(params: WireParams, mu: int, rhs: float) -> list[float]:
    """All roots of f_mu on (0, pi), found by a sign scan between poles."""
    n = params.n
    bounds = np.concatenate(([0.0], _branch_poles(mu, n), [math.pi]))
    step = math.pi / (GRID_FACTOR * params.dim)
    half_pi = 0.5 * math.pi

    def f(g: float) -> float:
        return _charfun_scalar(g, mu, n, rhs)

    roots: list[float] = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        start = lo + EDGE_OFFSET
        stop = hi - EDGE_OFFSET
        pts = np.arange(start, stop, step)
        extra = [stop]
        if start < half_pi < stop:
            extra.append(half_pi)
        pts = np.unique(np.concatenate((pts, extra)))
        vals = _charfun_grid(pts, mu, n, rhs)
        signs = np.sign(vals)
        for i in range(pts.size - 1):
            if vals[i] == 0.0:
                roots.append(float(pts[i]))
            elif signs[i] * signs[i + 1] < 0:
                roots.append(
                    _bisect_to_machine(f, float(pts[i]), float(pts[i + 1]), float(vals[i]))
                )
        if vals[-1] == 0.0:
            roots.append(float(pts[-1]))
    return roots


def zero_mode_parity(n: int) -> int:
    """End-relation sign of the lam = 0 eigenvector (odd n only)."""
    if n % 2 == 0:
        raise InvalidParamsError("the chain has a zero mode only for odd n")
    return -1 if ((n + 1) // 2) % 2 else 1


def solve_gammas(params: WireParams) -> list[SpectralRoot]:
    """All n + 2 eigen-angles, both branches merged, sorted by gamma.

    Valid in the real-angle regime 0 < a^2 < 2.
    """
    a = params.a
    if a <= 0.0 or a * a >= 2.0 + SINGULAR_TOL:
        raise RegimeError(
            f"closed-form eigensolver requires 0 < a^2 < 2, got a={a}"
        )
    rhs = rhs_constant(a)  # rejects the singular window |a^2 - 2| < tol

    roots = [
        SpectralRoot(gamma=g, mu=mu, lam=2.0 * math.cos(g))
        for mu in (1, -1)
        for g in _scan_branch(params, mu, rhs)
    ]
    if params.n % 2 == 1:
        roots.append(
            SpectralRoot(gamma=0.5 * math.pi, mu=zero_mode_parity(params.n), lam=0.0)
        )
    roots.sort(key=lambda r: r.gamma)

    if len(roots) != params.dim:
        raise RootCountError(
            f"found {len(roots)} eigen-angles, expected {params.dim} "
            f"(n={params.n}, a={a})"
        )
    gaps = np.diff([r.gamma for r in roots])
    if gaps.size and float(np.min(gaps)) <= MIN_GAMMA_GAP:
        raise RootCountError(
            f"duplicate eigen-angles (min gap {float(np.min(gaps)):.3e}) "
            f"for n={params.n}, a={a}"
        )
    return roots


def eigenvector_from_root(root: SpectralRoot, params: WireParams) -> Eigenpair:
    """Eigenvector built from the closed-form sine series.

    The closed-form normalization holds exactly only when (gamma, mu) is a
    genuine root for these parameters, so a norm far from 1 flags a wrong
    root/branch pairing before the vector is renormalized to machine
    precision.
    """
    n, a = params.n, params.a
    g = root.gamma
    c2 = (n + 1) * (2.0 * (1.0 - a * a) * math.cos(g) ** 2 + a**4 / 2.0) + 2.0 * a * a - a**4
    c = math.sqrt(c2)

    v = np.empty(params.dim)
    v[0] = a * math.sin(g) / c
    k = np.arange(1, n + 1)
    v[1 : n + 1] = (np.sin((k + 1) * g) + (1.0 - a * a) * np.sin((k - 1) * g)) / c
    v[n + 1] = root.mu * v[0]

    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > NORM_CHECK_TOL:
        raise NormalizationError(
            f"closed-form norm {nrm:.6g} deviates from 1 beyond {NORM_CHECK_TOL}; "
            f"gamma={g!r} is not a mu={root.mu} root for n={n}, a={a}"
        )
    v /= nrm
    _fix_sign(v)
    return Eigenpair(lam=root.lam, vector=_frozen(v), parity=root.mu, gamma=g)


def _fix_sign(v: np.ndarray) -> None:
    """First entry of significant magnitude made positive, in place."""
    idx = np.flatnonzero(np.abs(v) > PARITY_TOL)
    pivot = idx[0] if idx.size else 0
    if v[pivot] < 0:
        v *= -1.0


def analytic_eigendecomposition(params: WireParams) -> EigenDecomposition:
    """Closed-form route: transcendental roots plus sine-series vectors."""
    roots = solve_gammas(params)
    pairs = sorted(
        (eigenvector_from_root(r, params) for r in roots), key=lambda p: p.lam
    )
    return EigenDecomposition(
        lambdas=np.array([p.lam for p in pairs]),
        vectors=np.column_stack([p.vector for p in pairs]),
        parities=np.array([p.parity for p in pairs], dtype=int),
        gammas=np.array([p.gamma for p in pairs]),
        method="analytic",
    )


def oracle_eigendecomposition(H: TridiagonalHamiltonian) -> EigenDecomposition:
    """Numerical route, valid for every a >= 0 including a^2 >= 2.

    Uses LAPACK's stebz/stein driver pair (eigenvalues by bisection,
    eigenvectors by inverse iteration with reorthogonalization of clusters).
    """
    try:
        lambdas, vectors = scipy.linalg.eigh_tridiagonal(
            H.diag, H.offdiag, lapack_driver="stebz"
        )
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as exc:
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc

    vectors = np.ascontiguousarray(vectors)
    parities = np.zeros(lambdas.size, dtype=int)
    for k in range(lambdas.size):
        _fix_sign(vectors[:, k])
        ends = vectors[0, k] * vectors[-1, k]
        if abs(ends) > PARITY_TOL:
            parities[k] = 1 if ends > 0 else -1

    inband = np.abs(lambdas) <= 2.0
    gammas = np.full(lambdas.size, np.nan)
    gammas[inband] = np.arccos(np.clip(lambdas[inband] / 2.0, -1.0, 1.0))

    return EigenDecomposition(
        lambdas=lambdas,
        vectors=vectors,
        parities=parities,
        gammas=gammas,
        method="oracle",
    )


def default_decomposition(params: WireParams) -> EigenDecomposition:
    """Closed form inside its regime, numerical oracle everywhere else."""
    a = params.a
    if 0.0 < a and a * a < 2.0 and abs(a * a - 2.0) >= SINGULAR_TOL:
        return analytic_eigendecomposition(params)
    return oracle_eigendecomposition(build_hamiltonian(params))


def compare_decompositions(
    first: EigenDecomposition, second: EigenDecomposition
) -> dict[str, float]:
    """Cross-validation summary of two decompositions of the same chain.

    Column signs are aligned by overlap before the entrywise comparison.
    """
    if first.dim != second.dim:
        raise DimensionMismatchError(
            f"dimensions differ: {first.dim} vs {second.dim}"
        )
    dlam = float(np.max(np.abs(first.lambdas - second.lambdas)))
    overlaps = np.einsum("ij,ij->j", first.vectors, second.vectors)
    aligned = second.vectors * np.where(overlaps < 0, -1.0, 1.0)
    dvec = float(np.max(np.abs(first.vectors - aligned)))
    return {"dim": float(first.dim), "max_lambda_diff": dlam, "max_vector_diff": dvec}
