"""Small-coupling predictions and the spectral quantities they target.

For a << 1/sqrt(n) the transfer is governed by the smallest positive
eigenvalue lam_hat: the initial excitation concentrates on the two
eigenvectors at +/-lam_hat when n is even (a two-level Rabi flop of period
pi/lam_hat, transfer at tau = pi/(2*lam_hat)) and additionally on the zero
mode when n is odd (transfer at tau = pi/lam_hat). The gap itself scales as
a^2 for even n and 2*a/sqrt(n) for odd n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParamsError,
    NoPositiveEigenvalueError,
    NotApplicableError,
)
from .spectral import EigenDecomposition
from .wire import WaveFunction, WireParams

ZERO_TOL = 1e-12


@dataclass(frozen=True)
class AsymptoticPrediction:
    """Leading-order predictions for one (n, a) point.

    speed is n/tau exactly as derived from lambda_hat and tau; delta is the
    scaled coupling a*sqrt(n) and fidelity_loss_scale the a^2*n combination
    that controls 1 - P_max.
    """

    parity: str
    lambda_hat: float
    tau: float
    speed: float
    delta: float
    fidelity_loss_scale: float


def smallest_positive_eigenvalue(
    decomp: EigenDecomposition, tol: float = ZERO_TOL
) -> float:
    """Minimum eigenvalue above `tol`; excludes the odd-n zero mode."""
    positive = decomp.lambdas[decomp.lambdas > tol]
    if positive.size == 0:
        raise NoPositiveEigenvalueError(
            "decomposition has no eigenvalue above the zero threshold"
        )
    return float(positive.min())


def predict(params: WireParams) -> AsymptoticPrediction:
    """Leading-order lam_hat, tau and speed; meaningful for a*sqrt(n) << 1."""
    n, a = params.n, params.a
    if a <= 0:
        raise InvalidParamsError("predictions require a > 0")
    if n % 2 == 0:
        lambda_hat = a * a
        tau = np.pi / (2.0 * lambda_hat)
        parity = "even"
    else:
        lambda_hat = 2.0 * a / np.sqrt(n)
        tau = np.pi / lambda_hat
        parity = "odd"
    return AsymptoticPrediction(
        parity=parity,
        lambda_hat=float(lambda_hat),
        tau=float(tau),
        speed=float(n / tau),
        delta=float(a * np.sqrt(n)),
        fidelity_loss_scale=float(a * a * n),
    )


def dominant_populations(
    decomp: EigenDecomposition, psi0: WaveFunction, k: int
) -> list[tuple[float, float]]:
    """Top-k eigenvector populations |<v|psi0>|^2, sorted descending."""
    if not 1 <= k <= decomp.dim:
        raise InvalidParamsError(f"k must lie in [1, {decomp.dim}], got {k}")
    pops = np.abs(decomp.vectors.T @ psi0.amps) ** 2
    order = np.argsort(pops)[::-1][:k]
    return [(float(decomp.lambdas[i]), float(pops[i])) for i in order]


@dataclass(frozen=True)
class ThreeLevelSignReport:
    """Destination-end signs of the three small-a eigenvectors (odd n).

    Signs are reported with the source-end convention v[0] > 0 already
    applied; `zero_opposite` says whether the zero mode's destination sign
    opposes both gap modes', which is what makes the three-level
    interference transfer rather than trap the excitation.
    """

    sign_plus: int
    sign_minus: int
    sign_zero: int
    zero_opposite: bool


def three_level_signs(decomp: EigenDecomposition) -> ThreeLevelSignReport:
    """Sign pattern of v[n+1] for the eigenvectors at {+lam_hat, 0, -lam_hat}."""
    n = decomp.dim - 2
    if n % 2 == 0:
        raise NotApplicableError("the three-level structure requires odd n")
    zero_idx = int(np.argmin(np.abs(decomp.lambdas)))
    if abs(decomp.lambdas[zero_idx]) > ZERO_TOL:
        raise NotApplicableError("decomposition has no zero eigenvalue")
    lam_hat = smallest_positive_eigenvalue(decomp)
    plus_idx = int(np.argmin(np.abs(decomp.lambdas - lam_hat)))
    minus_idx = int(np.argmin(np.abs(decomp.lambdas + lam_hat)))

    def end_sign(idx: int) -> int:
        column = decomp.vectors[:, idx]
        end = column[-1] if column[0] >= 0 else -column[-1]
        return 1 if end > 0 else -1

    s_plus = end_sign(plus_idx)
    s_minus = end_sign(minus_idx)
    s_zero = end_sign(zero_idx)
    return ThreeLevelSignReport(
        sign_plus=s_plus,
        sign_minus=s_minus,
        sign_zero=s_zero,
        zero_opposite=(s_zero == -s_plus and s_zero == -s_minus),
    )
