"""Chain geometry, Hamiltonian construction and single-excitation states.

The system is a row of n + 2 sites: a source qubit (site 0), n wire spins
with unit nearest-neighbour coupling, and a destination qubit (site n + 1).
Both end bonds carry the tunable coupling `a`. Everything here lives in the
single-excitation sector, so states are complex vectors indexed by the site
holding the excitation and the Hamiltonian is a real symmetric tridiagonal
matrix with zero diagonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidParamsError, NormalizationError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class WireParams:
    """Wire length n (internal spins) and end coupling a, in units of the
    internal coupling."""

    n: int
    a: float

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or isinstance(self.n, bool):
            raise InvalidParamsError(f"n must be an integer, got {self.n!r}")
        if self.n < 1:
            raise InvalidParamsError(f"n must be >= 1, got {self.n}")
        a = float(self.a)
        if not np.isfinite(a) or a < 0.0:
            raise InvalidParamsError(f"a must be finite and >= 0, got {self.a}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "a", a)

    @property
    def dim(self) -> int:
        return self.n + 2


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TridiagonalHamiltonian:
    """Symmetric tridiagonal matrix: zero diagonal, off-diagonal couplings."""

    diag: np.ndarray
    offdiag: np.ndarray

    def __post_init__(self) -> None:
        diag = _frozen(np.asarray(self.diag, dtype=float).copy())
        offdiag = _frozen(np.asarray(self.offdiag, dtype=float).copy())
        if diag.ndim != 1 or offdiag.ndim != 1 or offdiag.size != diag.size - 1:
            raise InvalidParamsError(
                "offdiag must have exactly one entry less than diag"
            )
        object.__setattr__(self, "diag", diag)
        object.__setattr__(self, "offdiag", offdiag)

    @property
    def dim(self) -> int:
        return self.diag.size

    def dense(self) -> np.ndarray:
        return (
            np.diag(self.diag)
            + np.diag(self.offdiag, 1)
            + np.diag(self.offdiag, -1)
        )

    def apply(self, vec: np.ndarray) -> np.ndarray:
        """Matrix-vector product without materializing the dense matrix."""
        out = self.diag * vec
        out[:-1] += self.offdiag * vec[1:]
        out[1:] += self.offdiag * vec[:-1]
        return out


@dataclass(frozen=True)
class WaveFunction:
    """Complex amplitudes over sites 0..n+1; normalized to 1."""

    amps: np.ndarray

    def __post_init__(self) -> None:
        amps = _frozen(np.asarray(self.amps, dtype=complex).copy())
        if amps.ndim != 1 or amps.size < 3:
            raise InvalidParamsError("amps must be a vector over >= 3 sites")
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > NORM_TOL:
            raise NormalizationError(
                f"state norm {nrm!r} deviates from 1 beyond {NORM_TOL}"
            )
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self) -> int:
        return self.amps.size


def build_hamiltonian(params: WireParams) -> TridiagonalHamiltonian:
    """Tridiagonal matrix with off-diagonal pattern [a, 1, ..., 1, a]."""
    offdiag = np.ones(params.dim - 1)
    offdiag[0] = params.a
    offdiag[-1] = params.a
    return TridiagonalHamiltonian(diag=np.zeros(params.dim), offdiag=offdiag)


def initial_excitation_state(params: WireParams) -> WaveFunction:
    """Excitation localized on the source qubit (site 0)."""
    amps = np.zeros(params.dim, dtype=complex)
    amps[0] = 1.0
    return WaveFunction(amps)
