#!/usr/bin/env python3
"""Excitation transfer through the wire: fast-and-lossy vs slow-and-clean.

Two regimes of the same 1D chain:

* end coupling comparable to the wire coupling (a ~ 1): the excitation
  races down the chain ballistically, arrives in t ~ n/2, but dispersion
  caps the destination occupation well below 1;
* weak end coupling (a << 1): the end qubits build an effective two-level
  (even n) or three-level (odd n) system inside the gap, and the transfer
  becomes a slow Rabi-style flop with occupation approaching 1.

The n = 198 / n = 199 pair at a = 0.01 shows the parity split: the even
wire stays almost unexcited during the whole process, the odd wire holds
up to half the excitation midway.
"""

from pathlib import Path

import numpy as np

import spinwire as sw

OUT_DIR = Path(__file__).resolve().parent / "output"

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except Exception:
    plt = None


def fast_regime() -> None:
    print("== fast regime: n=30, a in {1.0, 0.6} over t in [0, 150]")
    for a in (1.0, 0.6):
        params = sw.WireParams(n=30, a=a)
        series = sw.transfer_series(params, 150.0, 0.1)
        i = int(np.argmax(series.pend))
        print(
            f"  a={a}: first-window peak Pend={series.pend[i]:.4f} "
            f"at t={series.times[i]:.1f}"
        )
    print("  lowering a from 1 to 0.6 already buys a visibly higher peak\n")


def slow_regime() -> tuple:
    print("== slow regime: a=0.01, the n=198 / n=199 parity pair")
    results = {}
    for n, window in ((198, 20000.0), (199, 4000.0)):
        params = sw.WireParams(n=n, a=0.01)
        decomp = sw.analytic_eigendecomposition(params)
        series = sw.transfer_series(params, window, window / 4000.0, decomp=decomp)
        tau = sw.transfer_time(params, window, decomp=decomp)
        lam_hat = sw.smallest_positive_eigenvalue(decomp)
        print(
            f"  n={n}: lam_hat={lam_hat:.3e}  tau={tau:.0f}  "
            f"Pend(tau)~{series.pend.max():.4f}  max Pnet={series.pnet.max():.3f}"
        )
        results[n] = series
    print("  even wire: Pnet stays tiny (Rabi flop between the end qubits);")
    print("  odd wire: three levels -> half the excitation visits the wire.\n")
    return results[198], results[199]


def main() -> None:
    OUT_DIR.mkdir(exist_ok=True)
    fast_regime()
    even, odd = slow_regime()

    table = sw.figure_data("fig5", t_max=20000.0, dt=5.0)
    table.write_csv(OUT_DIR / "parity_pair_traces.csv")
    print(f"wrote {OUT_DIR / 'parity_pair_traces.csv'}")

    if plt is not None:
        fig, axes = plt.subplots(2, 1, figsize=(9, 6), sharex=False)
        for ax, series, label in ((axes[0], even, "n=198"), (axes[1], odd, "n=199")):
            ax.plot(series.times, series.p0, label="source P0")
            ax.plot(series.times, series.pend, label="destination Pend")
            ax.plot(series.times, series.pnet, label="wire Pnet")
            ax.set_ylabel(f"{label} occupation")
            ax.legend(loc="center right", fontsize=8)
        axes[1].set_xlabel("t (units of inverse wire coupling)")
        fig.tight_layout()
        fig.savefig(OUT_DIR / "parity_pair_traces.png", dpi=150)
        print(f"wrote {OUT_DIR / 'parity_pair_traces.png'}")


if __name__ == "__main__":
    main()
