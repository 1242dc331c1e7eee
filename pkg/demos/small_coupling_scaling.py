#!/usr/bin/env python3
"""Scaling laws of the weak-end-coupling regime, measured from exact spectra.

Three laws govern the a -> 0 limit:

* the gap lam_hat (smallest positive eigenvalue) closes as a^2 for even n
  and as 2a/sqrt(n) for odd n -- measured here as log-log slopes;
* the transfer time follows tau = pi/(2*lam_hat) (even) or pi/lam_hat
  (odd), so odd wires are parametrically faster;
* the peak transfer deficit 1 - Pmax grows linearly with a^2*n, which is
  what lets a single knob trade speed for fidelity at any length.
"""

import math
from pathlib import Path

import spinwire as sw
from spinwire.experiments import SweepResult, SweepRow

OUT_DIR = Path(__file__).resolve().parent / "output"

GAP_COUPLINGS = (0.002, 0.004, 0.008, 0.016)


def gap_slopes() -> None:
    print("== gap scaling, a in", GAP_COUPLINGS)
    even = sw.fit_gap_scaling(100, GAP_COUPLINGS)
    odd = sw.fit_gap_scaling(101, GAP_COUPLINGS)
    print(f"  n=100 (even): slope={even.slope:.4f}   (expect 2)")
    print(
        f"  n=101 (odd):  slope={odd.slope:.4f}   prefactor="
        f"{math.exp(odd.intercept):.5f} (expect 2/sqrt(101)={2 / math.sqrt(101):.5f})"
    )


def arrival_times() -> None:
    print("\n== arrival times at a=0.01 (prediction vs measured)")
    print(f"{'n':>5} {'parity':>7} {'tau pred':>10} {'tau measured':>13} {'speed n/tau':>12}")
    for n in (100, 101, 198, 199):
        params = sw.WireParams(n=n, a=0.01)
        pred = sw.predict(params)
        tau = sw.transfer_time(params, 2.5 * pred.tau)
        print(
            f"{n:5d} {pred.parity:>7} {pred.tau:10.0f} {tau:13.0f} "
            f"{n / tau:12.5f}"
        )
    print("  odd wires beat even ones: the zero mode shortcuts the flop.")


def loss_law() -> None:
    print("\n== fidelity-loss law: 1 - Pmax against a^2*n (even n)")
    rows = []
    for n in (50, 100, 150, 200):
        for scale in (0.005, 0.01, 0.02, 0.05):
            a = math.sqrt(scale / n)
            params = sw.WireParams(n=n, a=a)
            best = sw.max_transfer(params, t_max=1.5 * sw.predict(params).tau)
            rows.append(
                SweepRow(
                    n=n, a=a, p_max=best.p_max, t_at_max=best.t_at_max,
                    lambda_hat=math.nan, tau=best.t_at_max,
                )
            )
            print(f"  n={n:4d} a^2*n={scale:.3f}: 1-Pmax={1 - best.p_max:.3e}")
    result = SweepResult(grid=tuple((r.n, r.a) for r in rows), rows=tuple(rows))
    fit = sw.fit_fidelity_scaling(result)
    print(f"  log-log fit slope: {fit.slope:.3f} (expect ~1), r^2={fit.r_squared:.3f}")


def main() -> None:
    OUT_DIR.mkdir(exist_ok=True)
    gap_slopes()
    arrival_times()
    loss_law()

    table = sw.figure_data("fig3", a_steps=60)
    table.write_csv(OUT_DIR / "peak_transfer_vs_coupling.csv")
    print(f"\nwrote {OUT_DIR / 'peak_transfer_vs_coupling.csv'}")
    print("(the n=30 survey: near-perfect plateau at tiny a, a dip, a local")
    print(" optimum near a~0.6, then decline toward a~1.5)")


if __name__ == "__main__":
    main()
