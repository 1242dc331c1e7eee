#!/usr/bin/env python3
"""Two eigensolvers, one chain: the closed-form route against the oracle.

The chain has n spins with unit couplings plus two end qubits attached with
coupling a. Every in-band eigenvalue is lam = 2*cos(gamma) with gamma a root
of a two-branch transcendental equation; the branch sign mu is exactly the
sign relating the eigenvector's two end components. This script solves the
same chain both ways, prints the worst disagreement, and shows how the
spectrum and the initial-state populations reorganize as the end coupling
shrinks (the pair of end-dominated levels collapsing toward zero is what
makes the slow, high-fidelity transfer possible).

Outputs land in demos/output/.
"""

from pathlib import Path

import spinwire as sw

OUT_DIR = Path(__file__).resolve().parent / "output"

N = 30
COUPLINGS = (1.0, 0.6, 0.2, 0.05)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except Exception:
    plt = None


def main() -> None:
    OUT_DIR.mkdir(exist_ok=True)

    print(f"chain: n={N} wire spins + 2 end qubits (dimension {N + 2})")
    print(f"{'a':>6} {'max |dlam|':>12} {'max |dvec|':>12} {'lam_hat':>12}")
    for a in COUPLINGS:
        params = sw.WireParams(n=N, a=a)
        analytic = sw.analytic_eigendecomposition(params)
        oracle = sw.oracle_eigendecomposition(sw.build_hamiltonian(params))
        diff = sw.compare_decompositions(analytic, oracle)
        lam_hat = sw.smallest_positive_eigenvalue(analytic)
        print(
            f"{a:6.2f} {diff['max_lambda_diff']:12.2e} "
            f"{diff['max_vector_diff']:12.2e} {lam_hat:12.4e}"
        )

    # spectrum + populations across a dense coupling grid (survey style)
    table = sw.figure_data("fig4", n=N, a_steps=60)
    table.write_csv(OUT_DIR / "spectrum_vs_coupling.csv")
    print(f"\nwrote {OUT_DIR / 'spectrum_vs_coupling.csv'}")

    # per-eigenvector detail for one small coupling
    params = sw.WireParams(n=N, a=0.05)
    decomp = sw.analytic_eigendecomposition(params)
    psi0 = sw.initial_excitation_state(params)
    top = sw.dominant_populations(decomp, psi0, 4)
    print("\ndominant eigenvector populations at a=0.05:")
    for lam, pop in top:
        print(f"  lam={lam:+.5f}  population={pop:.4f}")
    print("two levels carry almost everything: the even-n chain is an")
    print("effective two-level system oscillating at the tiny gap lam_hat.")

    if plt is not None:
        rows = table.rows
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4), sharey=True)
        ax1.scatter(rows[:, 0], rows[:, 1], s=1, c="tab:blue")
        ax1.set_xlabel("end coupling a")
        ax1.set_ylabel("eigenvalue")
        ax1.set_title("spectrum vs a")
        pops = rows[:, 2]
        ax2.scatter(rows[:, 0], rows[:, 1], s=200 * pops + 0.1, c="tab:red", alpha=0.5)
        ax2.set_xlabel("end coupling a")
        ax2.set_title("initial-state populations (marker size)")
        fig.tight_layout()
        fig.savefig(OUT_DIR / "spectrum_vs_coupling.png", dpi=150)
        print(f"wrote {OUT_DIR / 'spectrum_vs_coupling.png'}")


if __name__ == "__main__":
    main()
