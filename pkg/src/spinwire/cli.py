"""Command-line surface: spectrum, evolve, pmax, sweep, predict, bell, figure.

Every command resolves its configuration from (in increasing precedence)
built-in defaults, an optional flat JSON config file, and explicit flags.
The resolved configuration is printed into the output-file header, so any
CSV can be reproduced by feeding that header line back as a config file.
Failures are reported as a single JSON record on stderr with a stable
`code` field and a nonzero exit status.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import asymptotics, dynamics, experiments
from .errors import ConfigError, RegimeError, SpinWireError
from .spectral import (
    analytic_eigendecomposition,
    compare_decompositions,
    oracle_eigendecomposition,
)
from .wire import WireParams, build_hamiltonian, initial_excitation_state

_FMT = experiments.FLOAT_FORMAT

_DEFAULTS: dict[str, dict] = {
    "spectrum": {"method": "analytic"},
    "evolve": {"method": "analytic", "dt": 0.1, "full": False},
    "pmax": {"method": "analytic"},
    "sweep": {"method": "oracle", "jobs": 1},
    "predict": {"method": "analytic"},
    "bell": {"method": "analytic"},
    "figure": {"method": "oracle"},
}

_REQUIRED: dict[str, tuple[str, ...]] = {
    "spectrum": ("n", "a"),
    "evolve": ("n", "a", "t_max"),
    "pmax": ("n", "a", "t_max"),
    "sweep": ("n_list", "t_max"),
    "predict": ("n", "a"),
    "bell": ("n", "a"),
    "figure": ("figure",),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinwire",
        description="Quantum state transfer through an end-coupled uniform spin chain.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, argument_default=argparse.SUPPRESS)
        p.add_argument("--config", help="flat JSON file with flag values")
        p.add_argument("--out", help="output CSV path (default: stdout)")
        return p

    p = add("spectrum", "eigenvalues and eigenvector end components")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--method", choices=("analytic", "oracle", "both"))
    p.add_argument("--vectors-out", help="optional JSON dump of full eigenvectors")

    p = add("evolve", "occupation probabilities over a time grid")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--method", choices=("analytic", "oracle", "both"))
    p.add_argument("--full", action="store_true", help="dump every site column")

    p = add("pmax", "peak destination occupation in a window")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--method", choices=("analytic", "oracle"))

    p = add("sweep", "grid of (n, a) transfer experiments")
    p.add_argument("--n-list", help="comma-separated wire lengths")
    p.add_argument("--a-min", type=float)
    p.add_argument("--a-max", type=float)
    p.add_argument("--a-steps", type=int)
    p.add_argument("--a-list", help="comma-separated couplings (overrides the range)")
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--method", choices=("analytic", "oracle"))
    p.add_argument("--jobs", type=int)

    p = add("predict", "small-coupling predictions against exact values")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--method", choices=("analytic", "oracle"))

    p = add("bell", "entanglement checkpoint at half the transfer time")
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--method", choices=("analytic", "oracle"))

    p = add("figure", "data table behind one of the survey figures")
    p.add_argument("--figure", choices=experiments.FIGURES)
    p.add_argument("--n", type=int)
    p.add_argument("--a", type=float)
    p.add_argument("--n-list", help="comma-separated wire lengths (fig5)")
    p.add_argument("--a-min", type=float)
    p.add_argument("--a-max", type=float)
    p.add_argument("--a-steps", type=int)
    p.add_argument("--t-max", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--method", choices=("analytic", "oracle"))
    return parser


def _parse_int_list(text) -> list[int]:
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    try:
        return [int(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse integer list from {text!r}") from exc


def _parse_float_list(text) -> list[float]:
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    try:
        return [float(tok) for tok in str(text).split(",") if tok.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse float list from {text!r}") from exc


def resolve_config(command: str, flags: dict) -> dict:
    """Merge defaults, config file and flags into the run configuration."""
    config = dict(_DEFAULTS.get(command, {}))
    path = flags.pop("config", None)
    if path:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(loaded, dict):
            raise ConfigError("config file must hold a flat JSON object")
        loaded.pop("command", None)
        config.update(loaded)
    config.update(flags)
    config["command"] = command

    missing = [key for key in _REQUIRED[command] if config.get(key) is None]
    if missing:
        raise ConfigError(
            f"{command} requires {', '.join('--' + m.replace('_', '-') for m in missing)}"
        )
    method = config.get("method")
    a = config.get("a")
    if method == "analytic" and a is not None and float(a) ** 2 >= 2.0:
        raise RegimeError(
            f"method=analytic covers 0 < a^2 < 2 only (a={a}); use --method oracle"
        )
    return config


def _provenance(config: dict) -> tuple[str, ...]:
    # output paths and worker count affect where/how the run executes,
    # never what it computes, so they stay out of the reproducibility header
    keys = {
        k: v
        for k, v in config.items()
        if k not in ("out", "vectors_out", "jobs") and v is not None
    }
    return (f"spinwire {config['command']}", f"config: {json.dumps(keys, sort_keys=True)}")


def _emit(columns, rows, config: dict) -> None:
    comments = _provenance(config)
    out = config.get("out")
    if out:
        experiments.write_csv(out, columns, rows, comments)
    else:
        for line in comments:
            print(f"# {line}")
        print(",".join(columns))
        for row in np.atleast_2d(np.asarray(rows, dtype=float)):
            print(",".join(_FMT % x for x in row))


def _decomposition(params: WireParams, method: str):
    if method == "analytic":
        return analytic_eigendecomposition(params)
    return oracle_eigendecomposition(build_hamiltonian(params))


def _cmd_spectrum(config: dict) -> None:
    params = WireParams(n=config["n"], a=config["a"])
    method = config["method"]
    if method == "both":
        analytic = analytic_eigendecomposition(params)
        oracle = oracle_eigendecomposition(build_hamiltonian(params))
        report = compare_decompositions(analytic, oracle)
        report["n"], report["a"] = params.n, params.a
        print(json.dumps({"cross_validation": report}, sort_keys=True))
        decomp = analytic
    else:
        decomp = _decomposition(params, method)
    mus = decomp.parities
    rows = np.column_stack(
        (decomp.lambdas, decomp.gammas, mus, decomp.vectors[0], decomp.vectors[-1])
    )
    _emit(("lambda", "gamma", "mu", "v0", "vn1"), rows, config)
    vectors_out = config.get("vectors_out")
    if vectors_out:
        payload = {
            "n": params.n,
            "a": params.a,
            "method": decomp.method,
            "lambdas": decomp.lambdas.tolist(),
            "vectors": decomp.vectors.T.tolist(),
        }
        with open(vectors_out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)


def _cmd_evolve(config: dict) -> None:
    params = WireParams(n=config["n"], a=config["a"])
    method = config["method"]
    decomp = _decomposition(params, "analytic" if method == "both" else method)
    series = dynamics.transfer_series(
        params,
        config["t_max"],
        config["dt"],
        decomp=decomp,
        keep_sites=bool(config.get("full")),
    )
    if method == "both":
        other = dynamics.transfer_series(
            params,
            config["t_max"],
            config["dt"],
            decomp=oracle_eigendecomposition(build_hamiltonian(params)),
        )
        report = {
            "n": params.n,
            "a": params.a,
            "max_pend_diff": float(np.max(np.abs(series.pend - other.pend))),
        }
        print(json.dumps({"cross_validation": report}, sort_keys=True))
    if config.get("full"):
        columns = ("t",) + tuple(f"P{j}" for j in range(params.dim))
        rows = np.column_stack((series.times, series.p_site.T))
    else:
        columns = ("t", "P0", "Pend", "Pnet")
        rows = np.column_stack((series.times, series.p0, series.pend, series.pnet))
    _emit(columns, rows, config)


def _cmd_pmax(config: dict) -> None:
    params = WireParams(n=config["n"], a=config["a"])
    decomp = _decomposition(params, config["method"])
    best = experiments.max_transfer(
        params, config["t_max"], dt=config.get("dt"), decomp=decomp
    )
    rows = [(best.n, best.a, best.p_max, best.t_at_max, best.t_max)]
    _emit(("n", "a", "Pmax", "t_at_max", "t_max"), rows, config)


def _cmd_sweep(config: dict) -> None:
    n_list = _parse_int_list(config["n_list"])
    if config.get("a_list") is not None:
        a_list = _parse_float_list(config["a_list"])
    else:
        for key in ("a_min", "a_max", "a_steps"):
            if config.get(key) is None:
                raise ConfigError("sweep requires --a-list or --a-min/--a-max/--a-steps")
        a_list = np.linspace(config["a_min"], config["a_max"], config["a_steps"])
    result = experiments.sweep(
        n_list,
        a_list,
        config["t_max"],
        dt=config.get("dt"),
        method=config["method"],
        jobs=int(config.get("jobs") or 1),
    )
    rows = [
        (
            row.n,
            row.a,
            row.p_max,
            row.t_at_max,
            row.lambda_hat,
            row.tau,
            1.0 if row.error else 0.0,
        )
        for row in result.rows
    ]
    _emit(("n", "a", "Pmax", "t_at_max", "lambda_hat", "tau", "failed"), rows, config)
    failures = [row for row in result.rows if row.error]
    if failures:
        codes = sorted({row.error for row in failures})
        print(
            json.dumps({"failed_points": len(failures), "codes": codes}),
            file=sys.stderr,
        )


def _cmd_predict(config: dict) -> None:
    params = WireParams(n=config["n"], a=config["a"])
    pred = asymptotics.predict(params)
    decomp = _decomposition(params, config["method"])
    lam_exact = asymptotics.smallest_positive_eigenvalue(decomp)
    t_max = config.get("t_max") or 2.0 * pred.tau
    config["t_max"] = t_max
    best = experiments.max_transfer(params, t_max, decomp=decomp)
    tau_exact = experiments.transfer_time(params, t_max, decomp=decomp)
    rows = [
        (
            params.n,
            params.a,
            pred.lambda_hat,
            lam_exact,
            pred.tau,
            tau_exact,
            best.p_max,
            pred.delta,
            pred.fidelity_loss_scale,
        )
    ]
    _emit(
        (
            "n",
            "a",
            "lambda_hat_pred",
            "lambda_hat_exact",
            "tau_pred",
            "tau_exact",
            "Pmax",
            "delta",
            "a2n",
        ),
        rows,
        config,
    )


def _cmd_bell(config: dict) -> None:
    params = WireParams(n=config["n"], a=config["a"])
    pred = asymptotics.predict(params)
    decomp = _decomposition(params, config["method"])
    t_max = config.get("t_max") or 2.0 * pred.tau
    config["t_max"] = t_max
    tau = experiments.transfer_time(params, t_max, decomp=decomp)
    psi = dynamics.evolve(decomp, initial_excitation_state(params), tau / 2.0)
    snap = dynamics.site_probabilities(psi, t=tau / 2.0)
    rows = [
        (
            params.n,
            params.a,
            tau,
            tau / 2.0,
            dynamics.bell_fidelity(psi),
            snap.p_source,
            snap.p_destination,
            snap.p_net,
        )
    ]
    _emit(("n", "a", "tau", "t", "bell_fidelity", "P0", "Pend", "Pnet"), rows, config)


def _cmd_figure(config: dict) -> None:
    overrides = {}
    for key in ("n", "a", "a_min", "a_max", "a_steps", "t_max", "dt"):
        if config.get(key) is not None:
            overrides[key] = config[key]
    if config.get("n_list") is not None:
        overrides["n_list"] = tuple(_parse_int_list(config["n_list"]))
    table = experiments.figure_data(
        config["figure"], method=config["method"], **overrides
    )
    merged = dict(config)
    merged.update(
        {k: (list(v) if isinstance(v, tuple) else v) for k, v in table.defaults.items()}
    )
    _emit(table.columns, table.rows, merged)


_HANDLERS = {
    "spectrum": _cmd_spectrum,
    "evolve": _cmd_evolve,
    "pmax": _cmd_pmax,
    "sweep": _cmd_sweep,
    "predict": _cmd_predict,
    "bell": _cmd_bell,
    "figure": _cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = vars(args)
    command = flags.pop("command")
    try:
        config = resolve_config(command, flags)
        _HANDLERS[command](config)
    except SpinWireError as exc:
        record = {
            "code": exc.code,
            "message": str(exc),
            "params": {
                k: v
                for k, v in (flags | {"command": command}).items()
                if isinstance(v, (int, float, str, bool)) or v is None
            },
        }
        print(json.dumps(record, sort_keys=True), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
