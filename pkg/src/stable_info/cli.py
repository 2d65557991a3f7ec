"""Command-line front end.

Emits the figure tables as CSV, runs bound checks and estimator
benchmarks, and exposes the numeric configuration.  Exit codes:
0 success, 1 bound violation, 2 configuration error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bounds, capacity, estimate, jalpha, stable
from .alphapower import alpha_power
from .density import (
    Cauchy,
    Gaussian,
    Laplace,
    RandomLaw,
    SaS,
    Scaled,
    Sum,
    Uniform,
    auto_grid,
    convolve,
    realize,
)
from .specfun import kappa_alpha

__all__ = ["main", "RunConfig", "load_config"]

CONFIG_ENV_VAR = "STABLE_INFO_CONFIG"

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3


@dataclass
class RunConfig:
    n_points: int = 2**16
    extent_factor: float = 200.0
    root_tol: float = 1e-6
    entropy_tol: float = 1e-5
    slack_tol: float = 1e-3
    seed: int = 12345
    format: str = "csv"
    path: str | None = None

    def validate(self):
        if self.n_points < 2**12 or self.n_points & (self.n_points - 1):
            raise ValueError("n_points must be a power of two >= 4096")
        if self.extent_factor < 50:
            raise ValueError("extent_factor must be >= 50")
        for name in ("root_tol", "entropy_tol", "slack_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")


_CONFIG_TYPES = {
    "n_points": int,
    "extent_factor": float,
    "root_tol": float,
    "entropy_tol": float,
    "slack_tol": float,
    "seed": int,
    "format": str,
    "path": str,
}


def load_config(path: str | None = None, overrides: dict | None = None) -> RunConfig:
    """Flat key=value config file, then explicit overrides on top."""
    cfg = RunConfig()
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path:
        with open(path) as f:
            for line in f:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ValueError(f"bad config line: {line!r}")
                key, _, raw = line.partition("=")
                key = key.strip()
                if key not in _CONFIG_TYPES:
                    raise ValueError(f"unknown config key: {key!r}")
                setattr(cfg, key, _CONFIG_TYPES[key](raw.strip()))
    for key, val in (overrides or {}).items():
        if val is not None:
            setattr(cfg, key, val)
    cfg.validate()
    return cfg


def parse_law(spec: str) -> RandomLaw:
    """Law spec strings: gaussian:SIGMA, uniform:A, laplace:B,
    cauchy:GAMMA, sas:ALPHA:GAMMA."""
    parts = spec.lower().split(":")
    name, args = parts[0], [float(p) for p in parts[1:]]
    try:
        if name == "gaussian":
            return Gaussian(args[0] if args else 1.0)
        if name == "uniform":
            return Uniform(args[0] if args else 1.0)
        if name == "laplace":
            return Laplace(args[0] if args else 1.0)
        if name == "cauchy":
            return Cauchy(args[0] if args else 1.0)
        if name == "sas":
            if len(args) != 2:
                raise ValueError("sas law needs alpha and gamma: sas:ALPHA:GAMMA")
            return SaS(args[0], args[1])
    except IndexError:
        raise ValueError(f"bad law spec {spec!r}") from None
    raise ValueError(f"unknown law {name!r}")


def _law_label(law: RandomLaw) -> str:
    if isinstance(law, Gaussian):
        return f"gaussian:{law.sigma:g}"
    if isinstance(law, Uniform):
        return f"uniform:{law.a:g}"
    if isinstance(law, Laplace):
        return f"laplace:{law.b:g}"
    if isinstance(law, Cauchy):
        return f"cauchy:{law.gamma:g}"
    if isinstance(law, SaS):
        return f"sas:{law.alpha:g}:{law.gamma:g}"
    return repr(law)


def _emit(cfg: RunConfig, header: list, rows: list, payload=None) -> None:
    """Write CSV rows (or a JSON payload when format=json) to the
    configured path or stdout."""
    if cfg.format == "json":
        doc = payload if payload is not None else [dict(zip(header, r)) for r in rows]
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        text = buf.getvalue()
    if cfg.path:
        with open(cfg.path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(cfg: RunConfig, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if cfg.path:
        with open(cfg.path, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


DEFAULT_POWER_ALPHAS = [round(0.4 + 0.2 * i, 1) for i in range(8)]  # 0.4 .. 1.8
DEFAULT_POWER_LAWS = [
    Gaussian(1.0),
    Uniform(1.0),
    Laplace(1.0),
    Cauchy(1.0),
    SaS(1.5, 1.0),
]


def cmd_power_table(args, cfg: RunConfig) -> int:
    alphas = (
        [float(a) for a in args.alphas.split(",")] if args.alphas else DEFAULT_POWER_ALPHAS
    )
    laws = (
        [parse_law(s) for s in args.laws.split(",")] if args.laws else DEFAULT_POWER_LAWS
    )
    rows = []
    status = EXIT_OK
    for a in alphas:
        for law in laws:
            try:
                res = alpha_power(law, a)
                value = "infinite" if not res.finite else f"{res.value:.10g}"
                residual = "" if not res.finite else f"{res.residual:.3g}"
                rows.append([a, _law_label(law), value, res.method, residual, ""])
            except Exception as exc:  # noqa: BLE001 - row-level error reporting
                rows.append([a, _law_label(law), "", "", "", str(exc)])
                status = EXIT_NUMERIC
    _emit(cfg, ["alpha", "law", "alpha_power", "method", "residual", "error"], rows)
    return status


def cmd_jalpha_table(args, cfg: RunConfig) -> int:
    alphas = (
        [float(a) for a in args.alphas.split(",")]
        if args.alphas
        else [1.2, 1.4, 1.6, 1.8]
    )
    rs = (
        [float(r) for r in args.rs.split(",")]
        if args.rs
        else [round(0.4 + 0.2 * i, 1) for i in range(8)]
    )
    rows = []
    for a in alphas:
        for r in rs:
            gam = r ** (-1.0 / r)
            j = jalpha.jalpha_of_law(SaS(r, gam), a, n=cfg.n_points)
            if math.isclose(r, a):
                closed = jalpha.jalpha_closed_stable(a, gam)
                rel = f"{(j.value - closed) / closed:.3g}"
            else:
                rel = ""
            rows.append([a, r, f"{j.value:.10g}", j.method, rel])
    _emit(
        cfg,
        ["alpha", "r", "J_alpha", "method", "relerr_vs_closed_form_if_stable"],
        rows,
    )
    return EXIT_OK


def cmd_giie_table(args, cfg: RunConfig) -> int:
    alphas = (
        [float(a) for a in args.alphas.split(",")]
        if args.alphas
        else [1.2, 1.4, 1.6, 1.8, 2.0]
    )
    rs = (
        [float(r) for r in args.rs.split(",")]
        if args.rs
        else [round(0.4 + 0.2 * i, 1) for i in range(8)]
    )
    rows = []
    status = EXIT_OK
    for a in alphas:
        for r in rs:
            rep = bounds.giie_product(SaS(r, r ** (-1.0 / r)), a)
            rows.append([a, r, f"{rep.lhs:.10g}", f"{rep.rhs:.10g}"])
            if not rep.holds(cfg.slack_tol):
                status = EXIT_VIOLATION
    _emit(cfg, ["alpha", "r", "product", "kappa_alpha"], rows)
    return status


def cmd_giie_mix(args, cfg: RunConfig) -> int:
    sigmas = (
        [float(s) for s in args.sigmas.split(",")]
        if args.sigmas
        else [0.5 * i for i in range(17)]
    )
    pairs = bounds.giie_mix_products(sigmas, alpha=1.8)
    k18 = kappa_alpha(1.8)
    rows = [[s, f"{p:.10g}", f"{k18:.10g}"] for s, p in pairs]
    status = EXIT_OK if all(p >= k18 - cfg.slack_tol for _, p in pairs) else EXIT_VIOLATION
    _emit(cfg, ["sigma", "product", "kappa_18"], rows)
    return status


def cmd_sum_bound(args, cfg: RunConfig) -> int:
    laws = (
        [parse_law(s) for s in args.laws.split(",")]
        if args.laws
        else [Gaussian(1.0), Laplace(1.0)]
    )
    alpha = args.alpha
    gamma = args.gamma
    rows = []
    status = EXIT_OK
    for law in laws:
        smooth = jalpha.smooth_for_spectral(law, alpha)
        grid = auto_grid(smooth, n=cfg.n_points, extent_factor=jalpha.SPECTRAL_EXTENT_FACTOR)
        f = realize(smooth, grid)
        h_x = f.entropy()
        j_x = jalpha.jalpha_spectral(f, alpha).value
        h_bound = bounds.entropy_sum_upper(h_x, j_x, alpha, gamma)
        z = realize(SaS(alpha, gamma), grid)
        h_num = convolve(f, z).entropy()
        slack = h_bound - h_num
        rows.append(
            [_law_label(law), alpha, gamma, f"{h_num:.10g}", f"{h_bound:.10g}", f"{slack:.6g}"]
        )
        if slack < -cfg.slack_tol:
            status = EXIT_VIOLATION
    _emit(
        cfg,
        ["law", "alpha", "gamma", "h_sum_numeric", "h_sum_bound", "slack"],
        rows,
    )
    return status


def cmd_debruijn_check(args, cfg: RunConfig) -> int:
    law = parse_law(args.law)
    rep = jalpha.debruijn_check(law, args.alpha, args.gamma, args.eta)
    _emit_json(
        cfg,
        {
            "name": rep.name,
            "lhs": rep.lhs,
            "rhs": rep.rhs,
            "relative_error": rep.method["relative_error"],
            "inputs": rep.inputs,
        },
    )
    return EXIT_OK if rep.method["relative_error"] <= args.tol else EXIT_VIOLATION


def cmd_capacity(args, cfg: RunConfig) -> int:
    spec = capacity.ChannelSpec(args.alpha, args.gamma_n, args.A, args.d)
    gamma_x = capacity.optimal_input_scale(spec)
    p_n = capacity.noise_alpha_power(spec.alpha, spec.gamma_N)
    payload = {
        "C_nats": capacity.capacity_stable(spec),
        "gamma_x_star": gamma_x,
        "p_alpha_N": p_n,
        "checks": {
            "power_combination": (
                capacity.noise_alpha_power(spec.alpha, gamma_x) ** spec.alpha
                + p_n**spec.alpha
            )
            ** (1.0 / spec.alpha)
            if gamma_x > 0
            else p_n,
        },
    }
    _emit_json(cfg, payload)
    return EXIT_OK


def cmd_crb_bench(args, cfg: RunConfig) -> int:
    run = estimate.EstimatorRun(
        estimator=args.estimator,
        theta_true=args.theta,
        noise=stable.StableParams.symmetric(args.alpha, args.gamma_n),
        trials=args.trials,
        samples_per_trial=args.n,
        seed=args.seed if args.seed is not None else cfg.seed,
        K=args.K,
    )
    run = estimate.run_estimator(run)
    payload = {
        "estimator": run.estimator,
        "error_alpha_power": run.error_alpha_power,
        "crb": run.crb,
        "ratio": run.error_alpha_power / run.crb,
        "diagnostics": run.diagnostics,
    }
    if args.errors_csv:
        with open(args.errors_csv, "w", newline="") as f:
            w = csv.writer(f)
            w.writerow(["error"])
            for e in run.errors:
                w.writerow([repr(float(e))])
    _emit_json(cfg, payload)
    if run.error_alpha_power < run.crb * (1.0 - 0.02):
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_suite(args, cfg: RunConfig) -> int:
    """Aggregated bound checks at a reduced matrix size."""
    results = {}
    violations = []

    def record(key, ok, detail):
        results[key] = {"pass": bool(ok), **detail}
        if not ok:
            violations.append(key)

    rep = jalpha.debruijn_check(Gaussian(1.0), 1.5, 1.0, 0.5)
    record(
        "debruijn_gaussian",
        rep.method["relative_error"] <= 0.02,
        {"relative_error": rep.method["relative_error"]},
    )
    rep = bounds.gfii_check(SaS(1.5, 1.0), SaS(1.5, 1.0), 1.5)
    record("gfii_stable", rep.holds(cfg.slack_tol), {"slack": rep.slack})
    for a in (1.2, 1.6, 2.0):
        rep = bounds.giie_product(SaS(1.8, 1.0), a) if a < 2 else bounds.giie_product(
            Gaussian(1.0), a
        )
        record(f"giie_alpha_{a}", rep.holds(cfg.slack_tol), {"slack": rep.slack})
    pairs = bounds.giie_mix_products([0.5 * i for i in range(17)])
    argmin_sigma = min(pairs, key=lambda sp: sp[1])[0]
    k18 = kappa_alpha(1.8)
    worst = min(p for _, p in pairs)
    record(
        "giie_mix_bound",
        worst >= k18 - cfg.slack_tol,
        {"worst_product": worst, "kappa_18": k18, "argmin_sigma": argmin_sigma},
    )
    record(
        "kappa_2_unity",
        abs(kappa_alpha(2.0) - 1.0) <= 1e-10,
        {"kappa_2": kappa_alpha(2.0)},
    )
    run = estimate.run_estimator(
        estimate.EstimatorRun(
            estimator="ml_identity",
            theta_true=0.0,
            noise=stable.StableParams.symmetric(1.8, 1.0),
            trials=2000,
            samples_per_trial=1,
            seed=cfg.seed,
        )
    )
    record(
        "crb_ml_identity",
        run.error_alpha_power >= run.crb * 0.98,
        {"error_alpha_power": run.error_alpha_power, "crb": run.crb},
    )
    _emit_json(cfg, {"results": results, "violations": violations})
    return EXIT_OK if not violations else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stable-info",
        description="Alpha-power / alpha-Fisher information numerics for "
        "symmetric alpha-stable laws",
    )
    p.add_argument("--config", help="key=value config file (or set $" + CONFIG_ENV_VAR + ")")
    p.add_argument("--n-points", type=int, dest="n_points")
    p.add_argument("--extent-factor", type=float, dest="extent_factor")
    p.add_argument("--seed", type=int, dest="global_seed")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--output", dest="path", help="output file (default stdout)")
    p.add_argument(
        "--show-config", action="store_true", help="print the effective config and exit"
    )
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("power-table", help="alpha-power sweep over laws")
    sp.add_argument("--alphas", help="comma-separated alpha values")
    sp.add_argument("--laws", help="comma-separated law specs")
    sp.set_defaults(fn=cmd_power_table)

    sp = sub.add_parser("jalpha-table", help="alpha-Fisher information of S(r, r^(-1/r))")
    sp.add_argument("--alphas")
    sp.add_argument("--rs")
    sp.set_defaults(fn=cmd_jalpha_table)

    sp = sub.add_parser("giie-table", help="isoperimetric products over stable laws")
    sp.add_argument("--alphas")
    sp.add_argument("--rs")
    sp.set_defaults(fn=cmd_giie_table)

    sp = sub.add_parser("giie-mix", help="isoperimetric product, stable + Gaussian mix")
    sp.add_argument("--sigmas")
    sp.set_defaults(fn=cmd_giie_mix)

    sp = sub.add_parser("sum-bound", help="entropy-of-sum upper bound check")
    sp.add_argument("--laws")
    sp.add_argument("--alpha", type=float, default=1.5)
    sp.add_argument("--gamma", type=float, default=1.0)
    sp.set_defaults(fn=cmd_sum_bound)

    sp = sub.add_parser("debruijn-check", help="generalized de Bruijn identity check")
    sp.add_argument("--law", default="gaussian:1")
    sp.add_argument("--alpha", type=float, default=1.5)
    sp.add_argument("--gamma", type=float, default=1.0)
    sp.add_argument("--eta", type=float, default=0.5)
    sp.add_argument("--tol", type=float, default=0.02)
    sp.set_defaults(fn=cmd_debruijn_check)

    sp = sub.add_parser("capacity", help="stable channel capacity")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--gamma-n", type=float, required=True)
    sp.add_argument("--A", type=float, required=True)
    sp.add_argument("--d", type=int, default=1)
    sp.set_defaults(fn=cmd_capacity)

    sp = sub.add_parser("crb-bench", help="estimator benchmark vs generalized CRB")
    sp.add_argument("--alpha", type=float, default=1.8)
    sp.add_argument("--gamma-n", type=float, default=1.0)
    sp.add_argument("--estimator", choices=estimate.ESTIMATORS, default="ml_identity")
    sp.add_argument("--trials", type=int, default=10000)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--theta", type=float, default=0.0)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--K", type=float)
    sp.add_argument("--errors-csv", help="optional CSV path for the raw errors")
    sp.set_defaults(fn=cmd_crb_bench)

    sp = sub.add_parser("suite", help="run every bound family and summarize")
    sp.set_defaults(fn=cmd_suite)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(
            args.config,
            overrides={
                "n_points": args.n_points,
                "extent_factor": args.extent_factor,
                "seed": args.global_seed,
                "format": args.format,
                "path": args.path,
            },
        )
    except (OSError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.show_config:
        print(json.dumps(cfg.__dict__, indent=2, sort_keys=True))
        return EXIT_OK
    if not getattr(args, "fn", None):
        parser.print_help()
        return EXIT_CONFIG
    try:
        return args.fn(args, cfg)
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
