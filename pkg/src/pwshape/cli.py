"""``pwshape`` command line: fit, compare, lrt, density and ``--self-check``.

Exit codes: 0 success, 2 data error, 3 numerical failure or nonconvergence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .densities import ModelSpec, density_for
from .errors import DataError, DensityEvaluationError, DomainError, NumericalError
from .generators import GaussianGenerator, KotzGenerator
from .geometry import VSTAR_MODES, shape_from_landmarks
from .inference import evidence_grade, fit_mle, initial_mean, lrt_mean_shape
from .io import dumps, read_landmarks, write_trace_csv
from .oracles import truncation_study
from .selfcheck import self_check, self_check_passed

EXIT_DATA = 2
EXIT_NUMERICAL = 3
DEFAULT_SWEEP = (20, 40, 60, 80, 100, 110, 120, 140, 160)


class _Fail(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _model_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("data", help="landmark TSV (group, id, index, x, y[, z])")
    p.add_argument("--model", choices=("gaussian", "kotz"), default="gaussian")
    p.add_argument("--T", type=float, default=1.0, help="Kotz shape parameter")
    p.add_argument("--R", type=float, default=0.5, help="Kotz rate parameter")
    p.add_argument("--sigma2", type=float, default=50.0)
    p.add_argument("--truncation", type=int, default=120)
    p.add_argument("--radial-convention", choices=("printed", "derived"), default="printed")
    p.add_argument("--vstar", choices=VSTAR_MODES, default="cholesky")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output JSON path (stdout if omitted)")
    p.add_argument("--strict", action="store_true",
                   help="fail with exit code 3 if a series or the optimiser does not converge")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pwshape",
        description="Elliptical pseudo-Wishart shape models for landmark data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--self-check", action="store_true",
                        help="run the built-in numerical oracles and print their reports")
    parser.add_argument("--mc-samples", type=int, default=1_000_000,
                        help="Monte Carlo samples for the self-check normalisation")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("fit", help="maximum likelihood fit of the mean shape for one group")
    _model_args(p)
    p.add_argument("--group", required=True)
    p.add_argument("--trace", help="CSV path for the iteration trace (default: next to --out)")

    p = sub.add_parser("compare", help="BIC* table over several models")
    _model_args(p)
    p.add_argument("--models", nargs="+", default=["gaussian", "kotz:2", "kotz:3"],
                   help="model list such as gaussian kotz:2 kotz:3")
    p.add_argument("--group", action="append", help="restrict to these groups")

    p = sub.add_parser("lrt", help="likelihood ratio test of equal mean shape")
    _model_args(p)
    p.add_argument("--group", action="append", required=True,
                   help="give exactly twice: the two groups to compare")

    p = sub.add_parser("density", help="per-specimen log-densities")
    _model_args(p)
    p.add_argument("--group", action="append", help="restrict to these groups")
    p.add_argument("--mu", default="mean",
                   help="'mean' (mean preshape of the selected specimens), 'zero', or a JSON file")
    p.add_argument("--sweep", nargs="*", type=int,
                   help="also report a truncation sweep (default grid if no values given)")
    return parser


# ---------------------------------------------------------------------------


def _generator(args, M: int, model: str | None = None, T: float | None = None):
    model = model or args.model
    if model == "gaussian":
        return GaussianGenerator(M)
    return KotzGenerator(args.T if T is None else T, args.R, M)


def _spec(args, ds, mu=None, **kw) -> ModelSpec:
    M = (ds.N - 1) * ds.K
    mu = np.zeros((ds.N - 1, ds.K)) if mu is None else mu
    return ModelSpec(
        _generator(args, M, **kw),
        mu,
        args.sigma2,
        t_max=args.truncation,
        radial_convention=args.radial_convention,
        strict=args.strict,
    )


def _shapes(args, specimens) -> list:
    return [shape_from_landmarks(c, vstar=args.vstar) for c in specimens]


def _describe(model: ModelSpec) -> dict:
    g = model.generator
    return {
        "model": "gaussian" if isinstance(g, GaussianGenerator) else "kotz",
        "T": float(g.T),
        "R": float(g.R),
        "sigma2": float(model.sigma),
        "truncation": model.t_max,
        "radial_convention": model.radial_convention,
    }


def _series_converged(sample, model, density) -> bool:
    return all(density(s, model, return_series=True)[1].converged for s in sample)


def _emit(obj, out: str | None) -> None:
    text = dumps(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fit_record(fit, model, sample, density) -> dict:
    rec = _describe(model)
    rec.update(
        mu_hat=fit.mu_hat.ravel(order="C"),
        logL=fit.logL,
        bic_star=fit.bic_star,
        iterations=fit.iterations,
        wall_time_s=fit.wall_time,
        n=len(sample),
        converged=fit.converged,
        restarted=fit.restarted,
        series_converged=_series_converged(sample, model.replace(mu=fit.mu_hat), density),
    )
    return rec


def _check_strict(args, rec) -> None:
    if args.strict and not (rec["converged"] and rec["series_converged"]):
        raise _Fail(EXIT_NUMERICAL, "fit or series did not converge")


def cmd_fit(args) -> dict:
    ds = read_landmarks(args.data)
    sample = _shapes(args, ds[args.group])
    model = _spec(args, ds)
    density = density_for(model)
    fit = fit_mle(sample, model, density, seed=args.seed)
    rec = _fit_record(fit, model, sample, density)
    rec["group"] = args.group
    trace_path = args.trace or (str(Path(args.out).with_suffix("")) + "_trace.csv" if args.out else None)
    if trace_path:
        write_trace_csv(fit.trace, trace_path)
    _check_strict(args, rec)
    return rec


def _parse_model_token(tok: str):
    name, _, t = tok.partition(":")
    if name == "gaussian" and not t:
        return "gaussian", 1.0
    if name == "kotz" and t:
        return "kotz", float(t)
    raise _Fail(EXIT_DATA, f"bad model token {tok!r}; use gaussian or kotz:T")


def cmd_compare(args) -> dict:
    ds = read_landmarks(args.data)
    groups = args.group or list(ds.groups)
    tokens = [_parse_model_token(t) for t in args.models]
    table = {}
    for g in groups:
        sample = _shapes(args, ds[g])
        rows = []
        for name, T in tokens:
            model = _spec(args, ds, model=name, T=T)
            density = density_for(model)
            fit = fit_mle(sample, model, density, seed=args.seed)
            rec = _fit_record(fit, model, sample, density)
            _check_strict(args, rec)
            rows.append(rec)
        rows.sort(key=lambda r: r["bic_star"])
        best = rows[0]["bic_star"]
        for r in rows:
            r["delta_bic"] = r["bic_star"] - best
            r["grade"] = evidence_grade(r["delta_bic"])
        table[g] = rows
    return {"groups": table}


def cmd_lrt(args) -> dict:
    if len(args.group) != 2:
        raise _Fail(EXIT_DATA, "lrt needs exactly two --group options")
    ds = read_landmarks(args.data)
    g1, g2 = args.group
    s1, s2 = _shapes(args, ds[g1]), _shapes(args, ds[g2])
    model = _spec(args, ds)
    res = lrt_mean_shape(s1, s2, model, seed=args.seed)
    rec = _describe(model)
    rec.update(
        groups=sorted([g1, g2]),
        statistic=res.statistic,
        df=res.df,
        p_value=res.p_value,
        logL_h0=res.logL_h0,
        logL_h1=res.logL_h1,
        clamped=res.clamped,
    )
    return rec


def _load_mu(args, ds, specimens, sample):
    if args.mu == "mean":
        return initial_mean(sample)
    if args.mu == "zero":
        return np.zeros((ds.N - 1, ds.K))
    mu = np.asarray(json.loads(Path(args.mu).read_text()), dtype=float)
    return mu.reshape(ds.N - 1, ds.K)


def cmd_density(args) -> dict:
    ds = read_landmarks(args.data)
    specimens = [c for g in (args.group or list(ds.groups)) for c in ds[g]]
    sample = _shapes(args, specimens)
    mu = _load_mu(args, ds, specimens, sample)
    model = _spec(args, ds, mu=mu)
    density = density_for(model)
    rows = []
    for s in sample:
        try:
            val, series = density(s, model, return_series=True)
        except (NumericalError, DomainError) as exc:
            raise DensityEvaluationError(s.specimen_id, exc) from exc
        rows.append({
            "id": s.specimen_id,
            "r": s.r,
            "u": s.u,
            "logJ": s.log_jacobian,
            "log_density": val.log_magnitude if val.sign > 0 else None,
            "sign": val.sign,
            "series_converged": series.converged,
        })
    rec = _describe(model)
    rec["mu"] = mu.ravel(order="C")
    rec["specimens"] = rows
    if args.sweep is not None:
        grid = args.sweep or list(DEFAULT_SWEEP)
        s0 = sample[0]
        study, stable = truncation_study(lambda t: density(s0, model.replace(t_max=t)), grid)
        rec["sweep"] = {
            "id": s0.specimen_id,
            "rows": [{"t_max": r.t_max, "value": r.value, "increment": r.increment} for r in study],
            "stable_from": stable,
        }
    return rec


def cmd_self_check(args) -> dict:
    reports = self_check(seed=0, n_samples=args.mc_samples)
    passed = self_check_passed(reports)
    return {"passed": passed, "reports": [r.to_dict() for r in reports]}


COMMANDS = {"fit": cmd_fit, "compare": cmd_compare, "lrt": cmd_lrt, "density": cmd_density}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.self_check:
            rec = cmd_self_check(args)
            _emit(rec, getattr(args, "out", None))
            return 0 if rec["passed"] else EXIT_NUMERICAL
        if args.command is None:
            parser.print_help(sys.stderr)
            return EXIT_DATA
        _emit(COMMANDS[args.command](args), args.out)
        return 0
    except _Fail as exc:
        print(f"pwshape: {exc}", file=sys.stderr)
        return exc.code
    except (DataError, KeyError, FileNotFoundError, DomainError) as exc:
        print(f"pwshape: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NumericalError, DensityEvaluationError) as exc:
        print(f"pwshape: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
