"""Command-line front end: fit/cv/predict on CSV data, simulate, bench.

Every output JSON embeds a run manifest (subcommand, resolved parameters,
input digests, tool version, generator name) that pins the run down exactly;
timestamps live in a separate field so payloads from identical runs compare
byte-identically. The SPCREG_THREADS environment variable sets the worker
count for benchmark replications (results are independent of it).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from . import rng as _rng
from .adaptive import aspcr_pipeline, fit_aspcr
from .data import (CsvFormatError, Dataset, SpcrConfig, composite_coefficients,
                   load_csv)
from .selection import cross_validate, make_folds
from .simbench import CASE_IDS, METHOD_NAMES, case_spec, make_case, run_benchmark
from .solver import NonFiniteError, fit

EXIT_OK = 0
EXIT_DATA = 2
EXIT_NOCONV = 3


@dataclass
class RunManifest:
    """Everything needed to reproduce a run bit-identically."""

    subcommand: str
    parameters: dict
    input_digests: dict
    tool_version: str
    generator: str


def _digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _manifest(args, parameters: dict, inputs: dict) -> RunManifest:
    return RunManifest(
        subcommand=args.command,
        parameters=parameters,
        input_digests={name: _digest(p) for name, p in inputs.items()},
        tool_version=__version__,
        generator=_rng.GENERATOR_NAME,
    )


def _write_json(path: Path, manifest: RunManifest, payload: dict) -> None:
    doc = {"manifest": asdict(manifest),
           "timestamp": datetime.now(timezone.utc).isoformat()}
    doc.update(payload)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")


def _fmt_cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path: Path, columns, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_fmt_cell(row[c]) for c in columns])


def _parse_response(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _load_centered(path, response, header, standardize):
    x_raw, y_raw, names, resp_name = load_csv(path, response, header=header)
    means = x_raw.mean(axis=0)
    xc = x_raw - means
    sds = None
    if standardize:
        sds = xc.std(axis=0)
        dead = np.flatnonzero(sds == 0.0)
        if dead.size:
            raise CsvFormatError(
                f"zero-variance predictor column(s) {[names[i] for i in dead]}"
            )
        xc = xc / sds
    ds = Dataset(xc, y_raw, centered=True)
    preprocess = {
        "predictors": names,
        "response": resp_name,
        "column_means": means.tolist(),
        "column_sds": sds.tolist() if sds is not None else None,
    }
    return ds, preprocess


def _model_payload(model, preprocess) -> dict:
    return {
        "model": {
            "gamma0": model.gamma0,
            "gamma": model.gamma.tolist(),
            "b": model.b.tolist(),
            "a": model.a.tolist(),
            "composite_coefficients": composite_coefficients(model).tolist(),
            "objective": model.objective,
            "objective_trace": model.trace.tolist(),
            "sweeps_used": model.sweeps_used,
            "converged": model.converged,
            "flags": list(model.flags),
            "preprocess": preprocess,
        }
    }


def _print_model_summary(model, names) -> None:
    comp = composite_coefficients(model)
    active = [j for j in range(model.k) if model.gamma[j] != 0.0]
    print(f"objective {model.objective:.6g} after {model.sweeps_used} sweeps "
          f"({'converged' if model.converged else 'NOT converged'})")
    print(f"selected components (gamma_j != 0): {active or 'none'}")
    for j in range(model.k):
        nnz = int(np.count_nonzero(model.b[:, j]))
        if model.gamma[j] != 0.0:
            print(f"  component {j}: gamma={model.gamma[j]:.6g}, {nnz} nonzero loadings")
    zero_idx = [names[i] for i in range(len(names)) if comp[i] == 0.0]
    print(f"nonzero composite coefficients: {int(np.count_nonzero(comp))}/{len(comp)}")
    if zero_idx:
        print(f"predictors with exactly zero coefficient: {zero_idx}")


def _cv_payload(cv) -> dict:
    return {
        "lambda_beta_grid": cv.lambda_beta_grid.tolist(),
        "lambda_gamma_grid": cv.lambda_gamma_grid.tolist(),
        "cv_error": cv.cv_error.tolist(),
        "flagged": cv.flagged.astype(bool).tolist(),
        "best_beta_index": cv.best_beta_index,
        "best_gamma_index": cv.best_gamma_index,
        "best_lambda_beta": cv.best_lambda_beta,
        "best_lambda_gamma": cv.best_lambda_gamma,
    }


def cmd_fit(args) -> int:
    ds, preprocess = _load_centered(args.csv, _parse_response(args.response),
                                    not args.no_header, args.standardize)
    if args.k > ds.p:
        raise CsvFormatError(f"k={args.k} exceeds the {ds.p} predictors in the file")
    config = SpcrConfig(k=args.k, lambda_beta=args.lambda_beta,
                        lambda_gamma=args.lambda_gamma, w=args.w,
                        zeta=args.zeta, max_sweeps=args.max_sweeps,
                        tol=args.tol, seed=args.seed)
    model = fit_aspcr(ds, config) if args.adaptive else fit(ds, config)
    manifest = _manifest(args, _resolved(args), {"csv": args.csv})
    out = Path(args.out_dir) / "model.json"
    _write_json(out, manifest, _model_payload(model, preprocess))
    _print_model_summary(model, preprocess["predictors"])
    print(f"model written to {out}")
    if not model.converged:
        print(f"did not converge within {config.max_sweeps} sweeps; "
              f"objective trace is in {out}", file=sys.stderr)
        return EXIT_NOCONV
    return EXIT_OK


def cmd_cv(args) -> int:
    ds, preprocess = _load_centered(args.csv, _parse_response(args.response),
                                    not args.no_header, args.standardize)
    if args.k > ds.p:
        raise CsvFormatError(f"k={args.k} exceeds the {ds.p} predictors in the file")
    config = SpcrConfig(k=args.k, lambda_beta=1.0, lambda_gamma=1.0, w=args.w,
                        zeta=args.zeta, max_sweeps=args.max_sweeps,
                        tol=args.tol, seed=args.seed)
    plan = make_folds(ds.n, args.folds, args.seed)
    manifest = _manifest(args, _resolved(args), {"csv": args.csv})
    out = Path(args.out_dir) / "cv.json"
    if args.adaptive:
        pilot_cv, adaptive_cv, model = aspcr_pipeline(ds, config, plan,
                                                      spacing=args.grid)
        payload = {"pilot_cv": _cv_payload(pilot_cv)}
        if adaptive_cv is not None:
            payload["adaptive_cv"] = _cv_payload(adaptive_cv)
        payload.update(_model_payload(model, preprocess))
    else:
        cv = cross_validate(ds, config, plan, spacing=args.grid,
                            standardize=False)
        model = cv.best_model
        payload = {"cv": _cv_payload(cv)}
        payload.update(_model_payload(model, preprocess))
    _write_json(out, manifest, payload)
    _print_model_summary(model, preprocess["predictors"])
    print(f"cross-validation results written to {out}")
    return EXIT_OK if model.converged else EXIT_NOCONV


def cmd_predict(args) -> int:
    with open(args.model) as fh:
        doc = json.load(fh)
    model = doc["model"]
    prep = model["preprocess"]
    header = not args.no_header
    if args.response is not None:
        x_raw, _y, names, _r = load_csv(args.csv, _parse_response(args.response),
                                        header=header)
    else:
        # no response column in the file: read every column as a predictor
        x_raw, names = _load_predictor_matrix(args.csv, header)
    means = np.asarray(prep["column_means"])
    if x_raw.shape[1] != means.size:
        raise CsvFormatError(
            f"model expects {means.size} predictors, file has {x_raw.shape[1]}"
        )
    xc = x_raw - means
    if prep["column_sds"] is not None:
        xc = xc / np.asarray(prep["column_sds"])
    pred = model["gamma0"] + xc @ np.asarray(model["composite_coefficients"])
    out = Path(args.out_dir) / "predictions.csv"
    _write_csv(out, ["prediction"], [{"prediction": float(v)} for v in pred])
    manifest = _manifest(args, _resolved(args),
                         {"model": args.model, "csv": args.csv})
    _write_json(Path(args.out_dir) / "predictions.json", manifest,
                {"rows": int(pred.size), "csv_file": out.name})
    print(f"{pred.size} predictions written to {out}")
    return EXIT_OK


def _load_predictor_matrix(path, header):
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise CsvFormatError(f"{path}: empty file")
    if header:
        names = [c.strip() for c in rows[0]]
        body = rows[1:]
        start = 2
    else:
        names = [f"x{i}" for i in range(len(rows[0]))]
        body = rows
        start = 1
    if not body:
        raise CsvFormatError(f"{path}: no data rows")
    data = np.empty((len(body), len(names)))
    for i, row in enumerate(body):
        if len(row) != len(names):
            raise CsvFormatError(f"{path}: row {start + i} has {len(row)} fields, "
                                 f"expected {len(names)}")
        for j, cell in enumerate(row):
            try:
                data[i, j] = float(cell)
            except ValueError:
                raise CsvFormatError(f"{path}: row {start + i}, column {j + 1}: "
                                     f"cannot parse {cell!r}") from None
    return data, names


def cmd_simulate(args) -> int:
    train, test = make_case(args.case, args.n, args.sigma, args.seed,
                            n_test=args.n_test)
    spec = case_spec(args.case, args.n, args.sigma)
    out_dir = Path(args.out_dir)
    names = [f"x{i + 1}" for i in range(spec.p)] + ["y"]
    for tag, d in (("train", train), ("test", test)):
        rows = [{**{f"x{i + 1}": float(v) for i, v in enumerate(d.x[r])},
                 "y": float(d.y[r])} for r in range(d.n)]
        _write_csv(out_dir / f"{tag}.csv", names, rows)
    manifest = _manifest(args, _resolved(args), {})
    _write_json(out_dir / "case.json", manifest, {
        "case": spec.case_id, "p": spec.p, "n": args.n, "n_test": args.n_test,
        "sigma": spec.sigma, "true_coefficients": spec.true_xi.tolist(),
    })
    print(f"wrote {out_dir / 'train.csv'} ({args.n} rows) and "
          f"{out_dir / 'test.csv'} ({args.n_test} rows)")
    return EXIT_OK


BENCH_COLUMNS = ["case", "method", "rep", "seed", "mse", "tpr", "tnr",
                 "lambda_beta", "lambda_gamma", "n_components", "converged",
                 "error"]


def _print_bench_table(report) -> None:
    stats = report.stats()
    refs = report.references()
    header = (f"{'case':>4} {'method':>6} {'mse mean (sd)':>24} "
              f"{'published':>24} {'tpr':>6} {'tnr':>6} {'pub tpr/tnr':>12}")
    print(header)
    print("-" * len(header))
    for case in report.cases:
        for method in report.methods:
            s = stats.get((case, method))
            if s is None:
                print(f"{case:>4} {method:>6} {'all replications failed':>24}")
                continue
            ref = refs.get(case, {})
            ref_mse = ref.get("mse", {}).get(method)
            ref_sup = ref.get("support", {}).get(method)
            mse_txt = f"{s['mse_mean']:.4g} ({s['mse_sd']:.2g})"
            pub_txt = (f"{ref_mse['mean']:.4g} ({ref_mse['sd']:.2g})"
                       if ref_mse else "-")
            sup_txt = (f"{ref_sup['tpr_mean']:.2f}/{ref_sup['tnr_mean']:.2f}"
                       if ref_sup else "-")
            print(f"{case:>4} {method:>6} {mse_txt:>24} {pub_txt:>24} "
                  f"{s['tpr_mean']:>6.3f} {s['tnr_mean']:>6.3f} {sup_txt:>12}")


def cmd_bench(args) -> int:
    cases = [c.strip() for c in args.cases.split(",") if c.strip()]
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    threads = int(os.environ.get("SPCREG_THREADS", "1"))
    report = run_benchmark(cases, methods, n_reps=args.R, base_seed=args.seed,
                           n=args.n, sigma=args.sigma, k=args.k,
                           n_folds=args.folds, spacing=args.grid,
                           standardize=args.standardize, threads=threads)
    out_dir = Path(args.out_dir)
    manifest = _manifest(args, _resolved(args), {})
    stats_rows = [
        {"case": case, "method": method, **entry}
        for (case, method), entry in sorted(report.stats().items())
    ]
    _write_json(out_dir / "bench_report.json", manifest, {
        "settings": {"cases": list(report.cases), "methods": list(report.methods),
                     "replications": report.n_reps, "base_seed": report.base_seed,
                     "k": report.k, "n": report.n, "sigma": report.sigma,
                     "folds": report.n_folds, "grid": report.spacing,
                     "generator": report.generator},
        "statistics": stats_rows,
        "published_references": report.references(),
        "failures": report.failures,
    })
    _write_csv(out_dir / "bench_replications.csv", BENCH_COLUMNS, report.rows)
    _print_bench_table(report)
    print(f"report written to {out_dir / 'bench_report.json'} and "
          f"{out_dir / 'bench_replications.csv'}")
    bad = bool(report.failures) or any(not r["converged"] for r in report.rows
                                       if not r["error"])
    return EXIT_NOCONV if bad else EXIT_OK


def _resolved(args) -> dict:
    """Resolved parameter dict for the manifest (paths as strings)."""
    out = {}
    for key, val in vars(args).items():
        if key in ("command", "func"):
            continue
        out[key] = str(val) if isinstance(val, Path) else val
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spcreg",
        description="Sparse principal component regression: fit, cross-validate, "
                    "predict, simulate benchmark cases, and run benchmarks.",
    )
    ap.add_argument("--version", action="version", version=f"spcreg {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="random seed")
        p.add_argument("--out-dir", type=Path, default=Path("."),
                       help="directory for output files")

    def model_flags(p):
        p.add_argument("--k", type=int, required=True,
                       help="number of components (required; penalties deselect "
                            "components automatically)")
        p.add_argument("--w", type=float, default=0.1,
                       help="reconstruction-loss weight in (0,1)")
        p.add_argument("--zeta", type=float, default=0.01,
                       help="L1/L2 trade-off on the loadings in [0,1)")
        p.add_argument("--standardize", action="store_true",
                       help="scale predictors to unit variance (default: center only)")
        p.add_argument("--max-sweeps", type=int, default=1000)
        p.add_argument("--tol", type=float, default=1e-7)
        p.add_argument("--adaptive", action="store_true",
                       help="run the two-stage adaptive pipeline")

    def csv_flags(p):
        p.add_argument("csv", help="input CSV file (RFC 4180, '.' decimals)")
        p.add_argument("--response", required=True,
                       help="response column name or 0-based index")
        p.add_argument("--no-header", action="store_true",
                       help="the CSV has no header row")

    p = sub.add_parser("fit", help="fit at fixed penalties")
    csv_flags(p)
    model_flags(p)
    p.add_argument("--lambda-beta", type=float, required=True)
    p.add_argument("--lambda-gamma", type=float, required=True)
    common(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("cv", help="select penalties by K-fold cross-validation")
    csv_flags(p)
    model_flags(p)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--grid", choices=("linear", "log"), default="linear")
    common(p)
    p.set_defaults(func=cmd_cv)

    p = sub.add_parser("predict", help="predict from a stored model file")
    p.add_argument("model", help="model.json from fit/cv")
    p.add_argument("csv", help="CSV of predictors")
    p.add_argument("--response", default=None,
                   help="response column to drop, when present in the file")
    p.add_argument("--no-header", action="store_true")
    common(p)
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("simulate", help="write one benchmark case to CSV")
    p.add_argument("--case", required=True, choices=CASE_IDS)
    p.add_argument("--n", type=int, required=True, help="training rows")
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--n-test", type=int, default=1000)
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bench", help="run the Monte Carlo benchmark")
    p.add_argument("--cases", required=True,
                   help=f"comma-separated case ids from {CASE_IDS}")
    p.add_argument("--methods", default="spcr,aspcr,pcr",
                   help=f"comma-separated methods from {METHOD_NAMES}")
    p.add_argument("--R", type=int, default=20, help="replications per case")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, default=200, help="training rows")
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--grid", choices=("linear", "log"), default="linear")
    p.add_argument("--standardize", action="store_true",
                   help="rescale predictors by training-fold deviations")
    common(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CsvFormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NonFiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOCONV


if __name__ == "__main__":
    sys.exit(main())
