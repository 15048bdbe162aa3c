"""Command line: ``ktrace compute ...``, ``ktrace verify ...``, ``ktrace report ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical or
domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import KTraceError
from .exterior import compound, k_subsets
from .matrix_io import matrix_to_json, read_matrix
from .mixed import mixed_discriminant
from .traces import METHODS, ktrace
from .verify import REGISTRY, TrialConfig, reports_to_json, run_case, suite_ids
from .verify.report import REPORT_SCHEMA, load_reports
from .verify.sampling import DEFAULT_TAU_GRID

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

SEED_ENV = "KTRACE_SEED"
INTERPOLATION_CASES = ("lemma34-sh", "lemma41-sbt", "thm42-mgt", "sec41-3mgt")

# verify flags that may also come from a --config file, with their defaults
VERIFY_DEFAULTS = {
    "n": 4,
    "k": 2,
    "m": None,
    "trials": 100,
    "seed": 42,
    "tol": None,
    "tau_grid": DEFAULT_TAU_GRID,
    "cond_cap": 1e4,
    "threads": 1,
    "fail_fast": False,
    "json": None,
    "timing": False,
}


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    subcommand: str
    parameters: dict = field(default_factory=dict)
    config_file: str | None = None


def _tau_grid(text: str) -> tuple:
    try:
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}") from None


def _case_listing() -> str:
    lines = ["registered cases:"]
    for cid, case in REGISTRY.items():
        lines.append(f"  {cid:<18} {case.statement}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktrace",
        description="k-traces, compound matrices, mixed discriminants and seeded inequality checks.",
        epilog=_case_listing(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    compute = sub.add_parser("compute", help="evaluate one quantity", allow_abbrev=False)
    what = compute.add_subparsers(dest="quantity", required=True)
    tk = what.add_parser("trace-k", help="k-trace of a Hermitian matrix", allow_abbrev=False)
    tk.add_argument("--input", required=True, help="matrix JSON file")
    tk.add_argument("--k", type=int, required=True)
    tk.add_argument("--method", choices=METHODS, default="eigen")
    tk.add_argument("--json", metavar="PATH", help="also write the result as JSON")
    cp = what.add_parser("compound", help="k-th compound matrix", allow_abbrev=False)
    cp.add_argument("--input", required=True, help="matrix JSON file")
    cp.add_argument("--k", type=int, required=True)
    cp.add_argument("--json", metavar="PATH", help="write to PATH instead of standard output")
    md = what.add_parser("mixed-disc", help="mixed discriminant of n matrices", allow_abbrev=False)
    md.add_argument("--inputs", required=True, help="comma-separated matrix JSON files")
    md.add_argument("--json", metavar="PATH", help="also write the result as JSON")

    verify = sub.add_parser(
        "verify",
        help="run seeded checks of one case, 'all' cases, or 'interpolation' cases",
        epilog=_case_listing(),
        formatter_class=argparse.RawDescriptionHelpFormatter,
        allow_abbrev=False,
    )
    verify.add_argument("target", help="case id, 'all', or 'interpolation'")
    verify.add_argument("--case", help="with target 'interpolation': the case to run")
    verify.add_argument("--config", metavar="TOML", help="file of defaults; flags take precedence")
    verify.add_argument("--n", type=int)
    verify.add_argument("--k", type=int)
    verify.add_argument("--m", type=int, help="second dimension for rectangular couplings")
    verify.add_argument("--trials", type=int)
    verify.add_argument("--seed", type=int, help=f"master seed (else ${SEED_ENV}, else 42)")
    verify.add_argument("--tol", type=float, help="relative tolerance (default: per case)")
    verify.add_argument("--tau-grid", type=_tau_grid, dest="tau_grid", help="e.g. 0.1,0.5,0.9")
    verify.add_argument("--cond-cap", type=float, dest="cond_cap")
    verify.add_argument("--threads", type=int)
    verify.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    verify.add_argument("--fail-fast", action="store_true", default=None, dest="fail_fast")
    verify.add_argument("--timing", action="store_true", default=None, help="record wall time")

    report = sub.add_parser("report", help="summarize a saved JSON report", allow_abbrev=False)
    report.add_argument("path", nargs="?", help="report file")
    report.add_argument("--schema", action="store_true", help="print the report JSON schema")
    return parser


def _load_config(path: str) -> dict:
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise UsageError(f"config {path}: {exc}") from None
    data = {key.replace("-", "_"): value for key, value in data.items()}
    unknown = sorted(set(data) - set(VERIFY_DEFAULTS))
    if unknown:
        raise UsageError(f"config {path}: unknown keys {', '.join(unknown)}")
    if "tau_grid" in data:
        data["tau_grid"] = tuple(data["tau_grid"])
    return data


def parse_args(argv) -> CliConfig:
    """Parse and validate; raises ``SystemExit(2)`` (argparse) or :class:`UsageError`."""
    ns = build_parser().parse_args(argv)
    params = {key: value for key, value in vars(ns).items() if key != "subcommand"}
    cfg = CliConfig(ns.subcommand, params, params.pop("config", None))
    if cfg.subcommand == "verify":
        # precedence: flag, then environment (seed only), then config file, then default
        merged = dict(VERIFY_DEFAULTS)
        if cfg.config_file:
            merged.update(_load_config(cfg.config_file))
        env_seed = os.environ.get(SEED_ENV)
        if env_seed is not None:
            try:
                merged["seed"] = int(env_seed)
            except ValueError:
                raise UsageError(f"{SEED_ENV} must be an integer, got {env_seed!r}") from None
        merged.update({key: value for key, value in params.items() if value is not None})
        merged["target"] = ns.target
        cfg.parameters = merged
        _validate_verify(merged)
    elif cfg.subcommand == "report" and not (ns.schema or ns.path):
        raise UsageError("report needs a path or --schema")
    return cfg


def _validate_verify(p: dict) -> None:
    target, case = p["target"], p.get("case")
    if target == "interpolation":
        if case is not None and case not in INTERPOLATION_CASES:
            raise UsageError(f"--case must be one of {', '.join(INTERPOLATION_CASES)}")
    elif case is not None:
        raise UsageError("--case is only valid with target 'interpolation'")
    elif target != "all" and target not in REGISTRY:
        raise UsageError(f"unknown case {target!r}; see --help for the registered ids")
    if not (isinstance(p["k"], int) and isinstance(p["n"], int)) or not 1 <= p["k"] <= p["n"]:
        raise UsageError(f"need 1 <= k <= n, got k={p['k']} n={p['n']}")


def _trial_config(p: dict) -> TrialConfig:
    try:
        return TrialConfig(
            n=p["n"], k=p["k"], m=p["m"], trials=p["trials"], seed=p["seed"],
            tau_grid=p["tau_grid"], cond_cap=p["cond_cap"], tol_rel=p["tol"],
            threads=p["threads"], fail_fast=bool(p["fail_fast"]),
        )
    except KTraceError as exc:
        raise UsageError(str(exc)) from None


def _targets(p: dict) -> list:
    if p["target"] == "all":
        return suite_ids()
    if p["target"] == "interpolation":
        return [p["case"]] if p.get("case") else list(INTERPOLATION_CASES)
    return [p["target"]]


def _fmt(x) -> str:
    return "n/a" if x is None else f"{x:.3e}"


def _run_verify(p: dict) -> int:
    cfg = _trial_config(p)
    reports = []
    for cid in _targets(p):
        report = run_case(REGISTRY[cid], cfg, timing=bool(p["timing"]))
        reports.append(report)
        print(
            f"{report.status:<7} {cid:<18} trials={report.trials:<4} "
            f"worst_gap={_fmt(report.worst_gap)} tol={report.tol:.0e} failures={len(report.failures)}"
        )
    text = reports_to_json(reports)
    if p["json"] == "-":
        sys.stdout.write(text)
    elif p["json"]:
        Path(p["json"]).write_text(text)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED


def _input_matrix(path: str) -> np.ndarray:
    if not Path(path).is_file():
        raise UsageError(f"input file not found: {path}")
    return read_matrix(path)


def _check_order(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise UsageError(f"need 1 <= k <= n, got k={k} for a {n}x{n} matrix")


def _emit(result: dict, path) -> None:
    if path:
        Path(path).write_text(json.dumps(result, indent=2) + "\n")


def _run_compute(p: dict) -> int:
    quantity = p["quantity"]
    if quantity == "trace-k":
        a = _input_matrix(p["input"])
        _check_order(p["k"], a.shape[0])
        value = ktrace(a, p["k"], p["method"])
        print(f"{value:.17g}")
        _emit({"quantity": "trace-k", "value": value, "k": p["k"], "n": a.shape[0],
               "method": p["method"]}, p["json"])
    elif quantity == "compound":
        a = _input_matrix(p["input"])
        _check_order(p["k"], a.shape[0])
        c = compound(a, p["k"])
        basis = json.dumps(k_subsets(a.shape[0], p["k"]).tolist())
        text = f'{{"k": {p["k"]}, "basis": {basis}, "matrix": {matrix_to_json(c)}}}\n'
        if p["json"]:
            Path(p["json"]).write_text(text)
        else:
            sys.stdout.write(text)
    else:
        mats = [_input_matrix(path.strip()) for path in p["inputs"].split(",") if path.strip()]
        value = mixed_discriminant(mats)
        print(f"{value:.17g}")
        _emit({"quantity": "mixed-disc", "value": value, "n": mats[0].shape[0]}, p["json"])
    return EXIT_OK


def _run_report(p: dict) -> int:
    if p["schema"]:
        print(json.dumps(REPORT_SCHEMA, indent=2))
        return EXIT_OK
    path = p["path"]
    if not Path(path).is_file():
        raise UsageError(f"report file not found: {path}")
    try:
        entries = load_reports(Path(path).read_text())
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    failed = 0
    for e in entries:
        status = e.get("status") or ("FAIL" if e["failures"] else "PASS")
        failed += status == "FAIL"
        print(f"{status:<7} {e['case']:<18} trials={e['trials']:<4} worst_gap={_fmt(e['worst_gap'])}")
    print(f"{len(entries) - failed}/{len(entries)} cases without failures")
    return EXIT_FAILED if failed else EXIT_OK


def dispatch(cfg: CliConfig) -> int:
    if cfg.subcommand == "compute":
        return _run_compute(cfg.parameters)
    if cfg.subcommand == "verify":
        return _run_verify(cfg.parameters)
    return _run_report(cfg.parameters)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        return dispatch(cfg)
    except SystemExit as exc:  # argparse: --help exits 0, errors exit 2
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"ktrace: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (KTraceError, ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"ktrace: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
