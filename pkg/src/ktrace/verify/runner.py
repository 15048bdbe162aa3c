"""Run registered cases over seeded trials and collect the worst gap."""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..errors import KTraceError
from .cases import REGISTRY, InequalityCase, get_case
from .sampling import TrialConfig, trial_rng

TRIAL_ERRORS = (KTraceError, ArithmeticError, ValueError, np.linalg.LinAlgError)


@dataclass(frozen=True)
class Failure:
    trial: int
    tau: float | None
    gap: float | None
    error: str | None = None

    def to_dict(self) -> dict:
        out = {"trial": self.trial, "tau": self.tau, "gap": _finite(self.gap)}
        if self.error is not None:
            out["error"] = self.error
        return out


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one case.

    ``worst_gap`` is the smallest scale-normalized gap over every trial and
    tau value, and ``scale`` the scale it was normalized by.  ``status`` is
    ``PASS``, ``FAIL`` or ``SKIPPED`` (no trials run).
    """

    case: str
    trials: int
    worst_gap: float | None
    scale: float | None
    failures: tuple = ()
    millis: float | None = None
    n: int = 0
    k: int = 0
    seed: int = 0
    tol: float = 0.0
    evaluations: int = 0
    statement: str = field(default="", compare=False)

    @property
    def status(self) -> str:
        if self.trials == 0:
            return "SKIPPED"
        return "FAIL" if self.failures else "PASS"

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "status": self.status,
            "trials": self.trials,
            "evaluations": self.evaluations,
            "n": self.n,
            "k": self.k,
            "seed": self.seed,
            "tol": self.tol,
            "worst_gap": _finite(self.worst_gap),
            "scale": _finite(self.scale),
            "failures": [f.to_dict() for f in self.failures],
            "millis": self.millis,
        }


def _finite(x):
    return None if x is None or not math.isfinite(x) else float(x)


def _run_trial(case: InequalityCase, cfg: TrialConfig, trial: int):
    rng = trial_rng(cfg.seed, case.id, trial)
    try:
        return case.gaps(rng, cfg), None
    except TRIAL_ERRORS as exc:
        return [], f"{type(exc).__name__}: {exc}"


def _trial_results(case, cfg):
    if cfg.threads == 1:
        for t in range(cfg.trials):
            yield t, _run_trial(case, cfg, t)
        return
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        # map() hands results back in trial order whatever the completion order
        results = pool.map(lambda t: (t, _run_trial(case, cfg, t)), range(cfg.trials))
        try:
            yield from results
        finally:
            pool.shutdown(wait=True, cancel_futures=True)


def run_case(case: InequalityCase | str, cfg: TrialConfig, timing: bool = False) -> VerificationReport:
    """Evaluate ``cfg.trials`` seeded trials of one case.

    Failing gaps and trial errors are recorded, never raised.  With
    ``cfg.fail_fast`` the run stops after the first failing trial.
    """
    if isinstance(case, str):
        case = get_case(case)
    tol = case.tol if cfg.tol_rel is None else cfg.tol_rel
    start = time.perf_counter()
    worst = None
    failures = []
    done = 0
    evaluations = 0
    for trial, (gaps, error) in _trial_results(case, cfg):
        done += 1
        trial_failed = False
        if error is not None:
            failures.append(Failure(trial, None, None, error))
            trial_failed = True
        for tau, gap in gaps:
            evaluations += 1
            norm = gap.normalized
            if worst is None or norm < worst.normalized or math.isnan(norm):
                worst = gap
            if not gap.holds(tol):
                failures.append(Failure(trial, tau, norm))
                trial_failed = True
        if trial_failed and cfg.fail_fast:
            break
    millis = round((time.perf_counter() - start) * 1e3, 3) if timing else None
    return VerificationReport(
        case=case.id,
        trials=done,
        worst_gap=None if worst is None else worst.normalized,
        scale=None if worst is None else worst.scale,
        failures=tuple(failures),
        millis=millis,
        n=cfg.n,
        k=cfg.k,
        seed=cfg.seed,
        tol=tol,
        evaluations=evaluations,
        statement=case.statement,
    )


def suite_ids(include_expected_failures: bool = False) -> list:
    return [cid for cid, c in REGISTRY.items() if include_expected_failures or not c.expect_failure]


def run_all(cfg: TrialConfig, timing: bool = False, include_expected_failures: bool = False) -> list:
    """Run every registered case (except deliberately false ones) in registry order."""
    return [run_case(REGISTRY[cid], cfg, timing) for cid in suite_ids(include_expected_failures)]
