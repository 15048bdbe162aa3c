import math

import numpy as np
import pytest

from ktrace.gaps import Gap, worst
from ktrace.verify import REGISTRY, TrialConfig, case_ids, get_case, run_case, suite_ids
from ktrace.verify.cases import (
    concavity_gaps,
    convexity_gaps,
    equality_gap,
    matrix_equality_gap,
    midpoint_concavity_gap,
)
from ktrace.verify.runner import run_all
from ktrace.verify.sampling import trial_rng

EXPECTED_IDS = {
    "lemma31", "thm32", "thm33", "cor39", "cor310", "lemma35-alt", "lemma36-gt", "anti-gt",
    "lemma37-pb", "sec22-bounds", "lemma43-diag", "thm44-preserve", "appC-lowner", "appD-homog",
    "lemma34-sh", "lemma41-sbt", "thm42-mgt", "sec41-3mgt",
}


def test_registry_contents():
    assert EXPECTED_IDS <= set(case_ids())
    assert "anti-gt" not in suite_ids()
    assert set(suite_ids(include_expected_failures=True)) == set(REGISTRY)
    with pytest.raises(KeyError, match="known cases"):
        get_case("nope")


def test_gap_semantics():
    g = Gap.between(1.0, 3.0, -5.0)
    assert g == Gap(2.0, 5.0)
    assert g.holds(0.0)
    assert not Gap(-1e-8, 1.0).holds(1e-9)
    assert Gap(-1e-8, 100.0).holds(1e-9)
    assert worst([Gap(-1.0, 10.0), Gap(-0.5, 1.0)]) == Gap(-0.5, 1.0)
    assert equality_gap(2.0, 2.0).value == 0.0
    assert equality_gap(2.0, 2.5).value == -0.5
    assert matrix_equality_gap(np.eye(2), 2 * np.eye(2)) == Gap(-1.0, 2.0)


def test_midpoint_gap_on_scalars():
    # concave sqrt: gap is positive; convex square: concavity gap is negative
    g = midpoint_concavity_gap(math.sqrt, (1.0,), (9.0,), 0.5)
    assert g.value == pytest.approx(math.sqrt(5.0) - 2.0)
    g = midpoint_concavity_gap(lambda x: x * x, (0.0,), (2.0,), 0.5)
    assert g.value == pytest.approx(-1.0)
    assert all(g.value >= 0 for _, g in convexity_gaps(lambda x: x * x, (0.0,), (2.0,), (0.2, 0.7)))
    assert [t for t, _ in concavity_gaps(math.log, (1.0,), (2.0,), (0.1, 0.9))] == [0.1, 0.9]


def test_case_gaps_are_deterministic():
    cfg = TrialConfig(n=3, k=2, trials=1)
    for cid in ("lemma31", "lemma36-gt", "lemma41-sbt"):
        case = get_case(cid)
        a = list(case.gaps(trial_rng(7, cid, 0), cfg))
        b = list(case.gaps(trial_rng(7, cid, 0), cfg))
        assert a == b and a


@pytest.mark.parametrize("n,k", [(1, 1), (2, 1), (3, 3), (4, 2)])
def test_every_true_case_passes_small(n, k):
    for report in run_all(TrialConfig(n=n, k=k, trials=4, seed=11)):
        assert report.passed, (report.case, [f.to_dict() for f in report.failures])
        assert report.status == "PASS"


def test_anti_gt_is_rejected_and_fail_fast_stops():
    report = run_case("anti-gt", TrialConfig(n=3, k=2, trials=100))
    assert not report.passed and report.status == "FAIL"
    assert report.worst_gap < -report.tol
    quick = run_case("anti-gt", TrialConfig(n=3, k=2, trials=100, fail_fast=True))
    assert len(quick.failures) == 1
    assert quick.failures[0].trial == report.failures[0].trial


def test_report_fields_and_skip():
    r = run_case("lemma31", TrialConfig(trials=3), timing=True)
    d = r.to_dict()
    assert d["case"] == "lemma31" and d["trials"] == 3 and d["millis"] >= 0
    assert d["evaluations"] > 0 and d["tol"] == get_case("lemma31").tol
    assert run_case("lemma31", TrialConfig(trials=3)).millis is None
    assert run_case("lemma31", TrialConfig(trials=0)).status == "SKIPPED"


def test_threads_do_not_change_results():
    one = run_case("thm33", TrialConfig(n=3, trials=12, threads=1))
    four = run_case("thm33", TrialConfig(n=3, trials=12, threads=4))
    assert one.to_dict() == four.to_dict()


def test_tolerance_override_applies():
    strict = run_case("lemma36-gt", TrialConfig(n=3, trials=5, tol_rel=0.0))
    assert strict.tol == 0.0
    loose = run_case("anti-gt", TrialConfig(n=3, trials=5, tol_rel=1e9))
    assert loose.passed
