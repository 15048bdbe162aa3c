"""Seeded numerical verification of the k-trace inequalities."""

from .cases import REGISTRY, InequalityCase, case_ids, get_case, midpoint_concavity_gap
from .report import REPORT_SCHEMA, reports_to_json
from .runner import VerificationReport, run_all, run_case, suite_ids
from .sampling import TrialConfig

__all__ = [
    "REGISTRY",
    "REPORT_SCHEMA",
    "InequalityCase",
    "TrialConfig",
    "VerificationReport",
    "case_ids",
    "get_case",
    "midpoint_concavity_gap",
    "reports_to_json",
    "run_all",
    "run_case",
    "suite_ids",
]
