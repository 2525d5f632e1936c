"""
Stabilization checker: predicates, suffix times, audits and run reports
"""

from .predicates import eval_lp_un, eval_lp_apsp, eval_theta, psi, psi_prime, theta, oracle_separation
from .stabilization import (
    PredicateReport, stabilization_time, evaluate, layered_order_holds, reset_latencies, NOT_STABILIZED,
)
from .audits import local_checkability_audit, composition_audit, LocalCheckReport, CompositionReport
from .report import RunReport, build_run_report

__all__ = [
    "eval_lp_un", "eval_lp_apsp", "eval_theta", "psi", "psi_prime", "theta", "oracle_separation",
    "PredicateReport", "stabilization_time", "evaluate", "layered_order_holds", "reset_latencies",
    "NOT_STABILIZED", "local_checkability_audit", "composition_audit", "LocalCheckReport",
    "CompositionReport", "RunReport", "build_run_report",
]
