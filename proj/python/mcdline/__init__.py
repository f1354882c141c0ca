"""Online movement-cost delivery on a line: solvers, oracles and checkers."""

from ._core import (
    Instance,
    check_solution,
    competitive_report,
    exact_opt,
    generate,
    parse_instance,
    run_lineon,
    run_lineonp,
    run_onrsa,
    run_triangle,
    srsa_exact,
)

__all__ = [
    "Instance",
    "check_solution",
    "competitive_report",
    "exact_opt",
    "generate",
    "parse_instance",
    "run_lineon",
    "run_lineonp",
    "run_onrsa",
    "run_triangle",
    "srsa_exact",
]
