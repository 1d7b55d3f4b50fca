# Oráculos: búsqueda de cotas superiores y verificación
from src.oracle.models import (
    CaseMargin,
    CheckResult,
    OracleReport,
    RestartResult,
    SearchConfig,
    SearchResult,
)
from src.oracle.search import column_concurrences, min_search_alb, min_search_concurrence
from src.oracle.verification import (
    random_corpus,
    run_selftest,
    verify_bound_ordering,
    verify_closed_forms,
    verify_inequality_21,
    verify_theorem_14,
)

__all__ = [
    "SearchConfig",
    "SearchResult",
    "RestartResult",
    "CaseMargin",
    "CheckResult",
    "OracleReport",
    "column_concurrences",
    "min_search_concurrence",
    "min_search_alb",
    "random_corpus",
    "verify_inequality_21",
    "verify_theorem_14",
    "verify_bound_ordering",
    "verify_closed_forms",
    "run_selftest",
]
