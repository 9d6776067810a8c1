from src.llt.local_limit import (
    TruncatedDistribution,
    cutoff_schedule,
    llt_sup_error,
    llt_table,
    maximal_step,
    sum_pmf_exact,
    truncate,
)

__all__ = [
    "TruncatedDistribution",
    "cutoff_schedule",
    "llt_sup_error",
    "llt_table",
    "maximal_step",
    "sum_pmf_exact",
    "truncate",
]
