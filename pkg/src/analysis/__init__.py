from src.analysis.summary import EmpiricalSummary, two_sample_ks
from src.analysis.metrics import (
    ProcessCloseness,
    degree_profile,
    degree_profile_deviation,
    process_closeness,
    rescaled_contour_max,
    rescaled_height,
)

__all__ = [
    "EmpiricalSummary",
    "two_sample_ks",
    "ProcessCloseness",
    "degree_profile",
    "degree_profile_deviation",
    "process_closeness",
    "rescaled_contour_max",
    "rescaled_height",
]
