from src.offspring.distribution import (
    DistributionKind,
    OffspringDistribution,
    alpha_range,
    nu_hat,
    psi_hat,
    theta_derivatives,
    validate,
)
from src.offspring.alpha_shift import AlphaShift, alpha_shift, hat_shift, shifted_moments

__all__ = [
    "DistributionKind",
    "OffspringDistribution",
    "alpha_range",
    "nu_hat",
    "psi_hat",
    "theta_derivatives",
    "validate",
    "AlphaShift",
    "alpha_shift",
    "hat_shift",
    "shifted_moments",
]
