# ⚠️ Reproducibility Notice:
# The shift is a pure function of (w, alpha). Analytic families are stored
# truncated once the omitted tail mass drops below TAIL_MASS; the truncation
# index travels with every serialized shift.

"""
Alpha-shift of a critical offspring distribution.

Given w and a target leaf fraction alpha, find t* and C with

    (1 - alpha) t* theta'(t*) = theta(t*) - w_0,    C = 1 / theta'(t*)

and build w*_0 = alpha, w*_j = C w_j t*^(j-1). The root is found by
bisection on the increasing map psi_hat(t) = 1 / (1 - alpha).
"""

from __future__ import annotations
import json
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from src.offspring.distribution import (
    DistributionKind,
    OffspringDistribution,
    alpha_range,
    nu_hat,
    psi_hat,
    theta_derivatives,
    validate,
)
from src.utils.errors import AlphaInfeasible, ConvergenceFailure

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-15
LOWER_BRACKET = 1e-12
RHO_MARGIN = 1e-9
BRACKET_WIDTH_TOL = 1e-14
MAX_DOUBLINGS = 64
MAX_BISECTIONS = 200
TAIL_MASS = 1e-15


@dataclass(frozen=True, eq=False)
class AlphaShift:
    alpha: float
    t_star: float
    c: float
    w_star: np.ndarray
    sigma_star_sq: float
    nu_hat: float
    distribution: OffspringDistribution
    truncated_at: int | None = None

    @property
    def sigma_star(self) -> float:
        return math.sqrt(self.sigma_star_sq)

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "t_star": self.t_star,
            "c": self.c,
            "sigma_star_sq": self.sigma_star_sq,
            "nu_hat": "inf" if math.isinf(self.nu_hat) else self.nu_hat,
            "w_star": self.w_star.tolist(),
            "truncated_at": self.truncated_at,
            "distribution": self.distribution.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _solve_t_star(w: OffspringDistribution, target: float) -> float:
    def gap(t: float) -> float:
        return psi_hat(w, t) - target

    lo = LOWER_BRACKET
    if gap(lo) >= 0:
        raise ConvergenceFailure(f"psi_hat({lo}) already exceeds target {target}")

    hi = min(1.0, w.radius - RHO_MARGIN)
    for _ in range(MAX_DOUBLINGS):
        if gap(hi) >= 0:
            break
        if hi >= w.radius - RHO_MARGIN:
            raise ConvergenceFailure(f"could not bracket psi_hat = {target} below rho={w.radius}")
        hi = min(2.0 * hi, w.radius - RHO_MARGIN)
    else:
        raise ConvergenceFailure(f"could not bracket psi_hat = {target} after {MAX_DOUBLINGS} doublings")

    t_star, res = optimize.bisect(
        gap, lo, hi, xtol=BRACKET_WIDTH_TOL, maxiter=MAX_BISECTIONS, full_output=True, disp=False
    )
    if not res.converged:
        raise ConvergenceFailure(f"bisection stopped after {res.iterations} iterations: {res.flag}")
    return float(t_star)


def _shifted_weights(
    w: OffspringDistribution, alpha: float, t_star: float, c: float
) -> tuple[np.ndarray, int | None]:
    if w.kind is DistributionKind.GEOMETRIC:
        # w*_j = (C/4) (t/2)^(j-1); keep terms until the geometric tail is negligible
        ratio = t_star / 2.0
        first = c / 4.0
        cut = math.log(TAIL_MASS * (1.0 - ratio) / first) / math.log(ratio)
        last = max(1, math.ceil(cut))
        w_star = np.empty(last + 1)
        w_star[0] = alpha
        w_star[1:] = first * ratio ** np.arange(last)
        return w_star, last

    coeffs = w.coefficients()
    j = np.arange(len(coeffs))
    w_star = c * coeffs * np.power(t_star, (j - 1).astype(float))
    w_star[0] = alpha
    return w_star, None


def alpha_shift(w: OffspringDistribution, alpha: float) -> AlphaShift:
    """Solve the shift equations for alpha and return the shifted law."""
    validate(w)
    if not 0.0 < alpha < 1.0:
        raise AlphaInfeasible(f"alpha={alpha} is not in (0, 1)")
    nu = nu_hat(w)

    if abs(alpha - w.w0) <= IDENTITY_TOL:
        t_star = 1.0
    else:
        lo, hi = alpha_range(w)
        if not lo < alpha < hi:
            raise AlphaInfeasible(
                f"alpha={alpha} outside the solvable range ({lo:.6g}, {hi:.6g}) for {w.describe()}"
            )
        t_star = _solve_t_star(w, 1.0 / (1.0 - alpha))

    d1 = theta_derivatives(w, t_star, 1)
    d2 = theta_derivatives(w, t_star, 2)
    c = 1.0 / d1
    w_star, truncated_at = _shifted_weights(w, alpha, t_star, c)
    shift = AlphaShift(
        alpha=float(alpha),
        t_star=t_star,
        c=c,
        w_star=w_star,
        sigma_star_sq=t_star * d2 / d1,
        nu_hat=nu,
        distribution=w,
        truncated_at=truncated_at,
    )
    logger.info(
        "alpha-shift solved for %s: alpha=%s t*=%.12g C=%.12g sigma*^2=%.12g",
        w.describe(), alpha, t_star, c, shift.sigma_star_sq,
    )
    return shift


def hat_shift(shift: AlphaShift) -> np.ndarray:
    """w* restricted to j >= 1 and renormalized: the part-size law."""
    out = shift.w_star / (1.0 - shift.alpha)
    out[0] = 0.0
    return out


def shifted_moments(shift: AlphaShift) -> tuple[float, float]:
    """Mean and variance computed directly from the stored w*."""
    j = np.arange(len(shift.w_star), dtype=float)
    mean = float(np.dot(j, shift.w_star))
    var = float(np.dot((j - mean) ** 2, shift.w_star))
    return mean, var
