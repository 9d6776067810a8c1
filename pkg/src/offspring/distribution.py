# ⚠️ Reproducibility Notice:
# Distributions are immutable values. Serialized forms are validated against
# DISTRIBUTION_SCHEMA before use; never patch weights after construction.

"""
Offspring distributions and their generating function.

Three kinds are supported: an explicit finite weight vector and the two
analytic families with closed forms (geometric w_j = 2^-(j+1) and
unary-binary (p, 1-2p, p)). Infinite-support input given as a vector is not
accepted; truncate it yourself or use an analytic family.
"""

from __future__ import annotations
import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

import numpy as np
from jsonschema import ValidationError, validate as validate_schema
from numpy.polynomial import polynomial as P

from src.utils.errors import Degenerate, NotCritical, NotProbability, OutOfDomain

logger = logging.getLogger(__name__)

WEIGHT_TOL = 1e-12

DISTRIBUTION_SCHEMA = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["finite", "geometric", "unary_binary"]},
        "weights": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "p": {"type": "number"},
    },
    "required": ["kind"],
    "allOf": [
        {
            "if": {"properties": {"kind": {"const": "finite"}}},
            "then": {"required": ["weights"]},
        },
        {
            "if": {"properties": {"kind": {"const": "unary_binary"}}},
            "then": {"required": ["p"]},
        },
    ],
}


class DistributionKind(str, Enum):
    FINITE = "finite"
    GEOMETRIC = "geometric"
    UNARY_BINARY = "unary_binary"


@dataclass(frozen=True)
class OffspringDistribution:
    """Probability weights w_0, w_1, ... of the number of children."""

    kind: DistributionKind
    weights: tuple[float, ...] = ()
    p: float | None = None

    # ---------- constructors ----------
    @classmethod
    def finite(cls, weights: Sequence[float]) -> "OffspringDistribution":
        return cls(DistributionKind.FINITE, weights=tuple(float(x) for x in weights))

    @classmethod
    def geometric(cls) -> "OffspringDistribution":
        return cls(DistributionKind.GEOMETRIC)

    @classmethod
    def unary_binary(cls, p: float) -> "OffspringDistribution":
        return cls(DistributionKind.UNARY_BINARY, p=float(p))

    # ---------- weights ----------
    def weight(self, j: int) -> float:
        if j < 0:
            return 0.0
        if self.kind is DistributionKind.GEOMETRIC:
            return 2.0 ** -(j + 1)
        coeffs = self.coefficients()
        return float(coeffs[j]) if j < len(coeffs) else 0.0

    def coefficients(self) -> np.ndarray:
        """Polynomial coefficients of theta; finite-support kinds only."""
        if self.kind is DistributionKind.FINITE:
            return np.asarray(self.weights, dtype=float)
        if self.kind is DistributionKind.UNARY_BINARY:
            return np.array([self.p, 1.0 - 2.0 * self.p, self.p])
        raise OutOfDomain("geometric distribution has infinite support")

    def weights_array(self, max_degree: int) -> np.ndarray:
        return np.array([self.weight(j) for j in range(max_degree + 1)])

    @property
    def w0(self) -> float:
        return self.weight(0)

    @property
    def radius(self) -> float:
        """Radius of convergence rho of theta."""
        return 2.0 if self.kind is DistributionKind.GEOMETRIC else math.inf

    @property
    def max_degree(self) -> int | None:
        if self.kind is DistributionKind.GEOMETRIC:
            return None
        nonzero = np.flatnonzero(self.coefficients() > 0)
        return int(nonzero[-1]) if len(nonzero) else 0

    @property
    def min_positive_degree(self) -> int:
        """Smallest j >= 1 with w_j > 0; the limit of psi_hat at t -> 0."""
        if self.kind is DistributionKind.GEOMETRIC:
            return 1
        coeffs = self.coefficients()
        nonzero = np.flatnonzero(coeffs[1:] > 0)
        if not len(nonzero):
            raise Degenerate("no positive degree carries mass")
        return int(nonzero[0]) + 1

    def describe(self) -> str:
        if self.kind is DistributionKind.GEOMETRIC:
            return "Geometric(w_j = 2^-(j+1))"
        if self.kind is DistributionKind.UNARY_BINARY:
            return f"UnaryBinary(p={self.p})"
        return f"FiniteVector({list(self.weights)})"

    # ---------- serialization ----------
    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.kind is DistributionKind.FINITE:
            out["weights"] = list(self.weights)
        if self.kind is DistributionKind.UNARY_BINARY:
            out["p"] = self.p
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "OffspringDistribution":
        try:
            validate_schema(instance=data, schema=DISTRIBUTION_SCHEMA)
        except ValidationError as e:
            raise ValueError(f"invalid distribution JSON: {e.message}") from e
        kind = DistributionKind(data["kind"])
        if kind is DistributionKind.FINITE:
            return cls.finite(data["weights"])
        if kind is DistributionKind.UNARY_BINARY:
            return cls.unary_binary(data["p"])
        return cls.geometric()

    @classmethod
    def from_json(cls, text: str) -> "OffspringDistribution":
        return cls.from_dict(json.loads(text))

    @classmethod
    def from_spec(cls, spec: str, p: float | None = None) -> "OffspringDistribution":
        """Resolve a CLI spec: geometric | unary_binary | file:<path> | inline JSON."""
        spec = spec.strip()
        if spec == "geometric":
            return cls.geometric()
        if spec == "unary_binary":
            if p is None:
                raise ValueError("--p is required with --dist unary_binary")
            return cls.unary_binary(p)
        if spec.startswith("file:"):
            path = Path(spec[len("file:") :])
            if not path.exists():
                raise ValueError(f"distribution file not found: {path}")
            return cls.from_json(path.read_text(encoding="utf-8"))
        if spec.startswith("{"):
            return cls.from_json(spec)
        raise ValueError(f"unknown distribution spec: {spec!r}")


# ---------- operations ----------
def validate(w: OffspringDistribution) -> None:
    """Raise unless w is a critical, non-degenerate probability distribution."""
    if w.kind is DistributionKind.GEOMETRIC:
        return
    if w.kind is DistributionKind.UNARY_BINARY:
        p = w.p
        if p is None or not math.isfinite(p) or p < 0 or p > 0.5:
            raise NotProbability(f"unary-binary parameter p={p} must lie in (0, 1/2]")
        if p == 0:
            raise Degenerate("p=0 gives w_1 = 1")
        return

    weights = np.asarray(w.weights, dtype=float)
    if not len(weights) or not np.all(np.isfinite(weights)) or np.any(weights < 0):
        raise NotProbability("weights must be finite and nonnegative")
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise NotProbability(f"weights sum to {total!r}, expected 1")
    mean = math.fsum(j * x for j, x in enumerate(weights))
    if abs(mean - 1.0) > WEIGHT_TOL:
        raise NotCritical(f"mean is {mean!r}, expected 1")
    if len(weights) > 1 and abs(weights[1] - 1.0) <= WEIGHT_TOL:
        raise Degenerate("w_1 = 1: every vertex has exactly one child")


def _check_domain(w: OffspringDistribution, t: float, allow_zero: bool) -> None:
    if not math.isfinite(t) or t < 0 or (t == 0 and not allow_zero) or t >= w.radius:
        raise OutOfDomain(f"t={t} outside the domain of {w.describe()} (rho={w.radius})")


def theta_derivatives(w: OffspringDistribution, t: float, order: int) -> float:
    """theta(t), theta'(t) or theta''(t) for order 0, 1, 2."""
    if order not in (0, 1, 2):
        raise ValueError(f"order must be 0, 1 or 2, got {order}")
    _check_domain(w, t, allow_zero=True)
    if w.kind is DistributionKind.GEOMETRIC:
        return math.factorial(order) / (2.0 - t) ** (order + 1)
    coeffs = P.polyder(w.coefficients(), order) if order else w.coefficients()
    return float(P.polyval(t, coeffs))


def psi_hat(w: OffspringDistribution, t: float) -> float:
    """t theta'(t) / (theta(t) - w_0), increasing on (0, rho)."""
    _check_domain(w, t, allow_zero=False)
    if w.kind is DistributionKind.GEOMETRIC:
        return 2.0 / (2.0 - t)
    # Both sums are scaled by a power of t so every term stays <= its weight.
    coeffs = w.coefficients()
    j = np.arange(1, len(coeffs))
    c = coeffs[1:]
    mask = c > 0
    j, c = j[mask], c[mask]
    ref = j[-1] if t > 1.0 else j[0]
    scaled = c * np.power(t, (j - ref).astype(float))
    return float(np.dot(j, scaled) / np.sum(scaled))


def nu_hat(w: OffspringDistribution) -> float:
    """Limit of psi_hat at the radius of convergence."""
    if w.kind is DistributionKind.GEOMETRIC:
        return math.inf
    return float(w.max_degree)


def alpha_range(w: OffspringDistribution) -> tuple[float, float]:
    """Open interval of alpha values for which the shift equations are solvable.

    alpha = w_0 is always solvable (identity shift) even when the interval
    is empty, e.g. for the critical binary law where psi_hat is constant.
    """
    hi = 1.0 - 1.0 / nu_hat(w)
    lo = 1.0 - 1.0 / w.min_positive_degree
    return lo, hi
