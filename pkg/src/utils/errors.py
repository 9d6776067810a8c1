# ⚠️ Reproducibility Notice:
# Error messages are echoed verbatim by the CLI and stored in the run ledger.
# Keep them deterministic: no timestamps, no memory addresses.

"""
Toolkit exceptions.

One class per failure mode. Everything derives from ToolkitError so the CLI
can map domain failures to exit code 1 in a single except clause.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for every domain error raised by the toolkit."""


# ---------- offspring ----------
class NotProbability(ToolkitError, ValueError):
    """Weights are negative or do not sum to one."""


class NotCritical(ToolkitError, ValueError):
    """Mean of the offspring distribution differs from one."""


class Degenerate(ToolkitError, ValueError):
    """w_1 = 1: every vertex has exactly one child."""


class OutOfDomain(ToolkitError, ValueError):
    """Argument outside the domain of a generating-function evaluation."""


class AlphaInfeasible(ToolkitError, ValueError):
    """No alpha-shift exists for the requested alpha."""


class ConvergenceFailure(ToolkitError, RuntimeError):
    """The root solver could not bracket or converge."""


# ---------- encodings ----------
class NotATreeSequence(ToolkitError, ValueError):
    """Child-count sequence is not the degree sequence of an ordered tree."""


class BadSum(ToolkitError, ValueError):
    """Allocation of length n does not hold exactly n - 1 balls."""


# ---------- sampler ----------
class Infeasible(ToolkitError, ValueError):
    """(k, n) has probability zero under the offspring distribution."""


class RejectionBudgetExceeded(ToolkitError, RuntimeError):
    """The conditioned multinomial loop used up its attempt budget."""


class TooLarge(ToolkitError, ValueError):
    """Request exceeds an exhaustive or array-size bound."""


class EmptySet(ToolkitError, ValueError):
    """Exhaustive enumeration found no tree."""


# ---------- analysis ----------
class EmptyBatch(ToolkitError, ValueError):
    """A statistic was requested on zero samples."""


class MixedBatch(ToolkitError, ValueError):
    """Trees in a batch do not share (k, n)."""


# ---------- llt ----------
class DegenerateSupport(ToolkitError, ValueError):
    """Support has fewer than two values, so no step is defined."""


class ZeroMass(ToolkitError, ValueError):
    """Truncation keeps no probability mass."""


class LatticeStep(ToolkitError, ValueError):
    """Maximal step differs from one; the local limit theorem does not apply."""
