"""Rule parameters, the three coefficient regimes, and conjugate exponents.

A rule is picked by a pair (alpha, lambda) in the unit square.  Three
breakpoints derived from the pair,

    x = alpha*lambda,   y = 1 - alpha,   z = 1 - lambda*(1 - alpha),

always satisfy x <= z (because x + lambda*(1-alpha) = lambda <= 1), so the
possible orderings are exactly three.  Which ordering holds decides which
closed-form coefficient family applies in the bound engines.

Everything here is immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .errors import DomainError

CASE1 = "Case1"  # x <= y <= z
CASE2 = "Case2"  # x <= z <= y
CASE3 = "Case3"  # y <= x <= z


def _normalize(v):
    """Keep ints exact by promoting them to Fraction; pass the rest through."""
    if isinstance(v, bool):
        raise DomainError("parameter must be a number, not a bool")
    if isinstance(v, int):
        return Fraction(v)
    return v


@dataclass(frozen=True)
class RuleParams:
    """The pair (alpha, lambda), each in [0, 1].

    ``alpha`` places the interior node at alpha*a + (1-alpha)*b and splits
    the endpoint weights; ``lam`` blends the endpoint combination against
    the interior node.  Fraction inputs keep all downstream coefficient
    arithmetic exact; floats select the floating kernels.
    """

    alpha: object
    lam: object

    def __post_init__(self):
        object.__setattr__(self, "alpha", _normalize(self.alpha))
        object.__setattr__(self, "lam", _normalize(self.lam))
        for label, v in (("alpha", self.alpha), ("lambda", self.lam)):
            if isinstance(v, float) and not math.isfinite(v):
                raise DomainError(f"{label} must be finite, got {v!r}")
            if not (0 <= v <= 1):
                raise DomainError(f"{label} must lie in [0, 1], got {v!r}")
        # Sanity check x <= z, done in exact arithmetic so float rounding
        # cannot produce a spurious failure.
        xa, xl = Fraction(self.alpha), Fraction(self.lam)
        assert xa * xl <= 1 - xl * (1 - xa)

    @property
    def is_exact(self) -> bool:
        return isinstance(self.alpha, Rational) and isinstance(self.lam, Rational)

    def breakpoints(self):
        """(alpha*lambda, 1-alpha, 1-lambda*(1-alpha)) in the input arithmetic."""
        a, l = self.alpha, self.lam
        return (a * l, 1 - a, 1 - l * (1 - a))


@dataclass(frozen=True)
class Regime:
    """Which of the three breakpoint orderings holds, plus the breakpoints."""

    tag: str
    breakpoints: tuple

    def __str__(self) -> str:
        return self.tag


def classify_regime(params: RuleParams) -> Regime:
    """Assign the unique regime for a parameter pair.

    Ties pick the lowest-numbered case; the coefficient families coincide
    on the boundaries, so the choice does not change any bound.
    Comparisons are exact for rational inputs and zero-tolerance for
    floats.
    """
    x, y, z = params.breakpoints()
    if x <= y <= z:
        tag = CASE1
    elif x <= z <= y:
        tag = CASE2
    elif y <= x <= z:
        tag = CASE3
    else:
        # Only reachable when float rounding makes x > z at a triple
        # boundary (mathematically x <= z always).  All families agree
        # there to within an ulp; Case2 is the lowest-numbered fit.
        tag = CASE2
    return Regime(tag, (x, y, z))


@dataclass(frozen=True)
class ExponentPair:
    """An exponent q >= 1 and its Hoelder conjugate p = q/(q-1).

    q = 1 is stored explicitly with p flagged infinite rather than as a
    limit; the power-mean engine handles it through the x**0 = 1
    convention, the Hoelder engines reject it.
    """

    q: object
    p: object

    @property
    def p_is_infinite(self) -> bool:
        return self.p == math.inf


def conjugate(q) -> ExponentPair:
    """Conjugate pair for q >= 1; q < 1 is a domain error."""
    q = _normalize(q)
    if isinstance(q, float) and not math.isfinite(q):
        raise DomainError(f"q must be finite, got {q!r}")
    if q < 1:
        raise DomainError(f"q must be >= 1, got {q!r}")
    if q == 1:
        return ExponentPair(q, math.inf)
    return ExponentPair(q, q / (q - 1))
