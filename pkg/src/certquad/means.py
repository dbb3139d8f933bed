"""The nine special means and the six mean-inequality checks built from
the rule family.

Means (weighted variants take alpha in [0, 1]):

    A_alpha(a,b) = alpha*a + (1-alpha)*b         any reals
    A(a,b)       = (a+b)/2                       any reals
    G_alpha(a,b) = a**alpha * b**(1-alpha)       a, b > 0
    G(a,b)       = sqrt(a*b)                     a, b > 0
    H_alpha(a,b) = 1/(alpha/a + (1-alpha)/b)     a, b != 0
    H(a,b)       = 2ab/(a+b)                     a, b != 0
    L(a,b)       = (b-a)/(ln|b| - ln|a|)         |a| != |b|, ab != 0
    L_n(a,b)     = ((b**(n+1)-a**(n+1))/((n+1)(b-a)))**(1/n)
                                                 integer n not in {-1, 0}, a != b
    I(a,b)       = (1/e)*(b**b/a**a)**(1/(b-a))  a, b > 0, a != b

Each inequality check evaluates its left side from the means above and
its right side from the regime-selected bound constants, then reports
whether left <= right (with 1e-10 slack for rounding).  Indices 1..6:
odd-index style checks ride the power-mean route (1: x**n, 3: 1/x,
5: -ln x with q >= 1), the even ones the interior-node conjugate route
(2, 4, 6 with q > 1).  ``proposition_consistency`` confirms each check is
a pure instantiation of the matching bound engine.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import oracle
from .bounds import holder_interior_bound, power_mean_bound
from .coefficients import (holder_coeffs, power_mean_coeffs,
                           regime_selected, regime_selected_eps)
from .errors import DomainError
from .expression import FunctionModel, builtin_corpus, power_model
from .params import RuleParams, classify_regime, conjugate, _normalize
from .rules import Interval, rule_value

MEAN_KINDS = ("A_alpha", "A", "G_alpha", "G", "H_alpha", "H", "L", "L_n", "I")


def _require(cond: bool, predicate: str) -> None:
    if not cond:
        raise DomainError(predicate)


def _real_root(v, n: int):
    """Real n-th root; odd n keeps the sign, even n needs v >= 0."""
    if n % 2 == 0:
        _require(v >= 0, f"even root of negative value {v!r}")
        return float(v) ** (1.0 / n)
    if v < 0:
        return -((-float(v)) ** (1.0 / n))
    return float(v) ** (1.0 / n)


def weighted_arithmetic(alpha, a, b):
    return alpha * a + (1 - alpha) * b


def log_mean(a, b):
    _require(a * b != 0, "L requires a*b != 0")
    _require(abs(a) != abs(b), "L requires |a| != |b|")
    return (b - a) / (math.log(abs(b)) - math.log(abs(a)))


def power_log_mean_nth(n: int, a, b):
    """L_n(a,b)**n, the integral mean of x**n; defined whenever a != b."""
    _require(isinstance(n, int) and n not in (-1, 0),
             "L_n requires integer n outside {-1, 0}")
    _require(a != b, "L_n requires a != b")
    if n < 0:
        _require(a * b > 0, "L_n with negative n requires 0 outside [a, b]")
    return (b ** (n + 1) - a ** (n + 1)) / ((n + 1) * (b - a))


def identric_mean(a, b):
    _require(a > 0 and b > 0, "I requires a, b > 0")
    _require(a != b, "I requires a != b")
    a, b = float(a), float(b)
    # exp form avoids overflow of b**b for large arguments
    return math.exp((b * math.log(b) - a * math.log(a)) / (b - a) - 1.0)


def eval_mean(kind: str, a, b, *, alpha=None, n: int | None = None):
    """Evaluate one of the nine means; domain violations raise DomainError
    naming the failed predicate."""
    if kind not in MEAN_KINDS:
        raise DomainError(f"unknown mean kind {kind!r}; expected one of {MEAN_KINDS}")
    if kind.endswith("_alpha"):
        _require(alpha is not None and 0 <= alpha <= 1,
                 f"{kind} requires alpha in [0, 1]")
    if kind == "A_alpha":
        return weighted_arithmetic(alpha, a, b)
    if kind == "A":
        return (a + b) / 2
    if kind == "G_alpha":
        _require(a > 0 and b > 0, "G_alpha requires a, b > 0")
        return float(a) ** float(alpha) * float(b) ** float(1 - alpha)
    if kind == "G":
        _require(a > 0 and b > 0, "G requires a, b > 0")
        return math.sqrt(a * b)
    if kind == "H_alpha":
        _require(a != 0 and b != 0, "H_alpha requires a, b != 0")
        den = alpha / a + (1 - alpha) / b
        _require(den != 0, "H_alpha undefined where alpha/a + (1-alpha)/b = 0")
        return 1 / den
    if kind == "H":
        _require(a != 0 and b != 0, "H requires a, b != 0")
        _require(a + b != 0, "H undefined for a + b = 0")
        return 2 * a * b / (a + b)
    if kind == "L":
        return log_mean(a, b)
    if kind == "L_n":
        _require(n is not None, "L_n requires n")
        return _real_root(power_log_mean_nth(n, a, b), n)
    return identric_mean(a, b)


# ---------------------------------------------------------------------------
# Inequality checks

@dataclass(frozen=True)
class PropositionResult:
    lhs: float
    rhs: float
    holds: bool

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs


def _check_index(which: int) -> None:
    _require(which in (1, 2, 3, 4, 5, 6), f"check index must be 1..6, got {which!r}")


def _check_domain(which: int, a, b, q, n) -> None:
    _require(a < b, "requires a < b")
    if which in (1, 2, 3):
        _require(a > 0 or b < 0, "requires 0 outside [a, b]")
    else:
        _require(a > 0, "requires 0 < a < b")
    if which in (1, 2):
        _require(isinstance(n, int) and abs(n) >= 2, "requires integer |n| >= 2")
    if which in (1, 3, 5):
        _require(q >= 1, "requires q >= 1")
    else:
        _require(q > 1, "requires q > 1")


def _lhs(which: int, a, b, params: RuleParams, n) -> float:
    alpha, lam = params.alpha, params.lam
    node = weighted_arithmetic(alpha, a, b)
    if which in (1, 2):
        approx = lam * weighted_arithmetic(alpha, a ** n, b ** n) \
            + (1 - lam) * node ** n
        return abs(float(approx - power_log_mean_nth(n, a, b)))
    if which in (3, 4):
        _require(node != 0, "interior node alpha*a + (1-alpha)*b is zero")
        approx = lam * (alpha / a + (1 - alpha) / b) + (1 - lam) / node
        return abs(float(approx - 1 / log_mean(a, b)))
    log_g = weighted_arithmetic(
        alpha, math.log(float(a)), math.log(float(b)))  # ln G_alpha
    log_node = math.log(float(node))                    # ln A_alpha
    blended = float(lam) * log_g + (1 - float(lam)) * log_node
    return abs(blended - math.log(identric_mean(a, b)))


def _power_mean_rhs(params: RuleParams, q, xb, ya, scale=1):
    """(b-a)-free right side of the power-mean route with |f'(b)|**q and
    |f'(a)|**q replaced by the caller's endpoint quantities."""
    tag = classify_regime(params).tag
    gamma, mu_b, mu_a, upsilon, eta_b, eta_a = regime_selected(
        power_mean_coeffs(params), tag)
    inv_q = 1 / q
    outer = 1 - inv_q
    return scale * (gamma ** outer * (mu_b * xb + mu_a * ya) ** inv_q
                    + upsilon ** outer * (eta_b * xb + eta_a * ya) ** inv_q)


def _holder_rhs(params: RuleParams, q, theta_a, theta_b, scale=1):
    """(b-a)-free right side of the interior-node conjugate route with the
    endpoint averages already folded into theta_a and theta_b."""
    p = conjugate(q).p
    tag = classify_regime(params).tag
    eps_first, eps_second = regime_selected_eps(holder_coeffs(params, p), tag)
    alpha = params.alpha
    inv_q = 1 / q
    inv_p = 1 / p
    return scale * (1 / (p + 1)) ** inv_p * (
        (1 - alpha) ** inv_q * eps_first ** inv_p * theta_a
        + alpha ** inv_q * eps_second ** inv_p * theta_b)


def _rhs(which: int, a, b, params: RuleParams, q, n) -> float:
    width = b - a
    node = weighted_arithmetic(params.alpha, a, b)
    if which == 1:
        xb = abs(b) ** ((n - 1) * q)
        ya = abs(a) ** ((n - 1) * q)
        return float(width * abs(n) * _power_mean_rhs(params, q, xb, ya))
    if which == 2:
        node_pow = abs(node) ** ((n - 1) * q)
        theta_a = ((node_pow + abs(a) ** ((n - 1) * q)) / 2) ** (1 / q)
        theta_b = ((node_pow + abs(b) ** ((n - 1) * q)) / 2) ** (1 / q)
        return float(width * abs(n) * _holder_rhs(params, q, theta_a, theta_b))
    if which == 3:
        return float(width * _power_mean_rhs(
            params, q, 1 / abs(b) ** (2 * q), 1 / abs(a) ** (2 * q)))
    if which == 4:
        node_pow = node ** (2 * q)
        theta_a = ((1 / node_pow + 1 / a ** (2 * q)) / 2) ** (1 / q)
        theta_b = ((1 / node_pow + 1 / b ** (2 * q)) / 2) ** (1 / q)
        return float(width * _holder_rhs(params, q, theta_a, theta_b))
    if which == 5:
        return float(width * _power_mean_rhs(params, q, 1 / b ** q, 1 / a ** q))
    node_pow = node ** q
    theta_a = ((1 / node_pow + 1 / a ** q) / 2) ** (1 / q)
    theta_b = ((1 / node_pow + 1 / b ** q) / 2) ** (1 / q)
    return float(width * _holder_rhs(params, q, theta_a, theta_b))


def proposition_check(which: int, a, b, params: RuleParams, q,
                      n: int | None = None,
                      slack: float = 1e-10) -> PropositionResult:
    """Evaluate one of the six mean inequalities at concrete inputs."""
    _check_index(which)
    q = _normalize(q)
    _check_domain(which, a, b, q, n)
    lhs = _lhs(which, a, b, params, n)
    rhs = _rhs(which, a, b, params, q, n)
    return PropositionResult(lhs=lhs, rhs=rhs, holds=lhs <= rhs + slack)


_NEGLOG = None


def _model_for(which: int, a, b, n) -> FunctionModel:
    global _NEGLOG
    side = "pos" if a > 0 else "neg"
    if which in (1, 2):
        return power_model(n, side)
    if which in (3, 4):
        return power_model(-1, side)
    if _NEGLOG is None:
        _NEGLOG = next(m for m in builtin_corpus() if m.name == "neglog")
    return _NEGLOG


def proposition_consistency(which: int, a, b, params: RuleParams, q,
                            n: int | None = None,
                            rhs_tol: float = 1e-12,
                            lhs_tol: float = 1e-10) -> bool:
    """The check must coincide with the bound engine run on the function
    that generates it: right sides within rhs_tol, left side within
    lhs_tol of |rule value - oracle mean|."""
    _check_index(which)
    q = _normalize(q)
    _check_domain(which, a, b, q, n)
    result = proposition_check(which, a, b, params, q, n)
    f = _model_for(which, a, b, n)
    iv = Interval(a, b)
    engine = power_mean_bound if which in (1, 3, 5) else holder_interior_bound
    cert = engine(f, iv, params, q)
    if abs(result.rhs - float(cert.bound)) > rhs_tol:
        return False
    gap = abs(float(rule_value(f, iv, params)) - oracle.mean_ref(f, iv, tol=1e-12))
    return abs(result.lhs - gap) <= lhs_tol
