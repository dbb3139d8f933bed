"""Certified upper bounds on |rule value - integral mean|.

Three engines, one per derivation route:

  power_mean_bound      q >= 1, needs |f'|**q convex on [a, b].
                        Shape: (b-a) * [ gamma**(1-1/q) * (mu_b*X + mu_a*Y)**(1/q)
                                       + upsilon**(1-1/q) * (eta_b*X + eta_a*Y)**(1/q) ]
                        with X = |f'(b)|**q, Y = |f'(a)|**q and the
                        constants picked by the parameter regime.

  holder_interior_bound q > 1.  Conjugate-exponent route whose averages
                        pair each endpoint with the interior node.

  holder_endpoint_bound q > 1.  Conjugate-exponent route with averages
                        built from the endpoints only.

At q = 1 the power-mean shape collapses through the x**0 = 1 convention
to (b-a) * [(mu_b+eta_b)*X + (mu_a+eta_a)*Y]; there is no separate code
path for it, only a separate certificate tag.

A certificate is only issued under an established convexity hypothesis:
builtin and user-asserted models pass directly, anything else is sampled
and the resulting certificate is flagged advisory.  Bounds are evaluated
in ordinary floating point (exact rationals when the inputs allow); they
are analytic constants, not outward-rounded interval enclosures, so
soundness tests should carry a small slack.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coefficients import (holder_coeffs, power_mean_coeffs,
                           regime_selected, regime_selected_eps)
from .errors import Refusal
from .expression import FunctionModel, probe_convexity
from .params import RuleParams, classify_regime, conjugate, _normalize
from .rules import Interval, interior_node, require_within_domain, rule_value

POWER_MEAN = "T22"
POWER_MEAN_Q1 = "T22q1"
HOLDER_INTERIOR = "T23"
HOLDER_ENDPOINT = "T24"

THEOREM_ORDER = {POWER_MEAN: 0, POWER_MEAN_Q1: 0,
                 HOLDER_INTERIOR: 1, HOLDER_ENDPOINT: 2}


@dataclass(frozen=True)
class ErrorCertificate:
    """A certified bound on |approx - integral mean| over an interval.

    ``advisory`` is set when the convexity hypothesis was only sampled,
    never proven; such certificates are best-effort, not guarantees.
    """

    interval: Interval
    params: RuleParams
    theorem: str
    q: object
    p: object
    bound: object
    approx: object
    advisory: bool
    regime: str


def _established_convexity(f: FunctionModel, iv: Interval, q) -> bool:
    """True plus advisory=False for proven models; probe otherwise."""
    if f.convex_for_all_q:
        return False
    if probe_convexity(f, q, iv.a, iv.b):
        return True
    raise Refusal(
        f"convexity of |f'|**{q} not established for {f.name} on "
        f"[{iv.a}, {iv.b}]")


def _clamp(v):
    """Selected constants are nonnegative in-regime; shave rounding dust."""
    return v if v >= 0 else 0 * v


def _endpoint_powers(f: FunctionModel, iv: Interval, q):
    xb = abs(f.derivative(iv.b)) ** q
    ya = abs(f.derivative(iv.a)) ** q
    return xb, ya


def power_mean_bound(f: FunctionModel, iv: Interval, params: RuleParams,
                     q) -> ErrorCertificate:
    """Certificate from the power-mean route; q >= 1."""
    q = _normalize(q)
    if not q >= 1:
        raise Refusal(f"q >= 1 required, got {q!r}")
    require_within_domain(f, iv)
    advisory = _established_convexity(f, iv, q)
    pair = conjugate(q)
    regime = classify_regime(params)
    gamma, mu_b, mu_a, upsilon, eta_b, eta_a = (
        _clamp(v) for v in regime_selected(power_mean_coeffs(params), regime.tag))
    xb, ya = _endpoint_powers(f, iv, q)
    inv_q = 1 / q
    outer = 1 - inv_q
    term1 = gamma ** outer * _clamp(mu_b * xb + mu_a * ya) ** inv_q
    term2 = upsilon ** outer * _clamp(eta_b * xb + eta_a * ya) ** inv_q
    bound = iv.width * (term1 + term2)
    return ErrorCertificate(
        interval=iv, params=params,
        theorem=POWER_MEAN_Q1 if q == 1 else POWER_MEAN,
        q=q, p=pair.p, bound=bound,
        approx=rule_value(f, iv, params),
        advisory=advisory, regime=regime.tag)


def _holder_prologue(f, iv, params, q):
    q = _normalize(q)
    if not q > 1:
        raise Refusal(f"q > 1 required, got {q!r}")
    require_within_domain(f, iv)
    advisory = _established_convexity(f, iv, q)
    p = conjugate(q).p
    regime = classify_regime(params)
    eps_first, eps_second = regime_selected_eps(
        holder_coeffs(params, p), regime.tag)
    return q, advisory, p, regime, _clamp(eps_first), _clamp(eps_second)


def holder_interior_bound(f: FunctionModel, iv: Interval, params: RuleParams,
                          q) -> ErrorCertificate:
    """Certificate from the conjugate-exponent route with interior-node
    averages; q > 1."""
    q, advisory, p, regime, eps_first, eps_second = _holder_prologue(
        f, iv, params, q)
    alpha = params.alpha
    xb, ya = _endpoint_powers(f, iv, q)
    node_pow = abs(f.derivative(interior_node(iv, params))) ** q
    d1 = (node_pow + ya) / 2
    d2 = (node_pow + xb) / 2
    inv_q = 1 / q
    inv_p = 1 / p
    bound = iv.width * (1 / (p + 1)) ** inv_p * (
        (1 - alpha) ** inv_q * eps_first ** inv_p * d1 ** inv_q
        + alpha ** inv_q * eps_second ** inv_p * d2 ** inv_q)
    return ErrorCertificate(
        interval=iv, params=params, theorem=HOLDER_INTERIOR,
        q=q, p=p, bound=bound, approx=rule_value(f, iv, params),
        advisory=advisory, regime=regime.tag)


def holder_endpoint_bound(f: FunctionModel, iv: Interval, params: RuleParams,
                          q) -> ErrorCertificate:
    """Certificate from the conjugate-exponent route with endpoint-only
    averages; q > 1."""
    q, advisory, p, regime, eps_first, eps_second = _holder_prologue(
        f, iv, params, q)
    alpha = params.alpha
    xb, ya = _endpoint_powers(f, iv, q)
    d3 = (xb * (1 - alpha) ** 2 + (1 - alpha * alpha) * ya) / 2
    d4 = (xb * alpha * (2 - alpha) + alpha * alpha * ya) / 2
    inv_q = 1 / q
    inv_p = 1 / p
    bound = iv.width * (1 / (p + 1)) ** inv_p * (
        eps_first ** inv_p * d3 ** inv_q
        + eps_second ** inv_p * d4 ** inv_q)
    return ErrorCertificate(
        interval=iv, params=params, theorem=HOLDER_ENDPOINT,
        q=q, p=p, bound=bound, approx=rule_value(f, iv, params),
        advisory=advisory, regime=regime.tag)


ENGINES = {
    "t22": power_mean_bound,
    "t23": holder_interior_bound,
    "t24": holder_endpoint_bound,
}


def best_bound(f: FunctionModel, iv: Interval, params: RuleParams,
               q_grid) -> ErrorCertificate:
    """Smallest certificate over the engines crossed with a q grid.

    Candidates: the power-mean engine at every q >= 1 in the grid, the
    two conjugate-exponent engines at every q > 1.  Ties break toward the
    power-mean engine, then the interior-node engine, then smaller q.
    Raises Refusal when the grid is empty or every candidate refuses.
    """
    q_grid = list(q_grid)
    if not q_grid:
        raise Refusal("empty q grid")
    candidates = []
    refusals = []
    for q in q_grid:
        for engine in (power_mean_bound, holder_interior_bound,
                       holder_endpoint_bound):
            try:
                candidates.append(engine(f, iv, params, q))
            except Refusal as exc:
                refusals.append(str(exc))
    if not candidates:
        raise Refusal("no engine produced a certificate: "
                      + "; ".join(sorted(set(refusals))))
    return min(candidates,
               key=lambda c: (float(c.bound), THEOREM_ORDER[c.theorem],
                              float(c.q)))
