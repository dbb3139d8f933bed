"""Panelized integration with summed certificates.

A per-panel certificate bounds the MEAN error on that panel; multiplying
by the panel width converts it to a bound on the panel's integral error,
and those add:

    |sum_i width_i * Q_i  -  integral of f over [a, b]|  <=  sum_i width_i * bound_i

Convexity of |f'|**q on [a, b] restricts to every subinterval, so the
per-panel hypotheses are inherited from the whole interval.

``adaptive_integrate`` greedily bisects the panel with the largest
width-scaled bound until the summed bound clears the target or the panel
budget runs out.  Panel endpoints always come from affine interpolation
of indices, never from accumulating widths, so they cannot drift.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .bounds import ENGINES, ErrorCertificate
from .errors import DomainError
from .expression import FunctionModel
from .params import RuleParams
from .rules import Interval


@dataclass(frozen=True)
class CompositeResult:
    """Approximation of the integral of f over [a, b] with a summed bound.

    ``panels`` tile the interval in order; ``target_met`` is None for
    fixed panel counts and reports target attainment for adaptive runs.
    """

    value: object
    total_bound: object
    panels: list  # [(Interval, ErrorCertificate), ...] left to right
    target_met: bool | None = None

    @property
    def advisory(self) -> bool:
        return any(cert.advisory for _, cert in self.panels)


def _resolve_engine(theorem: str):
    try:
        return ENGINES[theorem.lower()]
    except KeyError:
        raise DomainError(
            f"unknown theorem {theorem!r}; expected one of {sorted(ENGINES)}"
        ) from None


def _certify(engine, f, iv, params, q) -> ErrorCertificate:
    return engine(f, iv, params, q)


def _assemble(panels_with_certs, target_met=None) -> CompositeResult:
    panels = sorted(panels_with_certs, key=lambda pc: float(pc[0].a))
    value = sum(iv.width * cert.approx for iv, cert in panels)
    total = sum(iv.width * cert.bound for iv, cert in panels)
    return CompositeResult(value=value, total_bound=total, panels=panels,
                           target_met=target_met)


def composite_integrate(f: FunctionModel, iv: Interval, params: RuleParams,
                        q, theorem: str = "t22", n: int = 1) -> CompositeResult:
    """Apply the rule on n uniform panels and sum the certificates."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"panel count must be a positive integer, got {n!r}")
    engine = _resolve_engine(theorem)
    cuts = [(iv.a * (n - i) + iv.b * i) / n for i in range(n + 1)]
    panels = []
    for u, v in zip(cuts, cuts[1:]):
        piece = Interval(u, v)
        panels.append((piece, _certify(engine, f, piece, params, q)))
    return _assemble(panels)


def adaptive_integrate(f: FunctionModel, iv: Interval, params: RuleParams,
                       q, theorem: str = "t22", target=None,
                       max_panels: int = 1024) -> CompositeResult:
    """Greedy bound-driven bisection until total_bound <= target.

    Stops early (with target_met False) when max_panels is reached.  Ties
    in the width-scaled bound break toward the leftmost panel.
    """
    if target is None or not target > 0:
        raise DomainError(f"target must be positive, got {target!r}")
    if not isinstance(max_panels, int) or max_panels < 1:
        raise DomainError(f"max_panels must be a positive integer, got {max_panels!r}")
    engine = _resolve_engine(theorem)

    def entry(piece: Interval):
        cert = _certify(engine, f, piece, params, q)
        scaled = piece.width * cert.bound
        return (-scaled, float(piece.a), piece, cert)

    heap = [entry(iv)]
    total = iv.width * heap[0][3].bound
    while total > target and len(heap) < max_panels:
        neg_scaled, _, piece, cert = heapq.heappop(heap)
        mid = piece.midpoint()
        left = entry(Interval(piece.a, mid))
        right = entry(Interval(mid, piece.b))
        heapq.heappush(heap, left)
        heapq.heappush(heap, right)
        total += -left[0] + -right[0] - (-neg_scaled)
    return _assemble([(piece, cert) for _, _, piece, cert in heap],
                     target_met=bool(total <= target))
