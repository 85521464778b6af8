"""Existence of complete systems, frames and bases from (S, L, M, N) alone."""

from __future__ import annotations

from dataclasses import dataclass

from .arithmetic import GaborParams
from .periodic_set import PeriodicSet, kappa_cards, section_card


def admits_complete(S: PeriodicSet, params: GaborParams) -> bool:
    """True iff ``card(K_j) <= q*L`` for every j in [0, M/q)."""
    cap = params.q * params.L
    return all(c <= cap for c in kappa_cards(S, params))


def admits_frame(S: PeriodicSet, params: GaborParams) -> bool:
    # complete systems, frames and Parseval frames exist under the same condition
    return admits_complete(S, params)


def admits_riesz_onb(S: PeriodicSet, params: GaborParams) -> bool:
    """True iff ``card(K_j) == q*L`` for every j; then an orthonormal basis exists."""
    cap = params.q * params.L
    return all(c == cap for c in kappa_cards(S, params))


@dataclass(frozen=True)
class CardinalityRelations:
    sum: int
    bound_holds: bool
    equality_holds: bool


def cardinality_relations(S: PeriodicSet, params: GaborParams) -> CardinalityRelations:
    """Compare ``sum_j card(K_j)`` (which equals ``card(S_N)``) against ``L*M``."""
    total = sum(kappa_cards(S, params))
    if total != section_card(S, params.N):
        raise AssertionError("sum of card(K_j) differs from card(S_N)")
    LM = params.L * params.M
    return CardinalityRelations(total, total <= LM, total == LM)


def first_violation(S: PeriodicSet, params: GaborParams) -> tuple[int, int] | None:
    """First ``(j, card K_j)`` with ``card K_j > q*L``, if any."""
    cap = params.q * params.L
    for j, c in enumerate(kappa_cards(S, params)):
        if c > cap:
            return j, c
    return None
