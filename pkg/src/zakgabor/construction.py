"""Characteristic-function windows that generate tight and Parseval frames."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .arithmetic import GaborParams
from .periodic_set import PeriodicSet, is_congruent_to_subset, kappa_set, section_card
from .admissibility import first_violation
from .zak import FiniteSignal


class InadmissibleError(ValueError):
    def __init__(self, j: int, card: int, cap: int):
        self.j, self.card, self.cap = j, card, cap
        super().__init__(
            f"inadmissible parameters (card K_j > qL): card K_{j} = {card} > {cap}"
        )


@dataclass(frozen=True)
class Placement:
    """Where one element of a window set came from."""

    l: int
    j: int
    i: int
    k: int
    r: int
    point: int


@dataclass(frozen=True)
class WindowConstruction:
    E_sets: tuple[tuple[int, ...], ...]
    union_card: int
    provenance: tuple[Placement, ...]


def construct_windows(S: PeriodicSet, params: GaborParams) -> WindowConstruction:
    """Build disjoint sets ``E_0..E_{L-1}`` whose indicators give a tight frame with bound M.

    For each j in [0, M/q), the ascending list ``K_j`` is cut into chunks of
    ``q`` consecutive elements (the last one possibly shorter). Chunk ``l``
    contributes the points ``j + k_i*M - i*N`` to ``E_l``, where ``k_i`` is
    its i-th element.
    """
    violation = first_violation(S, params)
    if violation is not None:
        raise InadmissibleError(*violation, params.q * params.L)
    M, N, q = params.M, params.N, params.q
    sets: list[list[int]] = [[] for _ in range(params.L)]
    prov = []
    for j in range(params.m_over_q):
        members = kappa_set(S, params, j).members
        for start in range(0, len(members), q):
            l = start // q
            for i, k in enumerate(members[start:start + q]):
                x = j + k * M - i * N
                sets[l].append(x)
                prov.append(Placement(l, j, i, k, i, x))
    E = tuple(tuple(sorted(s)) for s in sets)
    return WindowConstruction(E, sum(len(s) for s in E), tuple(prov))


def make_tight_windows(wc: WindowConstruction) -> list[FiniteSignal]:
    return [FiniteSignal.indicator(E) for E in wc.E_sets]


def make_parseval_windows(wc: WindowConstruction, M: int) -> list[FiniteSignal]:
    """Indicators of the window sets scaled by ``1/sqrt(M)``."""
    c = 1.0 / sqrt(M)
    return [FiniteSignal.indicator(E, c) for E in wc.E_sets]


def verify_construction(wc: WindowConstruction, S: PeriodicSet,
                        params: GaborParams) -> dict[str, bool]:
    """Exact integer checks that the window sets have the properties the frame needs."""
    flat = [x for E in wc.E_sets for x in E]
    union = set(flat)
    sn = set(S.members_in(0, params.N - 1).tolist())
    residues_N = [x % params.N for x in flat]
    return {
        "window_count": len(wc.E_sets) == params.L,
        "inside_S": all(x in S for x in flat),
        "disjoint": len(union) == len(flat),
        "modulation_congruent": all(is_congruent_to_subset(E, params.M) for E in wc.E_sets),
        "translation_congruent": len(set(residues_N)) == len(residues_N)
        and set(residues_N) == sn,
        "union_cardinality": len(union) == section_card(S, params.N) == wc.union_card,
    }
