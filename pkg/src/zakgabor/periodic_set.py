"""Periodic subsets of the integers and the index sets derived from them."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

import numpy as np

from .arithmetic import GaborParams


@dataclass(frozen=True)
class PeriodicSet:
    """The set ``residues + period*Z``.

    Build instances with :func:`make_periodic_set`, which canonicalizes the
    residue list. The stored period is never changed implicitly.
    """

    period: int
    residues: tuple[int, ...]
    _lookup: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be a positive integer")
        if not self.residues:
            raise ValueError("empty periodic set")
        if list(self.residues) != sorted(set(self.residues)) or not (
            0 <= self.residues[0] and self.residues[-1] < self.period
        ):
            raise ValueError("residues must be strictly increasing in [0, period)")
        object.__setattr__(self, "_lookup", frozenset(self.residues))

    def __contains__(self, x: int) -> bool:
        return (x % self.period) in self._lookup

    def contains(self, x: int) -> bool:
        return x in self

    def mask(self, xs) -> np.ndarray:
        """Vectorized membership for an integer array."""
        xs = np.asarray(xs, dtype=np.int64)
        table = np.zeros(self.period, dtype=bool)
        table[list(self.residues)] = True
        return table[np.mod(xs, self.period)]

    def members_in(self, lo: int, hi: int) -> np.ndarray:
        """Sorted members of the closed interval [lo, hi]."""
        xs = np.arange(lo, hi + 1, dtype=np.int64)
        return xs[self.mask(xs)]

    def is_periodic_with(self, n: int) -> bool:
        """True if the set is invariant under translation by ``n``."""
        return all(((r + n) % self.period) in self._lookup for r in self.residues)

    def to_json(self) -> dict:
        return {"period": self.period, "residues": list(self.residues)}

    @classmethod
    def from_json(cls, data: dict) -> PeriodicSet:
        return make_periodic_set(int(data["period"]), [int(r) for r in data["residues"]])


def make_periodic_set(period: int, residues: Iterable[int]) -> PeriodicSet:
    if period < 1:
        raise ValueError("period must be a positive integer")
    reduced = sorted({int(r) % period for r in residues})
    if not reduced:
        raise ValueError("empty periodic set")
    return PeriodicSet(period, tuple(reduced))


def rescale_period(S: PeriodicSet, factor: int) -> PeriodicSet:
    """Represent the same set with period ``S.period * factor``."""
    if factor < 1:
        raise ValueError("factor must be a positive integer")
    residues = [r + t * S.period for t in range(factor) for r in S.residues]
    return make_periodic_set(S.period * factor, residues)


def section_card(S: PeriodicSet, K: int) -> int:
    """Number of members of ``S`` in ``{0, ..., K-1}``."""
    if K < 1:
        raise ValueError("K must be a positive integer")
    full, rest = divmod(K, S.period)
    return full * len(S.residues) + sum(1 for r in S.residues if r < rest)


@dataclass(frozen=True)
class KappaSet:
    """``members = {k in [0, p) : j + k*M in S}`` for base point ``j``."""

    j: int
    members: tuple[int, ...]

    def __len__(self):
        return len(self.members)


@dataclass(frozen=True)
class KappaProjection:
    diagonal: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal)


def kappa_set(S: PeriodicSet, params: GaborParams, j: int) -> KappaSet:
    members = tuple(k for k in range(params.p) if (j + k * params.M) in S)
    return KappaSet(j, members)


def kappa_projection(ks: KappaSet, p: int) -> KappaProjection:
    """Diagonal 0/1 projection onto the coordinates listed in ``ks``."""
    diag = np.zeros(p, dtype=np.int64)
    for k in ks.members:
        if not 0 <= k < p:
            raise ValueError(f"index {k} outside [0, {p})")
        diag[k] = 1
    return KappaProjection(diag)


def require_periodic(S: PeriodicSet, N: int) -> None:
    """Reject sets that are not invariant under translation by ``N``."""
    if not S.is_periodic_with(N):
        raise ValueError(f"S is not {N}Z-periodic")


def kappa_cards(S: PeriodicSet, params: GaborParams) -> list[int]:
    """``card(K_j)`` for every ``j`` in [0, M/q)."""
    require_periodic(S, params.N)
    return [len(kappa_set(S, params, j)) for j in range(params.m_over_q)]


def is_congruent_to_subset(E: Iterable[int], M: int) -> bool:
    """True iff the residues of ``E`` modulo ``M`` are pairwise distinct."""
    seen = set()
    for x in E:
        r = x % M
        if r in seen:
            return False
        seen.add(r)
    return True
