"""Lattice parameters and the integer decompositions used for Zak bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


@dataclass(frozen=True)
class GaborParams:
    """Window count ``L``, modulation count ``M`` and translation step ``N``.

    ``p`` and ``q`` are the reduced numerator and denominator of ``N/M``;
    ``p*M == q*N`` is the period used by every Zak transform in the package.
    """

    L: int
    M: int
    N: int
    p: int
    q: int
    m_over_q: int

    def __post_init__(self):
        if min(self.L, self.M, self.N, self.p, self.q, self.m_over_q) < 1:
            raise ValueError("Gabor parameters must be positive integers")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"p={self.p} and q={self.q} are not coprime")
        if self.N * self.q != self.M * self.p or self.m_over_q * self.q != self.M:
            raise ValueError("inconsistent Gabor parameters")

    @property
    def zak_period(self) -> int:
        return self.p * self.M

    def as_dict(self) -> dict:
        return {"L": self.L, "M": self.M, "N": self.N,
                "p": self.p, "q": self.q, "m_over_q": self.m_over_q}


def derive_params(L: int, M: int, N: int) -> GaborParams:
    """Reduce ``N/M`` to lowest terms ``p/q`` and bundle the result."""
    for name, value in (("L", L), ("M", M), ("N", N)):
        if int(value) != value or value < 1:
            raise ValueError(f"{name} must be a positive integer, got {value!r}")
    L, M, N = int(L), int(M), int(N)
    d = gcd(M, N)
    p, q = N // d, M // d
    return GaborParams(L=L, M=M, N=N, p=p, q=q, m_over_q=M // q)


def _check_coprime(p: int, q: int) -> None:
    if p < 1 or q < 1 or gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} must be coprime positive integers")


def decompose_k_l(s: int, p: int, q: int) -> tuple[int, int, int]:
    """Write ``s = k0*q + (m0*q + r0)*p`` with ``k0`` in [0, p) and ``r0`` in [0, q).

    The triple is unique when ``gcd(p, q) == 1``.
    """
    _check_coprime(p, q)
    k0 = (s * pow(q, -1, p)) % p if p > 1 else 0
    l0 = (s - k0 * q) // p
    m0, r0 = divmod(l0, q)
    return k0, m0, r0


def decompose_time_freq(m: int, params: GaborParams) -> tuple[int, int, int, int]:
    """Return ``(j, r, k, ell)`` with ``m = j + k*M - r*N + ell*q*N``.

    ``j`` lies in [0, M/q), ``r`` in [0, q), ``k`` in [0, p); ``ell`` is any integer.
    """
    s, p, q = params.m_over_q, params.p, params.q
    # M = s*q and N = s*p, so j is m reduced mod s and the rest scales by s.
    j = m % s
    rest = (m - j) // s  # = k*q - r*p + ell*p*q
    k = (rest * pow(q, -1, p)) % p if p > 1 else 0
    t = (rest - k * q) // p  # = -r + ell*q
    r = (-t) % q
    ell = (t + r) // q
    return j, r, k, ell


def delta_set(params: GaborParams) -> set[int]:
    """All offsets ``j + k*M - r*N`` for j in [0, M/q), k in [0, p), r in [0, q)."""
    M, N = params.M, params.N
    return {
        j + k * M - r * N
        for j in range(params.m_over_q)
        for k in range(params.p)
        for r in range(params.q)
    }
