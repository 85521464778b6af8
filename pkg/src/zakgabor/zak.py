"""Finitely supported signals and their discrete Zak transform."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import numpy as np

from .arithmetic import GaborParams
from .periodic_set import PeriodicSet

TWO_PI_I = 2j * np.pi


class SupportError(ValueError):
    """A signal has a nonzero entry outside the periodic set."""

    def __init__(self, msg="window leaves ℓ²(S)"):
        super().__init__(msg)


class FiniteSignal:
    """Complex sequence on Z with finite support.

    Stored as a sorted integer ``support`` array and a matching complex
    ``values`` array. Exact zeros are pruned on construction.
    """

    __slots__ = ("support", "values")

    def __init__(self, support: Iterable[int] = (), values: Iterable[complex] = ()):
        support = np.asarray(list(support), dtype=np.int64).reshape(-1)
        values = np.asarray(list(values), dtype=np.complex128).reshape(-1)
        if support.shape != values.shape:
            raise ValueError("support and values must have equal length")
        if len(np.unique(support)) != len(support):
            raise ValueError("duplicate support index")
        order = np.argsort(support, kind="stable")
        support, values = support[order], values[order]
        keep = values != 0
        self.support = support[keep]
        self.values = values[keep]

    @classmethod
    def from_mapping(cls, entries: Mapping[int, complex]) -> FiniteSignal:
        items = sorted(entries.items())
        return cls([k for k, _ in items], [v for _, v in items])

    @classmethod
    def indicator(cls, points: Iterable[int], scale: complex = 1.0) -> FiniteSignal:
        pts = sorted(set(int(x) for x in points))
        return cls(pts, [scale] * len(pts))

    @classmethod
    def impulse(cls, at: int = 0) -> FiniteSignal:
        return cls([at], [1.0])

    @classmethod
    def from_json(cls, data: dict) -> FiniteSignal:
        support = [int(x) for x in data["support"]]
        raw = data["values"]
        if len(raw) != len(support):
            raise ValueError("window 'support' and 'values' lengths differ")
        values = []
        for v in raw:
            if isinstance(v, (list, tuple)):
                if len(v) != 2:
                    raise ValueError("complex values must be [re, im] pairs")
                values.append(complex(float(v[0]), float(v[1])))
            else:
                values.append(complex(float(v)))
        return cls(support, values)

    def to_json(self) -> dict:
        return {
            "support": [int(x) for x in self.support],
            "values": [[float(v.real), float(v.imag)] for v in self.values],
        }

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        pairs = ", ".join(f"{x}: {v:g}" for x, v in zip(self.support, self.values))
        return f"FiniteSignal({{{pairs}}})"

    def __eq__(self, other):
        if not isinstance(other, FiniteSignal):
            return NotImplemented
        return np.array_equal(self.support, other.support) and np.array_equal(
            self.values, other.values
        )

    def __call__(self, x: int) -> complex:
        i = np.searchsorted(self.support, x)
        if i < len(self.support) and self.support[i] == x:
            return complex(self.values[i])
        return 0j

    def scaled(self, c: complex) -> FiniteSignal:
        return FiniteSignal(self.support, self.values * c)

    def __add__(self, other: FiniteSignal) -> FiniteSignal:
        acc = dict(zip(self.support.tolist(), self.values.tolist()))
        for x, v in zip(other.support.tolist(), other.values.tolist()):
            acc[x] = acc.get(x, 0) + v
        return FiniteSignal.from_mapping(acc)

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    @property
    def is_zero(self) -> bool:
        return len(self.support) == 0

    def width(self) -> int:
        """``max(support) - min(support)``, 0 for empty or single-point support."""
        if len(self.support) < 2:
            return 0
        return int(self.support[-1] - self.support[0])

    def radius(self) -> int:
        """Largest ``|x|`` over the support."""
        return int(np.max(np.abs(self.support))) if len(self.support) else 0

    def lies_in(self, S: PeriodicSet) -> bool:
        return bool(np.all(S.mask(self.support)))

    def require_in(self, S: PeriodicSet) -> None:
        if not self.lies_in(S):
            bad = self.support[~S.mask(self.support)]
            raise SupportError(f"window leaves ℓ²(S): index {int(bad[0])} not in S")


@dataclass(frozen=True)
class ThetaGrid:
    """Uniform nodes ``t/T`` for t in [0, T)."""

    T: int

    def __post_init__(self):
        if self.T < 1:
            raise ValueError("grid size must be positive")

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.T) / self.T


def zak_eval(f: FiniteSignal, K: int, j: int, theta) -> complex | np.ndarray:
    """``sum_k f(j + k*K) * exp(2 pi i k theta)``.

    ``theta`` may be a scalar or an array; the result has the same shape.
    """
    if K < 1:
        raise ValueError("K must be a positive integer")
    theta = np.asarray(theta, dtype=float)
    hit = (f.support - j) % K == 0
    ks = (f.support[hit] - j) // K
    vals = f.values[hit]
    out = np.exp(TWO_PI_I * np.multiply.outer(theta, ks)) @ vals
    return complex(out) if out.ndim == 0 else out


def check_quasi_periodicity(f: FiniteSignal, K: int, samples) -> float:
    """Largest violation of ``z(j+kK, th+l) = exp(-2 pi i k th) z(j, th)`` over ``samples``.

    ``samples`` is an iterable of ``(j, k, l, theta)`` tuples.
    """
    worst = 0.0
    for j, k, l, theta in samples:
        lhs = zak_eval(f, K, j + k * K, theta + l)
        rhs = np.exp(-TWO_PI_I * k * theta) * zak_eval(f, K, j, theta)
        worst = max(worst, abs(lhs - rhs))
    return worst


def min_exact_grid(f: FiniteSignal, K: int) -> int:
    """Smallest ``T`` accepted by :func:`parseval_defect` for this support."""
    return int(np.ceil(2 * f.width() / K + 2))


def parseval_defect(f: FiniteSignal, S: PeriodicSet, params: GaborParams,
                    grid: ThetaGrid) -> float:
    """``| ||f||^2 - sum_j (1/T) sum_t |z_{pM} f(j, t/T)|^2 |`` over j in S within one period.

    The rectangle rule is exact for the trigonometric polynomial ``|z|^2``
    once ``T`` exceeds its degree, which the Nyquist check guarantees.
    """
    K = params.zak_period
    if not S.is_periodic_with(K):
        raise ValueError(f"S is not {K}Z-periodic")
    f.require_in(S)
    if grid.T < 2 * f.width() / K + 2:
        raise ValueError("grid below Nyquist for this support")
    theta = grid.nodes
    total = 0.0
    for j in S.members_in(0, K - 1):
        total += float(np.mean(np.abs(zak_eval(f, K, int(j), theta)) ** 2))
    return abs(f.norm_sq() - total)
