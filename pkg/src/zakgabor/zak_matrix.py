"""Matrix-valued Zak symbols ``Z_f(j, theta)`` and their rank structure."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .arithmetic import GaborParams
from .periodic_set import PeriodicSet, kappa_projection, kappa_set
from .zak import TWO_PI_I, FiniteSignal, ThetaGrid

DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class ZakMatrix:
    """One sample of the Zak symbol: a ``q x p`` (or stacked ``qL x p``) matrix."""

    entries: np.ndarray
    j: int
    theta: float

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]


def _offsets(params: GaborParams, j: int) -> np.ndarray:
    r = np.arange(params.q)[:, None]
    k = np.arange(params.p)[None, :]
    return j + k * params.M - r * params.N


def zak_symbol(f: FiniteSignal, params: GaborParams, j: int, thetas) -> np.ndarray:
    """Evaluate ``Z_f(j, theta)`` for every theta at once.

    Returns an array of shape ``(len(thetas), q, p)`` with entry ``[t, r, k]``
    equal to ``z_{pM} f(j + k*M - r*N, thetas[t])``.
    """
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    K = params.zak_period
    offs = _offsets(params, j)
    # for fixed j the q*p offsets are pairwise distinct mod pM, so every
    # support point feeds exactly one entry
    where = {int(o) % K: (r, k) for (r, k), o in np.ndenumerate(offs)}
    out = np.zeros((len(thetas), params.q, params.p), dtype=np.complex128)
    for x, v in zip(f.support.tolist(), f.values.tolist()):
        rk = where.get(x % K)
        if rk is None:
            continue
        n = (x - int(offs[rk])) // K
        out[:, rk[0], rk[1]] += v * np.exp(TWO_PI_I * n * thetas)
    return out


def stacked_symbol(g: Sequence[FiniteSignal], params: GaborParams, j: int, thetas) -> np.ndarray:
    """Stack the per-window symbols along the row axis: shape ``(T, q*L, p)``."""
    return np.concatenate([zak_symbol(gl, params, j, thetas) for gl in g], axis=1)


def build_single(f: FiniteSignal, params: GaborParams, j: int, theta: float) -> ZakMatrix:
    return ZakMatrix(zak_symbol(f, params, j, [theta])[0], j, float(theta))


def build_stacked(g: Sequence[FiniteSignal], params: GaborParams, j: int, theta: float) -> ZakMatrix:
    return ZakMatrix(stacked_symbol(g, params, j, [theta])[0], j, float(theta))


def numerical_rank(Z, rel_tol: float = DEFAULT_RANK_TOL):
    """Count singular values above ``rel_tol * sigma_max``.

    Accepts a :class:`ZakMatrix`, a 2-D array, or a stack of matrices with
    shape ``(..., m, n)`` (ranks are then returned as an integer array).
    """
    if not 0 < rel_tol < 1:
        raise ValueError("rel_tol must lie in (0, 1)")
    a = Z.entries if isinstance(Z, ZakMatrix) else np.asarray(Z)
    if a.size == 0:
        return 0 if a.ndim == 2 else np.zeros(a.shape[:-2], dtype=int)
    sv = np.linalg.svd(a, compute_uv=False)
    smax = sv[..., :1]
    ranks = np.sum((sv > rel_tol * smax) & (smax > 0), axis=-1)
    return int(ranks) if a.ndim == 2 else ranks


def check_support_identity(f: FiniteSignal, S: PeriodicSet, params: GaborParams,
                           j: int, grid: ThetaGrid) -> float:
    """Largest Frobenius norm of ``Z_f K(j) - Z_f`` over the grid."""
    f.require_in(S)
    Z = zak_symbol(f, params, j, grid.nodes)
    P = kappa_projection(kappa_set(S, params, j), params.p).matrix
    dev = np.linalg.norm(Z @ P - Z, axis=(1, 2))
    return float(dev.max()) if dev.size else 0.0


def rank_shift_invariance(g: Sequence[FiniteSignal], params: GaborParams, j: int,
                          kprime: int, rprime: int, grid: ThetaGrid,
                          rel_tol: float = DEFAULT_RANK_TOL) -> bool:
    """Compare ranks of ``Z_g`` at ``j`` and ``j + k'M + r'N`` node by node."""
    if not (0 <= kprime < params.p and 0 <= rprime < params.q):
        raise ValueError("shift indices out of range")
    shifted = j + kprime * params.M + rprime * params.N
    a = numerical_rank(stacked_symbol(g, params, j, grid.nodes), rel_tol)
    b = numerical_rank(stacked_symbol(g, params, shifted, grid.nodes), rel_tol)
    return bool(np.array_equal(a, b))


def reconstruct(symbols: np.ndarray, params: GaborParams, grid: ThetaGrid,
                atol: float = 1e-12) -> FiniteSignal:
    """Recover the signal whose Zak symbol was sampled on ``grid``.

    ``symbols`` has shape ``(M/q, T, q, p)``: for each base point j in
    [0, M/q) the samples ``Z(j, t/T)``. Each entry is treated as a
    trigonometric polynomial with frequencies in ``[-T//2, T - T//2)`` and its
    Fourier coefficients become the signal values at
    ``j + k*M - r*N + n*p*M``. Coefficients with modulus at most ``atol`` are
    dropped.
    """
    symbols = np.asarray(symbols, dtype=np.complex128)
    expected = (params.m_over_q, grid.T, params.q, params.p)
    if symbols.shape != expected:
        raise ValueError(f"expected symbol array of shape {expected}, got {symbols.shape}")
    T, K = grid.T, params.zak_period
    coeffs = np.fft.fft(symbols, axis=1) / T
    freqs = np.fft.fftfreq(T, d=1.0 / T).astype(np.int64)
    entries = {}
    for j in range(params.m_over_q):
        offs = _offsets(params, j)
        for t, n in enumerate(freqs):
            block = coeffs[j, t]
            for (r, k), c in np.ndenumerate(block):
                if abs(c) > atol:
                    entries[int(offs[r, k]) + int(n) * K] = complex(c)
    return FiniteSignal.from_mapping(entries)
