"""Brute-force checks built from explicit Gabor atoms, with no Zak transform involved.

Test vectors live on a finite stretch ``S ∩ [-h, h]``. Every atom whose
support meets that stretch is materialized, so the matrices below are exact
compressions of the infinite frame operator: the estimated bounds always lie
inside the true ``[A, B]`` and tighten as the stretch grows.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from .arithmetic import GaborParams
from .periodic_set import PeriodicSet, require_periodic
from .zak import TWO_PI_I, FiniteSignal
from .zak_matrix import DEFAULT_RANK_TOL

DEFAULT_N_MAX = 32


def materialize_atom(g: FiniteSignal, m: int, n: int, M: int, N: int) -> FiniteSignal:
    """``x -> exp(2 pi i m x / M) * g(x - n*N)``."""
    x = g.support + n * N
    return FiniteSignal(x, np.exp(TWO_PI_I * m * (x % M) / M) * g.values)


def atom_matrix(g: Sequence[FiniteSignal], params: GaborParams, coords: np.ndarray) -> np.ndarray:
    """Rows are the atoms touching ``coords``, restricted to ``coords``.

    ``coords`` must be sorted. Row ``a`` holds ``a(x)`` for x in coords, so
    ``conj(C) @ f`` lists the inner products ``<f, a>``.
    """
    M, N = params.M, params.N
    if len(coords) == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    lo, hi = int(coords[0]), int(coords[-1])
    rows = []
    for gl in g:
        if gl.is_zero:
            continue
        s_lo, s_hi = int(gl.support[0]), int(gl.support[-1])
        for n in range(-((s_hi - lo) // N), (hi - s_lo) // N + 1):
            for m in range(M):
                atom = materialize_atom(gl, m, n, M, N)
                pos = np.searchsorted(coords, atom.support)
                pos = np.minimum(pos, len(coords) - 1)
                hit = coords[pos] == atom.support
                if not hit.any():
                    continue
                row = np.zeros(len(coords), dtype=np.complex128)
                row[pos[hit]] = atom.values[hit]
                rows.append(row)
    if not rows:
        return np.zeros((0, len(coords)), dtype=np.complex128)
    return np.array(rows)


def _check(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams, n_max: int) -> None:
    if n_max < 4:
        raise ValueError("truncation too small")
    require_periodic(S, params.N)
    for gl in g:
        gl.require_in(S)


def truncated_frame_bounds(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                           n_max: int = DEFAULT_N_MAX) -> tuple[float, float]:
    """Extreme eigenvalues of the frame operator compressed to ``S ∩ [-n_max*N/2, n_max*N/2]``."""
    _check(g, S, params, n_max)
    h = n_max * params.N // 2
    coords = S.members_in(-h, h)
    C = atom_matrix(g, params, coords)
    if C.shape[0] == 0:
        return 0.0, 0.0
    G = C.T @ C.conj()
    ev = np.linalg.eigvalsh((G + G.conj().T) / 2)
    return max(float(ev[0]), 0.0), max(float(ev[-1]), 0.0)


def truncated_completeness(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                           n_max: int = DEFAULT_N_MAX,
                           rel_tol: float = DEFAULT_RANK_TOL) -> bool:
    """Do the atoms leave no nonzero vector on ``S ∩ [-n_max*N, n_max*N]`` orthogonal to them?

    A vector orthogonal to every restricted atom is a finitely supported
    signal orthogonal to the whole system, which certifies incompleteness.
    """
    _check(g, S, params, n_max)
    h = n_max * params.N
    coords = S.members_in(-h, h)
    C = atom_matrix(g, params, coords)
    if C.shape[0] == 0:
        return False
    sv = np.linalg.svd(C, compute_uv=False)
    rank = int(np.sum(sv > rel_tol * sv[0])) if sv[0] > 0 else 0
    return rank == len(coords)
