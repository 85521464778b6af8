"""Completeness, optimal frame bounds and classification of multi-window Gabor systems.

Everything here works pointwise on the Zak symbols: for each base point j in
[0, M/q) and each grid node theta, the Hermitian matrix
``H(j, theta) = sum_l Z_{g_l}(j, theta)^* Z_{g_l}(j, theta)`` is restricted to
the coordinates in ``K_j``. Its eigenvalue extrema, scaled by ``M``, are the
optimal frame bounds.
"""

from __future__ import annotations

import os
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .arithmetic import GaborParams
from .periodic_set import PeriodicSet, kappa_set, require_periodic, section_card
from .zak import FiniteSignal, ThetaGrid
from .zak_matrix import DEFAULT_RANK_TOL, numerical_rank, stacked_symbol

DEFAULT_GRID = 256
FRAME_TOL = 1e-8
PARSEVAL_TOL = 1e-9
GRID_AGREEMENT_TOL = 1e-9


def _worker_count() -> int:
    try:
        return max(1, int(os.environ.get("ZAKGABOR_THREADS", "1")))
    except ValueError:
        return 1


def _map_over_j(fn, js):
    js = list(js)
    workers = min(_worker_count(), len(js))
    if workers <= 1:
        return [fn(j) for j in js]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, js))


def _validate(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams) -> None:
    require_periodic(S, params.N)
    if len(g) == 0:
        raise ValueError("empty system")
    for gl in g:
        gl.require_in(S)


@dataclass
class RankRow:
    j: int
    card: int
    min_rank: int
    max_rank: int


@dataclass
class EigenRange:
    j: int
    min_eig: float | None
    max_eig: float | None


@dataclass
class FrameBounds:
    A: float
    B: float
    eigen_range: list[EigenRange]


@dataclass
class FrameVerdict:
    complete: bool
    is_frame: bool
    lower_bound: float
    upper_bound: float
    is_tight: bool
    is_parseval: bool
    is_riesz: bool
    is_onb: bool
    unit_norm_windows: bool
    rank_table: list[RankRow] = field(default_factory=list)
    eigen_range: list[EigenRange] = field(default_factory=list)
    grid_deviation: float | None = None

    def to_json(self) -> dict:
        return asdict(self)


def completeness_test(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                      grid: ThetaGrid | None = None,
                      rel_tol: float = DEFAULT_RANK_TOL) -> tuple[bool, list[RankRow]]:
    """Decide completeness from the ranks of the stacked Zak symbol.

    The system is complete iff ``rank Z_g(j, theta) = card K_j`` for almost
    every theta. Entries are trigonometric polynomials, so the rank equals its
    generic value except on a finite set; the generic value is the maximum
    over the grid, which is what gets compared. The minimum is kept in the
    table to expose isolated rank drops.
    """
    _validate(g, S, params)
    grid = grid or ThetaGrid(DEFAULT_GRID)

    def row(j):
        ranks = numerical_rank(stacked_symbol(g, params, j, grid.nodes), rel_tol)
        card = len(kappa_set(S, params, j))
        return RankRow(j, card, int(ranks.min()), int(ranks.max()))

    table = _map_over_j(row, range(params.m_over_q))
    return all(r.max_rank == r.card for r in table), table


def restricted_gram(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                    j: int, thetas) -> np.ndarray:
    """``H(j, theta)`` restricted to rows and columns in ``K_j``; shape ``(T, c, c)``."""
    idx = list(kappa_set(S, params, j).members)
    Z = stacked_symbol(g, params, j, thetas)[:, :, idx]
    return np.conj(np.swapaxes(Z, 1, 2)) @ Z


def frame_bounds(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                 grid: ThetaGrid | None = None) -> FrameBounds:
    """Optimal bounds ``A = M * min eig`` and ``B = M * max eig`` over all j and grid nodes."""
    _validate(g, S, params)
    grid = grid or ThetaGrid(DEFAULT_GRID)

    def extremes(j):
        H = restricted_gram(g, S, params, j, grid.nodes)
        if H.shape[-1] == 0:
            return EigenRange(j, None, None)
        ev = np.linalg.eigvalsh(H)
        return EigenRange(j, float(ev[:, 0].min()), float(ev[:, -1].max()))

    ranges = _map_over_j(extremes, range(params.m_over_q))
    lows = [e.min_eig for e in ranges if e.min_eig is not None]
    if not lows:
        raise ValueError("empty system")
    highs = [e.max_eig for e in ranges if e.max_eig is not None]
    # rounding can push a zero eigenvalue slightly negative
    A = params.M * max(min(lows), 0.0)
    B = params.M * max(max(highs), 0.0)
    return FrameBounds(A, B, ranges)


def necessary_density_check(S: PeriodicSet, params: GaborParams) -> bool:
    """``card(S_N) <= L*M``; without it no window family gives a frame."""
    return section_card(S, params.N) <= params.L * params.M


def classify(A: float, B: float, g: Sequence[FiniteSignal], S: PeriodicSet,
             params: GaborParams, *, complete: bool | None = None,
             frame_tol: float = FRAME_TOL, parseval_tol: float = PARSEVAL_TOL,
             rank_table=None, eigen_range=None) -> FrameVerdict:
    """Turn frame bounds into the frame / tight / Parseval / Riesz / ONB flags.

    ``frame_tol`` is absolute for windows whose largest norm is one and is
    scaled by the largest squared window norm otherwise.
    """
    scale = max((gl.norm_sq() for gl in g), default=0.0)
    is_frame = scale > 0 and A > frame_tol * scale
    if complete is None:
        complete = is_frame
    is_tight = is_frame and abs(B - A) < parseval_tol * max(B, 1.0)
    is_parseval = is_frame and max(abs(A - 1), abs(B - 1)) < parseval_tol
    is_riesz = is_frame and section_card(S, params.N) == params.L * params.M
    # every atom has the norm of its window, and a Parseval Riesz basis is orthonormal
    unit = all(abs(gl.norm() - 1) < parseval_tol for gl in g)
    is_onb = is_parseval and is_riesz and unit
    return FrameVerdict(
        complete=bool(complete), is_frame=bool(is_frame),
        lower_bound=float(A), upper_bound=float(B),
        is_tight=bool(is_tight), is_parseval=bool(is_parseval),
        is_riesz=bool(is_riesz), is_onb=bool(is_onb), unit_norm_windows=bool(unit),
        rank_table=list(rank_table or []), eigen_range=list(eigen_range or []),
    )


def grid_deviation(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                   T: int = DEFAULT_GRID) -> float:
    """Largest change in (A, B) when the grid is refined from T to 2T nodes."""
    a = frame_bounds(g, S, params, ThetaGrid(T))
    b = frame_bounds(g, S, params, ThetaGrid(2 * T))
    return max(abs(a.A - b.A), abs(a.B - b.B))


def analyze_system(g: Sequence[FiniteSignal], S: PeriodicSet, params: GaborParams,
                   grid: ThetaGrid | None = None, *, rank_tol: float = DEFAULT_RANK_TOL,
                   frame_tol: float = FRAME_TOL, parseval_tol: float = PARSEVAL_TOL,
                   check_grid: bool = False) -> FrameVerdict:
    """Run completeness, frame bounds and classification in one pass."""
    if len(g) != params.L:
        raise ValueError(f"expected {params.L} windows, got {len(g)}")
    grid = grid or ThetaGrid(DEFAULT_GRID)
    complete, table = completeness_test(g, S, params, grid, rank_tol)
    fb = frame_bounds(g, S, params, grid)
    verdict = classify(fb.A, fb.B, g, S, params, complete=complete,
                       frame_tol=frame_tol, parseval_tol=parseval_tol,
                       rank_table=table, eigen_range=fb.eigen_range)
    if check_grid:
        verdict.grid_deviation = grid_deviation(g, S, params, grid.T)
    return verdict
