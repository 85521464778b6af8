"""Multi-window Gabor systems on periodic subsets of Z, analysed through the discrete Zak transform."""

from .admissibility import (
    admits_complete,
    admits_frame,
    admits_riesz_onb,
    cardinality_relations,
)
from .arithmetic import GaborParams, decompose_k_l, decompose_time_freq, delta_set, derive_params
from .construction import (
    InadmissibleError,
    WindowConstruction,
    construct_windows,
    make_parseval_windows,
    make_tight_windows,
    verify_construction,
)
from .frame_analysis import (
    FrameVerdict,
    analyze_system,
    classify,
    completeness_test,
    frame_bounds,
    necessary_density_check,
)
from .oracle import materialize_atom, truncated_completeness, truncated_frame_bounds
from .periodic_set import (
    PeriodicSet,
    is_congruent_to_subset,
    kappa_projection,
    kappa_set,
    make_periodic_set,
    rescale_period,
    section_card,
)
from .zak import FiniteSignal, SupportError, ThetaGrid, zak_eval
from .zak_matrix import ZakMatrix, build_single, build_stacked, numerical_rank

__version__ = "0.1.0"
