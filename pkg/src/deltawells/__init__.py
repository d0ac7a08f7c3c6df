"""Resonant states (bound, anti-bound, normal) and quantum transmission of
double and triple Dirac-delta quantum well/barrier structures."""

__version__ = "0.1.0"

from .asymptotics import (
    count_bound_states,
    double_large_alpha,
    double_small,
    triple_even_small,
    triple_large_alpha,
)
from .potentials import DeltaPotential, DimensionlessParams, reduced_q, reduced_s
from .rootfinder import (
    ConsistencyError,
    SearchWindow,
    SweepCurve,
    SweepEvent,
    find_all_states,
    newton_solve,
    seed_grid,
    sweep_branch,
)
from .secular import (
    PoleError,
    SecularEquation,
    alpha_of_s_double,
    alpha_of_s_triple,
    beta_a_of_s,
    epsilon_of_s,
    residual_double,
    residual_triple_general,
    residual_triple_symmetric_even,
)
from .states import Parity, ResonantState, StateClass, classify
from .transmission import (
    TransmissionSpectrum,
    greens_function_ml,
    reflection_transfer,
    residue_double,
    select_states,
    t_analytic_double,
    t_mittag_leffler,
    t_ml_from_waves,
    transfer_matrix,
    transmission_transfer,
)
from .wavefunction import (
    NormalizationError,
    NotARootError,
    PiecewiseWave,
    build_wave_double,
    build_wave_triple,
    normalize_double,
    orthonormality_matrix,
    siegert_product,
)

__all__ = [
    "__version__",
    "DeltaPotential",
    "DimensionlessParams",
    "reduced_q",
    "reduced_s",
    "StateClass",
    "Parity",
    "ResonantState",
    "classify",
    "PoleError",
    "SecularEquation",
    "residual_double",
    "residual_triple_symmetric_even",
    "residual_triple_general",
    "alpha_of_s_double",
    "alpha_of_s_triple",
    "epsilon_of_s",
    "beta_a_of_s",
    "double_large_alpha",
    "double_small",
    "triple_even_small",
    "triple_large_alpha",
    "count_bound_states",
    "SearchWindow",
    "SweepCurve",
    "SweepEvent",
    "ConsistencyError",
    "seed_grid",
    "newton_solve",
    "find_all_states",
    "sweep_branch",
    "PiecewiseWave",
    "NotARootError",
    "NormalizationError",
    "build_wave_double",
    "build_wave_triple",
    "normalize_double",
    "siegert_product",
    "orthonormality_matrix",
    "TransmissionSpectrum",
    "t_analytic_double",
    "transfer_matrix",
    "transmission_transfer",
    "reflection_transfer",
    "residue_double",
    "select_states",
    "t_mittag_leffler",
    "greens_function_ml",
    "t_ml_from_waves",
]
