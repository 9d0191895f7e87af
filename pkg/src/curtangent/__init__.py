"""
Rank-truncated CUR, its sampling-induced oblique tangent projector, and
first-order perturbation checks against rank-r SVD truncation.
"""

from .calculus import (
    ExpansionReport,
    cur_first_order_residual,
    cur_frechet_derivative,
    cur_pinv_consequence_check,
    finite_difference_derivative,
    fixed_rank_velocity_residual,
    pinv_derivative,
    svd_first_order_residual,
    truncation_expansion,
)
from .cur import cur, cur_rank_truncated
from .dense import (
    CompactSVD,
    compact_svd,
    fro_norm,
    gaussian_matrix,
    orthonormalize_gaussian,
    pinv,
    pinv_truncated,
    spectral_norm,
    truncate_rank,
)
from .errors import (
    AdmissibilityError,
    ConstructionError,
    CurTangentError,
    DegenerateInputError,
    HypothesisViolationError,
    InvalidInputError,
)
from .experiment import (
    ExperimentConfig,
    ExperimentRecord,
    build_test_problem,
    run_generic_experiment,
    run_structured_experiment,
    run_visibility_experiment,
    write_csv,
)
from .perturb import (
    PerturbationSpec,
    generic_perturbation,
    invisible_perturbation,
    normal_perturbation,
    visible_perturbation,
)
from .plotting import Series, write_svg_loglog
from .sampling import (
    SelectionPair,
    complement_projector_left,
    complement_projector_right,
    intersection,
    is_admissible,
    leverage_scores,
    select_cols,
    select_rows,
    top_k_selection,
)
from .tangent import (
    TangentPoint,
    comparison_gap,
    make_tangent_point,
    normal_project,
    oblique_tangent_project,
    obliqueness,
    orthogonal_tangent_project,
)

__version__ = "0.1.0"
