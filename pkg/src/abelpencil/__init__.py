"""Exact Gauss-Manin connections, Kodaira-Spencer ranks and certified
monodromy for hyperelliptic pencils y^2 = f(x, t)."""

__version__ = "0.1.0"

from .derham import (
    ConnectionMatrix,
    DeRhamElement,
    HyperellipticPencil,
    all_connection_matrices,
    curvature,
    first_basis_ode,
    gauss_manin_matrix,
    kodaira_spencer_block,
    reduce_form,
    validate_pencil,
)
from .pairing import (
    CupMatrix,
    LaurentSeries,
    cup_matrix,
    expand_at_infinity,
    symplectify,
    transform_connection,
)
from .ranks import (
    EndoDecomposition,
    RankReport,
    endo_decompose,
    first_kind_free,
    first_kind_span_rank,
    ks_directional_rank,
    ks_rank,
    rank_report,
)
from .analytic import (
    IndependenceVerdict,
    MonodromyReport,
    PathPlan,
    algebra_dimension,
    first_kind_independence,
    integrate_connection,
    monodromy,
    plan_loops,
)
from .pencilfile import parse_polynomial, load_pencil_file

__all__ = [
    "ConnectionMatrix",
    "CupMatrix",
    "DeRhamElement",
    "EndoDecomposition",
    "HyperellipticPencil",
    "IndependenceVerdict",
    "LaurentSeries",
    "MonodromyReport",
    "PathPlan",
    "RankReport",
    "algebra_dimension",
    "all_connection_matrices",
    "cup_matrix",
    "curvature",
    "endo_decompose",
    "expand_at_infinity",
    "first_basis_ode",
    "first_kind_free",
    "first_kind_independence",
    "first_kind_span_rank",
    "gauss_manin_matrix",
    "integrate_connection",
    "kodaira_spencer_block",
    "ks_directional_rank",
    "ks_rank",
    "load_pencil_file",
    "monodromy",
    "parse_polynomial",
    "plan_loops",
    "rank_report",
    "reduce_form",
    "symplectify",
    "transform_connection",
    "validate_pencil",
]
