"""Exact weighted generalized inverses over complex rational matrices."""
from .exact import (
    DimensionMismatch, GMat, GScalar, NotInvertible, col_space_equal,
    full_rank_factorization, inverse, nilpotency_degree, null_space,
    null_space_equal, rank, row_space_equal,
)
from .ginv import drazin, drazin_index, group_inverse, is_ep, moore_penrose
from .weighted import (
    InconsistencyError, Kind, NotGenWEP, WInverseReport, WPair, classify,
    core_decomposition, ep_projection, gen_w_ep, power_ep_reduction,
    range_condition, w_drazin, w_ep, w_group, w_star_dmp,
)
from .theorems import (
    Certificate, HypothesisFailed, UnknownTheorem, check, check_additivity,
    registered, run_suite,
)
from .gen import Family, GenSpec, UnsupportedDimension, build_corpus, generate, rational_unitary

__version__ = "0.1.0"
