"""Spectral p-norms and p-spectral radii of real r-matrices and hypergraphs."""

from .bounds import (
    BoundsReport,
    bounds_report,
    is_rank_one,
    lower_fiber,
    lower_slice_sum,
    lower_th5,
    regular_value,
    upper_entry_norm,
    upper_hlp,
    upper_main,
    upper_schur,
    upper_th3,
)
from .errors import *  # noqa: F401,F403
from .forms import euler_residual, linear_form, partial_contraction, poly_form, poly_gradient
from .hypergraph import (
    WeightedRGraph,
    adjacency_tensor,
    bound_degree_product,
    bound_neighbor_degree,
    degree,
    degrees,
    gen_all_ones,
    gen_beta_star,
    gen_cycle,
    gen_random,
    gen_star,
    lower_hofmeister,
    partite_balance_check,
    partite_lower,
)
from .io import load_graph, load_tensor, save_graph, save_tensor
from .kernels import BACKEND
from .oracle import OracleResult, closed_form, grid_max_eta, grid_max_norm
from .spectral import (
    EigenKit,
    SolverOptions,
    SpectralResult,
    collatz_wielandt_upper,
    combine_components,
    eigen_residual,
    eta_p,
    eta_p_curve,
    lambda_min_p,
    lambda_p,
    norm_p_curve,
    rho_nonnegative,
    spectral_p_norm,
)
from .structure import (
    Digraph,
    Partition,
    components,
    digraph,
    interval_partition,
    is_r_partite,
    is_weakly_irreducible,
    symmetrant,
)
from .tensor import (
    Tensor,
    all_ones,
    block_diagonal,
    entrywise_norm,
    from_coo,
    is_regular,
    is_symmetric,
    rank_one,
    slice_abs_sum,
    slice_sum,
    to_coo,
    transpose,
)

__version__ = "0.1.0"
