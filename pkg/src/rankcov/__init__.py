"""Bounds on the minimum size of rank-metric covering codes."""

from rankcov.bounds import (
    BoundResult,
    Limits,
    Method,
    best_bounds,
    construction_upper_bound,
    greedy_upper_bound,
    ilp_best_lower_bound,
    ilp_lower_bound,
    mrd_new_coverage,
    mrd_weight_distribution,
    refined_upper_bound,
    sphere_covering_bound,
)
from rankcov.errors import BudgetExceeded
from rankcov.geometry import (
    ball_intersection,
    intersection_table,
    sphere_intersection,
    union_volume_bound,
)
from rankcov.krawtchouk import krawtchouk, krawtchouk_table
from rankcov.qcombinat import (
    SpaceParams,
    alpha,
    ball_volume,
    floor_log_base_qm,
    gauss_binomial,
    sphere_size,
)

__version__ = "0.1.0"
