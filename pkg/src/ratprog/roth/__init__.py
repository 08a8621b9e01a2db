from .counting import (
    CharsumCount,
    StratumCounts,
    charsum_count_details,
    count_points,
    count_points_brute,
    count_points_charsum,
    count_points_staged,
    diagonal_lower_bound,
    exp_sum_table,
    stratify_points,
    variety_size,
)
from .equations import RothEquations, specialize_equations

__all__ = [
    "CharsumCount",
    "RothEquations",
    "StratumCounts",
    "charsum_count_details",
    "count_points",
    "count_points_brute",
    "count_points_charsum",
    "count_points_staged",
    "diagonal_lower_bound",
    "exp_sum_table",
    "specialize_equations",
    "stratify_points",
    "variety_size",
]
