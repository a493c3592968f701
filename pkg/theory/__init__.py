"""Closed-form capacities, exponents and bounds: the analytic ground truth."""

from theory.block import exact_block_error, gaussian_tail, union_block_bound
from theory.capacity import capacity_rate, cost_threshold, eb_to_rate, rate_eb_convert, rate_to_eb
from theory.exponents import (
    anytime_bound,
    converse_exponent,
    exponent_eb,
    exponent_rate,
    feedback_tail_candidates,
    prefix_constant,
    prefix_union_bound,
    suffix_bound,
)

__all__ = [
    "anytime_bound",
    "capacity_rate",
    "converse_exponent",
    "cost_threshold",
    "eb_to_rate",
    "exact_block_error",
    "exponent_eb",
    "exponent_rate",
    "feedback_tail_candidates",
    "gaussian_tail",
    "prefix_constant",
    "prefix_union_bound",
    "rate_eb_convert",
    "rate_to_eb",
    "suffix_bound",
    "union_block_bound",
]
