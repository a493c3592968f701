"""ML sequence decoding over the repeated PPM code tree."""

from decoder.tree_search import (
    anytime_estimates,
    exhaustive_decode,
    genie_suffix_error,
    ml_window_decode,
    path_metric,
    subtree_best,
)

__all__ = [
    "anytime_estimates",
    "exhaustive_decode",
    "genie_suffix_error",
    "ml_window_decode",
    "path_metric",
    "subtree_best",
]
