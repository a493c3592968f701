"""Monte Carlo drivers: error curves, exponent fits, baselines and studies."""

from montecarlo.block_baseline import run_block_baseline
from montecarlo.curves import build_curve, build_point, run_anytime_curve, run_genie_curve
from montecarlo.feedback import earliest_error_age, run_feedback_bandwidth
from montecarlo.fitting import fit_exponent
from montecarlo.runner import run_chunked

__all__ = [
    "build_curve",
    "build_point",
    "earliest_error_age",
    "fit_exponent",
    "run_anytime_curve",
    "run_block_baseline",
    "run_chunked",
    "run_feedback_bandwidth",
    "run_genie_curve",
]
