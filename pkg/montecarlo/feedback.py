"""How far back the anytime decoder's tentative decisions are wrong.

At every time t the decoder re-estimates bits 1..t. If the earliest wrong
estimate is bit i, a feedback link would have to reach back a = t - i + 1
slots to repair it. The histogram of a over all (trial, t) pairs measures
the feedback bandwidth an adaptive scheme would need.
"""

import logging

import numpy as np

from channel.noise import NoiseSource, random_bits
from channel.oracle import ObservationOracle
from decoder.tree_search import anytime_estimates
from models.data_models import LN2, ChannelSpec, ErrorCurve, FeedbackHistogram
from models.limits import MAX_ANYTIME_HORIZON
from montecarlo.curves import build_curve, build_point
from montecarlo.fitting import fit_exponent
from montecarlo.runner import run_chunked
from theory.exponents import feedback_tail_candidates
from utils.errors import CapacityError, DomainError, InsufficientDataError

logger = logging.getLogger(__name__)


def earliest_error_age(truth: tuple[int, ...], estimate: tuple[int, ...]) -> int:
    """t - i + 1 for the first wrong bit i of a length-t estimate, or 0."""
    for i, (b, e) in enumerate(zip(truth, estimate), 1):
        if b != e:
            return len(estimate) - i + 1
    return 0


def run_feedback_bandwidth(
    spec: ChannelSpec,
    stream_length: int,
    trials: int,
    seed: int,
    workers: int = 1,
    noise: NoiseSource | None = None,
) -> FeedbackHistogram:
    """
    Earliest-error-age histogram of the anytime decoder over ``stream_length`` slots.

    The tail of ln P(a) for a >= 1 is fitted by weighted least squares and
    reported next to the theoretical slope candidates; the log2-frequency
    slope is twice the ln-slope divided by ln2. A second fit uses P(a)
    normalised by the (trial, t) pairs with t >= a, which removes the
    steepening caused by the finite stream.

    Raises:
        CapacityError: If stream_length exceeds 24
    """
    if stream_length < 1:
        raise DomainError(f"Stream length must be at least 1, got {stream_length}")
    if stream_length > MAX_ANYTIME_HORIZON:
        raise CapacityError(f"Stream length {stream_length} exceeds the cap of {MAX_ANYTIME_HORIZON}")
    if trials < 1:
        raise DomainError(f"Need at least one trial, got {trials}")
    logger.info(f"Feedback study: eb={spec.eb:.4f}, n={stream_length}, {trials} trials")

    def task(start: int, stop: int) -> np.ndarray:
        counts = np.zeros(stream_length + 1, dtype=np.int64)
        for trial in range(start, stop):
            bits = random_bits(seed, trial, stream_length)
            oracle = ObservationOracle(seed, trial, spec, bits, noise)
            estimates = anytime_estimates(oracle, stream_length)
            for t, row in enumerate(estimates.rows, 1):
                counts[earliest_error_age(bits[:t], row)] += 1
        return counts

    counts = run_chunked(task, trials, workers, label="feedback trials")
    observations = trials * stream_length
    probabilities = [float(c) / observations for c in counts]
    # (trial, t) pairs with t >= a; age 0 is possible at every t.
    eligible = [trials * stream_length] + [
        trials * (stream_length - a + 1) for a in range(1, stream_length + 1)
    ]
    eligible_probabilities = [float(c) / e for c, e in zip(counts, eligible)]

    ages = list(range(1, stream_length + 1))
    tail_slope, tail_stderr = _tail_fit(
        build_curve(ages, observations, counts[1:]), "tail"
    )
    eligible_slope, eligible_stderr = _tail_fit(
        ErrorCurve(points=[build_point(a, eligible[a], int(counts[a])) for a in ages]), "eligible tail"
    )
    log2_slope = None if tail_slope is None else 2.0 * tail_slope / LN2

    return FeedbackHistogram(
        stream_length=stream_length,
        trials=trials,
        counts=[int(c) for c in counts],
        probabilities=probabilities,
        tail_slope=tail_slope,
        tail_stderr=tail_stderr,
        log2_frequency_slope=log2_slope,
        eligible_probabilities=eligible_probabilities,
        eligible_tail_slope=eligible_slope,
        eligible_tail_stderr=eligible_stderr,
        candidates=feedback_tail_candidates(spec.eb),
    )


def _tail_fit(curve: ErrorCurve, what: str) -> tuple[float | None, float | None]:
    """Slope of ln P(a) against a (negative for a decaying tail) and its stderr."""
    try:
        fit = fit_exponent(curve)
    except InsufficientDataError as e:
        logger.warning(f"No {what} fit: {e}")
        return None, None
    return -fit.slope, fit.stderr
