"""Error-versus-delay curves for the genie-aided and anytime decoders."""

import logging
from collections.abc import Sequence

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from channel.noise import NoiseSource, random_bits
from channel.oracle import ObservationOracle
from decoder.tree_search import genie_suffix_error, ml_window_decode
from models.data_models import ChannelSpec, CurvePoint, ErrorCurve
from models.limits import MAX_ANYTIME_HORIZON, MAX_GENIE_DELAY
from montecarlo.runner import run_chunked
from utils.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)

CONFIDENCE_ALPHA = 0.05


def build_point(d: int, trials: int, errors: int) -> CurvePoint:
    """Empirical rate at one delay with a 95% Wilson score interval."""
    p_hat = errors / trials
    lo, hi = proportion_confint(errors, trials, alpha=CONFIDENCE_ALPHA, method="wilson")
    lo = min(max(float(lo), 0.0), p_hat)
    hi = max(min(float(hi), 1.0), p_hat)
    return CurvePoint(d=d, trials=trials, errors=int(errors), p_hat=p_hat, ci_lo=lo, ci_hi=hi)


def build_curve(delays: Sequence[int], trials: int, errors: Sequence[int]) -> ErrorCurve:
    """Curve from per-delay error counts out of ``trials`` each."""
    return ErrorCurve(points=[build_point(d, trials, int(e)) for d, e in zip(delays, errors)])


def _check_delays(delays: Sequence[int], trials: int) -> list[int]:
    if not delays:
        raise DomainError("At least one delay is required")
    if any(d < 0 for d in delays):
        raise DomainError(f"Delays must be nonnegative, got {list(delays)}")
    if len(set(delays)) != len(delays):
        raise DomainError(f"Delays must not repeat, got {list(delays)}")
    if trials < 1:
        raise DomainError(f"Need at least one trial per delay, got {trials}")
    return sorted(delays)


def run_genie_curve(
    spec: ChannelSpec,
    delays: Sequence[int],
    trials_per_d: int,
    seed: int,
    workers: int = 1,
    bit_index: int = 1,
    noise: NoiseSource | None = None,
) -> ErrorCurve:
    """
    Error rate of the genie-aided suffix decoder at each delay.

    Every trial draws fresh data bits and noise; the same trial serves all
    delays. Bits before ``bit_index`` are revealed to the decoder.

    Raises:
        CapacityError: If a delay exceeds 26
    """
    delays = _check_delays(delays, trials_per_d)
    if delays[-1] > MAX_GENIE_DELAY:
        raise CapacityError(f"Genie delay {delays[-1]} exceeds the cap of {MAX_GENIE_DELAY}")
    horizon = bit_index + delays[-1]
    logger.info(f"Genie curve: eb={spec.eb:.4f}, delays={delays}, {trials_per_d} trials each")

    def task(start: int, stop: int) -> np.ndarray:
        counts = np.zeros(len(delays), dtype=np.int64)
        for trial in range(start, stop):
            oracle = ObservationOracle(seed, trial, spec, random_bits(seed, trial, horizon), noise)
            for j, d in enumerate(delays):
                counts[j] += genie_suffix_error(oracle, d, bit_index)
        return counts

    errors = run_chunked(task, trials_per_d, workers, label="genie trials")
    return build_curve(delays, trials_per_d, errors)


def run_anytime_curve(
    spec: ChannelSpec,
    bit_index: int,
    delays: Sequence[int],
    trials: int,
    seed: int,
    workers: int = 1,
    noise: NoiseSource | None = None,
) -> ErrorCurve:
    """
    Error rate of bit ``bit_index`` under the full anytime decoder.

    For each delay d the whole tree through slot i+d is re-decoded and the
    estimate of bit i compared with the truth.

    Raises:
        CapacityError: If bit_index + max delay exceeds 24
    """
    delays = _check_delays(delays, trials)
    if bit_index < 1:
        raise DomainError(f"Bit index must be at least 1, got {bit_index}")
    horizon = bit_index + delays[-1]
    if horizon > MAX_ANYTIME_HORIZON:
        raise CapacityError(f"Horizon {horizon} exceeds the anytime cap of {MAX_ANYTIME_HORIZON}")
    logger.info(f"Anytime curve: eb={spec.eb:.4f}, bit {bit_index}, delays={delays}, {trials} trials")

    def task(start: int, stop: int) -> np.ndarray:
        counts = np.zeros(len(delays), dtype=np.int64)
        for trial in range(start, stop):
            bits = random_bits(seed, trial, horizon)
            oracle = ObservationOracle(seed, trial, spec, bits, noise)
            for j, d in enumerate(delays):
                decoded = ml_window_decode(oracle, bit_index + d).ml_path
                counts[j] += decoded[bit_index - 1] != bits[bit_index - 1]
        return counts

    errors = run_chunked(task, trials, workers, label="anytime trials")
    return build_curve(delays, trials, errors)
