"""Monte Carlo baseline: M-ary orthogonal block coding with ML detection."""

import logging

import numpy as np
from statsmodels.stats.proportion import proportion_confint

from channel.noise import BLOCK_MESSAGE, BLOCK_NOISE, addressed_normal, addressed_uniform
from models.data_models import BlockEstimate, ChannelSpec
from models.limits import MAX_BLOCK_MESSAGES
from montecarlo.curves import CONFIDENCE_ALPHA
from montecarlo.runner import run_chunked
from theory.block import block_amplitude, exact_block_error
from utils.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)

# Noise values held in memory at once while detecting a chunk of trials.
_MAX_BATCH_VALUES = 1 << 22


def run_block_baseline(
    M: int,
    spec: ChannelSpec,
    trials: int,
    seed: int,
    workers: int = 1,
    noise_scale: float = 1.0,
) -> BlockEstimate:
    """
    Block-error rate of M orthogonal signals, each carrying eb·log2(M) energy.

    The detector picks the largest matched-filter output; a tie with the
    transmitted message counts as an error. ``noise_scale`` multiplies the
    noise (0 makes the channel noiseless).

    Raises:
        CapacityError: If M > 2^20
    """
    if M < 2:
        raise DomainError(f"Need at least two messages, got {M}")
    if M > MAX_BLOCK_MESSAGES:
        raise CapacityError(f"M = {M} exceeds the cap of {MAX_BLOCK_MESSAGES}")
    if trials < 1:
        raise DomainError(f"Need at least one trial, got {trials}")

    amplitude = block_amplitude(M, spec.eb)
    rows_per_batch = max(1, _MAX_BATCH_VALUES // M)
    columns = np.arange(M, dtype=np.uint64)
    logger.info(f"Block baseline: M={M}, eb={spec.eb:.4f}, {trials} trials")

    def task(start: int, stop: int) -> np.ndarray:
        errors = 0
        for lo in range(start, stop, rows_per_batch):
            trial_ids = np.arange(lo, min(lo + rows_per_batch, stop), dtype=np.uint64)
            sent = np.minimum(
                (addressed_uniform(seed, BLOCK_MESSAGE, trial_ids) * M).astype(np.int64), M - 1
            )
            z = noise_scale * addressed_normal(seed, BLOCK_NOISE, trial_ids[:, None], columns[None, :])
            rows = np.arange(len(trial_ids))
            z_sent = z[rows, sent] + amplitude
            z[rows, sent] = -np.inf
            errors += int(np.count_nonzero(z.max(axis=1) >= z_sent))
        return np.array([errors], dtype=np.int64)

    errors = int(run_chunked(task, trials, workers, label="block trials")[0])
    p_hat = errors / trials
    lo, hi = proportion_confint(errors, trials, alpha=CONFIDENCE_ALPHA, method="wilson")
    return BlockEstimate(
        messages=M,
        eb=spec.eb,
        trials=trials,
        errors=errors,
        p_hat=p_hat,
        ci_lo=min(max(float(lo), 0.0), p_hat),
        ci_hi=max(min(float(hi), 1.0), p_hat),
        exact=exact_block_error(M, spec.eb),
    )
