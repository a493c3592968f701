"""Exact and union-bound block error of M-ary orthogonal signaling.

In matched-filter coordinates the transmitted message's output is
√(2·eb·log2 M) + N and every other output is N', all noises iid N(0, 1).
"""

import logging
import math

import numpy as np
from scipy import integrate
from scipy.special import erfc, log_ndtr

from utils.errors import DomainError, NumericError

logger = logging.getLogger(__name__)

QUAD_TOLERANCE = 1e-10
# Gaussian mass beyond ±10 is below 1e-20.
_TAIL_CUTOFF = 10.0


def gaussian_tail(x: float) -> float:
    """Gaussian Q-function: Q(x) = 0.5 * erfc(x / sqrt(2))."""
    return float(0.5 * erfc(x / np.sqrt(2.0)))


def block_amplitude(messages: int, eb: float) -> float:
    """Signal amplitude √(2·eb·log2 M) of one orthogonal codeword."""
    return math.sqrt(2.0 * eb * math.log2(messages))


def _check_block_args(messages: int, eb: float) -> None:
    if messages < 2:
        raise DomainError(f"Need at least 2 messages, got {messages!r}")
    if not eb > 0:
        raise DomainError(f"eb must be positive, got {eb!r}")


def exact_block_error(messages: int, eb: float) -> float:
    """
    Probability that ML detection of M orthogonal messages errs.

    Evaluates 1 - ∫ φ(z)·Φ(z + a)^{M-1} dz with a = √(2·eb·log2 M). The
    integrand is written as φ(z)·(1 - Φ(z + a)^{M-1}) using log_ndtr/expm1
    so that small error probabilities keep their relative precision.

    Args:
        messages: Number of messages M (>= 2)
        eb: Normalized energy per bit (> 0)

    Returns:
        Block error probability, accurate to 1e-10 absolute

    Raises:
        DomainError: If M < 2 or eb <= 0
        NumericError: If adaptive quadrature does not converge
    """
    _check_block_args(messages, eb)
    a = block_amplitude(messages, eb)
    others = messages - 1

    def integrand(z: float) -> float:
        miss = -math.expm1(others * float(log_ndtr(z + a)))
        return math.exp(-0.5 * z * z) / math.sqrt(2 * math.pi) * miss

    lower, upper = -_TAIL_CUTOFF, _TAIL_CUTOFF + a
    breakpoints = [-a] if lower < -a < upper else None
    result = integrate.quad(
        integrand,
        lower,
        upper,
        epsabs=QUAD_TOLERANCE,
        epsrel=0.0,
        limit=200,
        points=breakpoints,
        full_output=1,
    )
    value, abserr, info = result[0], result[1], result[2]
    if len(result) > 3 or abserr > QUAD_TOLERANCE:
        raise NumericError(
            f"Quadrature did not converge for M={messages}, eb={eb!r}",
            diagnostics={
                "abserr": abserr,
                "evaluations": info.get("neval"),
                "interval": (lower, upper),
                "message": result[3] if len(result) > 3 else None,
            },
        )
    logger.debug(f"exact_block_error(M={messages}, eb={eb}) = {value} (abserr {abserr:.2e})")
    return min(max(value, 0.0), 1.0)


def union_block_bound(messages: int, eb: float) -> float:
    """Union bound (M-1)·Q(√(eb·log2 M)), capped at 1; tight for M = 2."""
    _check_block_args(messages, eb)
    pairwise = gaussian_tail(math.sqrt(eb * math.log2(messages)))
    return min(1.0, (messages - 1) * pairwise)
