"""Orthogonal-signaling error exponents, the delay converse and the prefix bounds.

All exponents are in nats: per unit time in the rate domain, per bit-slot in
the eb domain. The two domains are related by E_eb(ln2·C_inf/R) = E_rate(R)/R.
"""

import math

from models.data_models import LN2, ExponentValue
from utils.errors import DomainError


def exponent_rate(rate: float, c_inf: float) -> ExponentValue:
    """
    Block error exponent of orthogonal signaling as a function of rate.

    Args:
        rate: Data rate R, bits per unit time (R >= 0)
        c_inf: Infinite-bandwidth capacity, same units (> 0)

    Returns:
        ExponentValue in nats per unit time:
        (C/2 - R)·ln2 up to C/4, (√C - √R)²·ln2 up to C, 0 beyond.

    Raises:
        DomainError: If c_inf <= 0 or rate < 0
    """
    if not c_inf > 0:
        raise DomainError(f"c_inf must be positive, got {c_inf!r}")
    if not rate >= 0:
        raise DomainError(f"Rate must be nonnegative, got {rate!r}")

    if rate <= c_inf / 4:
        value = (c_inf / 2 - rate) * LN2
    elif rate < c_inf:
        value = (math.sqrt(c_inf) - math.sqrt(rate)) ** 2 * LN2
    else:
        value = 0.0
    return ExponentValue(value=value, domain="rate")


def exponent_eb(eb: float) -> ExponentValue:
    """
    Error exponent per bit-slot as a function of eb = E_b/N0.

    Args:
        eb: Normalized energy per bit (>= 0)

    Returns:
        ExponentValue in nats per bit-slot:
        (eb/(2 ln2) - 1)·ln2 above 4 ln2, (√(eb/ln2) - 1)²·ln2 on (ln2, 4 ln2],
        0 at or below ln2.

    Raises:
        DomainError: If eb is negative
    """
    if not eb >= 0:
        raise DomainError(f"eb must be nonnegative, got {eb!r}")

    if eb > 4 * LN2:
        value = (eb / (2 * LN2) - 1) * LN2
    elif eb > LN2:
        value = (math.sqrt(eb / LN2) - 1) ** 2 * LN2
    else:
        value = 0.0
    return ExponentValue(value=value, domain="eb")


def converse_exponent(rate: float, c_inf: float) -> ExponentValue:
    """
    Upper bound on the delay exponent of any code without feedback.

    This is the large-delay limit of the attenuated-channel argument:
    (√C - √R)²·ln2. It coincides with :func:`exponent_rate` for
    C/4 < R < C, so there the repeated PPM code is optimal. Below C/4 it
    is strictly larger than the achievable exponent and the true optimum is
    not known.

    Raises:
        DomainError: If rate is not in (0, c_inf)
    """
    if not c_inf > 0:
        raise DomainError(f"c_inf must be positive, got {c_inf!r}")
    if not 0 < rate < c_inf:
        raise DomainError(f"Rate must lie in (0, {c_inf!r}), got {rate!r}")
    return ExponentValue(value=(math.sqrt(c_inf) - math.sqrt(rate)) ** 2 * LN2, domain="rate")


def prefix_constant(tau_times_E: float) -> float:
    """Geometric factor 1/(e^{τE} - 1) turning the suffix constant K into K'."""
    if not tau_times_E > 0:
        raise DomainError(
            f"tau*E must be positive for the prefix series to converge, got {tau_times_E!r}"
        )
    return 1.0 / math.expm1(tau_times_E)


def suffix_bound(K: float, tau_times_E: float, d: int) -> float:
    """Genie-aided bound K·e^{-(d+1)τE} on the error of a bit at delay d."""
    if d < 0:
        raise DomainError(f"Delay must be nonnegative, got {d!r}")
    return K * math.exp(-(d + 1) * tau_times_E)


def prefix_union_bound(K: float, tau_times_E: float, d: int, bit_index: int) -> float:
    """Union over the earliest wrong position: Σ_{j<i} K·e^{-(d+1+j)τE}."""
    if bit_index < 1:
        raise DomainError(f"Bit index must be >= 1, got {bit_index!r}")
    return math.fsum(suffix_bound(K, tau_times_E, d + j) for j in range(bit_index))


def anytime_bound(K: float, tau_times_E: float, d: int) -> float:
    """Position-free bound K'·e^{-dτE} with K' = K·prefix_constant(τE)."""
    if d < 0:
        raise DomainError(f"Delay must be nonnegative, got {d!r}")
    return K * prefix_constant(tau_times_E) * math.exp(-d * tau_times_E)


def feedback_tail_candidates(eb: float) -> dict[str, float]:
    """
    Theoretical slopes for the earliest-error-age tail of the feedback study.

    With E = exponent_eb(eb) per bit-slot, P(a) decays like e^{-aE}. The
    bandwidth used at age a scales like f = 2^{a/2}, so in log2 P against
    log2 f the slope is -2E/ln2. A competing reading gives -E/2. Both are
    reported; neither is asserted.

    Returns:
        Dict with ``ln_slope`` (slope of ln P(a) vs a), ``derived_log2_slope``
        and ``caption_log2_slope``.
    """
    E = exponent_eb(eb).value
    return {
        "ln_slope": -E,
        "derived_log2_slope": -2 * E / LN2,
        "caption_log2_slope": -E / 2,
    }
