"""Capacity formulas and the rate <-> energy-per-bit conversion.

Every conversion between the time-domain view (R, C_inf in bits per unit
time) and the per-bit view (E_b/N0) goes through this module.
"""

import math

from models.data_models import LN2
from utils.errors import DomainError

LOG2_E = 1.0 / LN2


def capacity_rate(p_over_n0: float) -> float:
    """Infinite-bandwidth capacity C_inf = (P/N0)·log2(e), bits per unit time."""
    if not p_over_n0 >= 0:
        raise DomainError(f"P/N0 must be nonnegative, got {p_over_n0!r}")
    return p_over_n0 * LOG2_E


def rate_to_eb(rate_fraction: float) -> float:
    """Energy per bit eb = ln2 / r for the rate fraction r = R/C_inf.

    r = 1 gives the reliability boundary eb = ln2.
    """
    if not rate_fraction > 0:
        raise DomainError(f"Rate fraction must be positive, got {rate_fraction!r}")
    return LN2 / rate_fraction


def eb_to_rate(eb: float) -> float:
    """Rate fraction r = ln2 / eb; inverse of :func:`rate_to_eb`."""
    if not eb > 0:
        raise DomainError(f"eb must be positive, got {eb!r}")
    return LN2 / eb


def rate_eb_convert(*, rate_fraction: float | None = None, eb: float | None = None) -> float:
    """Convert in whichever direction the keyword names.

    ``rate_eb_convert(rate_fraction=0.5)`` returns eb = 2 ln2;
    ``rate_eb_convert(eb=4*ln2)`` returns r = 0.25.
    """
    if (rate_fraction is None) == (eb is None):
        raise DomainError("Give exactly one of rate_fraction or eb")
    if rate_fraction is not None:
        return rate_to_eb(rate_fraction)
    return eb_to_rate(eb)


def cost_threshold(capacity_per_cost: float) -> float:
    """Smallest cost per bit that can carry one bit: ln2 / C (C in nats per cost unit)."""
    if not capacity_per_cost > 0 or math.isinf(capacity_per_cost):
        raise DomainError(
            f"Capacity per unit cost must be positive and finite, got {capacity_per_cost!r}"
        )
    return LN2 / capacity_per_cost
