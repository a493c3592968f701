"""Unit-cost DMC extension: capacity per unit cost and the burst code."""

from unitcost.budget import (
    BurstEncoder,
    capacity_per_unit_cost,
    divergences,
    plan_burst,
)
from unitcost.cost_curve import BurstChannel, run_cost_curve

__all__ = [
    "BurstChannel",
    "BurstEncoder",
    "capacity_per_unit_cost",
    "divergences",
    "plan_burst",
    "run_cost_curve",
]
