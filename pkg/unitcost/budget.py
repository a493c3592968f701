"""Capacity per unit cost of a DMC and the cost-limited burst encoder.

An input x costs c(x) per channel use and one input x0 is free. The
capacity per unit cost is max over costly x of D(P(·|x) ‖ P(·|x0)) / c(x).
The burst encoder collects L data bits, then spends up to L·eb_cost on
costly inputs placed in the one active sub-slot of the burst tree; every
other position carries x0 for free.
"""

import logging
import math

import numpy as np
from scipy.special import rel_entr

from models.data_models import BurstEmission, BurstPlan, CostBudget, DmcSpec
from utils.errors import DomainError, EmptyPlanError, InfiniteDivergenceError

logger = logging.getLogger(__name__)

# Slack when counting how many copies of an input fit the remaining budget.
_BUDGET_EPS = 1e-9


def divergences(dmc: DmcSpec) -> np.ndarray:
    """D(P(·|x) ‖ P(·|x0)) for every input x, in nats (may be +inf)."""
    P = dmc.matrix
    return rel_entr(P, P[dmc.zero_cost_input][None, :]).sum(axis=1)


def capacity_per_unit_cost(dmc: DmcSpec) -> float:
    """
    Nats per unit cost: max over inputs with positive cost of divergence / cost.

    Raises:
        DomainError: If no input has positive cost, or a free input other
            than x0 has positive divergence (unbounded capacity)
        InfiniteDivergenceError: If a costly input reaches an output x0 never
            produces
    """
    D = divergences(dmc)
    costly = [x for x, c in enumerate(dmc.cost) if c > 0]
    if not costly:
        raise DomainError("No input has positive cost")
    for x, c in enumerate(dmc.cost):
        if c == 0 and x != dmc.zero_cost_input and D[x] > 0:
            raise DomainError(f"Free input {x} has positive divergence; capacity per cost is unbounded")
    infinite = [x for x in costly if not math.isfinite(D[x])]
    if infinite:
        raise InfiniteDivergenceError(
            "Divergence from the zero-cost row is infinite",
            {"inputs": infinite},
        )
    return max(D[x] / dmc.cost[x] for x in costly)


def plan_burst(dmc: DmcSpec, L: int, eb_cost: float) -> BurstPlan:
    """
    Choose the inputs sent in a burst's active sub-slot.

    Greedy by divergence per cost: as many copies of the best ratio as fit
    the budget L·eb_cost, then the next best in the remaining budget. Ties
    go to the lower input index. Optimal whenever all costs are equal.

    Raises:
        EmptyPlanError: If no input with positive divergence is affordable
    """
    if L < 1:
        raise DomainError(f"Burst length must be at least 1, got {L}")
    if not eb_cost > 0:
        raise DomainError(f"Cost per bit must be positive, got {eb_cost!r}")

    D = divergences(dmc)
    candidates = [
        x for x, c in enumerate(dmc.cost)
        if x != dmc.zero_cost_input and c > 0 and D[x] > 0
    ]
    candidates.sort(key=lambda x: (-(D[x] / dmc.cost[x]), x))

    budget = L * eb_cost
    remaining = budget
    symbols: list[int] = []
    for x in candidates:
        copies = math.floor(remaining / dmc.cost[x] + _BUDGET_EPS)
        if copies > 0:
            symbols.extend([x] * copies)
            remaining -= copies * dmc.cost[x]

    if not symbols:
        cheapest = min((dmc.cost[x] for x in candidates), default=None)
        raise EmptyPlanError(
            f"Burst budget {budget!r} affords no informative input (cheapest costs {cheapest!r})"
        )

    total_cost = min(math.fsum(dmc.cost[x] for x in symbols), budget)
    plan = BurstPlan(
        L=L,
        eb_cost=eb_cost,
        symbol_multiset=tuple(symbols),
        total_cost=total_cost,
        total_divergence=float(sum(D[x] for x in symbols)),
    )
    logger.debug(f"Burst plan: {plan}")
    return plan


class BurstEncoder:
    """
    Streaming unit-cost encoder.

    Bits arrive one at a time and accrue eb_cost each. Every L bits the
    encoder emits one burst: the sub-slot of the burst tree selected by all
    bits so far (base 2^L, first burst most significant) and the planned
    inputs, charged against the running budget.
    """

    def __init__(self, dmc: DmcSpec, L: int, eb_cost: float, plan: BurstPlan | None = None):
        if plan is not None and (plan.L != L or plan.eb_cost != eb_cost):
            raise DomainError(f"Plan for L={plan.L}, eb_cost={plan.eb_cost} does not match L={L}, eb_cost={eb_cost}")
        self.dmc = dmc
        self.plan = plan if plan is not None else plan_burst(dmc, L, eb_cost)
        self.budget = CostBudget(eb_cost=eb_cost)
        self._pending: list[int] = []
        self._slot = 0
        self._subslot = 0

    @property
    def L(self) -> int:
        return self.plan.L

    def push(self, bit: int) -> BurstEmission | None:
        """Accept one data bit; return the burst it completes, if any."""
        if bit not in (0, 1):
            raise DomainError(f"Bits must be 0 or 1, got {bit!r}")
        self.budget.receive_bit()
        self._pending.append(bit)
        if len(self._pending) < self.L:
            return None

        digit = 0
        for b in self._pending:
            digit = 2 * digit + b
        self._pending.clear()
        self._slot += 1
        self._subslot = (self._subslot << self.L) | digit
        self.budget.spend(self.plan.total_cost)
        return BurstEmission(slot=self._slot, subslot=self._subslot, symbols=self.plan.symbol_multiset)
