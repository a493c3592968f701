"""Delay-versus-cost experiments for the unit-cost DMC burst code."""

import logging
from collections.abc import Sequence

import numpy as np

from channel.dmc import dmc_sample_many
from channel.noise import random_bits
from decoder.tree_search import genie_suffix_error
from models.data_models import BurstPlan, DmcSpec, ErrorCurve
from models.limits import MAX_BURST_TREE_BITS
from montecarlo.curves import build_curve
from montecarlo.runner import run_chunked
from unitcost.budget import BurstEncoder, plan_burst
from utils.errors import CapacityError, DomainError

logger = logging.getLogger(__name__)


class BurstChannel:
    """
    Received DMC outputs of the burst code for one trial, evaluated lazily.

    Burst s has 2^{L·s} sub-slots, each holding one channel use per planned
    symbol. The node value of a sub-slot is the log-likelihood ratio of its
    outputs under "this sub-slot carried the plan" against "it carried x0",
    so a path's metric is its log-likelihood up to a constant shared by all
    paths. Outputs are addressed by (trial, burst, sub-slot, use).
    """

    def __init__(self, dmc: DmcSpec, plan: BurstPlan, seed: int, trial: int, true_bits: Sequence[int]):
        if len(true_bits) == 0 or len(true_bits) % plan.L:
            raise DomainError(f"Need a positive multiple of {plan.L} bits, got {len(true_bits)}")
        self.dmc = dmc
        self.plan = plan
        self.seed = seed
        self.trial = trial
        self.branching = 1 << plan.L
        self._symbols = np.array(plan.symbol_multiset, dtype=np.int64)
        self._uses = np.arange(len(plan.symbol_multiset), dtype=np.uint64)

        # The transmitter: every burst is charged against the encoder's budget.
        self.encoder = BurstEncoder(dmc, plan.L, plan.eb_cost, plan=plan)
        emissions = [e for e in map(self.encoder.push, true_bits) if e is not None]
        self._true_path = (0,) + tuple(e.subslot for e in emissions)

        P = dmc.matrix
        with np.errstate(divide="ignore", invalid="ignore"):
            llr = np.log(P[self._symbols]) - np.log(P[dmc.zero_cost_input])[None, :]
        # Outputs impossible under both hypotheses never occur.
        self._llr = np.where(np.isnan(llr), 0.0, llr)

    @property
    def horizon(self) -> int:
        return len(self._true_path) - 1

    def true_subslot(self, level: int) -> int:
        return self._true_path[level]

    def outputs_block(self, level: int, start: int, count: int) -> np.ndarray:
        """Outputs (count × uses) of sub-slots start..start+count-1 of burst ``level``."""
        if not 1 <= level <= self.horizon:
            raise DomainError(f"Burst {level} outside 1..{self.horizon}")
        if start < 0 or count < 1 or start + count > self.branching ** level:
            raise DomainError(f"Sub-slots [{start}, {start + count}) outside burst {level}")
        subslots = np.arange(start, start + count, dtype=np.uint64)
        active = subslots == np.uint64(self._true_path[level])
        inputs = np.where(active[:, None], self._symbols[None, :], self.dmc.zero_cost_input)
        return dmc_sample_many(
            self.dmc,
            self.seed,
            (self.trial, level, subslots[:, None], self._uses[None, :]),
            inputs,
        )

    def query_block(self, level: int, start: int, count: int) -> np.ndarray:
        y = self.outputs_block(level, start, count)
        return self._llr[np.arange(len(self._symbols))[None, :], y].sum(axis=1)


def run_cost_curve(
    dmc: DmcSpec,
    eb_cost: float,
    L: int,
    delays: Sequence[int],
    trials: int,
    seed: int,
    workers: int = 1,
) -> ErrorCurve:
    """
    Genie-aided error of the first burst against delay d in bits.

    Delays must be multiples of L; the decoder sees d/L bursts beyond the
    first. Each unit of delay lets eb_cost more cost reach the channel.

    Raises:
        DomainError: If a delay is not a multiple of L
        CapacityError: If max delay + L exceeds 26 bits
        EmptyPlanError: If the burst budget buys no informative input
    """
    if not delays:
        raise DomainError("At least one delay is required")
    delays = sorted(delays)
    if delays[0] < 0 or len(set(delays)) != len(delays):
        raise DomainError(f"Delays must be distinct and nonnegative, got {delays}")
    if any(d % L for d in delays):
        raise DomainError(f"Delays {delays} must be multiples of the burst length {L}")
    if delays[-1] + L > MAX_BURST_TREE_BITS:
        raise CapacityError(f"Delay + burst length exceeds {MAX_BURST_TREE_BITS} bits")
    if trials < 1:
        raise DomainError(f"Need at least one trial, got {trials}")

    plan = plan_burst(dmc, L, eb_cost)
    n_bits = delays[-1] + L
    logger.info(
        f"Cost curve: eb_cost={eb_cost:.4f}, L={L}, plan={list(plan.symbol_multiset)}, "
        f"delays={delays}, {trials} trials"
    )

    def task(start: int, stop: int) -> np.ndarray:
        counts = np.zeros(len(delays), dtype=np.int64)
        for trial in range(start, stop):
            channel = BurstChannel(dmc, plan, seed, trial, random_bits(seed, trial, n_bits))
            for j, d in enumerate(delays):
                counts[j] += genie_suffix_error(channel, d // L, 1)
        return counts

    errors = run_chunked(task, trials, workers, label="cost trials")
    return build_curve(delays, trials, errors)
