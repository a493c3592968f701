"""Lazily evaluated matched-filter outputs of the repeated PPM code.

An ObservationOracle stands for one received waveform: sub-slot m of slot k
produces Z = N(seed, trial, k, m) + √(2·eb)·[m is the true prefix's sub-slot].
Nothing is stored per sub-slot; a slot of 2^40 sub-slots costs no more to
query than a slot of 2.
"""

from collections.abc import Mapping, Sequence

import numpy as np

from channel.noise import CounterNoise, NoiseSource, TableNoise
from codec.encoder import prefix_value
from models.data_models import ChannelSpec
from models.limits import MAX_SLOT
from utils.errors import CapacityError, DomainError


class ObservationOracle:
    """
    Received matched-filter coordinates for one trial.

    Immutable after construction and safe to query from several threads.
    Besides :meth:`query`, it implements the metric-source interface used by
    the tree search: ``branching``, ``horizon``, ``true_subslot(level)`` and
    ``query_block(level, start, count)``.
    """

    branching = 2

    def __init__(
        self,
        seed: int,
        trial: int,
        spec: ChannelSpec,
        true_bits: Sequence[int],
        noise: NoiseSource | None = None,
    ):
        """
        Args:
            seed: 64-bit experiment seed
            trial: Trial number (part of every noise address)
            spec: Channel parameters
            true_bits: Transmitted stream b_1..b_n; n is the oracle horizon
            noise: Noise function; defaults to addressed standard normals
        """
        if len(true_bits) == 0:
            raise DomainError("An oracle needs at least one transmitted bit")
        if len(true_bits) > MAX_SLOT:
            raise CapacityError(f"Horizon {len(true_bits)} exceeds the maximum of {MAX_SLOT}")
        self.seed = seed
        self.trial = trial
        self.spec = spec
        self.true_bits = tuple(int(b) for b in true_bits)
        self.noise = noise if noise is not None else CounterNoise()
        self._amplitude = spec.amplitude
        # _true_path[k] is the transmitted sub-slot of slot k; level 0 is the root.
        self._true_path = tuple(prefix_value(self.true_bits[:k]) for k in range(len(self.true_bits) + 1))

    @property
    def horizon(self) -> int:
        return len(self.true_bits)

    def true_subslot(self, level: int) -> int:
        """Sub-slot that carries the signal in slot ``level`` (0 for the root)."""
        return self._true_path[level]

    def query_block(self, level: int, start: int, count: int) -> np.ndarray:
        """Z for sub-slots start..start+count-1 of slot ``level``."""
        if not 1 <= level <= self.horizon:
            raise DomainError(f"Slot {level} outside 1..{self.horizon}")
        if start < 0 or count < 1 or start + count > (1 << level):
            raise DomainError(
                f"Sub-slots [{start}, {start + count}) outside [0, {1 << level}) for slot {level}"
            )
        subslots = np.arange(start, start + count, dtype=np.uint64)
        z = np.array(self.noise(self.seed, self.trial, level, subslots), dtype=np.float64)
        true_m = self._true_path[level]
        if start <= true_m < start + count:
            z[true_m - start] += self._amplitude
        return z

    def query(self, slot: int, subslot: int) -> float:
        """Z of a single sub-slot."""
        return float(self.query_block(slot, subslot, 1)[0])

    def __repr__(self) -> str:
        return (
            f"ObservationOracle(seed={self.seed}, trial={self.trial}, eb={self.spec.eb!r}, "
            f"horizon={self.horizon}, noise={self.noise!r})"
        )


def query(oracle: ObservationOracle, k: int, m: int) -> float:
    """Matched-filter output of sub-slot m of slot k."""
    return oracle.query(k, m)


def query_block(oracle: ObservationOracle, k: int, start: int, count: int) -> np.ndarray:
    """Matched-filter outputs of ``count`` consecutive sub-slots of slot k."""
    return oracle.query_block(k, start, count)


def table_oracle(
    z_values: Mapping[tuple[int, int], float],
    spec: ChannelSpec,
    true_bits: Sequence[int],
    default_noise: float = 0.0,
) -> ObservationOracle:
    """
    Oracle whose Z equals ``z_values[(k, m)]`` wherever given.

    Unlisted sub-slots get ``default_noise`` plus the usual signal. Used to
    force specific decoder decisions in tests.
    """
    oracle = ObservationOracle(seed=0, trial=0, spec=spec, true_bits=true_bits)
    table = {}
    for (k, m), z in z_values.items():
        signal = spec.amplitude if oracle.true_subslot(k) == m else 0.0
        table[(k, m)] = z - signal
    return ObservationOracle(
        seed=0,
        trial=0,
        spec=spec,
        true_bits=true_bits,
        noise=TableNoise(table, default=default_noise),
    )
