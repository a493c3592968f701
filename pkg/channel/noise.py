"""Counter-addressed randomness and the noise sources of the simulated channel.

Every random quantity in a simulation is a pure function of (seed, address):
no generator state is carried between draws, so any sub-slot of a 2^k-wide
slot can be evaluated on its own, in any order, on any worker.

Algorithm (fixed; changing it changes every published number):
  h = mix(seed + γ); for each address word c: h = mix(h XOR mix(c + γ))
with ``mix`` the SplitMix64 finaliser and γ = 0x9E3779B97F4A7C15, all in
wrapping 64-bit arithmetic. A uniform is ((h >> 11) + 0.5)·2^-53, strictly
inside (0, 1). A standard normal is Box-Muller on two uniforms addressed by
the same words plus a trailing 0 and 1: √(-2 ln u0)·cos(2π u1).
"""

from collections.abc import Mapping
from typing import Protocol

import numpy as np

_MASK64 = (1 << 64) - 1
_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)
_SHIFT_11 = np.uint64(11)
_SHIFT_27 = np.uint64(27)
_SHIFT_30 = np.uint64(30)
_SHIFT_31 = np.uint64(31)
_SHIFT_63 = np.uint64(63)
_TWO_POW_MINUS_53 = 2.0 ** -53

# Address domain tags keep the independent random streams apart.
TREE_NOISE = 1
DATA_BITS = 2
BLOCK_NOISE = 3
BLOCK_MESSAGE = 4
DMC_OUTPUT = 5


def _as_words(value) -> np.ndarray:
    if isinstance(value, (int, np.integer)):
        return np.atleast_1d(np.uint64(int(value) & _MASK64))
    arr = np.asarray(value)
    if arr.dtype.kind not in "iub":
        raise TypeError(f"Address words must be integers, got dtype {arr.dtype}")
    return arr.astype(np.uint64)


def _mix(x: np.ndarray) -> np.ndarray:
    x = x ^ (x >> _SHIFT_30)
    x = x * _MUL1
    x = x ^ (x >> _SHIFT_27)
    x = x * _MUL2
    return x ^ (x >> _SHIFT_31)


def address_hash(seed: int, *address) -> np.ndarray:
    """64-bit hash of (seed, *address); address words may be broadcastable arrays."""
    with np.errstate(over="ignore"):
        h = _mix(_as_words(seed) + _GAMMA)
        for word in address:
            h = _mix(h ^ _mix(_as_words(word) + _GAMMA))
    return h


def addressed_uniform(seed: int, *address) -> np.ndarray:
    """Uniform draws in (0, 1), one per broadcast address."""
    h = address_hash(seed, *address)
    return ((h >> _SHIFT_11).astype(np.float64) + 0.5) * _TWO_POW_MINUS_53


def addressed_normal(seed: int, *address) -> np.ndarray:
    """Standard normal draws, one per broadcast address."""
    u0 = addressed_uniform(seed, *address, 0)
    u1 = addressed_uniform(seed, *address, 1)
    return np.sqrt(-2.0 * np.log(u0)) * np.cos(2.0 * np.pi * u1)


def random_bits(seed: int, trial: int, n: int) -> tuple[int, ...]:
    """n equiprobable data bits for one trial, read from the top hash bit."""
    h = address_hash(seed, DATA_BITS, trial, np.arange(n, dtype=np.uint64))
    return tuple(int(b) for b in (h >> _SHIFT_63))


class NoiseSource(Protocol):
    """Noise N(seed, trial, k, m) for a vector of sub-slots m of slot k."""

    def __call__(self, seed: int, trial: int, slot: int, subslots: np.ndarray) -> np.ndarray: ...


class CounterNoise:
    """The default channel noise: addressed iid standard normals."""

    def __call__(self, seed: int, trial: int, slot: int, subslots: np.ndarray) -> np.ndarray:
        return addressed_normal(seed, TREE_NOISE, trial, slot, subslots)

    def __repr__(self) -> str:
        return "CounterNoise()"


class ConstantNoise:
    """Test hook: the same noise value everywhere (0.0 gives a noiseless channel)."""

    def __init__(self, value: float = 0.0):
        self.value = float(value)

    def __call__(self, seed: int, trial: int, slot: int, subslots: np.ndarray) -> np.ndarray:
        return np.full(np.shape(subslots), self.value, dtype=np.float64)

    def __repr__(self) -> str:
        return f"ConstantNoise({self.value!r})"


class TableNoise:
    """Test hook: noise looked up by (slot, subslot), ``default`` elsewhere."""

    def __init__(self, table: Mapping[tuple[int, int], float], default: float = 0.0):
        self.table = dict(table)
        self.default = float(default)

    def __call__(self, seed: int, trial: int, slot: int, subslots: np.ndarray) -> np.ndarray:
        return np.array(
            [self.table.get((slot, int(m)), self.default) for m in np.ravel(subslots)],
            dtype=np.float64,
        ).reshape(np.shape(subslots))

    def __repr__(self) -> str:
        return f"TableNoise({len(self.table)} entries, default={self.default!r})"


class ScaledNoise:
    """Test hook: another source's noise multiplied by ``factor``."""

    def __init__(self, factor: float, base: NoiseSource | None = None):
        self.factor = float(factor)
        self.base = base if base is not None else CounterNoise()

    def __call__(self, seed: int, trial: int, slot: int, subslots: np.ndarray) -> np.ndarray:
        return self.factor * self.base(seed, trial, slot, subslots)

    def __repr__(self) -> str:
        return f"ScaledNoise({self.factor!r}, {self.base!r})"
