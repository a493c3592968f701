"""Repeated (refined) pulse position modulation encoder.

Slot k of the stream is split into 2^k sub-slots, one per k-bit prefix. The
encoder spends the whole slot energy eb in the sub-slot named by the prefix
received so far, so every slot carries exactly eb whatever the data, and two
streams that disagree at bit i never share a sub-slot from slot i onward.
"""

from collections.abc import Iterable, Iterator, Sequence

from models.data_models import ChannelSpec, PathIndex, Pulse
from models.limits import MAX_SLOT
from utils.errors import CapacityError, DomainError


def prefix_value(bits: Sequence[int]) -> int:
    """Sub-slot number of a prefix: its bits read MSB-first."""
    m = 0
    for b in bits:
        if b not in (0, 1):
            raise DomainError(f"Bits must be 0 or 1, got {b!r}")
        m = 2 * m + b
    return m


def subslot_index(bits: Sequence[int]) -> PathIndex:
    """
    Locate the sub-slot that carries the pulse for a bit prefix.

    Args:
        bits: Prefix b_1..b_k, nonempty, at most 62 bits

    Returns:
        PathIndex(slot=k, subslot=m) with m the MSB-first value of the prefix

    Raises:
        DomainError: If bits is empty or contains a non-bit
        CapacityError: If k > 62 (the sub-slot would not fit a 64-bit index)
    """
    if len(bits) == 0:
        raise DomainError("Cannot index an empty prefix")
    if len(bits) > MAX_SLOT:
        raise CapacityError(f"Slot {len(bits)} exceeds the maximum of {MAX_SLOT}")
    return PathIndex(slot=len(bits), subslot=prefix_value(bits))


def bits_of(path: PathIndex) -> tuple[int, ...]:
    """Recover the prefix named by a PathIndex."""
    return tuple((path.subslot >> (path.slot - 1 - j)) & 1 for j in range(path.slot))


def encode_slot(bits: Sequence[int], spec: ChannelSpec) -> Pulse:
    """Pulse emitted in slot len(bits): energy eb at the prefix's sub-slot."""
    return Pulse(path=subslot_index(bits), energy=spec.eb)


def encode_stream(bits: Iterable[int], spec: ChannelSpec) -> Iterator[Pulse]:
    """Encode a stream bit by bit, yielding one pulse per slot as bits arrive."""
    m = 0
    for k, b in enumerate(bits, 1):
        if b not in (0, 1):
            raise DomainError(f"Bits must be 0 or 1, got {b!r}")
        if k > MAX_SLOT:
            raise CapacityError(f"Slot {k} exceeds the maximum of {MAX_SLOT}")
        m = 2 * m + b
        yield Pulse(path=PathIndex(slot=k, subslot=m), energy=spec.eb)


def tail_inner_product(
    bits_a: Sequence[int],
    bits_b: Sequence[int],
    from_slot: int,
    spec: ChannelSpec,
) -> float:
    """
    Inner product of two codewords restricted to slots from_slot..n.

    Each slot contributes eb when both streams pulse in the same sub-slot,
    which happens exactly while their prefixes agree. So the result is 0
    whenever the streams differ at some position <= from_slot.

    Raises:
        DomainError: On length mismatch or from_slot outside 1..n
    """
    n = len(bits_a)
    if len(bits_b) != n:
        raise DomainError(f"Length mismatch: {n} vs {len(bits_b)}")
    if not 1 <= from_slot <= n:
        raise DomainError(f"from_slot must lie in 1..{n}, got {from_slot!r}")

    total = 0.0
    ma = mb = 0
    for k in range(1, n + 1):
        ma = 2 * ma + bits_a[k - 1]
        mb = 2 * mb + bits_b[k - 1]
        if ma != mb:
            break
        if k >= from_slot:
            total += spec.eb
    return total
