"""Streaming semi-orthogonal encoder."""

from codec.encoder import bits_of, encode_slot, encode_stream, prefix_value, subslot_index, tail_inner_product

__all__ = [
    "bits_of",
    "encode_slot",
    "encode_stream",
    "prefix_value",
    "subslot_index",
    "tail_inner_product",
]
