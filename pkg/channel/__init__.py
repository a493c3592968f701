"""Simulated channels: AWGN matched-filter oracle and DMC sampling."""

from channel.dmc import dmc_sample, dmc_sample_many, load_dmc_spec, parse_dmc_text
from channel.noise import (
    ConstantNoise,
    CounterNoise,
    ScaledNoise,
    TableNoise,
    addressed_normal,
    addressed_uniform,
    random_bits,
)
from channel.oracle import ObservationOracle, query, query_block, table_oracle

__all__ = [
    "ConstantNoise",
    "CounterNoise",
    "ObservationOracle",
    "ScaledNoise",
    "TableNoise",
    "addressed_normal",
    "addressed_uniform",
    "dmc_sample",
    "dmc_sample_many",
    "load_dmc_spec",
    "parse_dmc_text",
    "query",
    "query_block",
    "random_bits",
    "table_oracle",
]
