"""Tests for counter-addressed noise, the observation oracle and DMC sampling."""

import math

import numpy as np
import pytest
from scipy import stats

from channel import (
    ConstantNoise,
    ObservationOracle,
    ScaledNoise,
    addressed_normal,
    addressed_uniform,
    dmc_sample,
    dmc_sample_many,
    load_dmc_spec,
    parse_dmc_text,
    query,
    query_block,
    random_bits,
    table_oracle,
)
from channel.noise import TREE_NOISE
from models.data_models import ChannelSpec
from utils.errors import CapacityError, DomainError

LN2 = math.log(2.0)


class TestAddressedRandomness:
    """Tests for the stateless generators."""

    def test_uniforms_strictly_inside_unit_interval(self):
        """No uniform is exactly 0 or 1."""
        u = addressed_uniform(1, np.arange(200_000, dtype=np.uint64))
        assert u.min() > 0.0
        assert u.max() < 1.0

    def test_same_address_same_value(self):
        """Draws are pure functions of the address."""
        a = addressed_normal(7, TREE_NOISE, 3, 5, np.arange(10, dtype=np.uint64))
        b = addressed_normal(7, TREE_NOISE, 3, 5, np.arange(10, dtype=np.uint64))
        assert np.array_equal(a, b)

    def test_order_independent(self):
        """Evaluating a block or its entries one at a time gives the same numbers."""
        block = addressed_normal(11, TREE_NOISE, 0, 9, np.arange(8, dtype=np.uint64))
        single = [addressed_normal(11, TREE_NOISE, 0, 9, m)[0] for m in range(8)]
        np.testing.assert_allclose(block, single, rtol=1e-14, atol=1e-14)

    def test_seed_changes_stream(self):
        """Different seeds give different draws."""
        a = addressed_normal(1, TREE_NOISE, 0, 1, np.arange(100, dtype=np.uint64))
        b = addressed_normal(2, TREE_NOISE, 0, 1, np.arange(100, dtype=np.uint64))
        assert not np.array_equal(a, b)

    def test_normal_moments_and_ks(self):
        """A million draws look standard normal."""
        z = addressed_normal(20050101, TREE_NOISE, 0, 20, np.arange(1_000_000, dtype=np.uint64))
        assert abs(z.mean()) < 0.004
        assert abs(z.var() - 1.0) < 0.01
        statistic = stats.kstest(z, "norm").statistic
        assert statistic < 1.63 / math.sqrt(len(z))

    def test_neighbours_uncorrelated(self):
        """Adjacent sub-slots are uncorrelated."""
        z = addressed_normal(5, TREE_NOISE, 0, 21, np.arange(1_000_001, dtype=np.uint64))
        assert abs(np.corrcoef(z[:-1], z[1:])[0, 1]) < 0.005

    def test_random_bits_balanced(self):
        """Data bits are close to equiprobable."""
        bits = [b for trial in range(200) for b in random_bits(3, trial, 50)]
        assert abs(np.mean(bits) - 0.5) < 0.03
        assert random_bits(3, 4, 20) == random_bits(3, 4, 20)


class TestObservationOracle:
    """Tests for the matched-filter oracle."""

    def test_noiseless_signal(self):
        """Zero noise: √(2eb) on the true path, 0 elsewhere."""
        spec = ChannelSpec(eb=2 * LN2)
        oracle = ObservationOracle(0, 0, spec, (1, 0, 1), noise=ConstantNoise(0.0))
        assert query(oracle, 3, 5) == pytest.approx(math.sqrt(4 * LN2))
        assert query(oracle, 3, 4) == 0.0
        assert query(oracle, 1, 1) == pytest.approx(spec.amplitude)

    def test_repeatable(self):
        """The same query twice returns the same value."""
        oracle = ObservationOracle(9, 4, ChannelSpec(eb=1.0), (0, 1, 1, 0))
        assert query(oracle, 4, 6) == query(oracle, 4, 6)

    def test_block_matches_single_queries(self):
        """query_block equals individual queries."""
        oracle = ObservationOracle(9, 4, ChannelSpec(eb=1.0), (0, 1, 1, 0))
        block = query_block(oracle, 4, 0, 16)
        np.testing.assert_allclose(block, [oracle.query(4, m) for m in range(16)], rtol=1e-14, atol=1e-14)

    def test_deep_slot_is_lazy(self):
        """Any sub-slot of a 40-deep tree can be queried directly."""
        bits = tuple([1] * 40)
        oracle = ObservationOracle(1, 1, ChannelSpec(eb=1.0), bits, noise=ConstantNoise(0.0))
        assert oracle.query(40, (1 << 40) - 1) == pytest.approx(math.sqrt(2.0))
        assert oracle.query(40, 123456789) == 0.0

    def test_out_of_range_rejected(self):
        """Slots beyond the horizon and sub-slots beyond 2^k are domain errors."""
        oracle = ObservationOracle(0, 0, ChannelSpec(eb=1.0), (0, 1))
        with pytest.raises(DomainError):
            oracle.query(3, 0)
        with pytest.raises(DomainError):
            oracle.query(2, 4)
        with pytest.raises(DomainError):
            oracle.query(0, 0)

    def test_horizon_cap(self):
        """More than 62 slots cannot be indexed."""
        with pytest.raises(CapacityError):
            ObservationOracle(0, 0, ChannelSpec(eb=1.0), [0] * 63)

    def test_scaled_noise(self):
        """Scaling the noise scales the off-path outputs."""
        spec = ChannelSpec(eb=1.0)
        plain = ObservationOracle(3, 1, spec, (0, 0))
        scaled = ObservationOracle(3, 1, spec, (0, 0), noise=ScaledNoise(0.5))
        assert scaled.query(2, 3) == pytest.approx(0.5 * plain.query(2, 3))

    def test_table_oracle(self):
        """Tabulated Z values are returned as given, signal included."""
        spec = ChannelSpec(eb=1.0)
        oracle = table_oracle({(1, 0): 0.1, (1, 1): 0.5}, spec, (0,))
        assert oracle.query(1, 0) == pytest.approx(0.1)
        assert oracle.query(1, 1) == pytest.approx(0.5)


class TestDmc:
    """Tests for the DMC loader and sampler."""

    def test_parse_text(self, toy_dmc_text, toy_dmc):
        """The text format yields the toy channel."""
        assert parse_dmc_text(toy_dmc_text) == toy_dmc

    def test_load_from_file(self, tmp_path, toy_dmc_text):
        """Files are read through the same parser."""
        path = tmp_path / "toy.dmc"
        path.write_text(toy_dmc_text)
        assert load_dmc_spec(path).zero_cost_input == 0

    def test_missing_file_rejected(self, tmp_path):
        """A missing file is a domain error."""
        with pytest.raises(DomainError):
            load_dmc_spec(tmp_path / "absent.dmc")

    def test_malformed_text_rejected(self):
        """Wrong row counts and missing free inputs are domain errors."""
        with pytest.raises(DomainError):
            parse_dmc_text("2 2\n0 1\n1 0\n")
        with pytest.raises(DomainError):
            parse_dmc_text("2 2\n1 1\n1 0\n0 1\n")

    def test_degenerate_row(self, noiseless_dmc):
        """A deterministic row always gives its output."""
        assert all(dmc_sample(noiseless_dmc, 1, (a,), 1) == 1 for a in range(100))
        assert all(dmc_sample(noiseless_dmc, 1, (a,), "0") == 0 for a in range(100))

    def test_same_address_same_output(self, toy_dmc):
        """Sampling is a pure function of the address."""
        assert dmc_sample(toy_dmc, 5, (1, 2, 3), 1) == dmc_sample(toy_dmc, 5, (1, 2, 3), 1)

    def test_invalid_symbol_rejected(self, toy_dmc):
        """Unknown inputs are domain errors."""
        with pytest.raises(DomainError):
            dmc_sample(toy_dmc, 0, (0,), 2)
        with pytest.raises(DomainError):
            dmc_sample(toy_dmc, 0, (0,), "x")

    def test_frequencies_match_row(self, toy_dmc):
        """A million draws pass a chi-square test against the row."""
        n = 1_000_000
        y = dmc_sample_many(toy_dmc, 42, (np.arange(n, dtype=np.uint64),), np.ones(n, dtype=np.int64))
        observed = np.bincount(y, minlength=2)
        expected = n * toy_dmc.matrix[1]
        assert stats.chisquare(observed, expected).pvalue > 1e-4
