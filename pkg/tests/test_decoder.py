"""Tests for ML tree decoding, anytime estimates and the genie-aided error."""

import itertools
import math

import numpy as np
import pytest

from channel import ConstantNoise, ObservationOracle, random_bits, table_oracle
from codec import prefix_value
from decoder import tree_search
from decoder import (
    anytime_estimates,
    exhaustive_decode,
    genie_suffix_error,
    ml_window_decode,
    path_metric,
    subtree_best,
)
from models.data_models import ChannelSpec
from utils.errors import CapacityError, DomainError

LN2 = math.log(2.0)
SPEC = ChannelSpec(eb=2 * LN2)


def seeded_oracle(trial, n, spec=SPEC, seed=1234):
    return ObservationOracle(seed, trial, spec, random_bits(seed, trial, n))


def brute_force_genie(oracle, d, i):
    """Enumerate every suffix under the true prefix over slots i..i+d."""
    base = oracle.true_subslot(i - 1)
    leaves = 1 << (d + 1)
    metrics = np.zeros(leaves)
    for j in range(d + 1):
        width = 1 << (j + 1)
        z = oracle.query_block(i + j, base * width, width)
        metrics += np.repeat(z, leaves // width)
    true_bit = oracle.true_bits[i - 1]
    half = leaves // 2
    correct = metrics[true_bit * half:(true_bit + 1) * half].max()
    wrong = metrics[(1 - true_bit) * half:(2 - true_bit) * half].max()
    return bool(wrong >= correct)


class QuaternarySource:
    """Four children per node, all values zero."""

    branching = 4
    horizon = 3

    def true_subslot(self, level):
        return 0

    def query_block(self, level, start, count):
        return np.zeros(count)


class TestPathMetric:
    """Tests for path_metric."""

    def test_true_path_noiseless(self):
        """Zero noise: n·√(2eb) along the true path."""
        bits = (1, 0, 1, 1)
        oracle = ObservationOracle(0, 0, SPEC, bits, noise=ConstantNoise(0.0))
        assert path_metric(bits, oracle) == pytest.approx(4 * SPEC.amplitude)

    def test_diverging_path_noiseless(self):
        """A path leaving the truth at slot j collects (j-1)·√(2eb)."""
        bits = (1, 0, 1, 1, 0)
        oracle = ObservationOracle(0, 0, SPEC, bits, noise=ConstantNoise(0.0))
        for j in range(1, 6):
            other = list(bits)
            other[j - 1] ^= 1
            assert path_metric(other, oracle) == pytest.approx((j - 1) * SPEC.amplitude)

    def test_sum_of_queries(self):
        """The metric adds the individually queried outputs."""
        oracle = seeded_oracle(3, 6)
        bits = (0, 1, 1, 0, 1, 0)
        expected = sum(oracle.query(k, prefix_value(bits[:k])) for k in range(1, 7))
        assert path_metric(bits, oracle) == pytest.approx(expected, abs=1e-12)

    def test_requires_binary_source(self):
        """Bit paths cannot be scored on a source that branches four ways."""
        with pytest.raises(DomainError):
            path_metric((0, 1), QuaternarySource())


class TestWindowDecode:
    """Tests for ml_window_decode and exhaustive_decode."""

    def test_noiseless_recovers_truth(self):
        """Without noise both decoders return the transmitted bits."""
        bits = (0, 1, 1, 0, 1, 0, 0, 1)
        oracle = ObservationOracle(0, 0, SPEC, bits, noise=ConstantNoise(0.0))
        result = ml_window_decode(oracle, 8)
        assert result.ml_path == bits
        assert result.metric == pytest.approx(8 * SPEC.amplitude)
        assert exhaustive_decode(oracle, 8).ml_path == bits

    def test_forced_wrong_bit(self):
        """A larger output in the wrong sub-slot flips the decision."""
        oracle = table_oracle({(1, 0): 0.1, (1, 1): 0.5}, SPEC, (0,))
        result = ml_window_decode(oracle, 1)
        assert result.ml_path == (1,)
        assert result.metric == pytest.approx(0.5)

    def test_tie_goes_to_zero(self):
        """Equal path metrics resolve toward bit 0 at the first difference."""
        table = {(1, 0): 0.5, (1, 1): 0.2, (2, 0): 0.5, (2, 1): 0.5, (2, 2): 0.3, (2, 3): 0.0}
        oracle = table_oracle(table, SPEC, (1, 1))
        for decode in (ml_window_decode, exhaustive_decode):
            result = decode(oracle, 2)
            assert result.ml_path == (0, 0)
            assert result.metric == pytest.approx(1.0)

    def test_matches_exhaustive_on_seeded_trials(self):
        """Tree search and brute force agree exactly on random trials."""
        for trial in range(300):
            n = 1 + trial % 12
            oracle = seeded_oracle(trial, n)
            tree = ml_window_decode(oracle, n)
            brute = exhaustive_decode(oracle, n)
            assert tree.ml_path == brute.ml_path
            assert tree.metric == pytest.approx(brute.metric, abs=1e-12)

    def test_matches_exhaustive_when_recursing(self, monkeypatch):
        """Depth-first recursion above small array sweeps gives the same paths."""
        monkeypatch.setattr(tree_search, "_VECTOR_LEAF_BITS", 3)
        for trial in range(50):
            oracle = seeded_oracle(trial, 10, spec=ChannelSpec(eb=LN2))
            assert ml_window_decode(oracle, 10).ml_path == exhaustive_decode(oracle, 10).ml_path
            assert genie_suffix_error(oracle, 6, 2) == brute_force_genie(oracle, 6, 2)

    def test_metric_argmax_is_likelihood_argmax(self):
        """Maximising the metric maximises -‖y - x‖² over all codewords."""
        n = 4
        for trial in range(20):
            oracle = seeded_oracle(trial, n)
            amplitude = SPEC.amplitude
            levels = [oracle.query_block(k, 0, 1 << k) for k in range(1, n + 1)]
            best, best_score = None, -math.inf
            for bits in itertools.product((0, 1), repeat=n):
                score = 0.0
                for k, y in enumerate(levels, 1):
                    x = np.zeros_like(y)
                    x[prefix_value(bits[:k])] = amplitude
                    score -= float(np.sum((y - x) ** 2))
                if score > best_score:
                    best, best_score = bits, score
            assert ml_window_decode(oracle, n).ml_path == best

    def test_deterministic(self):
        """Re-decoding the same trial gives a bit-identical result."""
        a = ml_window_decode(seeded_oracle(5, 10), 10)
        b = ml_window_decode(seeded_oracle(5, 10), 10)
        assert a == b

    def test_caps(self):
        """Horizons beyond the caps are capacity errors; invalid ones domain errors."""
        oracle = seeded_oracle(0, 30)
        with pytest.raises(CapacityError):
            ml_window_decode(oracle, 29)
        with pytest.raises(CapacityError):
            exhaustive_decode(oracle, 17)
        with pytest.raises(CapacityError):
            anytime_estimates(oracle, 25)
        with pytest.raises(DomainError):
            ml_window_decode(oracle, 0)
        with pytest.raises(DomainError):
            ml_window_decode(seeded_oracle(0, 4), 5)
        with pytest.raises(DomainError):
            exhaustive_decode(QuaternarySource(), 2)


class TestSubtreeBest:
    """Tests for the generic subtree search."""

    def test_value_includes_root(self):
        """A depth-0 subtree is the node's own value."""
        oracle = seeded_oracle(2, 3)
        assert subtree_best(oracle, 2, 3, 0) == (pytest.approx(oracle.query(2, 3)), ())

    def test_virtual_root(self):
        """Level 0 contributes nothing."""
        oracle = seeded_oracle(2, 5)
        value, digits = subtree_best(oracle, 0, 0, 5)
        assert value == pytest.approx(path_metric(digits, oracle), abs=1e-12)


class TestAnytimeEstimates:
    """Tests for anytime_estimates."""

    def test_noiseless(self):
        """Without noise every estimate equals the truth."""
        bits = (1, 1, 0, 1, 0, 0)
        oracle = ObservationOracle(0, 0, SPEC, bits, noise=ConstantNoise(0.0))
        estimates = anytime_estimates(oracle, 6)
        for t in range(1, 7):
            for i in range(1, t + 1):
                assert estimates.estimate(t, i) == bits[i - 1]

    def test_last_row_is_window_decode(self):
        """Row n equals a fresh decode at horizon n."""
        oracle = seeded_oracle(8, 9)
        estimates = anytime_estimates(oracle, 9)
        assert estimates.rows[-1] == ml_window_decode(oracle, 9).ml_path
        assert [len(row) for row in estimates.rows] == list(range(1, 10))


class TestGenieSuffixError:
    """Tests for genie_suffix_error."""

    def test_noiseless_never_errs(self):
        """Signal dominates without noise."""
        oracle = ObservationOracle(0, 0, SPEC, (0, 1, 1, 0), noise=ConstantNoise(0.0))
        for d in range(3):
            assert genie_suffix_error(oracle, d, 2) is False

    def test_forced_error_single_slot(self):
        """d = 0 with the wrong sub-slot larger is an error."""
        oracle = table_oracle({(1, 0): 0.2, (1, 1): 0.9}, SPEC, (0,))
        assert genie_suffix_error(oracle, 0, 1) is True

    def test_tie_counts_as_error(self):
        """Equal subtree values are errors."""
        oracle = table_oracle({(1, 0): 0.4, (1, 1): 0.4}, SPEC, (1,))
        assert genie_suffix_error(oracle, 0, 1) is True

    def test_matches_brute_force(self):
        """Agrees with enumerating both subtrees on seeded trials."""
        for trial in range(300):
            d = trial % 9
            i = 1 + trial % 3
            oracle = seeded_oracle(trial, i + d)
            assert genie_suffix_error(oracle, d, i) == brute_force_genie(oracle, d, i)

    def test_caps_and_domain(self):
        """d > 26 is a capacity error; windows past the horizon are domain errors."""
        oracle = seeded_oracle(0, 30)
        with pytest.raises(CapacityError):
            genie_suffix_error(oracle, 27, 1)
        with pytest.raises(DomainError):
            genie_suffix_error(oracle, -1, 1)
        with pytest.raises(DomainError):
            genie_suffix_error(seeded_oracle(0, 4), 4, 1)
