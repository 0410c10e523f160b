"""Tests for branch measures."""

import sys
from pathlib import Path

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import InvalidChain, ZeroVector
from src.events import Partition
from src.hilbert import random_state, random_unitary
from src.measures import (
    born_weights,
    branch_count,
    consecutive_grains,
    count_stability,
    measure_ratio,
)


seeds = st.integers(0, 2 ** 32 - 1)


def random_partition(rng: np.random.Generator, dim: int, n_blocks: int):
    """Blocks of consecutive columns of a random unitary; returns the partition, the unitary and the cuts."""
    cuts = sorted(rng.choice(np.arange(1, dim), size=n_blocks - 1, replace=False)) if n_blocks > 1 else []
    bounds = [0, *cuts, dim]
    u = random_unitary(rng, dim)
    partition = Partition.from_frames({f"B{i}": u[:, bounds[i]:bounds[i + 1]] for i in range(n_blocks)})
    return partition, u, bounds


@pytest.fixture
def lines():
    return Partition.from_basis_groups(4, {"a": [0], "b": [1], "c": [2], "d": [3]})


class TestBornWeights:
    """Tests for Born weight profiles."""

    def test_three_four_five(self):
        """Test that (3, 4)/5 has weights 0.36 and 0.64."""
        partition = Partition.from_basis_groups(2, {"0": [0], "1": [1]})
        profile = born_weights(np.array([3.0, 4.0]) / 5.0, partition)
        assert profile.weights["0"] == pytest.approx(0.36, abs=1e-12)
        assert profile.weights["1"] == pytest.approx(0.64, abs=1e-12)

    def test_unnormalised_state(self):
        partition = Partition.from_basis_groups(2, {"0": [0], "1": [1]})
        assert born_weights([3.0, 4.0], partition).to_dict() == pytest.approx({"0": 0.36, "1": 0.64})

    def test_zero_state(self, lines):
        with pytest.raises(ZeroVector):
            born_weights(np.zeros(4), lines)

    @settings(max_examples=500)
    @given(seeds, st.integers(1, 8), st.data())
    def test_profiles_sum_to_one(self, seed, dim, data):
        """Test that weights over a random partition of a random state sum to 1."""
        rng = np.random.default_rng(seed)
        partition, _, _ = random_partition(rng, dim, data.draw(st.integers(1, dim)))
        profile = born_weights(random_state(rng, dim), partition)
        assert profile.total() == pytest.approx(1.0, abs=1e-10)
        assert all(w >= 0.0 for w in profile.weights.values())

    @given(seeds, st.integers(1, 8), st.data())
    def test_rotations_within_blocks_keep_weights(self, seed, dim, data):
        """Test that a unitary acting inside each block leaves the profile unchanged."""
        rng = np.random.default_rng(seed)
        partition, u, bounds = random_partition(rng, dim, data.draw(st.integers(1, dim)))
        inner = scipy.linalg.block_diag(*[random_unitary(rng, b - a) for a, b in zip(bounds, bounds[1:])])
        rotation = u @ inner @ u.conj().T
        psi = random_state(rng, dim)
        before = born_weights(psi, partition).weights
        after = born_weights(rotation @ psi, partition).weights
        assert after == pytest.approx(before, abs=1e-10)

    @given(seeds, st.integers(2, 8), st.data())
    def test_coarse_weight_is_sum_of_fine(self, seed, dim, data):
        """Test that grouping blocks adds their weights exactly."""
        rng = np.random.default_rng(seed)
        fine, _, _ = random_partition(rng, dim, data.draw(st.integers(2, dim)))
        psi = random_state(rng, dim)
        fine_weights = born_weights(psi, fine).weights
        coarse = consecutive_grains(fine, [data.draw(st.integers(2, len(fine)))])[0]
        for label, weight in born_weights(psi, coarse).weights.items():
            assert weight == pytest.approx(sum(fine_weights[l] for l in label.split("+")), abs=1e-10)


class TestBranchCount:
    """Tests for threshold counting and its stability."""

    def test_threshold(self):
        partition = Partition.from_basis_groups(2, {"0": [0], "1": [1]})
        state = np.array([1.0, 1e-7])
        assert branch_count(state, partition) == 1
        assert branch_count(state, partition, threshold=1e-16) == 2

    @given(seeds, st.integers(1, 8), st.data(), st.floats(-16.0, 0.0), st.floats(-16.0, 0.0))
    def test_count_falls_as_threshold_rises(self, seed, dim, data, low, high):
        rng = np.random.default_rng(seed)
        partition, _, _ = random_partition(rng, dim, data.draw(st.integers(1, dim)))
        psi = random_state(rng, dim)
        low, high = sorted((low, high))
        assert branch_count(psi, partition, 10.0 ** low) >= branch_count(psi, partition, 10.0 ** high)

    def test_nonpositive_threshold(self, lines):
        with pytest.raises(ValueError):
            branch_count(np.ones(4), lines, threshold=0.0)

    def test_consecutive_grains(self, lines):
        chain = consecutive_grains(lines, [4, 2, 1])
        assert [p.labels for p in chain] == [("a+b+c+d",), ("a+b", "c+d"), ("a", "b", "c", "d")]

    def test_plateau(self, lines):
        """Test that a state on the first pair counts 1, 1, 2 and settles on the coarse grains."""
        state = np.array([1.0, 1.0, 0.0, 0.0])
        report = count_stability(state, consecutive_grains(lines, [4, 2, 1]))
        assert report.counts == [1, 1, 2]
        assert report.ranks == [1, 2, 4]
        assert report.plateau == [0, 1]
        assert report.stable

    def test_count_that_never_settles(self, lines):
        """Test that a uniform state doubles its count with every grain."""
        report = count_stability(np.ones(4), consecutive_grains(lines, [4, 2, 1]))
        assert report.counts == [1, 2, 4]
        assert report.plateau is None
        assert report.to_dict()["stable"] is False

    def test_chain_must_refine(self, lines):
        pairs = consecutive_grains(lines, [2])[0]
        with pytest.raises(InvalidChain) as excinfo:
            count_stability(np.ones(4), [lines, pairs])
        assert excinfo.value.details == {"index": 1}

    def test_empty_chain(self):
        with pytest.raises(InvalidChain):
            count_stability(np.ones(2), [])


class TestMeasureRatio:
    """Tests for good-to-bad weight ratios."""

    @pytest.fixture
    def profile(self):
        return born_weights([3.0, 4.0], Partition.from_basis_groups(2, {"0": [0], "1": [1]}))

    def test_ratio(self, profile):
        assert measure_ratio(profile, ["0"], ["1"]).value == pytest.approx(0.36 / 0.64)

    def test_vanishing_bad_weight(self):
        profile = born_weights([1.0, 0.0], Partition.from_basis_groups(2, {"0": [0], "1": [1]}))
        result = measure_ratio(profile, ["0"], ["1"])
        assert result.infinite
        assert result.to_dict() == {"value": None, "infinite": True}

    def test_labels_both_good_and_bad(self, profile):
        with pytest.raises(ValueError):
            measure_ratio(profile, ["0"], ["0", "1"])

    def test_unknown_label(self, profile):
        with pytest.raises(KeyError):
            measure_ratio(profile, ["0"], ["7"])

    def test_both_weights_vanish(self):
        profile = born_weights([0.0, 0.0, 1.0], Partition.from_basis_groups(3, {"0": [0], "1": [1], "2": [2]}))
        with pytest.raises(ZeroVector):
            measure_ratio(profile, ["0"], ["1"])
