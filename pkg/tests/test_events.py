"""Tests for partitions and event algebras."""

import sys
from itertools import product
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import InvalidPartition, NonCommuting
from src.events import (
    EventAlgebra,
    Partition,
    algebra_from_partition,
    common_refinement,
    is_atomic_generated,
    is_refinement,
    orthogonality_condition_holds,
)
from src.hilbert import Event, join, meet, random_unitary, same_event, span


@pytest.fixture
def lines():
    return Partition.from_basis_groups(4, {"a": [0], "b": [1], "c": [2], "d": [3]})


@pytest.fixture
def pairs():
    return Partition.from_basis_groups(4, {"ab": [0, 1], "cd": [2, 3]})


class TestPartition:
    """Tests for Partition construction and validation."""

    def test_basis_groups(self, pairs):
        """Test that basis groups give blocks of the expected ranks."""
        assert len(pairs) == 2
        assert pairs.block("ab").rank == 2
        assert pairs.labels == ("ab", "cd")

    def test_unknown_block(self, pairs):
        with pytest.raises(KeyError):
            pairs.block("zz")

    def test_overlapping_blocks_rejected(self):
        """Test that non-orthogonal blocks are refused with the offending pair."""
        e = np.eye(2, dtype=complex)
        with pytest.raises(InvalidPartition) as excinfo:
            Partition.create(["x", "y"], [Event(2, e[:, [0]]), span([np.array([1.0, 1.0])])])
        assert excinfo.value.details["pair"] == ["x", "y"]

    def test_incomplete_blocks_rejected(self):
        """Test that blocks not filling the space are refused."""
        with pytest.raises(InvalidPartition):
            Partition.create(["x"], [Event(2, np.eye(2)[:, [0]])])

    def test_zero_block_rejected(self):
        with pytest.raises(InvalidPartition):
            Partition.create(["x", "y"], [Event.full(2), Event.zero(2)])

    def test_duplicate_labels_rejected(self):
        with pytest.raises(InvalidPartition):
            Partition.create(["x", "x"], [Event.full(2), Event.full(2)])

    def test_from_frames(self):
        """Test a partition given by unnormalized frames."""
        p = Partition.from_frames({"plus": np.array([[1.0], [1.0]]), "minus": np.array([[1.0], [-1.0]])})
        assert np.allclose(p.block("plus").projector, 0.5 * np.ones((2, 2)))

    def test_trivial(self):
        assert Partition.trivial(3).block("H").rank == 3

    def test_coarsen(self, lines, pairs):
        """Test that grouping lines two by two gives the pair partition."""
        coarse = lines.coarsen({"ab": ["a", "b"], "cd": ["c", "d"]})
        assert all(same_event(coarse.block(l), pairs.block(l)) for l in pairs.labels)

    def test_coarsen_must_use_every_block(self, lines):
        with pytest.raises(InvalidPartition):
            lines.coarsen({"ab": ["a", "b"]})


class TestRefinement:
    """Tests for is_refinement and common_refinement."""

    def test_lines_refine_pairs(self, lines, pairs):
        assert is_refinement(lines, pairs)
        assert not is_refinement(pairs, lines)

    def test_every_partition_refines_itself(self, pairs):
        assert is_refinement(pairs, pairs)

    def test_rotated_partition_is_not_a_refinement(self, pairs):
        rotated = Partition.from_frames({"p": np.array([[1.0], [0.0], [1.0], [0.0]]),
                                         "q": np.array([[1.0], [0.0], [-1.0], [0.0]]),
                                         "r": np.array([[0.0], [1.0], [0.0], [0.0]]),
                                         "s": np.array([[0.0], [0.0], [0.0], [1.0]])})
        assert not is_refinement(rotated, pairs)

    def test_common_refinement_of_compatible_partitions(self):
        """Test that {01, 23} and {0, 123} refine together to {0, 1, 23}."""
        p = Partition.from_basis_groups(4, {"x": [0, 1], "y": [2, 3]})
        q = Partition.from_basis_groups(4, {"u": [0], "v": [1, 2, 3]})
        common = common_refinement(p, q)
        assert common.labels == ("x&u", "x&v", "y&v")
        assert [b.rank for b in common.blocks] == [1, 1, 2]
        assert is_refinement(common, p) and is_refinement(common, q)

    def test_common_refinement_of_noncommuting_partitions(self):
        """Test that the computational and diagonal bases do not commute."""
        computational = Partition.from_basis_groups(2, {"0": [0], "1": [1]})
        diagonal = Partition.from_frames({"+": np.array([[1.0], [1.0]]), "-": np.array([[1.0], [-1.0]])})
        with pytest.raises(NonCommuting) as excinfo:
            common_refinement(computational, diagonal)
        assert excinfo.value.details["pair"] == ["0", "+"]

    @given(st.integers(0, 2 ** 32 - 1), st.integers(2, 6))
    def test_rotated_basis_refines_trivial(self, seed, dim):
        """Test that any orthonormal basis refines the one-block partition."""
        u = random_unitary(np.random.default_rng(seed), dim)
        basis = Partition.from_frames({str(i): u[:, [i]] for i in range(dim)})
        assert is_refinement(basis, Partition.trivial(dim))


class TestEventAlgebra:
    """Tests for the Boolean algebra generated by a partition."""

    def test_size_and_atoms(self, pairs):
        alg = algebra_from_partition(pairs)
        assert alg.size == 4
        assert alg.atoms() == [frozenset({"ab"}), frozenset({"cd"})]

    def test_members_smallest_first(self, pairs):
        members = list(algebra_from_partition(pairs).members())
        assert members == [frozenset(), frozenset({"ab"}), frozenset({"cd"}), frozenset({"ab", "cd"})]

    def test_boolean_operations(self, lines):
        alg = EventAlgebra(lines)
        ab, bc = frozenset("ab"), frozenset("bc")
        assert alg.meet(ab, bc) == frozenset("b")
        assert alg.join(ab, bc) == frozenset("abc")
        assert alg.complement(ab) == frozenset("cd")
        assert alg.rank(alg.top) == 4

    @pytest.mark.parametrize("n_atoms", [1, 2, 3, 4])
    def test_distributive_on_projectors(self, n_atoms):
        """Test E^(FvG) = (E^F)v(E^G) for every triple of members, computed on frames."""
        ranks = [1, 2, 1, 2][:n_atoms]
        bounds = np.cumsum([0, *ranks])
        u = random_unitary(np.random.default_rng(n_atoms), int(bounds[-1]))
        partition = Partition.from_frames({f"m{i}": u[:, bounds[i]:bounds[i + 1]] for i in range(n_atoms)})
        alg = algebra_from_partition(partition)
        events = {member: alg.event(member) for member in alg.members()}
        for e, f, g in product(events, repeat=3):
            left = meet(events[e], join(events[f], events[g]))
            right = join(meet(events[e], events[f]), meet(events[e], events[g]))
            assert same_event(left, right)
            assert same_event(left, events[alg.meet(e, alg.join(f, g))])

    def test_member_event(self, lines):
        alg = EventAlgebra(lines)
        assert alg.event(frozenset("ac")).rank == 2
        assert alg.event(alg.bottom).is_zero
        with pytest.raises(KeyError):
            alg.event(frozenset("z"))

    def test_contains_member(self, lines, pairs):
        """Test that a join of blocks is found and a diagonal line is not."""
        alg = EventAlgebra(lines)
        assert alg.contains(pairs.block("ab")) == frozenset("ab")
        diagonal = span([np.array([1.0, 1.0, 0.0, 0.0])])
        assert alg.contains(diagonal) is None

    def test_smallest_containing(self, lines):
        alg = EventAlgebra(lines)
        columns = np.array([[1.0], [0.0], [1e-3], [0.0]])
        assert alg.smallest_containing(columns) == frozenset("ac")

    def test_orthogonality_condition(self, lines):
        """Test the condition on members and its failure on skew lines."""
        alg = EventAlgebra(lines)
        for a in alg.members():
            for b in alg.members():
                assert orthogonality_condition_holds(alg.event(a), alg.event(b))
        skew = span([np.array([1.0, 1.0, 0.0, 0.0])])
        assert not orthogonality_condition_holds(lines.block("a"), skew)

    def test_atomic_generation(self, lines):
        assert is_atomic_generated(EventAlgebra(lines))
