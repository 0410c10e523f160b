"""Tests for the built-in scenarios and the demo registry."""

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from app.cli import dump_json
from src.errors import DegenerateFrame, ScenarioError
from src.hilbert import isometry_defect
from src.scenarios import (
    DemoRegistry,
    build_abc_bets,
    build_imprecise_bet,
    build_measurement_model,
    build_pointer_decompositions,
    build_spreading_tail,
    cell_label,
    decompose,
    get_registry,
    measurement_step,
    pointer_frame,
)
from src.schemas.codec import scenario_document


@pytest.fixture
def registry():
    return DemoRegistry()


class TestBuilders:
    """Tests for the scenario builders."""

    def test_measurement_step_is_unitary(self):
        assert isometry_defect(measurement_step(3)) < 1e-12

    def test_measurement_needs_coefficients(self):
        with pytest.raises(ScenarioError):
            build_measurement_model([])
        with pytest.raises(ScenarioError):
            build_measurement_model([0.0, 0.0])

    def test_measurement_records_the_reading(self):
        """Test that the device ends in record i on the branch where the system is i."""
        hs = build_measurement_model([3.0, 4.0])
        final = hs.dynamics.evolution(1) @ hs.initial
        # system 1, device record 1, in a 2 x 3 product basis
        assert abs(final[1 * 3 + 1]) == pytest.approx(0.8)
        assert abs(final[0 * 3 + 0]) == pytest.approx(0.6)

    def test_abc_acts(self):
        dp = build_abc_bets().decision_problem
        assert [a.label for a in dp.acts_at("ready")] == ["1", "A", "B", "C"]

    def test_imprecise_bet_epsilon_range(self):
        with pytest.raises(ValueError):
            build_imprecise_bet(1.5)

    def test_spreading_reaches_every_cell(self):
        """Test that one step from the middle of a 16-cell ring puts weight in every cell."""
        outcome = build_spreading_tail(16, 1)
        assert len(outcome.range_event) == 16
        assert all(w > 1e-12 for w in outcome.weights.values())
        assert sum(outcome.weights.values()) == pytest.approx(1.0)

    def test_spreading_without_steps_stays_put(self):
        outcome = build_spreading_tail(16, 0)
        assert outcome.range_event == [cell_label(8, 16)] == ["x08"]

    def test_spreading_grid_bounds(self):
        with pytest.raises(ScenarioError):
            build_spreading_tail(1)
        with pytest.raises(ScenarioError):
            build_spreading_tail(65)
        with pytest.raises(ScenarioError):
            build_spreading_tail(16, -1)

    def test_pointer_decompositions_differ(self):
        """Test that frames offset by half a site decompose the pointer state incompatibly."""
        result = build_pointer_decompositions(32, 1.5, 0.5)
        assert max(result.residuals) <= 1e-9
        assert result.deviation_lower >= 0.1
        assert result.deviation_upper >= result.deviation_lower

    def test_pointer_control_without_shift(self):
        result = build_pointer_decompositions(32, 1.5, 0.0)
        assert result.deviation_lower == pytest.approx(0.0, abs=1e-12)
        assert result.deviation_upper == pytest.approx(0.0, abs=1e-12)

    def test_pointer_frame_arguments(self):
        with pytest.raises(ScenarioError):
            pointer_frame(1, 1.0)
        with pytest.raises(ScenarioError):
            pointer_frame(8, 0.0)

    def test_degenerate_frame(self):
        """Test that nearly flat profiles are refused before solving."""
        frame = pointer_frame(4, 1e5)
        with pytest.raises(DegenerateFrame):
            decompose(np.ones(4, dtype=complex), frame)


class TestRegistry:
    """Tests for running the built-in demos by name."""

    def test_names(self, registry):
        assert registry.get_demo_names() == [
            "measurement",
            "recombining",
            "algebra-membership",
            "abc-bets",
            "branching-composite",
            "imprecise-bet",
            "erasure",
            "reward-availability",
            "spreading-tail",
            "pointer-decomp",
        ]
        assert len(registry.get_schemas()) == 10

    def test_singleton(self):
        assert get_registry() is get_registry()

    def test_describe(self, registry):
        assert registry.describe_demo("erasure")["name"] == "erasure"
        assert registry.describe_demo("nope") is None

    def test_unknown_demo(self, registry, rng):
        assert registry.validate_arguments("nope", {})[0] is False
        with pytest.raises(ValueError):
            registry.execute("nope", {}, rng)

    def test_invalid_options(self, registry, rng):
        with pytest.raises(ValueError):
            registry.execute("spreading-tail", {"n": 1}, rng)

    def test_measurement(self, registry, rng):
        result = registry.execute("measurement", {"coeffs": [3.0, 4.0]}, rng)
        assert result.report["weights"] == pytest.approx({"0": 0.36, "1": 0.64})
        assert not result.findings
        assert result.bundle.history_space is not None

    def test_recombining(self, registry, rng):
        result = registry.execute("recombining", {}, rng)
        assert result.findings
        assert result.report["additivity"]["max_violation"] == pytest.approx(0.5)

    def test_algebra_membership(self, registry, rng):
        result = registry.execute("algebra-membership", {}, rng)
        assert result.findings
        assert result.report["membership"]["missing"] == ["+", "-"]

    def test_abc_bets(self, registry, rng):
        """Test that both strategies pass on the plain bets problem."""
        result = registry.execute("abc-bets", {}, rng)
        assert not result.findings
        assert result.report["born_eu"]["ranking"] == ["C", "B", "A", "1"]

    def test_branching_composite(self, registry, rng):
        result = registry.execute("branching-composite", {}, rng)
        assert result.findings
        assert result.report["born_eu"]["diachronic_consistency"]["pass"]
        assert not result.report["counting_eu"]["diachronic_consistency"]["pass"]
        assert not result.report["counting_eu"]["branching_indifference"]["pass"]

    def test_imprecise_bet(self, registry, rng):
        result = registry.execute("imprecise-bet", {}, rng)
        assert result.report["strategies_disagree"]
        assert result.findings

    def test_erasure(self, registry, rng):
        result = registry.execute("erasure", {}, rng)
        assert result.findings
        assert result.report["erasure"]["lift"]["defect"] == pytest.approx(1.0, abs=1e-10)
        assert not registry.execute("erasure", {"distinct_targets": True}, rng).findings

    def test_reward_availability(self, registry, rng):
        result = registry.execute("reward-availability", {}, rng)
        assert result.findings
        assert result.report["infeasible"]["ledger"] == {"low": [8, 4]}
        feasible = registry.execute("reward-availability", {"single_reward": True}, rng)
        assert feasible.report["feasible"] and not feasible.findings

    def test_spreading_tail(self, registry, rng):
        result = registry.execute("spreading-tail", {}, rng)
        assert result.findings
        assert result.report["branch_count"] == 16
        assert result.report["count_stability"]["counts"] == [1, 2, 4, 8, 16]
        assert not registry.execute("spreading-tail", {"steps": 0}, rng).findings

    def test_pointer_decomp(self, registry, rng):
        result = registry.execute("pointer-decomp", {}, rng)
        assert result.report["non_unique"]
        assert result.bundle is None
        assert not registry.execute("pointer-decomp", {"shift": 0.0}, rng).findings


class TestDeterminism:
    """Tests for demos rebuilt from the same seed."""

    @pytest.mark.parametrize("name", DemoRegistry().get_demo_names())
    @pytest.mark.parametrize("seed", [0, 17])
    def test_same_seed_same_bundle(self, name, seed):
        """Test that two runs give byte-identical reports and scenario files."""
        registry = get_registry()
        first = registry.execute(name, {}, np.random.default_rng(seed))
        second = registry.execute(name, {}, np.random.default_rng(seed))
        assert dump_json(first.report) == dump_json(second.report)
        assert first.findings == second.findings
        assert (first.bundle is None) == (second.bundle is None)
        if first.bundle is not None:
            assert dump_json(scenario_document(first.bundle)) == dump_json(scenario_document(second.bundle))
