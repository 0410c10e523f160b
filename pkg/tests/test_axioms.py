"""Tests for valuation strategies and the preference-axiom checkers."""

import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.axioms import (
    Relation,
    Strategy,
    StrategyKind,
    check_act_nondegeneracy,
    check_branching_indifference,
    check_diachronic_consistency,
    check_macrostate_indifference,
    check_ordering,
    check_ordering_all,
    check_solution_continuity,
    check_state_supervenience,
    compare,
    evaluate,
    preference_order,
    run_suite,
    suite_passed,
    transported_tuples,
)
from src.decision import Act, DecisionProblem, IDENTITY_LABEL
from src.errors import StateOutsideDomain
from src.events import Partition
from src.hilbert import Event, random_unitary
from src.scenarios import build_abc_bets, build_branching_indifference_composite, build_imprecise_bet

BORN = Strategy(StrategyKind.BORN_EU)
COUNTING = Strategy(StrategyKind.COUNTING_EU)
MINIMAX = Strategy(StrategyKind.MINIMAX)


@pytest.fixture
def abc():
    return build_abc_bets()


@pytest.fixture
def composite():
    return build_branching_indifference_composite()


class TestStrategies:
    """Tests for values and preference orders on the bets problem."""

    def test_born_values(self, abc):
        """Test A=450, B=500, C=725 and the identity at 0."""
        order = preference_order(BORN, abc.decision_problem, "ready", abc.state)
        assert order.values["A"] == pytest.approx(450.0, abs=1e-9)
        assert order.values["B"] == pytest.approx(500.0, abs=1e-9)
        assert order.values["C"] == pytest.approx(725.0, abs=1e-9)
        assert order.values[IDENTITY_LABEL] == pytest.approx(0.0, abs=1e-9)
        assert order.ranking() == ["C", "B", "A", IDENTITY_LABEL]

    def test_counting_values(self, abc):
        """Test that counting branches values C at the mean over its three outcomes."""
        order = preference_order(COUNTING, abc.decision_problem, "ready", abc.state)
        assert order.values["C"] == pytest.approx(1900.0 / 3.0, abs=1e-9)
        assert order.values["A"] == pytest.approx(450.0)

    def test_coarse_count_by_reward(self, abc):
        """Test that counting rewards rather than macrostates merges C's two winning branches."""
        strategy = Strategy(StrategyKind.COARSE_COUNT_EU)
        dp = abc.decision_problem
        assert evaluate(strategy, dp, "ready", abc.state, dp.find_act("ready", "C")) == pytest.approx(450.0)

    def test_minimax_takes_the_worst_branch(self, abc):
        dp = abc.decision_problem
        assert evaluate(MINIMAX, dp, "ready", abc.state, dp.find_act("ready", "A")) == pytest.approx(-100.0)

    def test_process_cost_charges_act_labels(self, abc):
        strategy = Strategy(StrategyKind.PROCESS_COST, act_costs={"B": 100.0})
        dp = abc.decision_problem
        assert evaluate(strategy, dp, "ready", abc.state, dp.find_act("ready", "B")) == pytest.approx(400.0)

    def test_value_scales_out_state_norm(self, abc):
        dp = abc.decision_problem
        value = evaluate(BORN, dp, "ready", 3.0 * abc.state, dp.find_act("ready", "C"))
        assert value == pytest.approx(725.0)

    def test_state_outside_macrostate(self, abc):
        dp = abc.decision_problem
        with pytest.raises(StateOutsideDomain):
            evaluate(BORN, dp, "down0", abc.state, dp.find_act("ready", "A"))

    def test_nonpositive_threshold_rejected(self):
        with pytest.raises(ValueError):
            Strategy(StrategyKind.COUNTING_EU, threshold=0.0)

    def test_missing_utilities_rejected(self, abc):
        with pytest.raises(ValueError):
            Strategy(StrategyKind.BORN_EU, utilities={"+1000": 1.0}).utilities_for(abc.decision_problem)

    def test_compare(self):
        assert compare(1.0, 0.0) == 1
        assert compare(0.0, 1.0) == -1
        assert compare(1.0, 1.0 + 1e-12) == 0


def reward_rotation(dp: DecisionProblem, rng: np.random.Generator) -> Act:
    """A random unitary on the whole space that maps every reward subspace to itself."""
    operator = np.zeros((dp.ambient_dim, dp.ambient_dim), dtype=complex)
    for reward in dp.rewards.labels:
        frame = dp.reward(reward).frame
        operator += frame @ random_unitary(rng, frame.shape[1]) @ frame.conj().T
    return Act.from_operator(Event.full(dp.ambient_dim), operator, "rot")


class TestRewardRotations:
    """Tests for expected utility under unitaries acting inside each reward."""

    @given(st.integers(0, 2 ** 32 - 1), st.floats(0.1, 10.0), st.floats(0.0, 2 * np.pi))
    def test_born_value_ignores_rotations_within_rewards(self, seed, scale, phase):
        rng = np.random.default_rng(seed)
        bundle = build_abc_bets()
        dp = bundle.decision_problem
        rotate = reward_rotation(dp, rng)
        assert rotate.defect() < 1e-10
        state = scale * np.exp(1j * phase) * bundle.state
        for act in dp.acts_at("ready"):
            before = evaluate(BORN, dp, "ready", state, act)
            after = evaluate(BORN, dp, "ready", state, act.then(rotate))
            assert after == pytest.approx(before, abs=1e-9)

    def test_rotation_keeps_the_ranking(self, rng):
        bundle = build_abc_bets()
        dp = bundle.decision_problem
        rotate = reward_rotation(dp, rng)
        values = {act.label: evaluate(BORN, dp, "ready", bundle.state, act.then(rotate))
                  for act in dp.acts_at("ready")}
        assert values["rot.C"] == pytest.approx(725.0, abs=1e-9)
        assert sorted(values, key=values.get, reverse=True) == ["rot.C", "rot.B", "rot.A", f"rot.{IDENTITY_LABEL}"]


class TestOrdering:
    """Tests for totality and transitivity."""

    def test_value_orders_are_total(self, abc):
        report = check_ordering_all(abc.decision_problem, BORN)
        assert report.passed
        assert report.numerics["rankings"]["ready"] == [["C", "B", "A", IDENTITY_LABEL]]

    def test_cycle_is_reported(self):
        """Test that a >= b >= c >= a without a >= c is an intransitive cycle."""
        relation = Relation(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
        report = check_ordering(relation)
        assert not report.passed
        assert {"intransitive": ["a", "b", "c"], "cycle": ["a", "b", "c", "a"]} in report.witnesses

    def test_incomparable_pair_is_reported(self):
        report = check_ordering(Relation(["a", "b"], []))
        assert report.witnesses == [{"incomparable": ["a", "b"]}]


class TestStateSupervenience:
    """Tests for preferences that must depend on final states only."""

    def test_transported_tuples_share_final_states(self, abc, rng):
        tuples = transported_tuples(abc.decision_problem, rng, trials=10)
        assert len(tuples) == 10
        for t in tuples:
            assert np.allclose(t.u.apply(t.state), t.other_u.apply(t.other_state))
            assert t.other_u.label == f"{t.u.label}'"

    def test_born_satisfies_supervenience(self, abc, rng):
        assert check_state_supervenience(abc.decision_problem, BORN, rng).passed

    def test_process_cost_violates_supervenience(self, abc, rng):
        """Test that charging for the act B, and not for its relabelled copy, flips a preference."""
        strategy = Strategy(StrategyKind.PROCESS_COST, act_costs={"B": 100.0})
        report = check_state_supervenience(abc.decision_problem, strategy, rng)
        assert not report.passed
        assert any(w["acts"][:2] == ["A", "B"] for w in report.witnesses)

    def test_macrostate_indifference(self, abc, rng):
        report = check_macrostate_indifference(abc.decision_problem, BORN, rng=rng)
        assert report.passed
        assert report.numerics["applicable"] == report.numerics["tuples"]


class TestDiachronicAndBranching:
    """Tests for Diachronic Consistency and Branching Indifference."""

    def test_born_diachronic_consistency(self, abc):
        """Test that continuing B with A on the down branch is preferred, as branchwise."""
        report = check_diachronic_consistency(abc.decision_problem, BORN, abc.diachronic)
        assert report.passed
        assert report.numerics["values"]["A_down.B"] == pytest.approx(725.0)

    def test_counting_diachronic_on_bets(self, abc):
        assert check_diachronic_consistency(abc.decision_problem, COUNTING, abc.diachronic).passed

    def test_counting_fails_composite(self, composite):
        """Test that splitting the down branch lowers a branch counter's value from 500 to 1000/3."""
        report = check_diachronic_consistency(composite.decision_problem, COUNTING, composite.diachronic)
        assert not report.passed
        witness = report.witnesses[0]
        assert witness["pair"] == ["W", IDENTITY_LABEL]
        assert (witness["expected"], witness["composite"]) == (0, -1)
        assert report.numerics["values"]["W.B"] == pytest.approx(1000.0 / 3.0)

    def test_counting_fails_branching_indifference(self, composite):
        report = check_branching_indifference(composite.decision_problem, COUNTING, composite.contexts)
        assert not report.passed
        witness = report.witnesses[0]
        assert (witness["prefix"], witness["branch"], witness["act"]) == ("B", "down0", "W")
        assert witness["values"] == pytest.approx([1000.0 / 3.0, 500.0])

    def test_born_passes_composite(self, composite):
        dp = composite.decision_problem
        assert check_diachronic_consistency(dp, BORN, composite.diachronic).passed
        assert check_branching_indifference(dp, BORN, composite.contexts).passed


class TestContinuityAndNondegeneracy:
    """Tests for Solution Continuity and Act Nondegeneracy."""

    def test_exact_bet_is_stable_for_born(self, rng):
        bundle = build_imprecise_bet()
        dp = bundle.decision_problem
        report = check_solution_continuity(dp, BORN, "ready", bundle.state, dp.find_act("ready", "bet"),
                                           dp.find_act("ready", IDENTITY_LABEL), rng)
        assert report.passed
        assert report.numerics["gap"] == pytest.approx(1000.0)
        assert report.numerics["min_gap"] > 990.0

    def test_minimax_reverses_and_is_unstable(self, rng):
        """Test that a tiny down branch makes minimax reject the imprecise bet and destabilises the exact one."""
        bundle = build_imprecise_bet(1e-6)
        dp = bundle.decision_problem
        order = preference_order(MINIMAX, dp, "ready", bundle.state)
        assert order.prefers(IDENTITY_LABEL, "bet_eps")
        assert preference_order(BORN, dp, "ready", bundle.state).prefers("bet_eps", IDENTITY_LABEL)
        report = check_solution_continuity(dp, MINIMAX, "ready", bundle.state, dp.find_act("ready", "bet"),
                                           dp.find_act("ready", IDENTITY_LABEL), rng)
        assert not report.passed

    def test_indifferent_pair_has_no_premise(self, abc, rng):
        dp = abc.decision_problem
        identity = dp.find_act("ready", IDENTITY_LABEL)
        report = check_solution_continuity(dp, BORN, "ready", abc.state, identity, identity, rng)
        assert report.passed
        assert report.numerics["premise"] is False

    def test_worse_first_act_is_swapped(self, abc, rng):
        dp = abc.decision_problem
        report = check_solution_continuity(dp, BORN, "ready", abc.state, dp.find_act("ready", "A"),
                                           dp.find_act("ready", "C"), rng)
        assert report.numerics["acts"] == ["C", "A"]
        assert report.numerics["gap"] == pytest.approx(-275.0)

    def test_nondegeneracy_witness(self, abc):
        report = check_act_nondegeneracy(abc.decision_problem, BORN)
        assert report.passed
        assert report.witnesses == [{"macrostate": "ready", "preferred": "A", "over": IDENTITY_LABEL}]

    def test_identities_only_are_degenerate(self):
        macrostates = Partition.from_basis_groups(2, {"M": [0], "N": [1]})
        acts = {label: [Act.identity(block)] for label, block in zip(macrostates.labels, macrostates.blocks)}
        dp = DecisionProblem.create(macrostates, {"r": ["M"], "s": ["N"]}, acts, {"r": 1.0, "s": 0.0})
        assert not check_act_nondegeneracy(dp, BORN).passed


class TestSuite:
    """Tests for the full axiom suite."""

    @pytest.mark.parametrize("build", [build_abc_bets, build_branching_indifference_composite])
    def test_born_passes_every_axiom(self, build, rng):
        bundle = build()
        reports = run_suite(bundle.decision_problem, BORN, rng, bundle.diachronic, bundle.contexts,
                            include_macrostate_indifference=True)
        assert [r.axiom for r in reports] == [
            "ordering",
            "state_supervenience",
            "diachronic_consistency",
            "branching_indifference",
            "solution_continuity",
            "act_nondegeneracy",
            "macrostate_indifference",
        ]
        assert suite_passed(reports)

    def test_born_continuity_fails_only_below_gap_condition(self, rng):
        """Test that continuity witnesses on the imprecise bet all have gaps under 4 delta max|u|."""
        bundle = build_imprecise_bet()
        reports = run_suite(bundle.decision_problem, BORN, rng)
        by_axiom = {r.axiom: r for r in reports}
        assert all(by_axiom[a].passed for a in by_axiom if a != "solution_continuity")
        assert all(not w["gap_condition"] for w in by_axiom["solution_continuity"].witnesses)

    def test_counting_fails_the_composite_suite(self, composite, rng):
        reports = run_suite(composite.decision_problem, COUNTING, rng, composite.diachronic, composite.contexts)
        assert not suite_passed(reports)
