"""Tests for the forcing poset, acceptance counts and sessions."""

import pytest

from app.models.errors import NoWitnessInBudget, PreconditionViolation
from app.models.forcing import ExtOrdinal, GoodEntry, GoodSequence
from app.services.forcing import (
    AcceptanceService,
    BaseUniverse,
    ForcingPoset,
    ForcingSession,
    GenericBuilder,
    in_bl,
    interval_lemma_failures,
    lift,
)
from app.services.type_core import builtin_type

OMEGA = ExtOrdinal(1, 0)


@pytest.fixture
def universe(t2, test_config):
    return BaseUniverse(t2, test_config.forcing)


@pytest.fixture
def poset(universe):
    return ForcingPoset(universe)


class TestReductions:
    """Test red and Cut over γ = ω."""

    def test_red(self, poset):
        assert poset.red((ExtOrdinal(0, 0), OMEGA, OMEGA.plus(1))) == lift(range(3))

    def test_red_of_fresh_points(self, poset):
        assert poset.red((OMEGA, OMEGA.plus(1))) == lift(range(2))

    def test_red_empty(self, poset):
        with pytest.raises(PreconditionViolation, match="nonempty"):
            poset.red(())

    def test_cut(self, poset):
        assert poset.cut(lift(range(3)), ExtOrdinal(0, 1)) == (
            ExtOrdinal(0, 0),
            OMEGA,
            OMEGA.plus(1),
        )

    def test_cut_outside_member(self, poset):
        with pytest.raises(PreconditionViolation, match="is not in the set"):
            poset.cut(lift(range(3)), ExtOrdinal(0, 5))

    def test_interval_lemma(self, tstar, t2):
        assert interval_lemma_failures(tstar, 2) == []
        assert interval_lemma_failures(t2, 3) == []


class TestConditions:
    """Test conditions and their extensions."""

    def test_initial_condition(self, poset):
        assert poset.initial() == (OMEGA,)
        assert poset.is_condition((OMEGA,))

    def test_fresh_part_must_be_initial_segment(self, poset):
        assert not poset.is_condition((ExtOrdinal(0, 0), OMEGA.plus(1)))

    def test_extend_contain(self, poset):
        q = poset.extend_contain((OMEGA,), ExtOrdinal(0, 1))

        assert q == lift(range(3)) + lift(range(3), block=1)
        assert poset.leq(q, (OMEGA,))

    def test_extend_contain_rejects_fresh(self, poset):
        with pytest.raises(PreconditionViolation, match="extend_root"):
            poset.extend_contain((OMEGA,), OMEGA.plus(1))

    def test_extend_root(self, poset, t2):
        level, q, F = poset.extend_root((OMEGA,), OMEGA, 2)

        assert level == 6
        assert q == lift(range(35), block=1)
        assert len(F) == t2.m(7)


class TestIH1:
    """Test IH1 witnesses in the omega block."""

    def test_witness(self, universe):
        assert universe.ih1_witness(lift([0, 1]), ExtOrdinal(0, 1)) == lift(range(3))

    def test_witness_outside_omega(self, universe):
        with pytest.raises(PreconditionViolation, match="only holds naturals"):
            universe.ih1_witness((OMEGA,), ExtOrdinal(0, 0))

    def test_no_witness_in_budget(self, t2, test_config):
        config = test_config.forcing.model_copy(update={"witness_level_budget": 2})

        with pytest.raises(NoWitnessInBudget):
            BaseUniverse(t2, config).ih1_witness(lift(range(5)), ExtOrdinal(0, 0))


class TestGoodSequences:
    """Test Bl membership, projection and j."""

    def test_in_bl(self):
        assert in_bl([], 0, 3)
        assert in_bl([[3, 4], [6]], 2, 8)
        assert not in_bl([[3, 5]], 2, 8)
        assert not in_bl([[1, 2]], 2, 8)
        assert not in_bl([[6], [3, 4]], 2, 8)

    def test_projection_needs_order(self, universe):
        entry = GoodEntry(intervals=[], z=0)

        with pytest.raises(PreconditionViolation, match="k < l"):
            AcceptanceService(universe).projection(ExtOrdinal(0, 3), 2, 2, entry)

    def test_j_value_without_guesses(self, universe):
        acceptance = AcceptanceService(universe)

        assert acceptance.j_value(2, 3, ExtOrdinal(0, 2), OMEGA, [], GoodSequence()) == 0

    def test_fully_captured_empty(self, universe):
        assert AcceptanceService(universe).fully_captured(2, []) is None

    def test_trans_equivalence_over_ground(self, universe):
        ground = lift(range(20))

        report = AcceptanceService(universe).verify_trans_equiv(ground, ground, k_max=4, l_max=6)

        assert report.checked >= 1000
        assert report.counterexamples == []
        assert report.both_true + report.both_false == report.checked


class TestSessions:
    """Test session directories and replay."""

    def test_init_and_demand(self, temp_dir, test_config):
        path = temp_dir / "session"
        session = ForcingSession.init(path, builtin_type("t2"), test_config.forcing)

        record = session.demand("contain", {"alpha": 1})

        assert record.chosen == [[0, 0], [0, 1], [0, 2], [1, 0], [1, 1], [1, 2]]
        assert session.snapshot().rank == 3
        assert (path / "demands.jsonl").read_text().count("\n") == 1

    def test_reload_replays_log(self, temp_dir, test_config):
        path = temp_dir / "session"
        session = ForcingSession.init(path, builtin_type("t2"), test_config.forcing)
        session.demand("contain", {"alpha": 1})

        again = ForcingSession.load(path, test_config.forcing)

        assert again.snapshot() == session.snapshot()
        assert again.snapshot().chain_length == 2

    def test_init_twice(self, temp_dir, test_config):
        path = temp_dir / "session"
        ForcingSession.init(path, builtin_type("t2"), test_config.forcing)

        with pytest.raises(PreconditionViolation, match="already holds a session"):
            ForcingSession.init(path, builtin_type("t2"), test_config.forcing)

    def test_load_missing(self, temp_dir):
        with pytest.raises(PreconditionViolation, match="no session"):
            ForcingSession.load(temp_dir / "nowhere")

    def test_unknown_demand(self, t2, test_config):
        builder = GenericBuilder(t2, test_config.forcing)
        fragment = builder.start(builder.base())

        with pytest.raises(PreconditionViolation, match="unknown demand"):
            builder.apply(fragment, "teleport", {})

    def test_malformed_demand(self, t2, test_config):
        builder = GenericBuilder(t2, test_config.forcing)
        fragment = builder.start(builder.base())

        with pytest.raises(PreconditionViolation, match="malformed contain demand"):
            builder.apply(fragment, "contain", {})

    def test_advance_opens_stage(self, t2, test_config):
        builder = GenericBuilder(t2, test_config.forcing)
        fragment, record = builder.step(builder.start(builder.base()), "advance")

        assert fragment.stage == 2
        assert record.op == "advance"
        assert fragment.gamma == ExtOrdinal(2, 0)
