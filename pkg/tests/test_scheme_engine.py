"""Tests for SchemeView."""

import pytest

from app.models.config import SchemeConfig
from app.models.errors import (
    LevelTooDeep,
    NotMember,
    NotSubscheme,
    PreconditionViolation,
    RankMismatch,
    RankZero,
)
from app.services.scheme_engine import SchemeView
from app.services.type_core import builtin_type


class TestFiniteScheme:
    """Test materialization of F(m_k)."""

    def test_level_zero(self, tstar):
        assert tstar.finite_scheme(0) == frozenset({(0,)})

    def test_level_one(self, tstar):
        assert tstar.finite_scheme(1) == frozenset({(0,), (1,), (0, 1)})

    def test_level_two(self, tstar):
        assert tstar.level_sets(2) == [
            (0,),
            (1,),
            (2,),
            (3,),
            (0, 1),
            (0, 2),
            (0, 3),
            (0, 1, 2, 3),
        ]

    def test_budget_enforced(self):
        scheme = SchemeView(builtin_type("tstar"), SchemeConfig(element_budget=10))

        assert len(scheme.finite_scheme(2)) == 8
        with pytest.raises(LevelTooDeep, match="level 3"):
            scheme.finite_scheme(3)

    def test_piece_map(self, tstar):
        """Test φ_i fixes the root and shifts the rest by d·i."""
        assert tstar.piece_map(2, 2, 0) == 0
        assert tstar.piece_map(2, 2, 1) == 3


class TestMembership:
    """Test is_member and rank_of."""

    @pytest.mark.parametrize(
        "s, expected",
        [((0, 2), True), ((1, 2), False), ((0, 1, 2), False), ((5,), True), ((4, 5, 6, 7), True)],
    )
    def test_is_member(self, tstar, s, expected):
        assert tstar.is_member(s) is expected

    def test_rejects_unsorted_and_empty(self, tstar):
        assert not tstar.is_member(())
        assert not tstar.is_member((2, 0))

    def test_membership_agrees_with_materialized_level(self, tstar):
        level = tstar.finite_scheme(3)
        for s in level:
            assert tstar.is_member(s)

    def test_rank_of(self, tstar, t2):
        assert tstar.rank_of((0, 1, 2, 3)) == 2
        assert tstar.rank_of((5,)) == 0
        assert t2.rank_of((0, 1, 2)) == 2

    def test_rank_of_non_member(self, tstar):
        with pytest.raises(NotMember, match="is not a member"):
            tstar.rank_of((1, 2))


class TestDecomposition:
    """Test canonical decompositions."""

    def test_tstar_rank_two(self, tstar):
        decomposition = tstar.decompose((0, 1, 2, 3))

        assert decomposition.pieces == [(0, 1), (0, 2), (0, 3)]
        assert decomposition.root == (0,)

    def test_empty_root(self, tstar):
        decomposition = tstar.decompose((0, 1))

        assert decomposition.pieces == [(0,), (1,)]
        assert decomposition.root == ()

    def test_t2_rank_two(self, t2):
        decomposition = t2.decompose((0, 1, 2))

        assert decomposition.pieces == [(0, 1), (0, 2)]
        assert decomposition.root == (0,)

    def test_rank_zero(self, tstar):
        with pytest.raises(RankZero, match="has rank 0"):
            tstar.decompose((5,))

    def test_non_member(self, tstar):
        with pytest.raises(NotMember):
            tstar.decompose((1, 2))


class TestTransport:
    """Test transport along increasing bijections."""

    def test_across_pieces(self, tstar):
        assert tstar.transport((0, 1), (0, 2), (1,)) == (2,)

    def test_identity(self, tstar):
        assert tstar.transport((0, 1, 2, 3), (0, 1, 2, 3), (0, 2)) == (0, 2)

    def test_between_blocks(self, tstar):
        assert tstar.transport((0, 1, 2, 3), (4, 5, 6, 7), (0, 2)) == (4, 6)

    def test_rank_mismatch(self, tstar):
        with pytest.raises(RankMismatch):
            tstar.transport((0, 1), (0, 1, 2, 3), (0,))

    def test_not_subscheme(self, tstar):
        with pytest.raises(NotSubscheme):
            tstar.transport((0, 1, 2, 3), (0, 1, 2, 3), (1, 2))


class TestEnumeration:
    """Test bounded enumeration of members."""

    def test_rank_one_within_four(self, tstar):
        assert list(tstar.elements_of_rank_within(1, 4)) == [(0, 1), (0, 2), (0, 3)]

    def test_rank_two_within_four(self, tstar):
        assert list(tstar.elements_of_rank_within(2, 4)) == [(0, 1, 2, 3)]

    def test_rank_above_window(self, tstar):
        assert list(tstar.elements_of_rank_within(3, 4)) == []

    def test_agrees_with_finite_scheme(self, tstar):
        for k in range(4):
            expected = sorted(s for s in tstar.finite_scheme(4) if len(s) == tstar.m(k))
            assert list(tstar.elements_of_rank_within(k, 14)) == expected

    def test_subsets_of_rank(self, tstar):
        assert tstar.subsets_of_rank((0, 1, 2, 3), 1) == [(0, 1), (0, 2), (0, 3)]
        assert tstar.subsets_of_rank((0, 1), 2) == []


class TestClosures:
    """Test (β)_k and the members containing β."""

    @pytest.mark.parametrize(
        "beta, k, expected",
        [(3, 0, (3,)), (3, 1, (0, 3)), (3, 2, (0, 1, 2, 3)), (8, 2, (0, 1, 8))],
    )
    def test_closure(self, tstar, beta, k, expected):
        assert tstar.closure(beta, k) == expected

    def test_closure_minus(self, tstar):
        assert tstar.closure_minus(3, 1) == (0,)

    @pytest.mark.parametrize("beta, k", [(-1, 0), (3, -1)])
    def test_closure_needs_naturals(self, tstar, beta, k):
        with pytest.raises(PreconditionViolation, match="closure needs naturals"):
            tstar.closure(beta, k)

    def test_member_containing(self, tstar):
        F = tstar.member_of_rank_containing(5, 1)

        assert F == (4, 5)
        assert tstar.is_member(F)

    def test_closure_is_trace_of_every_member(self, tstar):
        """Test F ∩ (β+1) is the same for every rank-k member F with β ∈ F."""
        level = tstar.finite_scheme(4)
        for k in range(4):
            for F in (s for s in level if len(s) == tstar.m(k)):
                for beta in F:
                    assert tuple(x for x in F if x <= beta) == tstar.closure(beta, k)

    def test_universe_level(self, tstar):
        assert tstar.universe_level(3) == 2
        assert tstar.universe_level(8) == 4
