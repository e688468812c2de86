"""Tests for capturing and full capturing."""

import pytest

from app.models.errors import NotMember
from app.models.queries import CaptureQuery
from app.services.capturing import CaptureService


@pytest.fixture
def capture(tstar):
    return CaptureService(tstar)


class TestCaptures:
    """Test captures and fully_captures on T★."""

    def test_three_singletons(self, capture):
        assert capture.captures((0, 1, 2, 3), [(1,), (2,), (3,)])

    def test_root_only_member(self, capture):
        assert not capture.captures((0, 1, 2, 3), [(0,)])

    def test_skipped_piece(self, capture):
        """Test C(i) must lie in the i-th piece."""
        assert not capture.captures((0, 1, 2, 3), [(1,), (3,)])

    def test_empty_root(self, capture):
        assert capture.captures((0, 1), [(0,), (1,)])
        assert capture.fully_captures((0, 1), [(0,), (1,)])

    def test_fully_captures_needs_every_piece(self, capture):
        assert capture.fully_captures((0, 1, 2, 3), [(1,), (2,), (3,)])
        assert not capture.fully_captures((0, 1, 2, 3), [(1,), (2,)])

    def test_non_member(self, capture):
        with pytest.raises(NotMember, match="is not a member"):
            capture.captures((1, 2), [(1,), (2,)])

    def test_empty_family(self, capture):
        assert not capture.captures((0, 1, 2, 3), [])


class TestOrdinalTuple:
    """Test the criterion for singleton families."""

    def test_three_ordinals(self, capture):
        assert capture.ordinal_tuple_captured((1, 2, 3)) == 2

    def test_singleton(self, capture):
        assert capture.ordinal_tuple_captured((7,)) == 0

    def test_pair_in_empty_root_member(self, capture):
        assert capture.ordinal_tuple_captured((0, 1)) == 1

    def test_not_captured(self, capture):
        assert capture.ordinal_tuple_captured((1, 3)) is None

    def test_empty(self, capture):
        with pytest.raises(ValueError, match="nonempty"):
            capture.ordinal_tuple_captured(())

    def test_agrees_with_captures(self, capture, tstar):
        """Test the criterion matches captures on the member containing the tuple."""
        F = (0, 1, 2, 3)
        assert capture.captures(F, [(1,), (2,), (3,)])
        assert capture.ordinal_tuple_captured((1, 2, 3)) == tstar.rank_of(F)


class TestScan:
    """Test finite-window scans."""

    def test_single_hit(self, capture):
        hits = capture.scan_captured(CaptureQuery(family=[[1], [2], [3]], n=3, window=4))

        assert len(hits) == 1
        assert hits[0].level == 2
        assert hits[0].F == (0, 1, 2, 3)
        assert hits[0].indices == (0, 1, 2)

    def test_too_small_family(self, capture):
        assert capture.scan_captured(CaptureQuery(family=[[1], [2]], n=3, window=4)) == []

    def test_hits_are_captures(self, capture):
        family = [(1,), (2,), (3,), (5,), (6,), (7,)]
        hits = capture.scan_captured(CaptureQuery(family=family, n=2, window=8))

        assert hits
        for hit in hits:
            assert capture.captures(hit.F, [family[i] for i in hit.indices])

    def test_finds_pair_across_blocks(self, capture):
        family = [(1,), (5,)]
        hits = capture.scan_captured(CaptureQuery(family=family, n=2, window=8))

        assert [(hit.level, hit.F) for hit in hits] == [(3, (0, 1, 2, 3, 4, 5, 6, 7))]
