"""Tests for the derived constructions."""

from itertools import combinations

import pytest

from app.models.errors import NonBinaryType, PreconditionViolation, TypeTooSmall
from app.services.constructions import (
    ColoringService,
    EntangledService,
    FamilyService,
    FiniteTree,
    LatticeService,
    OmegaPartition,
    OrderService,
    amalgamate,
    l_good,
    least_branch_through,
)
from app.services.constructions.colorings import (
    FALLBACK_COLOR,
    decode_map,
    encode_map,
    pair,
    unpair,
)
from app.services.constructions.trees import amalgamation_relation, is_tree_relation
from app.services.verification.capture import interval_sample
from app.services.scheme_engine import SchemeView
from app.services.type_core import builtin_type


class TestFamilies:
    """Test gaps, Luzin-Jones sets and coherent families on T₂."""

    def test_gap_sets(self, t2):
        assert FamilyService(t2).gap_sets(2, 3) == ((3, 5, 6), (2, 4, 7))

    def test_gap_needs_binary_type(self, tstar):
        with pytest.raises(NonBinaryType, match="n_k = 2"):
            FamilyService(tstar).gap_sets(2, 3)

    def test_luzin_jones_levels(self, t2):
        family = FamilyService(t2).luzin_jones(2, 2)

        assert set(family.at_level(2)) == {(2, 1, 0), (2, 1, 1)}
        assert set(family.at_level(1)) == {(1, 0, 0)}

    def test_luzin_jones_root_member(self, t2):
        assert set(FamilyService(t2).luzin_jones(0, 1).elements) == {(1, 0, 0)}

    def test_jones_separator_contains_closure_blocks(self, t2):
        service = FamilyService(t2)
        separator = set(service.jones_separator(2, 3).elements)

        for k in range(1, 4):
            for alpha in t2.closure(2, k):
                assert set(service.luzin_jones_level(alpha, k)) <= separator

    def test_coherent_family(self, t2):
        f = FamilyService(t2).coherent_family(2, 2)

        assert f.to_rows() == [[2, 0, 0, 0, 0], [2, 0, 0, 1, 0]]

    def test_fiber_witness(self, t2):
        witness = FamilyService(t2).luzin_fiber_witness(0, 1, 5, 9)

        assert witness.level == 4
        assert witness.elements == tuple((4, 0, 1, s) for s in range(4))

    def test_fiber_witness_order(self, t2):
        with pytest.raises(PreconditionViolation, match="xi < mu < alpha < beta"):
            FamilyService(t2).luzin_fiber_witness(1, 0, 5, 9)

    def test_last_piece_levels(self, tstar):
        assert FamilyService(tstar).last_piece_levels(3, 2) == (1, 2)


class TestCountryman:
    """Test the Countryman order and its chain decomposition."""

    def test_less(self, tstar):
        service = OrderService(tstar)

        assert service.countryman_less(1, 2)
        assert service.countryman_less(2, 8)
        assert not service.countryman_less(4, 4)

    def test_linear(self, tstar):
        service = OrderService(tstar)
        for a, b in combinations(range(14), 2):
            assert service.countryman_less(a, b) != service.countryman_less(b, a)

    def test_chain_index(self, tstar):
        service = OrderService(tstar)

        assert service.countryman_chain_index(0, 2) == (1, 2, 1)
        assert service.countryman_chain_index(1, 2) == (2, 3, 2)

    def test_chain_index_needs_order(self, tstar):
        with pytest.raises(PreconditionViolation, match="alpha < beta"):
            OrderService(tstar).countryman_chain_index(2, 2)

    def test_chain_table(self, tstar):
        rows = OrderService(tstar).chain_table(3)

        assert [row[:2] for row in rows] == [[0, 1], [0, 2], [1, 2]]
        assert rows[2] == [1, 2, 2, 3, 2]


class TestAronszajn:
    """Test ρ-functions as nodes of the special tree."""

    def test_rho_table(self, tstar):
        assert OrderService(tstar).rho_table(3) == (1, 2, 2, 0)

    def test_unmodified_node(self, tstar):
        node = OrderService(tstar).aronszajn_node(3)

        assert (node.k, node.s) == (0, 1)

    def test_modified_node(self, tstar):
        node = OrderService(tstar).aronszajn_node(3, {0: 2})

        assert node.table == (2, 2, 2, 0)
        assert (node.k, node.s) == (2, 4)

    def test_modification_outside_domain(self, tstar):
        with pytest.raises(PreconditionViolation, match="modifications"):
            OrderService(tstar).aronszajn_node(3, {5: 0})

    def test_coherence(self, tstar):
        service = OrderService(tstar)
        for a, b in combinations(range(10), 2):
            assert service.rho_coherence_failures(a, b) == []

    def test_antichain_separated(self, tstar):
        service = OrderService(tstar)
        nodes = [service.aronszajn_node(beta) for beta in range(10)]

        for f, g in combinations(nodes, 2):
            assert OrderService.antichain_separated(f, g)


class TestColorings:
    """Test pair colorings and the oscillation partition."""

    def test_pairing(self):
        assert pair(0, 0) == 0
        assert all(unpair(pair(x, y)) == (x, y) for x in range(6) for y in range(6))

    def test_map_coding(self):
        domain = ((0,), (1,))
        h = {(a, b): i for i, (a, b) in enumerate((a, b) for a in domain for b in domain)}

        assert decode_map(encode_map(domain, h)) == (domain, h)

    def test_comparable_domain_is_empty_map(self):
        domain = ((), (0,))
        n = encode_map(domain, {(a, b): 0 for a in domain for b in domain})

        assert decode_map(n) == ((), {})

    def test_partition_intervals(self):
        partition = OmegaPartition()
        certificates = partition.certify(2)

        for (n, k), allocation in certificates.items():
            assert allocation.high == 2 * allocation.low + k
            assert all(partition.cell_of(x) == n for x in range(allocation.low, allocation.high + 1))

    def test_partition_certificates_grow_geometrically(self):
        """Test certify(8) answers membership without walking its wide intervals."""
        partition = OmegaPartition()
        certificates = partition.certify(8)

        widest = max(a.high - a.low + 1 for a in certificates.values())
        assert widest > 10**40
        assert len(certificates) == 81
        assert partition.tiling_failures() == []
        for (n, k), allocation in certificates.items():
            for x in interval_sample(allocation.low, allocation.high):
                assert partition.cell_of(x) == n
            assert partition.allocation_of(allocation.high + 1).low == allocation.high + 1

    def test_interval_sample_is_bounded(self):
        points = interval_sample(10, 10**30)

        assert points[0] == 10 and points[-1] == 10**30
        assert (10 + 10**30) // 2 in points
        assert len(points) == 35

    def test_partition_rejects_negative(self):
        with pytest.raises(ValueError, match="naturals"):
            OmegaPartition().cell_of(-1)

    def test_o_star_fallback(self, t2):
        assert ColoringService(t2).o_star(0, 1) == FALLBACK_COLOR

    def test_polychromatic_table(self, tstar):
        rows = ColoringService(tstar).color_table(4)

        assert len(rows) == 6
        assert all(unpair(row[2])[0] == row[1] for row in rows)

    def test_pairs_only(self, tstar):
        with pytest.raises(PreconditionViolation, match="pairs"):
            ColoringService(tstar).polychromatic_color(3, 3)

    def test_sspace_diagonal(self, tstar):
        service = ColoringService(tstar)

        assert service.sspace_point(2, 2) == 1
        assert service.sspace_point(5, 2, side="x") == 0

    def test_cset_contains_beta(self, tstar):
        service = ColoringService(tstar)

        assert 5 in service.cset(5)
        assert all(alpha <= 5 for alpha in service.cset(5))


class TestEntangled:
    """Test the sign-coded reals over the entangled type."""

    @pytest.fixture
    def service(self):
        return EntangledService(SchemeView(builtin_type("entangled")))

    def test_first_values(self, service):
        assert service.entangled_real(0, 2) == (0, 0)
        assert service.entangled_real(1, 2) == (0, -1)
        assert service.entangled_real(2, 2) == (0, 2)

    def test_subset_index(self, service):
        assert service.subset_index(0, [0]) == 2
        assert service.c_subset(0, 2) == (0,)

    def test_subset_outside_range(self, service):
        with pytest.raises(PreconditionViolation, match="must lie in"):
            service.subset_index(0, [5])

    def test_type_too_small(self, tstar):
        with pytest.raises(TypeTooSmall) as excinfo:
            EntangledService(tstar).entangled_real(1, 3)

        assert excinfo.value.k == 1


class TestLattice:
    """Test the lower semi-lattice levels on T₂."""

    def test_level_zero(self, t2):
        assert LatticeService(t2).lattice_level(0) == {(0, 0): frozenset({(0, 0, 0)})}

    def test_level_one(self, t2):
        level = LatticeService(t2).lattice_level(1)

        assert len(level) == 4
        assert level[(1, 0)] == frozenset({(0, 0, 0), (1, 0, 0)})

    def test_structure(self, t2):
        service = LatticeService(t2)

        assert service.rank_failures(1) == []
        assert service.intersection_failures(1) == []

    def test_needs_binary_type(self, tstar):
        with pytest.raises(NonBinaryType):
            LatticeService(tstar).lattice_level(1)


class TestTrees:
    """Test finite trees, l-good sets and amalgamation."""

    @pytest.fixture
    def small(self):
        return FiniteTree({"a": None, "b": "a", "c": "a", "d": "b"})

    def test_ranks_and_order(self, small):
        assert small.rank("d") == 2
        assert small.ancestors("d") == ("a", "b")
        assert small.less("a", "d")
        assert not small.less("c", "d")
        assert small.height == 3

    def test_l_good(self, small):
        assert l_good(["b", "c"], small, 1)
        assert not l_good(["a", "b"], small, 1)
        assert not l_good(["b", "d"], small, 1)

    def test_least_branch(self, small):
        assert least_branch_through(small, "a") == ("a", "b", "d")

    def test_amalgamate(self):
        T = FiniteTree({"r": None, "t": "r"})
        L = FiniteTree({"r": None, "x": "r", "y": "x"})
        branches = {"t": ["r", "x", "y"]}

        result = amalgamate(T, L, 1, branches)

        assert result.parent["t"] == "y"
        assert result.less("x", "t")
        assert is_tree_relation(result.nodes, amalgamation_relation(T, L, 1, branches))

    def test_amalgamate_missing_branch(self):
        T = FiniteTree({"r": None, "t": "r"})
        L = FiniteTree({"r": None, "x": "r"})

        with pytest.raises(PreconditionViolation, match="missing branch"):
            amalgamate(T, L, 1, {})
