"""Coherent Suslin functions and the finite trees T^F of the full Suslin recursion.

Tree nodes are pairs (position, s): the position p < m_k of the scheme point
F(p) and an index s < (k+1)·2^p. The tree of rank k is built once over m_k
and copied to every member F of rank k through (p, s) -> (F(p), s).
"""

from typing import Dict, FrozenSet, List, Optional, Tuple

from ...models.errors import BudgetExceeded, PreconditionViolation
from ...models.types import PartitionSpec
from ..type_core import cell_of
from .base import ConstructionBase
from .trees import FiniteTree, amalgamate, l_good, least_branch_through

TreeNode = Tuple[int, int]

CELL_COHERENT = 0
CELL_ANTICHAIN = 1


def binary_counter_bit(index: int, offset: int, width: int) -> int:
    """Bit ``offset`` of (index - 1) mod 2^width, the canonical index-th function of width bits."""
    return ((index - 1) % (1 << width)) >> offset & 1


def positional(node: TreeNode) -> int:
    return node[0]


class SuslinService(ConstructionBase):
    """Suslin-type constructions: coherent bits and full Suslin trees."""

    def __init__(self, scheme, metrics=None):
        super().__init__(scheme, metrics)
        self._trees: Dict[int, FiniteTree] = {}

    # Coherent Suslin tree

    def coherent_suslin_bit(self, beta: int, xi: int, part: PartitionSpec) -> int:
        """f_β(ξ) for ξ < β.

        With ρ = ρ(ξ, β): 1 when Ξ_ξ(ρ) = 0, Ξ_β(ρ) = 1 and ρ lies in cell 0
        (P_c); g^ρ_i(|(ξ)^-_ρ|) when Ξ_ξ(ρ) = 0, Ξ_β(ρ) = i > 1 and ρ lies
        in cell 1 (P_a); 0 otherwise.

        Raises:
            PreconditionViolation: ξ >= β or the partition does not have two cells.
            TypeTooSmall: n_l < 2^{m_{l-1} - r_l} + 1 at some level l <= ρ.
        """
        if not xi < beta:
            raise PreconditionViolation("coherent Suslin bit needs xi < beta", xi=xi, beta=beta)
        if part.cell_count != 2:
            raise PreconditionViolation("the partition must have exactly two cells", cells=part.cell_count)
        rho = self.metrics.rho(xi, beta)
        self.require_growth(
            "coherent Suslin tree", rho, lambda l: 2 ** self.scheme.d(l) + 1
        )
        if self.metrics.xi(xi, rho) != 0:
            return 0
        index = self.metrics.xi(beta, rho)
        cell = cell_of(part, self.scheme.spec, rho)
        if index == 1 and cell == CELL_COHERENT:
            return 1
        if index > 1 and cell == CELL_ANTICHAIN:
            offset = self.position(xi, rho) - self.scheme.r(rho)
            return binary_counter_bit(index, offset, self.scheme.d(rho))
        return 0

    def coherent_suslin_function(self, beta: int, part: PartitionSpec) -> Tuple[int, ...]:
        """f_β on β."""
        return tuple(self.coherent_suslin_bit(beta, xi, part) for xi in range(beta))

    # Full Suslin trees

    def _require_full_suslin_type(self, k: int) -> None:
        self.require_growth(
            "full Suslin tree",
            k,
            lambda l: self.scheme.m(l - 1) * l * 2 ** self.scheme.m(l - 1),
        )
        size = (k + 1) * (2 ** self.scheme.m(k) - 1)
        if size > self.scheme.config.element_budget:
            raise BudgetExceeded(
                f"the rank-{k} tree has {size} nodes", k=k, budget=self.scheme.config.element_budget
            )

    def enumerated_subset(self, k: int, index: int) -> Tuple[TreeNode, ...]:
        """C_index ⊆ T^{m_k}: bit j of index mod 2^|T| selects the j-th node; C_0 = ∅."""
        nodes = self.level_tree(k).nodes
        mask = index % (1 << len(nodes))
        return tuple(node for j, node in enumerate(nodes) if mask >> j & 1)

    def level_tree(self, k: int) -> FiniteTree:
        """(T^{m_k}, <_{m_k}) on positional nodes.

        Raises:
            TypeTooSmall: n_{j+1} < m_j (j+1) 2^{m_j} for some j < k.
            BudgetExceeded: the tree exceeds the element budget.
        """
        cached = self._trees.get(k)
        if cached is not None:
            return cached
        if k == 0:
            tree = FiniteTree({(0, 0): None}, rank_key=positional)
        else:
            self._require_full_suslin_type(k)
            tree = self._extend(self.level_tree(k - 1), k)
        self._trees[k] = tree
        self.log_info("Built full Suslin level", k=k, nodes=len(tree))
        return tree

    def _extend(self, base: FiniteTree, k: int) -> FiniteTree:
        n, r, d = self.scheme.n(k), self.scheme.r(k), self.scheme.d(k)
        width = k
        current = base
        for i in range(n - 1):
            shift = d * (i + 1)
            anchors = self._anchor_set(current, base, i + 1, r, width)
            copy = self._shifted_copy(base, r, shift)
            branches = {
                (r + shift, s): least_branch_through(current, anchors[s])
                for s in range(width << r)
            }
            current = amalgamate(copy, current, r, branches)
            current = self._fill(current, r + shift - 1, r + shift + d, width, shift)
        return self._widen(current, self.scheme.m(k), width)

    def _anchor_set(
        self, tree: FiniteTree, base: FiniteTree, index: int, r: int, width: int
    ) -> Dict[int, TreeNode]:
        """A maximal r-good set extending C_index when that set is r-good.

        Returns the element above each rank-r node (r, s), keyed by s.
        """
        nodes = base.nodes
        mask = index % (1 << len(nodes))
        chosen: List[TreeNode] = [node for j, node in enumerate(nodes) if mask >> j & 1]
        if not l_good(chosen, tree, r):
            chosen = []
        anchors: Dict[int, TreeNode] = {}
        for node in chosen:
            slot = node if node[0] == r else tree.ancestors(node)[r]
            anchors[slot[1]] = node
        for s in range(width << r):
            anchors.setdefault(s, (r, s))
        return anchors

    @staticmethod
    def _shifted_copy(base: FiniteTree, r: int, shift: int) -> FiniteTree:
        """T^{F_i}: the base tree with positions >= r moved up by ``shift``."""

        def move(node: Optional[TreeNode]) -> Optional[TreeNode]:
            if node is None or node[0] < r:
                return node
            return (node[0] + shift, node[1])

        parent = {move(x): move(p) for x, p in base.parent.items()}
        return FiniteTree(
            parent, rank_key=lambda node: node[0] if node[0] < r else node[0] - shift
        )

    @staticmethod
    def _fill(tree: FiniteTree, top: int, end: int, width: int, shift: int) -> FiniteTree:
        """Give every node at positions top..end-2 exactly two children.

        Fresh nodes at position p take the indices from width·2^{p-shift}
        upwards, in order of their parents.
        """
        parent = dict(tree.parent)
        kids: Dict[TreeNode, int] = {}
        for x, p in parent.items():
            if p is not None and p[0] >= top:
                kids[p] = kids.get(p, 0) + 1
        for position in range(top, end - 1):
            fresh = width << (position + 1 - shift)
            holders = sorted(x for x in parent if x[0] == position)
            for holder in holders:
                for _ in range(2 - kids.get(holder, 0)):
                    child = (position + 1, fresh)
                    parent[child] = holder
                    kids[holder] = kids.get(holder, 0) + 1
                    fresh += 1
        return FiniteTree(parent, rank_key=positional)

    @staticmethod
    def _widen(tree: FiniteTree, height: int, width: int) -> FiniteTree:
        """Add the root (0, width) with a complete binary tree of fresh nodes above it."""
        parent = dict(tree.parent)
        parent[(0, width)] = None
        for position in range(1, height):
            low = width << position
            for j in range(1 << position):
                parent[(position, low + j)] = (position - 1, (width << (position - 1)) + j // 2)
        return FiniteTree(parent, rank_key=positional)

    def tree_of(self, F: Tuple[int, ...]) -> FiniteTree:
        """(T^F, <_F) with nodes (F(p), s)."""
        k = self.scheme.rank_of(F)
        tree = self.level_tree(k)
        return tree.relabel({node: (F[node[0]], node[1]) for node in tree.parent})

    def full_suslin_levels(self, k: int) -> Dict[Tuple[int, ...], FiniteTree]:
        """T^F for every F in the scheme over m_k."""
        return {F: self.tree_of(F) for F in self.scheme.level_sets(k)}

    def piece_nodes(self, k: int, i: int) -> FrozenSet[TreeNode]:
        """Positional nodes of T^{F_i} inside the rank-k tree over m_k."""
        base = self.level_tree(k - 1)
        return frozenset((self.scheme.piece_map(k, i, p), s) for p, s in base.parent)

    def piece_embedding_failures(self, k: int) -> List[Tuple[int, TreeNode]]:
        """Pieces i and lower nodes x whose predecessors in T^{F_i} are not φ_i of x's.

        Empty when every piece of the rank-k tree is an order copy of the rank
        k-1 tree.
        """
        base, tree = self.level_tree(k - 1), self.level_tree(k)
        failures = []
        for i in range(self.scheme.n(k)):
            nodes = self.piece_nodes(k, i)
            for p, s in base.nodes:
                image = (self.scheme.piece_map(k, i, p), s)
                expected = tuple(
                    (self.scheme.piece_map(k, i, q), t) for q, t in base.ancestors((p, s))
                )
                actual = tuple(y for y in tree.ancestors(image) if y in nodes)
                if actual != expected:
                    failures.append((i, (p, s)))
        return failures

    def good_subset_witnessed(self, k: int, index: int) -> Optional[bool]:
        """For r_k-good C_index: whether x < φ_index(x) for every x ∈ C_index.

        None when C_index is not r_k-good or the index exceeds n_k - 1.
        """
        if not 0 < index < self.scheme.n(k):
            return None
        base = self.level_tree(k - 1)
        C = self.enumerated_subset(k - 1, index)
        if not l_good(C, base, self.scheme.r(k)):
            return None
        tree = self.level_tree(k)
        return all(
            tree.less(x, (self.scheme.piece_map(k, index, x[0]), x[1])) for x in C
        )
