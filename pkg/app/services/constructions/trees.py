"""Finite trees given by parent maps, and their amalgamation along branches."""

from itertools import combinations
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ...models.errors import PreconditionViolation

Node = Hashable


class FiniteTree:
    """A finite tree in which every node has at most one immediate predecessor."""

    def __init__(
        self,
        parent: Mapping[Node, Optional[Node]],
        rank_key: Optional[Callable[[Node], int]] = None,
    ):
        self.parent: Dict[Node, Optional[Node]] = dict(parent)
        self.rank_key = rank_key
        self._rank: Dict[Node, int] = {}
        self._children: Optional[Dict[Node, List[Node]]] = None

    def __contains__(self, node: Node) -> bool:
        return node in self.parent

    def __len__(self) -> int:
        return len(self.parent)

    @property
    def nodes(self) -> List[Node]:
        return sorted(self.parent)

    def rank(self, node: Node) -> int:
        if self.rank_key is not None:
            return self.rank_key(node)
        cached = self._rank.get(node)
        if cached is not None:
            return cached
        chain = []
        cur: Optional[Node] = node
        while cur is not None and cur not in self._rank:
            chain.append(cur)
            cur = self.parent[cur]
        base = -1 if cur is None else self._rank[cur]
        for offset, item in enumerate(reversed(chain), start=1):
            self._rank[item] = base + offset
        return self._rank[node]

    def ancestors(self, node: Node) -> Tuple[Node, ...]:
        """node↓, from the root up."""
        chain = []
        cur = self.parent[node]
        while cur is not None:
            chain.append(cur)
            cur = self.parent[cur]
        return tuple(reversed(chain))

    def less(self, x: Node, y: Node) -> bool:
        """x < y in the tree order."""
        if x == y:
            return False
        target = self.rank(x)
        cur: Optional[Node] = y
        while cur is not None and self.rank(cur) > target:
            cur = self.parent[cur]
        return cur == x

    def children(self, node: Node) -> List[Node]:
        if self._children is None:
            index: Dict[Node, List[Node]] = {x: [] for x in self.parent}
            for x, p in self.parent.items():
                if p is not None:
                    index[p].append(x)
            for kids in index.values():
                kids.sort()
            self._children = index
        return self._children[node]

    def level(self, l: int) -> List[Node]:
        return sorted(x for x in self.parent if self.rank(x) == l)

    def restricted_below(self, l: int) -> FrozenSet[Node]:
        """T|_l: nodes of rank < l."""
        return frozenset(x for x in self.parent if self.rank(x) < l)

    @property
    def height(self) -> int:
        return 1 + max((self.rank(x) for x in self.parent), default=-1)

    def relabel(self, mapping: Mapping[Node, Node]) -> "FiniteTree":
        return FiniteTree(
            {mapping[x]: (None if p is None else mapping[p]) for x, p in self.parent.items()}
        )

    def relation(self) -> Set[Tuple[Node, Node]]:
        """All pairs x < y."""
        return {(a, x) for x in self.parent for a in self.ancestors(x)}


def least_branch_through(tree: FiniteTree, node: Node) -> Tuple[Node, ...]:
    """The maximal branch through ``node`` that climbs by least children."""
    branch = list(tree.ancestors(node)) + [node]
    cur = node
    while tree.children(cur):
        cur = tree.children(cur)[0]
        branch.append(cur)
    return tuple(branch)


def l_good(C: Iterable[Node], tree: FiniteTree, l: int) -> bool:
    """Every element of C has rank >= l and their rank-l ancestors are distinct.

    Rank-l ancestors are taken inclusively, so no element of C lies above
    another one.
    """
    seen = set()
    for y in C:
        if tree.rank(y) < l:
            return False
        anchor = y if tree.rank(y) == l else tree.ancestors(y)[l]
        if anchor in seen:
            return False
        seen.add(anchor)
    return True


def amalgamate(
    T: FiniteTree, L: FiniteTree, l: int, branches: Mapping[Node, Sequence[Node]]
) -> FiniteTree:
    """The amalgamation of T and L through the branches {B_t : t ∈ T_l}.

    T and L must share exactly T|_l = L|_l, and B_t ∩ T|_l must be t↓_T.

    Raises:
        PreconditionViolation: the shared part or a branch does not fit.
    """
    shared = T.restricted_below(l)
    if shared != L.restricted_below(l) or any(x in L for x in T.parent if x not in shared):
        raise PreconditionViolation("trees must intersect in their common part below l", l=l)
    parent = dict(L.parent)
    for t in T.level(l):
        branch = branches.get(t)
        if not branch:
            raise PreconditionViolation("missing branch for a rank-l node", node=str(t))
        if set(branch) & shared != set(T.ancestors(t)) or any(b not in L for b in branch):
            raise PreconditionViolation("branch does not extend the node's predecessors", node=str(t))
        parent[t] = max(branch, key=L.rank)
    for x, p in T.parent.items():
        if x not in shared and T.rank(x) > l:
            parent[x] = p
    return FiniteTree(parent, rank_key=L.rank_key)


def amalgamation_relation(
    T: FiniteTree, L: FiniteTree, l: int, branches: Mapping[Node, Sequence[Node]]
) -> Set[Tuple[Node, Node]]:
    """<_B computed literally from its three clauses."""
    relation = set(T.relation()) | set(L.relation())
    for t in T.level(l):
        above = [y for y in T.parent if y == t or T.less(t, y)]
        for x in branches[t]:
            for y in above:
                relation.add((x, y))
    return relation


def is_tree_relation(nodes: Iterable[Node], relation: Set[Tuple[Node, Node]]) -> bool:
    """Strict partial order whose predecessor sets are chains."""
    universe = list(nodes)
    if any((x, x) in relation for x in universe):
        return False
    for x, y in relation:
        for z in universe:
            if (y, z) in relation and (x, z) not in relation:
                return False
    for y in universe:
        below = [x for x in universe if (x, y) in relation]
        for a, b in combinations(below, 2):
            if (a, b) not in relation and (b, a) not in relation:
                return False
    return True
