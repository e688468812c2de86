"""Lattice, Suslin trees and the entangled family."""

from collections import Counter
from itertools import combinations, permutations
from typing import List

from ...models.errors import InvariantViolation
from ...models.results import CheckResult
from ...models.types import PartitionSpec
from ..constructions import EntangledService, LatticeService, SuslinService
from ..constructions.trees import (
    FiniteTree,
    amalgamate,
    amalgamation_relation,
    is_tree_relation,
    least_branch_through,
)
from .base import SuiteContext, Tally, results

LATTICE_LEVELS = 3
SUSLIN_LEVELS = 2
COHERENT_WINDOW = 20


def lattice_suite(ctx: SuiteContext) -> List[CheckResult]:
    lattice = LatticeService(ctx.scheme, ctx.metrics)
    top = min(LATTICE_LEVELS, ctx.max_level)

    ranks = Tally("lattice_ranks")
    meets = Tally("lattice_closed_under_meets")
    embeds = Tally("lattice_embeddings")
    restricts = Tally("lattice_restrictions")
    for k in range(top + 1):
        for failure in lattice.rank_failures(k) or [None]:
            ranks.record(failure is None, k=k, index=failure)
        for failure in lattice.intersection_failures(k) or [None]:
            meets.record(failure is None, k=k, pair=failure)
        for failure in lattice.embedding_failures(k) or [None]:
            embeds.record(failure is None, k=k, pair=failure)
        if k < top:
            for failure in lattice.restriction_failures(k) or [None]:
                restricts.record(failure is None, k=k, index=failure)
    return results(ranks, meets, embeds, restricts)


def amalgamation_is_tree(base: FiniteTree, l: int) -> bool:
    """Amalgamate a tree with its own copy above rank l and test the result."""
    plain = base.relabel({node: node for node in base.parent})
    shared = plain.restricted_below(l)
    renamed = {node: node if node in shared else ("copy", node) for node in plain.parent}
    copy = plain.relabel(renamed)
    branches = {
        renamed[node]: least_branch_through(plain, node) for node in plain.level(l)
    }
    merged = amalgamate(copy, plain, l, branches)
    relation = amalgamation_relation(copy, plain, l, branches)
    return merged.relation() == relation and is_tree_relation(merged.parent, relation)


def suslin_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme, metrics = ctx.view("full_suslin")
    suslin = SuslinService(scheme, metrics)
    top = min(SUSLIN_LEVELS, ctx.max_level)

    widths = Tally("tree_level_sizes")
    pieces = Tally("pieces_embed")
    good = Tally("good_subsets_sealed")
    for k in range(top + 1):
        tree = suslin.level_tree(k)
        counts = Counter(node[0] for node in tree.parent)
        for p in range(scheme.m(k)):
            widths.record(counts[p] == (k + 1) << p, k=k, position=p, nodes=counts[p])
        if k == 0:
            continue
        for failure in suslin.piece_embedding_failures(k) or [None]:
            pieces.record(failure is None, k=k, failure=failure)
        for index in range(1, scheme.n(k)):
            good.record(suslin.good_subset_witnessed(k, index) is not False, k=k, index=index)

    amalgamation = Tally("amalgamation_is_tree")
    for k in range(1, top):
        for l in range(1, scheme.m(k)):
            amalgamation.record(amalgamation_is_tree(suslin.level_tree(k), l), k=k, l=l)

    coherent = Tally("coherent_bits_cohere")
    bits_scheme, bits_metrics = ctx.view("coherent_suslin")
    bits = SuslinService(bits_scheme, bits_metrics)
    part = PartitionSpec.residue(2)
    functions = [bits.coherent_suslin_function(beta, part) for beta in range(COHERENT_WINDOW)]
    for alpha, beta in combinations(range(COHERENT_WINDOW), 2):
        allowed = set(bits_scheme.closure(alpha, bits_metrics.rho(alpha, beta)))
        differ = [xi for xi in range(alpha) if functions[alpha][xi] != functions[beta][xi]]
        coherent.record(set(differ) <= allowed, alpha=alpha, beta=beta, points=differ)
    return results(widths, pieces, good, amalgamation, coherent)


def entangled_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme, metrics = ctx.view("entangled")
    service = EntangledService(scheme, metrics)
    N = min(ctx.window, scheme.m(2))

    antisymmetric = Tally("lex_order_antisymmetric")
    transitive = Tally("lex_order_transitive")
    origin = Tally("values_start_at_zero")
    roots = Tally("root_levels_are_zero")

    order = {}
    for a, b in permutations(range(N), 2):
        try:
            order[(a, b)] = service.compare(a, b)
        except InvariantViolation as e:
            antisymmetric.record(False, alpha=a, beta=b, error=e.message)
    for a, b in combinations(range(N), 2):
        if (a, b) in order and (b, a) in order:
            antisymmetric.record(order[(a, b)] == -order[(b, a)] != 0, alpha=a, beta=b)
    for a, b in permutations(range(N), 2):
        if order.get((a, b)) != -1:
            continue
        for c in range(N):
            if order.get((b, c)) == -1:
                transitive.record(order.get((a, c)) == -1, alpha=a, beta=b, gamma=c)

    for alpha in range(N):
        origin.record(service.entangled_value(alpha, 0) == 0, alpha=alpha)
        for k in range(1, scheme.universe_level(alpha) + 1):
            if metrics.xi(alpha, k) == -1:
                roots.record(service.entangled_value(alpha, k) == 0, alpha=alpha, k=k)
    return results(antisymmetric, transitive, origin, roots)
