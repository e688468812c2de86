"""The Countryman line and the special Aronszajn tree on finite windows."""

from collections import defaultdict
from itertools import combinations
from typing import Dict, List, Tuple

from ...models.constructions import AronszajnNode
from ...models.results import CheckResult
from ..constructions import OrderService
from .base import SuiteContext, Tally, results


def countryman_suite(ctx: SuiteContext) -> List[CheckResult]:
    orders = OrderService(ctx.scheme, ctx.metrics)
    N = ctx.window
    less = orders.countryman_less

    irreflexive = Tally("countryman_irreflexive")
    total = Tally("countryman_total")
    transitive = Tally("countryman_transitive")
    for a in range(N):
        irreflexive.record(not less(a, a), alpha=a)
    for a, b in combinations(range(N), 2):
        total.record(less(a, b) != less(b, a), alpha=a, beta=b)
    for a in range(N):
        for b in range(N):
            if a == b or not less(a, b):
                continue
            for c in range(N):
                if c not in (a, b) and less(b, c):
                    transitive.record(less(a, c), alpha=a, beta=b, gamma=c)

    chains = Tally("label_classes_are_chains")
    classes: Dict[Tuple[int, int, int], List[Tuple[int, int]]] = defaultdict(list)
    for b in range(min(N, ctx.config.verify.chain_window)):
        for a in range(b):
            classes[orders.countryman_chain_index(a, b)].append((a, b))
    for label, pairs in sorted(classes.items()):
        for (a, b), (c, d) in combinations(pairs, 2):
            if a == c or b == d:
                continue
            chains.record(less(a, c) == less(b, d), label=label, first=(a, b), second=(c, d))

    moved = Tally("order_follows_moved_points")
    for a, b in combinations(range(N), 2):
        for gamma, image in orders.lemma_pair_witnesses(a, b):
            moved.record(less(a, b) == less(gamma, image), alpha=a, beta=b, gamma=gamma)

    return results(irreflexive, total, transitive, chains, moved)


def _antichain_tally(name: str, nodes: List[AronszajnNode]) -> Tally:
    tally = Tally(name)
    labels: Dict[Tuple[int, int], List[AronszajnNode]] = defaultdict(list)
    for node in nodes:
        labels[(node.k, node.s)].append(node)
    for label, members in sorted(labels.items()):
        for f, g in combinations(members, 2):
            tally.record(
                OrderService.antichain_separated(f, g), label=label, first=f.beta, second=g.beta
            )
    return tally


def aronszajn_suite(ctx: SuiteContext) -> List[CheckResult]:
    orders = OrderService(ctx.scheme, ctx.metrics)
    N = ctx.window

    coherence = Tally("rho_functions_cohere")
    for a, b in combinations(range(N), 2):
        failures = orders.rho_coherence_failures(a, b)
        coherence.record(not failures, alpha=a, beta=b, points=failures)

    plain = [orders.aronszajn_node(beta) for beta in range(N)]
    modified = [
        orders.aronszajn_node(beta, {0: ctx.metrics.rho(0, beta) + 1}) for beta in range(1, N)
    ]
    return results(
        coherence,
        _antichain_tally("labels_are_antichains", plain),
        _antichain_tally("modified_labels_are_antichains", modified),
    )
