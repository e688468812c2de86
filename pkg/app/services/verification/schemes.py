"""Scheme axioms, restriction, covers, morass predicates and the type recurrence."""

from itertools import combinations
from typing import Iterator, List, Set, Tuple

from ...models.results import CheckResult
from ...models.sets import is_initial_segment, set_less
from ..type_core import compute_m, compute_m_fold, validate_type
from .base import SuiteContext, Tally, results

IntSet = Tuple[int, ...]

KNUTH_MULTIPLIER = 2654435761


def subsets_of(m: int, exhaustive_limit: int, samples: int) -> Iterator[IntSet]:
    """Every nonempty subset of m up to the limit, else a fixed multiplicative sample."""
    if m <= exhaustive_limit:
        masks = range(1, 1 << m)
    else:
        masks = ((i * KNUTH_MULTIPLIER) % ((1 << m) - 1) + 1 for i in range(samples))
    for mask in masks:
        yield tuple(x for x in range(m) if mask >> x & 1)


def members_top_down(ctx: SuiteContext, k: int) -> Set[IntSet]:
    """F(m_k) recomputed by decomposing m_k piece by piece."""
    scheme = ctx.scheme
    found: Set[IntSet] = set()
    stack = [tuple(range(scheme.m(k)))]
    while stack:
        F = stack.pop()
        if F in found:
            continue
        found.add(F)
        if len(F) > 1:
            stack.extend(scheme.pieces(F))
    return found


def scheme_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme, metrics = ctx.scheme, ctx.metrics
    verify = ctx.config.verify
    K = ctx.max_level

    cofinal = Tally("cofinality")
    sizes = Tally("cardinality")
    initial = Tally("same_rank_intersections")
    decomposition = Tally("canonical_decomposition")
    for k in range(K + 1):
        for A in subsets_of(scheme.m(k), verify.cofinality_exhaustive_limit, verify.cofinality_samples):
            top = A[-1]
            level = max(metrics.rho(a, top) for a in A)
            G = scheme.member_of_rank_containing(top, level)
            cofinal.record(
                set(A) <= set(G) and scheme.is_member(G) and G[-1] < scheme.m(k),
                subset=A,
                level=level,
            )

        by_rank = {}
        for F in scheme.finite_scheme(k):
            rank = scheme.rank_of_size(len(F))
            sizes.record(rank is not None, set=F)
            by_rank.setdefault(rank, []).append(F)
        if k == K:
            for members in by_rank.values():
                for E, F in combinations(sorted(members), 2):
                    meet = tuple(x for x in E if x in set(F))
                    initial.record(
                        is_initial_segment(meet, E) and is_initial_segment(meet, F), E=E, F=F
                    )
            for F in scheme.level_sets(k):
                if len(F) > 1:
                    decomposition.record(_decomposes(ctx, F), F=F)

    restriction = Tally("restriction")
    oracle = Tally("top_down_recursion")
    for l in range(K + 1):
        upper = scheme.finite_scheme(l)
        oracle.record(members_top_down(ctx, l) == set(upper), level=l)
        for k in range(l + 1):
            restricted = {G for G in upper if G[-1] < scheme.m(k)}
            restriction.record(restricted == set(scheme.finite_scheme(k)), k=k, l=l)

    cover = Tally("cover_by_lower_ranks")
    mixed = Tally("mixed_rank_intersections")
    top = min(K, 4)
    members = scheme.level_sets(top)
    for F in members:
        l = scheme.rank_of_size(len(F))
        for k in range(l + 1):
            union = {x for G in scheme.subsets_of_rank(F, k) for x in G}
            cover.record(union == set(F), F=F, k=k)
    for E in members:
        k = scheme.rank_of_size(len(E))
        for F in members:
            l = scheme.rank_of_size(len(F))
            if k > l:
                continue
            meet = tuple(x for x in E if x in set(F))
            holds = is_initial_segment(meet, E)
            if holds and k < l and set(E) <= set(F):
                holding = [i for i, piece in enumerate(scheme.pieces(F)) if set(E) <= set(piece)]
                inside_root = set(E) <= set(scheme.root(F))
                holds = bool(holding) and (inside_root or len(holding) == 1)
            mixed.record(holds, E=E, F=F)

    transport = Tally("transport")
    for k in range(min(top, 2) + 1):
        same = [F for F in members if scheme.rank_of_size(len(F)) == k]
        for F in same:
            inner = [s for s in members if set(s) <= set(F)]
            for G in same:
                for s in inner:
                    t = scheme.transport(F, G, s)
                    holds = scheme.is_member(t) and len(t) == len(s)
                    if holds and len(s) > 1:
                        h = dict(zip(F, G))
                        holds = scheme.pieces(t) == [tuple(h[x] for x in p) for p in scheme.pieces(s)]
                    transport.record(holds, F=F, G=G, s=s)

    checks = results(cofinal, sizes, initial, decomposition, restriction, oracle, cover, mixed, transport)
    checks.extend(_morass_checks(ctx, members))
    return checks


def _decomposes(ctx: SuiteContext, F: IntSet) -> bool:
    scheme = ctx.scheme
    k = scheme.rank_of(F)
    pieces = scheme.pieces(F)
    root = scheme.root(F)
    if len(pieces) != scheme.n(k) or len(root) != scheme.r(k):
        return False
    if not all(scheme.is_member(p) and len(p) == scheme.m(k - 1) for p in pieces):
        return False
    if {x for p in pieces for x in p} != set(F) or not is_initial_segment(root, F):
        return False
    for a, b in combinations(pieces, 2):
        if set(a) & set(b) != set(root):
            return False
        if not set_less(a[len(root):], b[len(root):]):
            return False
    return True


def _morass_checks(ctx: SuiteContext, members: List[IntSet]) -> List[CheckResult]:
    """Homogeneity, directedness and local almost directedness of F(m_4)."""
    scheme, metrics = ctx.scheme, ctx.metrics
    homogeneous = Tally("morass_homogeneous")
    directed = Tally("morass_directed")
    local = Tally("morass_locally_almost_directed")
    if not scheme.is_binary:
        detail = "morass predicates are checked for binary types only"
        return [homogeneous.result(detail), directed.result(detail), local.result(detail)]

    inside = {F: {s for s in members if set(s) <= set(F)} for F in members}
    for X, Y in combinations(members, 2):
        if len(X) == len(Y):
            f = dict(zip(X, Y))
            image = {tuple(f[x] for x in s) for s in inside[X]}
            homogeneous.record(image == inside[Y], X=X, Y=Y)
        union = tuple(sorted(set(X) | set(Y)))
        level = metrics.rho_diameter(union)
        Z = scheme.member_of_rank_containing(union[-1], level)
        directed.record(set(union) <= set(Z) and scheme.is_member(Z), X=X, Y=Y)

    for X in members:
        proper = [s for s in inside[X] if s != X]
        if len(X) == 1:
            local.record(not proper, X=X)
            continue
        local.record(
            any(
                is_initial_segment(_meet(Y, Z), Y)
                and is_initial_segment(_meet(Y, Z), Z)
                and set_less(_minus(Y, Z), _minus(Z, Y))
                for Y, Z in combinations(sorted(proper), 2)
            ),
            X=X,
        )
    return results(homogeneous, directed, local)


def _meet(a: IntSet, b: IntSet) -> IntSet:
    return tuple(x for x in a if x in set(b))


def _minus(a: IntSet, b: IntSet) -> IntSet:
    return tuple(x for x in a if x not in set(b))


def type_suite(ctx: SuiteContext) -> List[CheckResult]:
    spec, scheme = ctx.spec, ctx.scheme
    K = ctx.max_level + 2

    recurrence = Tally("recurrence_matches_fold")
    recurrence.record(compute_m(spec, K) == compute_m_fold(spec, K), levels=K)

    clauses = Tally("type_clauses")
    report = validate_type(spec, K)
    for clause in report.clauses:
        clauses.record(clause.passed, clause=clause.clause, k=clause.k, detail=clause.detail)

    growth = Tally("sizes_increase")
    roots = Tally("roots_below_previous_size")
    for k in range(K):
        growth.record(scheme.m(k + 1) > scheme.m(k), k=k)
        roots.record(scheme.r(k + 1) < scheme.m(k), k=k)
    return results(recurrence, clauses, growth, roots)
