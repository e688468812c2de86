"""Metric axioms, the Δ/Ξ lemmas and oscillation bounds on finite windows."""

from itertools import combinations
from typing import List, Set, Tuple

from ...models.results import CheckResult
from ..ordinal_metrics import INFINITY
from .base import SuiteContext, Tally, results

IntSet = Tuple[int, ...]


def closed_sets(ctx: SuiteContext, m: int) -> List[Tuple[IntSet, int]]:
    """Nonempty A ⊆ m with (β)_{ρ^A} ⊆ A for every β ∈ A, with their diameters."""
    metrics = ctx.metrics
    found = []
    for mask in range(1, 1 << m):
        A = tuple(x for x in range(m) if mask >> x & 1)
        diameter = metrics.rho_diameter(A)
        members = set(A)
        if all(set(metrics.closure(beta, diameter)) <= members for beta in A):
            found.append((A, diameter))
    return found


def maximal_closed(closed: List[Tuple[IntSet, int]], k: int) -> Set[IntSet]:
    kept: List[Set[int]] = []
    for A, diameter in sorted(closed, key=lambda entry: -len(entry[0])):
        if diameter <= k and not any(set(A) <= B for B in kept):
            kept.append(set(A))
    return {tuple(sorted(A)) for A in kept}


def metric_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme, metrics = ctx.scheme, ctx.metrics
    N = ctx.window
    K = ctx.max_level

    zero = Tally("rho_zero_iff_equal")
    symmetric = Tally("rho_symmetric")
    bounded = Tally("rho_triangle")
    for a in range(N):
        for b in range(N):
            zero.record((metrics.rho(a, b) == 0) == (a == b), alpha=a, beta=b)
            symmetric.record(metrics.rho(a, b) == metrics.rho(b, a), alpha=a, beta=b)
    for a, b in combinations(range(N), 2):
        for c in range(a + 1, N):
            if c != b:
                bounded.record(
                    metrics.rho(a, b) <= max(metrics.rho(a, c), metrics.rho(b, c)),
                    alpha=a,
                    beta=b,
                    gamma=c,
                )

    monotone = Tally("closures_increase_with_level")
    independent = Tally("closure_independent_of_member")
    for beta in range(N):
        for k in range(K + 1):
            monotone.record(
                set(metrics.closure(beta, k)) <= set(metrics.closure(beta, k + 1)), beta=beta, k=k
            )
    for k in range(min(K, 4) + 1):
        for F in scheme.finite_scheme(min(K, 4)):
            if len(F) != scheme.m(k):
                continue
            for beta in F:
                independent.record(
                    tuple(x for x in F if x <= beta) == metrics.closure(beta, k), F=F, beta=beta, k=k
                )

    maximal = Tally("members_are_maximal_closed_sets")
    top = ctx.levels_within(2 ** 4 - 2)
    top = min(top, 4)
    closed = closed_sets(ctx, scheme.m(top))
    for k in range(top + 1):
        expected = {F for F in scheme.finite_scheme(top) if len(F) == scheme.m(k)}
        maximal.record(maximal_closed(closed, k) == expected, k=k, window=scheme.m(top))

    below = Tally("delta_at_most_rho")
    lemma3 = Tally("delta_transfer")
    for a, b in combinations(range(N), 2):
        below.record(metrics.delta(a, b) <= metrics.rho(a, b), alpha=a, beta=b)
    for a in range(N):
        for b in range(N):
            if a == b:
                continue
            ab = metrics.delta(a, b)
            for d in range(N):
                if d in (a, b):
                    continue
                if ab < metrics.delta(b, d):
                    lemma3.record(metrics.delta(a, d) == ab, alpha=a, beta=b, delta=d)

    ultrametric = Tally("ultrametric_failures", informational=True)
    for triple in metrics.ultrametric_failures(min(N, 20)):
        ultrametric.record(False, triple=triple)
    checks = results(zero, symmetric, bounded, monotone, independent, maximal, below, lemma3)
    checks.append(ultrametric.result("witnesses only; no assertion is made"))
    return checks


def xi_suite(ctx: SuiteContext) -> List[CheckResult]:
    metrics = ctx.metrics
    N = ctx.window
    K = ctx.max_level

    agree_below = Tally("xi_agree_below_delta")
    ordered_at_rho = Tally("xi_ordered_at_rho")
    above_rho = Tally("xi_above_rho")
    at_delta = Tally("xi_distinct_at_delta")
    for a, b in combinations(range(N), 2):
        delta, rho = metrics.delta(a, b), metrics.rho(a, b)
        for k in range(1, K + 1):
            xa, xb = metrics.xi(a, k), metrics.xi(b, k)
            if k < delta:
                agree_below.record(xa == xb, alpha=a, beta=b, k=k)
            elif k == rho:
                ordered_at_rho.record(0 <= xa < xb, alpha=a, beta=b, k=k)
            elif k > rho:
                above_rho.record(xa in (-1, xb), alpha=a, beta=b, k=k)
            if k == delta:
                at_delta.record(xa >= 0 and xb >= 0 and xa != xb, alpha=a, beta=b, k=k)

    corollary = Tally("rho_drop_inherited")
    for x, a, b in combinations(range(N), 3):
        rab = metrics.rho(a, b)
        if metrics.rho(x, b) < rab:
            corollary.record(metrics.rho(x, a) < rab, xi=x, alpha=a, beta=b)

    clause_a = Tally("moved_points_stay_moved")
    clause_b = Tally("moved_delta_below_rho")
    clause_c = Tally("moved_delta_decreasing")
    clause_d = Tally("moved_delta_above_pair_delta")
    lemma5 = Tally("moved_points_follow_xi")
    for a, b in combinations(range(N), 2):
        delta = metrics.delta(a, b)
        if delta is INFINITY or delta > K:
            continue
        rho = metrics.rho(a, b)
        phi = metrics.increasing_bijection(a, b, delta - 1)
        domain = sorted(phi)
        moved = [g for g in domain if phi[g] != g]
        for d in moved:
            dd = metrics.delta(d, phi[d])
            clause_b.record(rho >= dd, alpha=a, beta=b, delta=d)
            for g in domain:
                if g <= d:
                    continue
                still = clause_a.record(phi[g] != g, alpha=a, beta=b, delta=d, gamma=g)
                if still:
                    dg = metrics.delta(g, phi[g])
                    clause_c.record(dd >= dg, alpha=a, beta=b, delta=d, gamma=g)
        for g in moved:
            dg = metrics.delta(g, phi[g])
            clause_d.record(dg >= delta, alpha=a, beta=b, gamma=g)
            xg = metrics.xi(g, delta)
            holds = (dg > delta) == (xg == -1)
            if holds and xg >= 0:
                holds = xg == metrics.xi(a, delta) and metrics.xi(phi[g], delta) == metrics.xi(b, delta)
            lemma5.record(holds, alpha=a, beta=b, gamma=g, level=delta)

    return results(
        agree_below,
        ordered_at_rho,
        above_rho,
        at_delta,
        corollary,
        clause_a,
        clause_b,
        clause_c,
        clause_d,
        lemma5,
    )


def oscillation_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme, metrics = ctx.scheme, ctx.metrics
    N = ctx.window

    witnesses = Tally("osc_witnesses_below_rho")
    strict = Tally("f_strict_from_rho")
    reflexive = Tally("osc_reflexive_zero")
    for b in range(N):
        reflexive.record(metrics.osc(b, b) == (0, ()), alpha=b)
        for a in range(b):
            rho = metrics.rho(a, b)
            top = scheme.universe_level(b) + 2
            brute = tuple(
                s
                for s in range(top)
                if metrics.f(a, s) <= metrics.f(b, s) and metrics.f(a, s + 1) > metrics.f(b, s + 1)
            )
            witnesses.record(
                brute == metrics.osc_witnesses(a, b) and all(s < rho for s in brute),
                alpha=a,
                beta=b,
            )
            strict.record(
                all(metrics.f(a, j) < metrics.f(b, j) for j in range(rho, top)), alpha=a, beta=b
            )
    return results(witnesses, strict, reflexive)
