"""Almost disjoint families, the gap and the coherent families on finite windows."""

from itertools import combinations
from typing import List

from ...models.errors import SchemeError
from ...models.results import CheckResult
from ..constructions import FamilyService, IndependentService
from .base import SuiteContext, Tally, failed_check, results

INDEPENDENT_WINDOW = 12
INDEPENDENT_LEVELS = 4


def families_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme, metrics = ctx.scheme, ctx.metrics
    families = FamilyService(scheme, metrics)
    N = ctx.window

    def top(beta: int) -> int:
        return scheme.universe_level(beta) + 1

    almost_disjoint = Tally("luzin_jones_almost_disjoint")
    meet_at_rho = Tally("luzin_jones_meet_at_rho")
    separated = Tally("separator_contains_lower_members")
    above = Tally("separator_misses_higher_members")
    gap = Tally("gap_separates_pairs")
    disjoint = Tally("gap_sides_disjoint")
    coherent = Tally("coherent_family_agrees_above_rho")
    fiber = Tally("fiber_witness_in_both_fibers")

    for beta in range(N):
        K = top(beta)
        A_beta = families.luzin_jones(beta, K)
        C_beta = families.jones_separator(beta, K)
        a, b = families.gap_sets(beta, K)
        disjoint.record(not set(a) & set(b), alpha=beta)
        for alpha in range(beta):
            rho = metrics.rho(alpha, beta)
            common = families.luzin_jones(alpha, K).intersection(A_beta)
            almost_disjoint.record(
                all(level <= rho for level in common.levels()), alpha=alpha, beta=beta
            )
            meet_at_rho.record(len(common.at_level(rho)) == rho, alpha=alpha, beta=beta, rho=rho)

            outside = families.luzin_jones(alpha, K).difference(C_beta)
            separated.record(
                all(level < rho for level in outside.levels()), alpha=alpha, beta=beta
            )

            a_beta, _ = families.gap_sets(beta, rho)
            _, b_alpha = families.gap_sets(alpha, rho)
            gap.record(
                2 * rho + 1 in set(a_beta) & set(b_alpha), alpha=alpha, beta=beta, rho=rho
            )

            f, g = families.coherent_family(alpha, K), families.coherent_family(beta, K)
            shared = [p for p in f.values if p in g.values and p[0] > rho]
            coherent.record(
                all(f.values[p] == g.values[p] for p in shared), alpha=alpha, beta=beta
            )

            roots = [
                x for x in scheme.closure_minus(alpha, rho) if metrics.xi(x, rho) == -1
            ]
            f_rho, g_rho = families.coherent_family(alpha, rho), families.coherent_family(beta, rho)
            for xi, mu in combinations(roots, 2):
                block = families.luzin_fiber_witness(xi, mu, alpha, beta)
                fiber.record(
                    set(block.elements) <= set(f_rho.fiber(xi))
                    and set(block.elements) <= set(g_rho.fiber(mu)),
                    xi=xi,
                    mu=mu,
                    alpha=alpha,
                    beta=beta,
                )

        for gamma in range(beta + 1, N):
            K_gamma = top(gamma)
            reach = scheme.universe_level(gamma)
            C_wide = families.jones_separator(beta, K_gamma)
            common = families.luzin_jones(gamma, K_gamma).intersection(C_wide)
            above.record(
                all(level <= reach for level in common.levels()), beta=beta, gamma=gamma
            )

    checks = results(almost_disjoint, meet_at_rho, separated, above, gap, disjoint, coherent, fiber)
    checks.extend(_independent_checks(ctx))
    return checks


def _independent_checks(ctx: SuiteContext) -> List[CheckResult]:
    """Coherence and tower inclusion of the independent family on its own type."""
    coherence = Tally("independent_family_coheres")
    tower = Tally("independent_tower_increases")
    try:
        scheme, metrics = ctx.view("independent")
        service = IndependentService(scheme, metrics)
        for alpha, beta in combinations(range(INDEPENDENT_WINDOW), 2):
            points = service.coherence_failures(alpha, beta, INDEPENDENT_LEVELS)
            coherence.record(not points, alpha=alpha, beta=beta, points=points)
            points = service.tower_failures(alpha, beta, INDEPENDENT_LEVELS)
            tower.record(not points, alpha=alpha, beta=beta, points=points)
    except SchemeError as e:
        return [failed_check("independent_family", e)]
    return results(coherence, tower)
