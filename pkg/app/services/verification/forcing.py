"""Kernel lemmas of the extension poset and a replayable generic build over ω·2."""

from itertools import combinations
from typing import Any, Dict, List, Sequence

from ...models.errors import SchemeError
from ...models.forcing import ExtOrdinal, TransEquivReport
from ...models.results import CheckResult
from ..forcing import AcceptanceService, ForcingPoset, GenericBuilder, interval_lemma_failures, lift
from .base import SuiteContext, Tally, _plain, results

KERNEL_LEVELS = 3
INTERVAL_LEVELS = 4
BASE_WINDOW = 20
FRAGMENT_WINDOW = 12

# A root demand needs a level with r_k equal to the anchor of the current
# condition; containing 1 first keeps that anchor at 3.
DEMANDS: Sequence[Dict[str, Any]] = (
    {"op": "contain", "args": {"alpha": 1}},
    {"op": "root", "args": {"beta": [1, 0], "k": 3}},
    {"op": "ih1", "args": {"A": [0, 2], "alpha": 1}},
)


def trans_check(name: str, report: TransEquivReport) -> CheckResult:
    first = report.counterexamples[0] if report.counterexamples else None
    return CheckResult(
        name=name,
        passed=report.passed,
        cases=report.checked,
        counterexample=_plain(first) if first is not None else None,
        detail=(
            f"{report.checked} checked, {report.skipped} skipped, "
            f"{report.both_true} accepted on both sides"
        ),
    )


def forcing_suite(ctx: SuiteContext) -> List[CheckResult]:
    builder = GenericBuilder(ctx.scheme, ctx.config.forcing)
    base = builder.base()
    poset = ForcingPoset(base)
    top = min(KERNEL_LEVELS, ctx.max_level)

    reduction = Tally("cut_conditions_reduce_into_scheme")
    for F, alpha in poset.reduction_failures(top) or [(None, None)]:
        reduction.record(F is None, F=F, alpha=alpha)
    cut = Tally("cut_respects_submembers")
    for failure in poset.cut_lemma_failures(top) or [None]:
        cut.record(failure is None, failure=failure)
    interval = Tally("interval_lemma")
    for failure in interval_lemma_failures(ctx.scheme, min(INTERVAL_LEVELS, ctx.max_level)) or [None]:
        interval.record(failure is None, failure=failure)

    fragment = builder.start(base)
    met = Tally("demands_met")
    witnessed = Tally("ih1_demand_witnessed")
    for demand in DEMANDS:
        try:
            fragment, record = builder.step(fragment, demand["op"], demand["args"])
        except SchemeError as e:
            met.record(False, demand=demand, error=type(e).__name__, message=e.message)
            break
        met.record(True, demand=demand)
        if demand["op"] == "ih1":
            witnessed.record(record.witness is not None, demand=demand)

    restriction = Tally("fragment_restricts_to_ground")
    for image in fragment.restriction_failures() or [None]:
        restriction.record(image is None, member=image)
    chain = Tally("fragment_chain_descends")
    for index in fragment.chain_failures() or [None]:
        chain.record(index is None, index=index)
    agreement = Tally("fragment_rho_matches_ground")
    for a, b in combinations(range(FRAGMENT_WINDOW), 2):
        expected = ctx.metrics.rho(a, b)
        actual = fragment.metrics.rho(ExtOrdinal(0, a), ExtOrdinal(0, b))
        agreement.record(actual == expected, alpha=a, beta=b, fragment=actual, ground=expected)

    checks = results(reduction, cut, interval, met, witnessed, restriction, chain, agreement)

    ground = lift(range(BASE_WINDOW))
    checks.append(
        trans_check(
            "trans_equivalence_ground",
            AcceptanceService(base).verify_trans_equiv(ground, ground, k_max=4, l_max=6),
        )
    )
    fresh = lift(range(FRAGMENT_WINDOW), block=1)
    checks.append(
        trans_check(
            "trans_equivalence_fragment",
            AcceptanceService(fragment).verify_trans_equiv(
                fresh, lift(range(FRAGMENT_WINDOW)) + fresh, k_max=4, l_max=6
            ),
        )
    )
    return checks
