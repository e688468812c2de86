"""Capturing criterion against exhaustive scans, and the pair colorings."""

from collections import Counter
from itertools import combinations
from typing import List

from ...models.queries import CaptureQuery
from ...models.results import CheckResult
from ..capturing import CaptureService
from ..constructions import ColoringService
from .base import SuiteContext, Tally, results

CAPTURE_LEVEL = 4
PARTITION_LIMIT = 8
SAMPLE_EDGE = 16


def interval_sample(low: int, high: int) -> List[int]:
    """Both ends of [low, high], a run next to each end and the midpoint."""
    points = set(range(low, min(high, low + SAMPLE_EDGE) + 1))
    points.update(range(max(low, high - SAMPLE_EDGE), high + 1))
    points.add((low + high) // 2)
    return sorted(points)


def capture_suite(ctx: SuiteContext) -> List[CheckResult]:
    scheme = ctx.scheme
    service = CaptureService(scheme, ctx.metrics)
    top = min(CAPTURE_LEVEL, ctx.max_level)
    window = scheme.m(top)

    agreement = Tally("criterion_matches_scan")
    transported = Tally("capturing_transports")
    for size in range(2, window + 1):
        for C in combinations(range(window), size):
            level = service.ordinal_tuple_captured(C)
            query = CaptureQuery(family=[(x,) for x in C], n=size, window=window)
            hits = service.scan_captured(query)
            agreement.record(
                {hit.level for hit in hits} == ({level} if level is not None else set()),
                tuple=C,
                criterion=level,
                scanned=sorted({hit.level for hit in hits}),
            )
            for hit in hits:
                family = [(C[i],) for i in hit.indices]
                for G in scheme.elements_of_rank_within(hit.level, window):
                    image = [(dict(zip(hit.F, G))[c[0]],) for c in family]
                    transported.record(
                        service.captures(G, image), F=hit.F, G=G, family=family
                    )
    return results(agreement, transported)


def coloring_suite(ctx: SuiteContext) -> List[CheckResult]:
    service = ColoringService(ctx.scheme, ctx.metrics)
    capture = CaptureService(ctx.scheme, ctx.metrics)
    N = ctx.window

    bounded = Tally("polychromatic_two_bounded")
    counts = Counter(color for _, _, color in service.color_table(N))
    for color, count in sorted(counts.items()):
        bounded.record(count <= 2, color=color, pairs=count)

    partition = Tally("partition_intervals")
    allocations = service.partition.certify(PARTITION_LIMIT)
    for n in range(PARTITION_LIMIT + 1):
        for k in range(PARTITION_LIMIT + 1):
            allocation = allocations.get((n, k))
            holds = allocation is not None and allocation.high == 2 * allocation.low + k
            if holds:
                holds = all(
                    service.partition.cell_of(x) == n
                    for x in interval_sample(allocation.low, allocation.high)
                )
            partition.record(holds, n=n, k=k)
    tiling = Tally("partition_tiles_omega")
    for index in service.partition.tiling_failures() or [None]:
        tiling.record(index is None, allocation=index)

    triples = Tally("captured_triples_share_color")
    for C in combinations(range(N), 3):
        if capture.ordinal_tuple_captured(C) is None:
            continue
        a0, a1, a2 = C
        triples.record(
            service.polychromatic_color(a0, a2) == service.polychromatic_color(a1, a2), triple=C
        )
    if not triples.cases:
        triples.record(False, window=N, reason="no captured triple in the window")

    own = Tally("c_sets_contain_their_point")
    for beta in range(N):
        for k in range(ctx.scheme.universe_level(beta) + 1):
            own.record(beta in service.cset_level(beta, k), beta=beta, k=k)
    return results(bounded, partition, tiling, triples, own)
