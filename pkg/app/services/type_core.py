"""Type sequences: recurrence, clause validation, schedules and partitions."""

import threading
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from ..models.errors import IncompatiblePartition, InvalidType
from ..models.types import (
    ClauseResult,
    PartitionReport,
    PartitionSpec,
    ScheduleRule,
    TypeSpec,
    TypeValidationReport,
)
from ..utils.logging import get_logger

logger = get_logger(__name__)

TSTAR_PREFIX = ((2, 0), (3, 1), (2, 0), (2, 2), (2, 1), (2, 3))


@lru_cache(maxsize=4096)
def round_robin(j: int) -> int:
    """The table 0,0,1,0,2,1,3,0,4,2,... indexed from j = 0.

    rr(2j) = j and rr(2j + 1) = rr(j), so every value recurs at 2v, 4v + 1,
    8v + 3, ...
    """
    while j > 1 and j % 2 == 1:
        j //= 2
    return j // 2 if j > 1 else 0


def schedule_r(rule: ScheduleRule, k: int) -> int:
    """r_k prescribed by ``rule`` at level k >= 1."""
    if rule.kind == "round_robin":
        return round_robin((k - 1) // rule.cells + 1)
    if rule.kind == "constant":
        return rule.value
    if not rule.values:
        return 0
    return rule.values[(k - 1) % len(rule.values)]


def rule_n(spec: TypeSpec, k: int, m_prev: int, r: int) -> int:
    """n_k prescribed by the type's n-rule past the prefix."""
    if spec.n_rule == "constant":
        return spec.n_value
    if spec.n_rule == "coherent_suslin":
        return 2 ** (m_prev - r) + 1
    if spec.n_rule == "entangled":
        return 2**m_prev + 1
    if spec.n_rule == "full_suslin":
        return max(2, m_prev * k * 2**m_prev)
    return 2 ** (r * r) + 1


def level_params(spec: TypeSpec, k: int, m_prev: int) -> Tuple[int, int]:
    """(n_k, r_k) for k >= 1 given m_{k-1}."""
    if k <= len(spec.prefix):
        return spec.prefix[k - 1]
    r = schedule_r(spec.schedule, k)
    return rule_n(spec, k, m_prev, r), r


def certify_schedule(rule: ScheduleRule) -> Tuple[bool, Optional[int], str]:
    """Decide whether the schedule attains every root size infinitely often.

    Returns (passed, missing value, explanation).
    """
    if rule.kind == "round_robin":
        return True, None, "round-robin table attains every value infinitely often"
    values = {rule.value} if rule.kind == "constant" else set(rule.values)
    missing = 0
    while missing in values:
        missing += 1
    return False, missing, f"periodic schedule never attains r={missing}"


class TypeTable:
    """Lazily extended table of (m_k, n_k, r_k) for one validated spec.

    Levels are checked for clauses (b) and (d) as they are appended.
    """

    def __init__(self, spec: TypeSpec):
        self.spec = spec
        self._m: List[int] = [1]
        self._n: List[int] = [0]
        self._r: List[int] = [0]
        self._lock = threading.Lock()

    def _extend(self, k: int) -> None:
        with self._lock:
            while len(self._m) <= k:
                level = len(self._m)
                n, r = level_params(self.spec, level, self._m[-1])
                if n < 2:
                    raise InvalidType(
                        f"clause (b) fails at k={level}: n_{level}={n} < 2",
                        k=level,
                        clause="b",
                    )
                if r >= self._m[-1]:
                    raise InvalidType(
                        f"clause (d) fails at k={level}: r_{level}={r} >= m_{level - 1}={self._m[-1]}",
                        k=level,
                        clause="d",
                    )
                self._n.append(n)
                self._r.append(r)
                self._m.append(r + (self._m[-1] - r) * n)

    def m(self, k: int) -> int:
        if k >= len(self._m):
            self._extend(k)
        return self._m[k]

    def n(self, k: int) -> int:
        if k >= len(self._n):
            self._extend(k)
        return self._n[k]

    def r(self, k: int) -> int:
        if k >= len(self._r):
            self._extend(k)
        return self._r[k]

    def d(self, k: int) -> int:
        """Width m_{k-1} - r_k of a non-root block at level k."""
        return self.m(k - 1) - self.r(k)

    def level_above(self, value: int, floor: int = 0) -> int:
        """Least level l >= floor with m_l > value."""
        level = floor
        while self.m(level) <= value:
            level += 1
        return level

    def level_of_size(self, size: int) -> Optional[int]:
        """The k with m_k == size, if any."""
        level = 0
        while self.m(level) < size:
            level += 1
        return level if self.m(level) == size else None


def compute_m(spec: TypeSpec, K: int) -> List[int]:
    """m_0..m_K by the recurrence, raising on the first failing clause.

    Raises:
        InvalidType: clause (a), (b), (d) or (e) fails at some k <= K.
    """
    declared = spec.declared_m
    if declared is not None and declared and declared[0] != 1:
        raise InvalidType("clause (a) fails: m_0 must be 1", k=0, clause="a")

    values = [1]
    for k in range(1, K + 1):
        n, r = level_params(spec, k, values[-1])
        if n < 2:
            raise InvalidType(f"clause (b) fails at k={k}: n_{k}={n} < 2", k=k, clause="b")
        if r >= values[-1]:
            raise InvalidType(
                f"clause (d) fails at k={k}: r_{k}={r} >= m_{k - 1}={values[-1]}",
                k=k,
                clause="d",
            )
        m_k = r + (values[-1] - r) * n
        if declared is not None and k < len(declared) and declared[k] != m_k:
            raise InvalidType(
                f"clause (e) fails at k={k}: declared m_{k}={declared[k]}, recurrence gives {m_k}",
                k=k,
                clause="e",
            )
        values.append(m_k)
    return values


def compute_m_fold(spec: TypeSpec, K: int) -> List[int]:
    """Independent re-derivation of m used as a cross-check oracle."""
    from functools import reduce

    def step(acc: List[int], k: int) -> List[int]:
        n, r = level_params(spec, k, acc[-1])
        return acc + [acc[-1] * n - r * (n - 1)]

    return reduce(step, range(1, K + 1), [1])


def validate_type(spec: TypeSpec, K: int) -> TypeValidationReport:
    """Clause-by-clause report up to level K; never raises."""
    first_fail: Dict[str, Tuple[int, str]] = {}
    declared = spec.declared_m
    if declared is not None and declared and declared[0] != 1:
        first_fail["a"] = (0, f"declared m_0={declared[0]}")

    m_prev = 1
    for k in range(1, K + 1):
        n, r = level_params(spec, k, m_prev)
        if n < 2 and "b" not in first_fail:
            first_fail["b"] = (k, f"n_{k}={n} < 2")
        if r >= m_prev and "d" not in first_fail:
            first_fail["d"] = (k, f"r_{k}={r} >= m_{k - 1}={m_prev}")
        m_k = r + (m_prev - r) * n
        if declared is not None and k < len(declared) and declared[k] != m_k:
            if "e" not in first_fail:
                first_fail["e"] = (k, f"declared m_{k}={declared[k]} != {m_k}")
        m_prev = m_k

    clauses = []
    for clause in ("a", "b", "d", "e"):
        if clause in first_fail:
            k, detail = first_fail[clause]
            clauses.append(ClauseResult(clause=clause, passed=False, k=k, detail=detail))
        else:
            clauses.append(ClauseResult(clause=clause, passed=True))

    passed, missing, detail = certify_schedule(spec.schedule)
    clauses.insert(2, ClauseResult(clause="c", passed=passed, detail=detail))

    report = TypeValidationReport(type_name=spec.name, levels_checked=K, clauses=clauses)
    logger.debug(
        "Validated type",
        extra={"type_name": spec.name, "levels": K, "failed": report.failed_clauses()},
    )
    return report


def _round_robin_residues(start: int, cells: int, modulus: int) -> set:
    """Residues k mod ``modulus`` hit infinitely often by the orbit j -> 2j + 1."""
    seen: Dict[int, int] = {}
    orbit: List[int] = []
    q = start % modulus
    while q not in seen:
        seen[q] = len(orbit)
        orbit.append(q)
        q = (2 * q + 1) % modulus
    cycle = orbit[seen[q]:]
    residues = set()
    for q in cycle:
        for u in range(cells):
            residues.add((cells * (q - 1) + 1 + u) % modulus)
    return residues


def validate_partition(spec: TypeSpec, part: PartitionSpec, K: int = 0) -> PartitionReport:
    """Certify that every cell sees every root size infinitely often.

    Raises:
        IncompatiblePartition: with the first (cell, r) pair that never recurs.
        InvalidType: the type fails a local clause below K.
    """
    if K:
        compute_m(spec, K)
    passed, missing, detail = certify_schedule(spec.schedule)
    if not passed:
        raise IncompatiblePartition(
            f"schedule never attains r={missing}", cell=0, missing_r=missing
        )

    if part.kind == "single":
        return PartitionReport(
            kind=part.kind, cell_count=1, compatible=True, witness="reduces to clause (c)"
        )

    if part.kind == "zero_r":
        raise IncompatiblePartition(
            "cell 0 only holds levels with r_k=0, so r=1 never occurs there",
            cell=0,
            missing_r=1,
        )

    modulus = part.cell_count
    cells = spec.schedule.cells
    if cells >= modulus:
        return PartitionReport(
            kind=part.kind,
            cell_count=modulus,
            compatible=True,
            witness=f"each table entry fills {cells} consecutive levels covering all {modulus} residues",
        )

    # Starting points 2r mod c for r >= 1, plus 1 for r = 0, cover every r.
    starts = [(0, 1)] + [(r, 2 * r) for r in range(1, modulus + 1)]
    for r, start in starts:
        residues = _round_robin_residues(start, cells, modulus)
        for cell in range(modulus):
            if cell not in residues:
                raise IncompatiblePartition(
                    f"cell {cell} never sees r={r}", cell=cell, missing_r=r
                )
    return PartitionReport(
        kind=part.kind,
        cell_count=modulus,
        compatible=True,
        witness="every r-orbit of the round-robin table meets every residue on its cycle",
    )


def cell_of(part: PartitionSpec, spec: TypeSpec, k: int) -> int:
    """Cell index of level k >= 1."""
    if part.kind == "single":
        return 0
    if part.kind == "residue":
        return k % part.cell_count
    return 0 if TypeTable(spec).r(k) == 0 else 1


# Builtin types


def default_binary_type(cells: int = 1) -> TypeSpec:
    """n_k = 2 everywhere, round-robin roots."""
    name = "t2" if cells == 1 else f"t2x{cells}"
    return TypeSpec(name=name, schedule=ScheduleRule(kind="round_robin", cells=cells))


def tstar_type() -> TypeSpec:
    """Mixed type with prefix (2,0),(3,1),(2,0),(2,2),(2,1),(2,3)."""
    return TypeSpec(name="tstar", prefix=TSTAR_PREFIX)


def exponential_type(rule: str) -> TypeSpec:
    """Least branching numbers satisfying a construction's growth bound."""
    return TypeSpec(name=rule, n_rule=rule)


BUILTIN_TYPES = {
    "tstar": tstar_type,
    "T★": tstar_type,
    "t2": default_binary_type,
    "T₂": default_binary_type,
    "t2x2": lambda: default_binary_type(cells=2),
    "coherent_suslin": lambda: exponential_type("coherent_suslin"),
    "entangled": lambda: exponential_type("entangled"),
    "full_suslin": lambda: exponential_type("full_suslin"),
    "independent": lambda: exponential_type("independent"),
}


def builtin_type(name: str) -> TypeSpec:
    """Look up a builtin type by name."""
    try:
        return BUILTIN_TYPES[name]()
    except KeyError:
        raise ValueError(f"Unknown builtin type: {name}") from None
