"""Self-maps over graded systems: grade preservation, orbits, fixed points.

A map is grade-preserving when no pair's grade drops under it, which for
the induced distance is exactly nonexpansiveness; both predicates are
implemented against their own arithmetic so they can be compared.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dyadic import DyadicValue
from .errors import PreconditionError, StructuralInputError, UsageError
from .hulls import (
    PAPER_COV,
    AdmissibleSet,
    DEFAULT_SET_CAP,
    ball,
    enumerate_admissible,
)
from .pointset import PointSet, iter_bits
from .relations import Grade, RelationalSystem, Top, TOP, check_axiom
from .semimetric import delta


@dataclass(frozen=True)
class SelfMap:
    """Total map on {0..n-1}, stored as the image tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        for x, y in enumerate(self.image):
            if not 0 <= y < n:
                raise StructuralInputError(
                    f"image of {x} is {y}, outside the {n}-point ground set"
                )

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        if not 0 <= x < self.n:
            raise IndexError(f"point {x} out of range for {self.n} points")
        return self.image[x]


def identity_map(n: int) -> SelfMap:
    return SelfMap(tuple(range(n)))


def _check_sizes(sys: RelationalSystem, t: SelfMap) -> None:
    if t.n != sys.n:
        raise StructuralInputError(
            f"map over {t.n} points against a {sys.n}-point system"
        )


@dataclass(frozen=True)
class MapCheck:
    """Predicate outcome with the first violating pair, if any."""

    holds: bool
    witness: Optional[tuple] = None


def is_homomorphism(sys: RelationalSystem, t: SelfMap) -> MapCheck:
    """No pair's grade may drop under the map.

    Witness carries (x, y, grade(x, y), grade(Tx, Ty)) for the first
    violating pair in index order.
    """
    _check_sizes(sys, t)
    for x in range(sys.n):
        for y in range(x + 1, sys.n):
            g = sys.grades.entries[x][y]
            g_img = sys.grades.entries[t.image[x]][t.image[y]]
            if not g_img >= g:
                return MapCheck(False, (x, y, g, g_img))
    return MapCheck(True)


def is_nonexpansive(sys: RelationalSystem, t: SelfMap) -> MapCheck:
    """No pair's distance may grow, decided in exact dyadic arithmetic.

    Independent of is_homomorphism; the two must agree on every input.
    Witness carries (x, y, delta(x, y), delta(Tx, Ty)).
    """
    _check_sizes(sys, t)
    for x in range(sys.n):
        for y in range(x + 1, sys.n):
            d = delta(sys, x, y)
            d_img = delta(sys, t.image[x], t.image[y])
            if d_img > d:
                return MapCheck(False, (x, y, d, d_img))
    return MapCheck(True)


def fixed_points(sys: RelationalSystem, t: SelfMap) -> PointSet:
    _check_sizes(sys, t)
    return PointSet.of(sys.n, (x for x in range(sys.n) if t.image[x] == x))


@dataclass(frozen=True)
class Orbit:
    """Forward orbit of a point: preperiodic tail, then the cycle.

    grade_trace holds the grade of each consecutive step, tail steps first,
    then once around the cycle (the last entry closes the loop).
    """

    start: int
    tail: tuple[int, ...]
    cycle: tuple[int, ...]
    grade_trace: tuple[Grade, ...]


def orbit(sys: RelationalSystem, t: SelfMap, x: int) -> Orbit:
    _check_sizes(sys, t)
    if not 0 <= x < sys.n:
        raise IndexError(f"point {x} out of range for {sys.n} points")
    seq = [x]
    seen = {x: 0}
    while True:
        nxt = t.image[seq[-1]]
        if nxt in seen:
            start = seen[nxt]
            break
        seen[nxt] = len(seq)
        seq.append(nxt)
    trace = tuple(sys.grades.entries[p][t.image[p]] for p in seq)
    return Orbit(x, tuple(seq[:start]), tuple(seq[start:]), trace)


@dataclass(frozen=True)
class RegularityReport:
    """Step-grade growth properties of one point's orbit.

    regular: some offset k >= 1 has every later step grade at least
        grade(x, Tx) + k.
    asymptotically_regular: past some offset the n-th step grade reaches
        grade(x, Tx) + n; equivalent to the step distances converging to
        zero, recorded separately as classical_asymptotic.
    weak_regular: the recurring step distances stay strictly below the
        first step's distance.
    """

    point: int
    is_fixed: bool
    regular: bool
    regular_offset: Optional[int]
    asymptotically_regular: bool
    asymptotic_offset: Optional[int]
    weak_regular: bool
    classical_asymptotic: bool


def regularity_report(sys: RelationalSystem, t: SelfMap, x: int) -> RegularityReport:
    _check_sizes(sys, t)
    if t.image[x] == x:
        return RegularityReport(x, True, True, None, True, None, True, True)

    orb = orbit(sys, t, x)
    m = sys.grades.entries[x][t.image[x]]
    assert isinstance(m, int)
    tail_len = len(orb.tail)
    cycle_grades = orb.grade_trace[tail_len:]
    min_cycle: Grade = TOP
    for g in cycle_grades:
        if g < min_cycle:
            min_cycle = g
    cycle_fixed = isinstance(min_cycle, Top)

    def step_grade(k: int) -> Grade:
        if k < tail_len:
            return orb.grade_trace[k]
        return orb.grade_trace[tail_len + (k - tail_len) % len(orb.cycle)]

    # Offsets beyond the scan bound cannot work: with a finite cycle grade
    # the requirement m + k <= min_cycle caps k, and with an all-fixed cycle
    # the tail length already suffices.
    bound = tail_len + max(0, sys.window.hi - m) + 2
    regular_offset = None
    for k in range(1, bound + 1):
        if min_cycle >= m + k and all(
            step_grade(i) >= m + k for i in range(k, tail_len)
        ):
            regular_offset = k
            break

    asymptotic_offset = None
    if cycle_fixed:
        for k in range(0, tail_len + 1):
            if all(step_grade(i) >= m + i for i in range(k, tail_len)):
                asymptotic_offset = k
                break

    weak = min_cycle > m

    return RegularityReport(
        point=x,
        is_fixed=False,
        regular=regular_offset is not None,
        regular_offset=regular_offset,
        asymptotically_regular=asymptotic_offset is not None,
        asymptotic_offset=asymptotic_offset,
        weak_regular=weak,
        classical_asymptotic=cycle_fixed,
    )


def minimal_invariant_admissible(
    sys: RelationalSystem,
    t: SelfMap,
    mode: str = PAPER_COV,
    max_intermediate: int = DEFAULT_SET_CAP,
) -> tuple[AdmissibleSet, ...]:
    """Inclusion-minimal admissible sets closed under the map.

    Requires a grade-preserving map; singleton results are exactly the
    fixed points.
    """
    hom = is_homomorphism(sys, t)
    if not hom.holds:
        raise PreconditionError(
            f"map is not grade-preserving at pair {hom.witness[:2]}", hom.witness
        )
    invariant = []
    for adm in enumerate_admissible(sys, mode, max_intermediate):
        img = 0
        for p in iter_bits(adm.points.bits):
            img |= 1 << t.image[p]
        if img & ~adm.points.bits == 0:
            invariant.append(adm)
    minimal = [
        a
        for a in invariant
        if not any(
            b.points.bits != a.points.bits
            and b.points.bits & ~a.points.bits == 0
            for b in invariant
        )
    ]
    return tuple(sorted(minimal, key=lambda a: a.points.canonical_key()))


def minimal_invariant_balls(
    sys: RelationalSystem, t: SelfMap
) -> tuple[tuple[int, int], ...]:
    """Balls B(x, n), lo <= n <= hi, mapped into themselves with every
    member's step grade exactly n.

    All qualifying (center, level) pairs are returned, even when several
    name the same set.
    """
    _check_sizes(sys, t)
    out = []
    for x in range(sys.n):
        for lev in sys.window.levels():
            b = ball(sys, x, lev)
            img = 0
            for p in iter_bits(b.bits):
                img |= 1 << t.image[p]
            if img & ~b.bits:
                continue
            if all(sys.grades.entries[p][t.image[p]] == lev for p in iter_bits(b.bits)):
                out.append((x, lev))
    return tuple(out)


OUTCOME_FIXED = "contains-fixed-point"
OUTCOME_MINIMAL_BALL = "contains-minimal-invariant-ball"
OUTCOME_NEITHER = "NEITHER"


@dataclass(frozen=True)
class DichotomyEntry:
    point: int
    level: int
    ball: PointSet
    outcome: str
    witness: Optional[tuple]


@dataclass(frozen=True)
class DichotomyReport:
    """Per-point dichotomy: each step ball holds a fixed point or a minimal
    invariant ball; NEITHER is a falsifier hit."""

    hypotheses_met: bool
    unmet: tuple[str, ...]
    entries: tuple[DichotomyEntry, ...]

    @property
    def has_neither(self) -> bool:
        return any(e.outcome == OUTCOME_NEITHER for e in self.entries)


def ks_dichotomy(sys: RelationalSystem, t: SelfMap) -> DichotomyReport:
    """For every non-fixed x, inspect the ball at x of level grade(x, Tx).

    Hypotheses (per-level transitivity, grade preservation) are verified
    and reported; the scan runs either way.

    One ball lives below the window: at level lo - 1 every ball is the
    whole ground set, which counts as a minimal invariant ball when every
    point moves at grade exactly lo - 1.  The dichotomy test recognizes it
    even though minimal_invariant_balls only enumerates window levels.
    """
    _check_sizes(sys, t)
    unmet = []
    if not check_axiom(sys, "transitive").holds:
        unmet.append("transitive")
    if not is_homomorphism(sys, t).holds:
        unmet.append("homomorphism")

    fixed = fixed_points(sys, t)
    mibs = minimal_invariant_balls(sys, t)
    mib_sets = [(c, lev, ball(sys, c, lev).bits) for c, lev in mibs]

    entries = []
    for x in range(sys.n):
        if t.image[x] == x:
            continue
        lev = sys.grades.entries[x][t.image[x]]
        assert isinstance(lev, int)
        b = ball(sys, x, lev)
        if b.bits & fixed.bits:
            w = next(iter_bits(b.bits & fixed.bits))
            entries.append(DichotomyEntry(x, lev, b, OUTCOME_FIXED, (w,)))
            continue
        hit = next(
            ((c, ml) for c, ml, bits in mib_sets if bits & ~b.bits == 0), None
        )
        if hit is None and lev == sys.window.below:
            if all(
                sys.grades.entries[p][t.image[p]] == lev for p in range(sys.n)
            ):
                hit = (x, lev)
        if hit is not None:
            entries.append(DichotomyEntry(x, lev, b, OUTCOME_MINIMAL_BALL, hit))
        else:
            entries.append(DichotomyEntry(x, lev, b, OUTCOME_NEITHER, None))
    return DichotomyReport(not unmet, tuple(unmet), tuple(entries))


VARIANTS = ("regular", "asymptotic")


@dataclass(frozen=True)
class InvariantBallReport:
    ball: PointSet
    names: tuple[tuple[int, int], ...]
    fixed_inside: PointSet

    @property
    def contains_fixed(self) -> bool:
        return not self.fixed_inside.is_empty


@dataclass(frozen=True)
class RegularFixedPointReport:
    variant: str
    hypotheses_met: bool
    unmet: tuple[str, ...]
    balls: tuple[InvariantBallReport, ...]
    verdict: str  # confirmed | falsified | vacuous


def regular_fixed_point(
    sys: RelationalSystem, t: SelfMap, variant: str = "regular"
) -> RegularFixedPointReport:
    """Check that every map-invariant ball contains a fixed point, under
    per-level transitivity, grade preservation, and the chosen growth
    property at every non-fixed point.

    Unmet hypotheses turn the verdict vacuous; the balls are scanned and
    reported regardless.
    """
    if variant not in VARIANTS:
        raise UsageError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    _check_sizes(sys, t)
    unmet = []
    if not check_axiom(sys, "transitive").holds:
        unmet.append("transitive")
    if not is_homomorphism(sys, t).holds:
        unmet.append("homomorphism")
    for x in range(sys.n):
        if t.image[x] == x:
            continue
        rep = regularity_report(sys, t, x)
        ok = rep.regular if variant == "regular" else rep.asymptotically_regular
        if not ok:
            unmet.append(f"{variant}@{x}")

    fixed = fixed_points(sys, t)
    by_bits: dict[int, list[tuple[int, int]]] = {}
    for x in range(sys.n):
        for lev in range(sys.window.below, sys.window.above + 1):
            b = ball(sys, x, lev)
            img = 0
            for p in iter_bits(b.bits):
                img |= 1 << t.image[p]
            if img & ~b.bits == 0:
                by_bits.setdefault(b.bits, []).append((x, lev))

    balls = tuple(
        InvariantBallReport(
            PointSet(sys.n, bits), tuple(names), PointSet(sys.n, bits & fixed.bits)
        )
        for bits, names in sorted(by_bits.items())
    )
    if unmet:
        verdict = "vacuous"
    elif all(b.contains_fixed for b in balls):
        verdict = "confirmed"
    else:
        verdict = "falsified"
    return RegularFixedPointReport(variant, not unmet, tuple(unmet), balls, verdict)
