"""Ball hulls, admissible sets, radii, and structural checks.

Two hull operators are provided.  "paper-cov" intersects the balls centered
inside the set that contain it; "arbitrary-center" intersects every ball
containing it regardless of center.  Both are extensive and monotone, the
arbitrary-center hull is never larger, and their fixed-point families are
computed from one ball-intersection closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dyadic import DyadicValue
from .errors import ResourceLimitError, StructuralInputError, UsageError
from .pointset import PointSet, iter_bits
from .relations import Grade, RelationalSystem, Top, TOP, expand_level
from .semimetric import delta

PAPER_COV = "paper-cov"
ARBITRARY_CENTER = "arbitrary-center"
_MODES = (PAPER_COV, ARBITRARY_CENTER)

DEFAULT_SET_CAP = 2_000_000


def _check_mode(mode: str) -> None:
    if mode not in _MODES:
        raise UsageError(f"unknown hull mode {mode!r}; expected one of {_MODES}")


def ball(sys: RelationalSystem, x: int, n: int) -> PointSet:
    """Points whose grade against the center is at least n.

    Any integer level is accepted: at or below the window floor the ball is
    everything, above the window it is just the center.
    """
    if not 0 <= x < sys.n:
        raise IndexError(f"center {x} out of range for {sys.n} points")
    bits = 0
    for y in range(sys.n):
        if sys.grades.entries[x][y] >= n:
            bits |= 1 << y
    return PointSet(sys.n, bits)


def covering_level(sys: RelationalSystem, x: int, points: PointSet) -> Grade:
    """Largest level whose ball at x still contains the whole set."""
    level: Grade = TOP
    for a in iter_bits(points.bits):
        g = sys.grades.entries[x][a]
        if g < level:
            level = g
    return level


def _clamp_level(sys: RelationalSystem, level: Grade) -> int:
    return sys.window.above if isinstance(level, Top) else level


@dataclass(frozen=True)
class AdmissibleSet:
    """A hull value together with the balls whose intersection produced it."""

    points: PointSet
    witness_balls: tuple[tuple[int, int], ...]
    mode: str


def hull(sys: RelationalSystem, points: PointSet, mode: str = PAPER_COV) -> AdmissibleSet:
    """Intersection of the qualifying balls around a nonempty set.

    One witness ball per eligible center suffices: balls at a fixed center
    are nested, so the tightest level carries the whole intersection.
    """
    _check_mode(mode)
    if points.n != sys.n:
        raise StructuralInputError(
            f"point set over {points.n} points against a {sys.n}-point system"
        )
    if points.is_empty:
        raise StructuralInputError("hull of the empty set is undefined")
    centers = iter_bits(points.bits) if mode == PAPER_COV else range(sys.n)
    witness = []
    bits = (1 << sys.n) - 1
    for x in centers:
        level = _clamp_level(sys, covering_level(sys, x, points))
        witness.append((x, level))
        bits &= ball(sys, x, level).bits
    return AdmissibleSet(PointSet(sys.n, bits), tuple(witness), mode)


def _distinct_ball_bits(sys: RelationalSystem) -> list[int]:
    seen = set()
    out = []
    for x in range(sys.n):
        for lev in range(sys.window.below, sys.window.above + 1):
            bits = ball(sys, x, lev).bits
            if bits not in seen:
                seen.add(bits)
                out.append(bits)
    return out


def _intersection_closure(sys: RelationalSystem, cap: int) -> set[int]:
    """All nonempty intersections of graded balls, as bitmasks."""
    family = set(_distinct_ball_bits(sys))
    queue = list(family)
    work = 0
    while queue:
        s = queue.pop()
        for t in list(family):
            work += 1
            if work > cap:
                raise ResourceLimitError(
                    f"ball-intersection closure exceeded the cap of {cap} intermediate sets",
                    cap,
                )
            u = s & t
            if u and u not in family:
                family.add(u)
                queue.append(u)
    return family


def enumerate_admissible(
    sys: RelationalSystem, mode: str = PAPER_COV, max_intermediate: int = DEFAULT_SET_CAP
) -> tuple[AdmissibleSet, ...]:
    """Every nonempty fixed point of the chosen hull, canonically ordered.

    The arbitrary-center family is exactly the intersection closure of the
    balls; the paper-cov family is its subset of hull fixed points.
    Singletons and the whole ground set always appear.
    """
    _check_mode(mode)
    closure = _intersection_closure(sys, max_intermediate)
    out = []
    for bits in closure:
        candidate = PointSet(sys.n, bits)
        h = hull(sys, candidate, mode)
        if h.points.bits == bits:
            out.append(h)
        elif mode == ARBITRARY_CENTER:  # pragma: no cover - closure members are fixed
            raise RuntimeError("closure member moved under the arbitrary-center hull")
    out.sort(key=lambda a: a.points.canonical_key())
    return tuple(out)


@dataclass(frozen=True)
class RadiiReport:
    """Chebyshev radius and diameter of a set, in grades and distances."""

    points: PointSet
    per_point: tuple[tuple[int, DyadicValue], ...]
    cheb_radius: DyadicValue
    diameter: DyadicValue
    cheb_grade: Grade
    diam_grade: Grade


def radii(sys: RelationalSystem, points: PointSet) -> RadiiReport:
    """Per-point reach, Chebyshev radius, and diameter of a nonempty set.

    Grade forms: the diameter grade is the smallest pair grade inside the
    set, the Chebyshev grade the best (largest) of the per-point worst
    grades.  Distances are their dyadic shadows.
    """
    if points.n != sys.n:
        raise StructuralInputError(
            f"point set over {points.n} points against a {sys.n}-point system"
        )
    if points.is_empty:
        raise StructuralInputError("radii of the empty set are undefined")
    members = points.members()
    per_point = []
    cheb_grade: Grade = None  # type: ignore[assignment]
    for x in members:
        worst: Grade = TOP
        for y in members:
            if y == x:
                continue
            g = sys.grades.entries[x][y]
            if g < worst:
                worst = g
        per_point.append((x, _grade_distance(worst)))
        if cheb_grade is None or worst > cheb_grade:
            cheb_grade = worst
    diam_grade: Grade = TOP
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            g = sys.grades.entries[x][y]
            if g < diam_grade:
                diam_grade = g
    return RadiiReport(
        points=points,
        per_point=tuple(per_point),
        cheb_radius=_grade_distance(cheb_grade),
        diameter=_grade_distance(diam_grade),
        cheb_grade=cheb_grade,
        diam_grade=diam_grade,
    )


def _grade_distance(g: Grade) -> DyadicValue:
    return DyadicValue.zero() if isinstance(g, Top) else DyadicValue.pow2(-g)


@dataclass(frozen=True)
class NormalityCriteria:
    """Three independent readings of "some point beats the diameter"."""

    grade_strict: bool
    distance_strict: bool
    relational_proper: bool

    @property
    def agreed(self) -> bool:
        return self.grade_strict == self.distance_strict == self.relational_proper


def normality_criteria(sys: RelationalSystem, points: PointSet) -> NormalityCriteria:
    """Evaluate r < diameter for one set via grades, distances, and level sets.

    The three routes must agree; a disagreement would be an arithmetic bug
    and raises immediately.
    """
    rep = radii(sys, points)
    grade_strict = rep.cheb_grade > rep.diam_grade

    members = points.members()
    per_point_sup = []
    for x in members:
        sup = DyadicValue.zero()
        for y in members:
            d = delta(sys, x, y)
            if d > sup:
                sup = d
        per_point_sup.append(sup)
    cheb = min(per_point_sup) if per_point_sup else DyadicValue.zero()
    diam = DyadicValue.zero()
    for i, x in enumerate(members):
        for y in members[i + 1 :]:
            d = delta(sys, x, y)
            if d > diam:
                diam = d
    distance_strict = cheb < diam

    cover_levels = set()
    diam_levels = set()
    for n in range(sys.window.below, sys.window.above + 1):
        rel = expand_level(sys, n)
        if any(points.bits & ~rel.rows[x] == 0 for x in members):
            cover_levels.add(n)
        if all(points.bits & ~rel.rows[x] == 0 for x in members):
            diam_levels.add(n)
    relational_proper = diam_levels < cover_levels

    crit = NormalityCriteria(grade_strict, distance_strict, relational_proper)
    if not crit.agreed:  # pragma: no cover - would expose an arithmetic bug
        raise RuntimeError(f"normality criteria disagree on {members}: {crit}")
    return crit


@dataclass(frozen=True)
class StructureReport:
    property_name: str
    holds: bool
    witness: Optional[tuple] = None
    note: str = ""


def check_normal_structure(
    sys: RelationalSystem, mode: str = PAPER_COV, max_intermediate: int = DEFAULT_SET_CAP
) -> StructureReport:
    """Does every admissible set with at least two points admit a point
    strictly closer to everyone than the diameter?

    Finite families never do: the pairs realizing the largest finite grade
    form a clique whose Chebyshev radius equals its diameter (see
    min_distance_clique).  The witness is the first admissible set, in
    canonical order, where radius and diameter coincide.
    """
    for adm in enumerate_admissible(sys, mode, max_intermediate):
        if len(adm.points) < 2:
            continue
        crit = normality_criteria(sys, adm.points)
        if not crit.grade_strict:
            rep = radii(sys, adm.points)
            return StructureReport(
                "normal-structure",
                False,
                witness=(adm, rep),
                note="radius equals diameter on the witness set",
            )
    return StructureReport(
        "normal-structure",
        True,
        note="no admissible set with two or more points" if sys.n < 2 else "",
    )


def min_distance_clique(sys: RelationalSystem) -> PointSet:
    """A maximal clique of pairs realizing the largest finite grade.

    Greedy from the first such pair: every member added keeps all internal
    grades at the maximum, so the set is admissible in both hull modes and
    its radius equals its diameter.  Needs at least two points.
    """
    if sys.n < 2:
        raise StructuralInputError("need at least two points for a pair clique")
    best = sys.window.below
    for x in range(sys.n):
        for y in range(x + 1, sys.n):
            g = sys.grades.entries[x][y]
            if g > best:
                best = g
    seed: Optional[tuple[int, int]] = None
    for x in range(sys.n):
        for y in range(x + 1, sys.n):
            if sys.grades.entries[x][y] == best:
                seed = (x, y)
                break
        if seed:
            break
    assert seed is not None  # n >= 2 guarantees an off-diagonal pair
    members = [seed[0], seed[1]]
    for x in range(sys.n):
        if x in members:
            continue
        if all(sys.grades.entries[x][m] == best for m in members):
            members.append(x)
    return PointSet.of(sys.n, sorted(members))


def check_compact_structure(
    sys: RelationalSystem, mode: str = PAPER_COV, max_intermediate: int = DEFAULT_SET_CAP
) -> StructureReport:
    """Finite-intersection property over the admissible family.

    Any subfamily whose finite intersections are nonempty has a nonempty
    total intersection; on a finite ground set that is automatic, but the
    walk still verifies it along every maximal descending chain of the
    family (running intersections stay nonempty and equal the chain's
    minimum).
    """
    family = [adm.points for adm in enumerate_admissible(sys, mode, max_intermediate)]
    chains = _maximal_chains(
        [p.bits for p in family], _subset_steps([p.bits for p in family]), max_intermediate
    )
    for chain in chains:
        running = (1 << sys.n) - 1
        for bits in chain:
            running &= bits
            if running == 0:  # pragma: no cover - family members are nonempty
                return StructureReport(
                    "compact-structure", False, witness=tuple(chain)
                )
        if running != chain[-1]:  # pragma: no cover - chains are nested
            return StructureReport("compact-structure", False, witness=tuple(chain))
    return StructureReport(
        "compact-structure", True, note="finite ground set: FIP automatic"
    )


def _subset_steps(family: list[int]) -> dict[int, list[int]]:
    """Direct-successor map of the proper-subset order (no intermediate set)."""
    succ: dict[int, list[int]] = {bits: [] for bits in family}
    for a in family:
        for b in family:
            if b == a or (b & ~a):
                continue
            # b is a proper subset of a; keep only immediate ones
            if any(
                c != a and c != b and not (c & ~a) and not (b & ~c) for c in family
            ):
                continue
            succ[a].append(b)
    for lst in succ.values():
        lst.sort()
    return succ


def _maximal_chains(
    family: list[int], succ: dict[int, list[int]], cap: int
) -> list[list[int]]:
    """Every maximal descending chain of the family, depth first, capped."""
    supersets = {b for lst in succ.values() for b in lst}
    tops = sorted(bits for bits in family if bits not in supersets)
    chains: list[list[int]] = []
    work = 0

    def walk(prefix: list[int]) -> None:
        nonlocal work
        work += 1
        if work > cap:
            raise ResourceLimitError(
                f"chain enumeration exceeded the cap of {cap} steps", cap
            )
        nexts = succ.get(prefix[-1], [])
        if not nexts:
            chains.append(list(prefix))
            return
        for nxt in nexts:
            prefix.append(nxt)
            walk(prefix)
            prefix.pop()

    for top in tops:
        walk([top])
    return chains


def check_spherical_completeness(
    sys: RelationalSystem, max_work: int = DEFAULT_SET_CAP
) -> StructureReport:
    """Nested ball chains with nonincreasing radii have nonempty intersection.

    Finite systems satisfy this outright (every chain bottoms out at a ball,
    which contains its center); the walk enumerates the maximal chains and
    verifies each intersection anyway.
    """
    nodes: list[tuple[int, int]] = []  # (bits, level)
    seen = set()
    for x in range(sys.n):
        for lev in range(sys.window.below, sys.window.above + 1):
            key = (ball(sys, x, lev).bits, lev)
            if key not in seen:
                seen.add(key)
                nodes.append(key)
    nodes.sort(key=lambda t: (-t[0].bit_count(), t[1]))

    succ: dict[tuple[int, int], list[tuple[int, int]]] = {nd: [] for nd in nodes}
    for a_bits, a_lev in nodes:
        for b_bits, b_lev in nodes:
            if b_bits == a_bits or (b_bits & ~a_bits):
                continue
            if b_lev < a_lev:  # radius must not grow along the chain
                continue
            succ[(a_bits, a_lev)].append((b_bits, b_lev))

    supersets = {b for lst in succ.values() for b in lst}
    tops = [nd for nd in nodes if nd not in supersets]
    work = 0

    def walk(prefix: list[tuple[int, int]]) -> Optional[tuple]:
        nonlocal work
        work += 1
        if work > max_work:
            raise ResourceLimitError(
                f"ball-chain enumeration exceeded the cap of {max_work} steps", max_work
            )
        nexts = succ[prefix[-1]]
        if not nexts:
            inter = (1 << sys.n) - 1
            for bits, _ in prefix:
                inter &= bits
            if inter == 0:  # pragma: no cover - balls contain their centers
                return tuple(prefix)
            return None
        for nxt in nexts:
            prefix.append(nxt)
            bad = walk(prefix)
            prefix.pop()
            if bad:
                return bad
        return None

    for top in tops:
        bad = walk([top])
        if bad:  # pragma: no cover - unreachable on finite ground sets
            return StructureReport("spherical-completeness", False, witness=bad)
    return StructureReport(
        "spherical-completeness",
        True,
        note="finite ground set: every nested ball chain is finite",
    )


def admissible_family_bits(
    sys: RelationalSystem, mode: str, max_intermediate: int = DEFAULT_SET_CAP
) -> frozenset[int]:
    """The admissible family as raw bitmasks, for set-level comparisons."""
    return frozenset(
        adm.points.bits for adm in enumerate_admissible(sys, mode, max_intermediate)
    )
