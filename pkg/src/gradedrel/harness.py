"""Seeded generation of systems and maps, plus a claim falsifier.

Generation is reproducible from the seed alone.  Constrained systems are
produced by monotone repair: grades only ever rise, each rise is forced by
a violated composition inequality, and every grade is bounded by the
window top, so the loop terminates and the postcondition is re-verified.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

from .dynamics import (
    SelfMap,
    identity_map,
    is_homomorphism,
    is_nonexpansive,
    ks_dichotomy,
    regular_fixed_point,
)
from .errors import UsageError
from .hulls import (
    ARBITRARY_CENTER,
    PAPER_COV,
    admissible_family_bits,
    check_normal_structure,
    enumerate_admissible,
    normality_criteria,
)
from .pointset import PointSet
from .relations import (
    Grade,
    GradeMatrix,
    RelationalSystem,
    TOP,
    Window,
    check_axiom,
    default_labels,
    expand_level,
)
from .semimetric import (
    classify,
    metric_ball_collapse,
    minimal_inframetric_constant,
    reconstruct_level,
)
from .dyadic import DyadicValue

CONSTRAINTS = ("none", "r9", "r10", "transitive")
MAP_KINDS = ("any", "homomorphism")

VACUOUS = "__vacuous__"


@dataclass(frozen=True)
class GenParams:
    point_count: tuple[int, int] = (2, 6)
    window_span: tuple[int, int] = (1, 5)
    window_lo: tuple[int, int] = (-2, 2)
    constraint: str = "none"
    map_kind: str = "any"

    def __post_init__(self):
        if self.constraint not in CONSTRAINTS:
            raise UsageError(f"unknown constraint {self.constraint!r}")
        if self.map_kind not in MAP_KINDS:
            raise UsageError(f"unknown map kind {self.map_kind!r}")
        for name, (a, b) in (
            ("point_count", self.point_count),
            ("window_span", self.window_span),
            ("window_lo", self.window_lo),
        ):
            if a > b:
                raise UsageError(f"empty {name} range ({a}, {b})")
        if self.point_count[0] < 1:
            raise UsageError("point count must be at least 1")
        if self.window_span[0] < 1:
            raise UsageError("window span must be at least 1")


def _forced_grade(entries: list[list[Grade]], x: int, y: int, constraint: str) -> Grade:
    """Lowest grade the constraint forces on the pair, given the others."""
    n = len(entries)
    need: Grade = entries[x][y]
    if constraint == "transitive":
        for z in range(n):
            m = min(entries[x][z], entries[z][y])
            if m > need:
                need = m
    elif constraint == "r9":
        for z in range(n):
            m = min(entries[x][z], entries[z][y]) - 1
            if m > need:
                need = m
    elif constraint == "r10":
        for z in range(n):
            g_xz = entries[x][z]
            for w in range(n):
                m = min(g_xz, entries[z][w], entries[w][y]) - 1
                if m > need:
                    need = m
    return need


def _repair(entries: list[list[Grade]], constraint: str) -> None:
    """Raise grades until the constraint's composition inequalities hold."""
    if constraint == "none":
        return
    n = len(entries)
    changed = True
    while changed:
        changed = False
        for x in range(n):
            for y in range(x + 1, n):
                need = _forced_grade(entries, x, y, constraint)
                if need > entries[x][y]:
                    assert isinstance(need, int)
                    entries[x][y] = need
                    entries[y][x] = need
                    changed = True


_CONSTRAINT_AXIOM = {"r9": "r9", "r10": "r10", "transitive": "transitive"}


def gen_system(seed: int, params: GenParams = GenParams()) -> RelationalSystem:
    """Deterministic random system honoring the requested constraint."""
    rng = random.Random(seed)
    n = rng.randint(*params.point_count)
    lo = rng.randint(*params.window_lo)
    hi = lo + rng.randint(*params.window_span)
    entries: list[list[Grade]] = [[TOP] * n for _ in range(n)]
    for x in range(n):
        for y in range(x + 1, n):
            g = rng.randint(lo - 1, hi)
            entries[x][y] = g
            entries[y][x] = g
    _repair(entries, params.constraint)
    sys = RelationalSystem(
        default_labels(n), Window(lo, hi), GradeMatrix.from_rows(entries)
    )
    axiom = _CONSTRAINT_AXIOM.get(params.constraint)
    if axiom is not None:
        report = check_axiom(sys, axiom)
        if not report.holds:  # pragma: no cover - repair is exhaustive
            raise RuntimeError(f"repair left {axiom} violated: {report.witness}")
    return sys


def gen_self_map(seed: int, sys: RelationalSystem, map_kind: str = "any") -> SelfMap:
    """Deterministic random self-map; grade-preserving kind by greedy search.

    Images are assigned in a random point order, each drawn from the
    candidates compatible with all already-assigned pairs; dead ends
    restart with fresh randomness, and after 64 failed attempts the
    identity (always grade-preserving) is returned.
    """
    if map_kind not in MAP_KINDS:
        raise UsageError(f"unknown map kind {map_kind!r}")
    rng = random.Random(seed)
    n = sys.n
    if map_kind == "any":
        return SelfMap(tuple(rng.randrange(n) for _ in range(n)))

    for _ in range(64):
        order = list(range(n))
        rng.shuffle(order)
        image: dict[int, int] = {}
        ok = True
        for x in order:
            candidates = []
            for c in range(n):
                if all(
                    sys.grades.entries[c][image[y]] >= sys.grades.entries[x][y]
                    for y in image
                ):
                    candidates.append(c)
            if not candidates:
                ok = False
                break
            image[x] = rng.choice(candidates)
        if ok:
            t = SelfMap(tuple(image[x] for x in range(n)))
            if is_homomorphism(sys, t).holds:
                return t
    return identity_map(n)


# ---------------------------------------------------------------------------
# claim catalog

CheckFn = Callable[[RelationalSystem, Optional[SelfMap]], Optional[str]]


@dataclass(frozen=True)
class Claim:
    claim_id: str
    description: str
    needs_map: bool
    params: GenParams
    check: CheckFn


def _check_eq1(sys, _t):
    for n in range(sys.window.below, sys.window.above + 1):
        if reconstruct_level(sys, n) != expand_level(sys, n):
            return f"level {n} disagrees between distance and grade routes"
    return None


def _check_homo_iff_nonexp(sys, t):
    hom = is_homomorphism(sys, t)
    non = is_nonexpansive(sys, t)
    if hom.holds != non.holds:
        return f"predicates disagree: homomorphism={hom.holds} nonexpansive={non.holds}"
    if not hom.holds and hom.witness[:2] != non.witness[:2]:
        return f"witness pairs disagree: {hom.witness[:2]} vs {non.witness[:2]}"
    return None


def _check_r9_constant(sys, _t):
    if sys.n < 2 or not check_axiom(sys, "r9").holds:
        return VACUOUS
    c = minimal_inframetric_constant(sys)
    if c > DyadicValue.pow2(1):
        return f"inframetric constant {c} exceeds 2"
    return None


def _check_r10_metric(sys, _t):
    if not check_axiom(sys, "r10").holds:
        return VACUOUS
    rep = classify(sys)
    if not rep.triangle_holds:
        w = rep.triangle_witness
        return (
            f"triangle fails at ({w.x}, {w.z}, {w.y}): "
            f"{w.d_xy} > {w.d_xz} + {w.d_zy}"
        )
    return None


def _check_transitive_ultra(sys, _t):
    if not check_axiom(sys, "transitive").holds:
        return VACUOUS
    rep = classify(sys)
    if not rep.strong_triangle_holds:
        w = rep.strong_triangle_witness
        return f"strong triangle fails at ({w.x}, {w.z}, {w.y})"
    return None


def _check_ks(sys, t):
    rep = ks_dichotomy(sys, t)
    if not rep.hypotheses_met:
        return VACUOUS
    if rep.has_neither:
        bad = next(e for e in rep.entries if e.outcome == "NEITHER")
        return f"ball at ({bad.point}, level {bad.level}) has neither branch"
    return None


def _check_regular_fp(variant):
    def check(sys, t):
        rep = regular_fixed_point(sys, t, variant)
        if not rep.hypotheses_met:
            return VACUOUS
        if rep.verdict == "falsified":
            bad = next(b for b in rep.balls if not b.contains_fixed)
            return f"invariant ball {bad.ball.members()} holds no fixed point"
        return None

    return check


def _check_no_normal_structure(sys, _t):
    if sys.n < 2:
        return VACUOUS
    for mode in (PAPER_COV, ARBITRARY_CENTER):
        if check_normal_structure(sys, mode).holds:
            return f"normal structure reported to hold in {mode} mode"
    return None


def _check_hull_equivalence(sys, _t):
    rng = random.Random(sys.n * 1009 + sys.window.lo)
    radii = _breakpoint_radii(sys, rng)
    for mode in (ARBITRARY_CENTER, PAPER_COV):
        graded = admissible_family_bits(sys, mode)
        metric = _family_from_metric_balls(sys, radii, mode)
        if graded != metric:
            return f"admissible families disagree in {mode} mode"
    return None


def _check_radii_translation(sys, _t):
    for adm in enumerate_admissible(sys, ARBITRARY_CENTER):
        crit = normality_criteria(sys, adm.points)
        if not crit.agreed:  # pragma: no cover - agreement is enforced inside
            return f"criteria disagree on {adm.points.members()}"
    return None


def _breakpoint_radii(sys, rng):
    from fractions import Fraction

    radii = [
        DyadicValue.pow2(-n).as_fraction()
        for n in range(sys.window.below, sys.window.above + 1)
    ]
    lo_r = DyadicValue.pow2(-sys.window.above).as_fraction()
    hi_r = DyadicValue.pow2(-sys.window.below).as_fraction()
    for _ in range(3):
        num = rng.randint(1, 100)
        den = rng.randint(num, num * 7)
        r = Fraction(num, den) * hi_r
        if r >= lo_r:
            radii.append(r)
    return radii


def _family_from_metric_balls(sys, radii, mode):
    """Admissible family rebuilt from metric balls at the sampled radii."""
    ball_bits = set()
    for x in range(sys.n):
        for r in radii:
            ball_bits.add(metric_ball_collapse(sys, x, r).bits)
    family = set(ball_bits)
    queue = list(family)
    while queue:
        s = queue.pop()
        for t in list(family):
            u = s & t
            if u and u not in family:
                family.add(u)
                queue.append(u)
    if mode == ARBITRARY_CENTER:
        return frozenset(family)

    kept = set()
    for bits in family:
        pts = PointSet(sys.n, bits)
        cov = (1 << sys.n) - 1
        for x in pts:
            best = None
            for r in sorted(radii):
                b = metric_ball_collapse(sys, x, r)
                if bits & ~b.bits == 0:
                    best = b.bits
                    break
            cov &= best if best is not None else (1 << sys.n) - 1
        if cov == bits:
            kept.add(bits)
    return frozenset(kept)


def _claims() -> dict[str, Claim]:
    small = GenParams(point_count=(2, 6), window_span=(1, 5))
    tiny = GenParams(point_count=(2, 5), window_span=(1, 4))
    return {
        c.claim_id: c
        for c in (
            Claim(
                "eq1-roundtrip",
                "distance threshold sets equal grade level sets at every level",
                False,
                GenParams(point_count=(2, 7), window_span=(1, 6)),
                _check_eq1,
            ),
            Claim(
                "thm-homo-iff-nonexp",
                "grade preservation and nonexpansiveness coincide, witnesses included",
                True,
                small,
                _check_homo_iff_nonexp,
            ),
            Claim(
                "prop-r9-2-inframetric",
                "two-step composition law bounds the inframetric constant by 2",
                False,
                GenParams(point_count=(3, 6), window_span=(2, 6), constraint="r9"),
                _check_r9_constant,
            ),
            Claim(
                "prop-r10-metric",
                "three-step composition law forces the triangle inequality",
                False,
                GenParams(point_count=(3, 5), window_span=(2, 6), constraint="r10"),
                _check_r10_metric,
            ),
            Claim(
                "transitive-ultrametric",
                "per-level transitivity makes the distance an ultrametric",
                False,
                GenParams(point_count=(3, 6), window_span=(1, 5), constraint="transitive"),
                _check_transitive_ultra,
            ),
            Claim(
                "thm-ks-dichotomy",
                "step balls contain a fixed point or a minimal invariant ball",
                True,
                GenParams(
                    point_count=(2, 6),
                    window_span=(1, 5),
                    constraint="transitive",
                    map_kind="homomorphism",
                ),
                _check_ks,
            ),
            Claim(
                "thm-regular-fp",
                "regular maps leave a fixed point in every invariant ball",
                True,
                GenParams(
                    point_count=(2, 6),
                    window_span=(1, 5),
                    constraint="transitive",
                    map_kind="homomorphism",
                ),
                _check_regular_fp("regular"),
            ),
            Claim(
                "thm-asymptotic-fp",
                "asymptotically regular maps leave a fixed point in every invariant ball",
                True,
                GenParams(
                    point_count=(2, 6),
                    window_span=(1, 5),
                    constraint="transitive",
                    map_kind="homomorphism",
                ),
                _check_regular_fp("asymptotic"),
            ),
            Claim(
                "finite-normal-structure-exists",
                "some finite system has normal structure (expected: never)",
                False,
                tiny,
                _check_no_normal_structure,
            ),
            Claim(
                "hull-equivalence",
                "metric balls and graded balls generate the same admissible family",
                False,
                GenParams(point_count=(2, 6), window_span=(1, 4)),
                _check_hull_equivalence,
            ),
            Claim(
                "radii-translation",
                "grade, distance, and level-set normality criteria agree per set",
                False,
                GenParams(point_count=(2, 6), window_span=(1, 4)),
                _check_radii_translation,
            ),
        )
    }


CLAIMS: dict[str, Claim] = _claims()


@dataclass(frozen=True)
class Counterexample:
    system: RelationalSystem
    selfmap: Optional[SelfMap]
    locus: str
    trial_index: int


@dataclass(frozen=True)
class Verdict:
    claim_id: str
    trials: int
    outcome: str  # "counterexample" | "no-counterexample"
    instance: Optional[Counterexample]
    seed: int
    vacuous_trials: int = 0


def _trial_seed(seed: int, index: int) -> int:
    return (seed * 6364136223846793005 + index * 1442695040888963407) % (1 << 63)


def falsify(
    claim_id: str,
    trials: int,
    seed: int,
    params: Optional[GenParams] = None,
) -> Verdict:
    """Hunt for a counterexample to a cataloged claim.

    Trials run in seed order and stop at the first failure, which is then
    shrunk; vacuous trials (hypotheses unmet by the generated instance) are
    counted separately.
    """
    claim = CLAIMS.get(claim_id)
    if claim is None:
        raise UsageError(
            f"unknown claim {claim_id!r}; expected one of {sorted(CLAIMS)}"
        )
    gen = params if params is not None else claim.params
    vacuous = 0
    for i in range(trials):
        ts = _trial_seed(seed, i)
        sys = gen_system(ts, gen)
        t = gen_self_map(ts ^ 0xA5A5, sys, gen.map_kind) if claim.needs_map else None
        result = claim.check(sys, t)
        if result is None:
            continue
        if result == VACUOUS:
            vacuous += 1
            continue
        sys, t = shrink(sys, t, lambda s, m: claim.check(s, m) not in (None, VACUOUS))
        locus = claim.check(sys, t) or result
        return Verdict(
            claim_id,
            trials,
            "counterexample",
            Counterexample(sys, t, locus, i),
            seed,
            vacuous,
        )
    return Verdict(claim_id, trials, "no-counterexample", None, seed, vacuous)


def _remove_point(
    sys: RelationalSystem, t: Optional[SelfMap], p: int
) -> Optional[tuple[RelationalSystem, Optional[SelfMap]]]:
    if sys.n <= 1:
        return None
    if t is not None:
        if any(t.image[q] == p for q in range(sys.n) if q != p):
            return None
    keep = [q for q in range(sys.n) if q != p]
    remap = {q: i for i, q in enumerate(keep)}
    entries = tuple(
        tuple(sys.grades.entries[a][b] for b in keep) for a in keep
    )
    reduced = RelationalSystem(
        tuple(sys.labels[q] for q in keep),
        sys.window,
        GradeMatrix(len(keep), entries),
    )
    reduced_t = (
        SelfMap(tuple(remap[t.image[q]] for q in keep)) if t is not None else None
    )
    return reduced, reduced_t


def _narrow_window(
    sys: RelationalSystem, side: str
) -> Optional[RelationalSystem]:
    lo, hi = sys.window.lo, sys.window.hi
    if lo == hi:
        return None
    new_lo, new_hi = (lo + 1, hi) if side == "lo" else (lo, hi - 1)
    win = Window(new_lo, new_hi)
    entries = []
    for x in range(sys.n):
        row = []
        for y in range(sys.n):
            g = sys.grades.entries[x][y]
            if x == y:
                row.append(TOP)
            else:
                row.append(min(max(g, new_lo - 1), new_hi))
        entries.append(tuple(row))
    return RelationalSystem(sys.labels, win, GradeMatrix(sys.n, tuple(entries)))


def _lower_grade(sys: RelationalSystem, x: int, y: int) -> Optional[RelationalSystem]:
    g = sys.grades.entries[x][y]
    assert isinstance(g, int)
    if g <= sys.window.below:
        return None
    entries = [list(row) for row in sys.grades.entries]
    entries[x][y] = g - 1
    entries[y][x] = g - 1
    return RelationalSystem(
        sys.labels, sys.window, GradeMatrix(sys.n, tuple(tuple(r) for r in entries))
    )


def shrink(
    sys: RelationalSystem,
    t: Optional[SelfMap],
    still_fails: Callable[[RelationalSystem, Optional[SelfMap]], bool],
) -> tuple[RelationalSystem, Optional[SelfMap]]:
    """Greedy minimization: drop points, then narrow the window, then lower
    grades, keeping every step that still fails; the order is fixed so the
    result is reproducible."""
    progress = True
    while progress:
        progress = False

        p = 0
        while p < sys.n:
            reduced = _remove_point(sys, t, p)
            if reduced is not None and still_fails(*reduced):
                sys, t = reduced
                progress = True
            else:
                p += 1

        for side in ("lo", "hi"):
            while True:
                narrowed = _narrow_window(sys, side)
                if narrowed is not None and still_fails(narrowed, t):
                    sys = narrowed
                    progress = True
                else:
                    break

        for x in range(sys.n):
            for y in range(x + 1, sys.n):
                while True:
                    lowered = _lower_grade(sys, x, y)
                    if lowered is not None and still_fails(lowered, t):
                        sys = lowered
                        progress = True
                    else:
                        break
    return sys, t
