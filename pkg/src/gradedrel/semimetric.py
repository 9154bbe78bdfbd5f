"""The dyadic distance induced by grades, and its classification.

Each pair's distance is 2**-grade (zero on the diagonal).  Distance-level
facts (triangle inequalities, ball membership) are always computed in exact
dyadic or rational arithmetic, never through the grades, so the two views
can be played against each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .dyadic import DyadicValue
from .errors import StructuralInputError
from .pointset import PointSet
from .relations import (
    AxiomReport,
    Grade,
    GradeMatrix,
    Relation,
    RelationalSystem,
    Top,
    TOP,
    Window,
    check_axiom,
    default_labels,
)

Rational = Union[Fraction, int, str]


def _check_index(sys: RelationalSystem, x: int) -> None:
    if not 0 <= x < sys.n:
        raise IndexError(f"point {x} out of range for {sys.n} points")


def mu(sys: RelationalSystem, x: int, y: int) -> Grade:
    """Grade of a pair: the largest level whose relation contains it."""
    _check_index(sys, x)
    _check_index(sys, y)
    return sys.grades.entries[x][y]


def delta(sys: RelationalSystem, x: int, y: int) -> DyadicValue:
    """Induced distance 2**-grade; zero exactly on the diagonal."""
    g = mu(sys, x, y)
    if isinstance(g, Top):
        return DyadicValue.zero()
    return DyadicValue.pow2(-g)


def reconstruct_level(sys: RelationalSystem, n: int) -> Relation:
    """Pairs at distance <= 2**-n, decided purely by dyadic comparison.

    Must coincide with expand_level at every level; the two routes share no
    comparison code.
    """
    threshold = DyadicValue.pow2(-n)
    rows = []
    for x in range(sys.n):
        row = 0
        for y in range(sys.n):
            if delta(sys, x, y) <= threshold:
                row |= 1 << y
        rows.append(row)
    return Relation(sys.n, tuple(rows))


def _as_exact_rational(value: Rational, what: str) -> Fraction:
    if isinstance(value, float):
        raise StructuralInputError(
            f"{what} must be an exact rational, not a float"
        )
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise StructuralInputError(f"cannot read {what}: {value!r}") from exc


def metric_ball_collapse(sys: RelationalSystem, x: int, r: Rational) -> PointSet:
    """Closed metric ball of radius r, shown to be a graded ball.

    The set {y : delta(x, y) <= r} is computed directly from distances, and
    independently as the graded ball at the largest radius 2**-g not
    exceeding r (g clamped to the window's meaningful range).  The routes
    must agree; their common value is returned.
    """
    _check_index(sys, x)
    radius = _as_exact_rational(r, "radius")
    if radius <= 0:
        raise StructuralInputError(f"radius must be positive, got {radius}")

    direct = 0
    for y in range(sys.n):
        if delta(sys, x, y).as_fraction() <= radius:
            direct |= 1 << y

    level = sys.window.above
    for g in range(sys.window.below, sys.window.above + 1):
        if DyadicValue.pow2(-g).as_fraction() <= radius:
            level = g
            break
    graded = 0
    for y in range(sys.n):
        if sys.grades.entries[x][y] >= level:
            graded |= 1 << y

    if direct != graded:  # pragma: no cover - would expose an arithmetic bug
        raise RuntimeError(
            f"metric ball at ({x}, {radius}) disagrees with graded ball at level {level}"
        )
    return PointSet(sys.n, direct)


def minimal_inframetric_constant(sys: RelationalSystem) -> DyadicValue:
    """Smallest power-of-two C with d(x,y) <= C * max(d(x,z), d(z,y)) everywhere."""
    if sys.n < 2:
        raise StructuralInputError(
            "inframetric constant undefined on fewer than 2 points"
        )
    worst = 0
    for x in range(sys.n):
        for y in range(sys.n):
            if x == y:
                continue
            g_xy = sys.grades.entries[x][y]
            for z in range(sys.n):
                m = min(sys.grades.entries[x][z], sys.grades.entries[z][y])
                deficit = m - g_xy
                if deficit > worst:
                    worst = deficit
    return DyadicValue.pow2(worst)


@dataclass(frozen=True)
class TripleWitness:
    """A triple x, z, y with the three distances it pins down."""

    x: int
    z: int
    y: int
    d_xy: DyadicValue
    d_xz: DyadicValue
    d_zy: DyadicValue


@dataclass(frozen=True)
class ClassificationReport:
    is_semimetric: bool
    semimetric_witness: Optional[tuple]
    minimal_inframetric_c: DyadicValue
    triangle_holds: bool
    triangle_witness: Optional[TripleWitness]
    strong_triangle_holds: bool
    strong_triangle_witness: Optional[TripleWitness]
    class_label: str
    r9: AxiomReport
    r10: AxiomReport
    transitive: AxiomReport


def classify(sys: RelationalSystem) -> ClassificationReport:
    """Exhaustive exact classification of the induced distance.

    Scans every ordered triple once for the strong (max) form in grade
    arithmetic and once for the additive form in dyadic arithmetic, keeping
    the worst witness of each; relation-level composition and transitivity
    checks ride along for cross-reference.
    """
    n = sys.n

    semi_witness = None
    for x in range(n):
        for y in range(n):
            d = delta(sys, x, y)
            if d.is_zero != (x == y):
                semi_witness = ("separation", x, y)
                break
            if d != delta(sys, y, x):
                semi_witness = ("symmetry", x, y)
                break
        if semi_witness:
            break

    worst_strong: Optional[tuple] = None  # (deficit, x, z, y)
    worst_tri: Optional[tuple] = None  # (excess as Fraction, x, z, y)
    triangle_holds = True
    for x in range(n):
        for y in range(x + 1, n):
            g_xy = sys.grades.entries[x][y]
            d_xy = delta(sys, x, y)
            for z in range(n):
                m = min(sys.grades.entries[x][z], sys.grades.entries[z][y])
                deficit = m - g_xy
                if worst_strong is None or deficit > worst_strong[0]:
                    worst_strong = (deficit, x, z, y)

                d_xz = delta(sys, x, z)
                d_zy = delta(sys, z, y)
                if d_xy > d_xz + d_zy:
                    triangle_holds = False
                excess = d_xy.as_fraction() - (d_xz + d_zy).as_fraction()
                if worst_tri is None or excess > worst_tri[0]:
                    worst_tri = (excess, x, z, y)

    if worst_strong is None:
        c = DyadicValue.one()
        strong_holds = True
        strong_witness = None
    else:
        c = DyadicValue.pow2(max(0, worst_strong[0]))
        strong_holds = worst_strong[0] <= 0
        strong_witness = _triple(sys, *worst_strong[1:])

    tri_witness = None if worst_tri is None else _triple(sys, *worst_tri[1:])

    if semi_witness is not None:
        label = "semimetric-only"
    elif strong_holds:
        label = "ultrametric"
    elif triangle_holds:
        label = "metric"
    else:
        label = "C-inframetric"

    return ClassificationReport(
        is_semimetric=semi_witness is None,
        semimetric_witness=semi_witness,
        minimal_inframetric_c=c,
        triangle_holds=triangle_holds,
        triangle_witness=tri_witness,
        strong_triangle_holds=strong_holds,
        strong_triangle_witness=strong_witness,
        class_label=label,
        r9=check_axiom(sys, "r9"),
        r10=check_axiom(sys, "r10"),
        transitive=check_axiom(sys, "transitive"),
    )


def _triple(sys: RelationalSystem, x: int, z: int, y: int) -> TripleWitness:
    return TripleWitness(
        x, z, y, delta(sys, x, y), delta(sys, x, z), delta(sys, z, y)
    )


def ingest_distance_matrix(
    d: Sequence[Sequence[Rational]],
    window: tuple[int, int],
    labels: Optional[Sequence[str]] = None,
) -> RelationalSystem:
    """Grade a symmetric positive distance matrix into a window.

    Each off-diagonal distance gets the largest level n in [lo - 1, hi] with
    d <= 2**-n: values at or below 2**-hi clamp to hi, values above 2**-lo
    fall to lo - 1.
    """
    win = Window(*window)
    n = len(d)
    rows = [
        [_as_exact_rational(v, f"distance ({i}, {j})") for j, v in enumerate(row)]
        for i, row in enumerate(d)
    ]
    for i, row in enumerate(rows):
        if len(row) != n:
            raise StructuralInputError(f"distance row {i} has length {len(row)}, not {n}")
    for i in range(n):
        if rows[i][i] != 0:
            raise StructuralInputError(f"diagonal entry ({i}, {i}) must be zero")
        for j in range(n):
            if i == j:
                continue
            if rows[i][j] != rows[j][i]:
                raise StructuralInputError(
                    f"asymmetric distances at ({i}, {j}) and ({j}, {i})"
                )
            if rows[i][j] <= 0:
                raise StructuralInputError(
                    f"off-diagonal distance at ({i}, {j}) must be positive"
                )

    entries: list[list[Grade]] = []
    for i in range(n):
        row_g: list[Grade] = []
        for j in range(n):
            if i == j:
                row_g.append(TOP)
                continue
            g = win.below
            for cand in range(win.hi, win.below - 1, -1):
                if rows[i][j] <= DyadicValue.pow2(-cand).as_fraction():
                    g = cand
                    break
            row_g.append(g)
        entries.append(row_g)

    lbls = tuple(labels) if labels is not None else default_labels(n)
    return RelationalSystem(lbls, win, GradeMatrix.from_rows(entries))
