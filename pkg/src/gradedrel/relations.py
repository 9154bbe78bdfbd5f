"""Finite nested families of symmetric binary relations, stored as grade matrices.

A family assigns to every integer level n a symmetric relation R_n on the
ground set, shrinking as n grows.  Only a window [lo, hi] of levels is kept
explicitly: below the window every pair is related, above it only equal
points are.  The family is then determined by the grade of each pair, the
largest level still relating it, with TOP (above every integer) on the
diagonal.  A pair related at no stored level gets grade lo - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from .errors import StructuralInputError, UsageError
from .pointset import iter_bits


class Top:
    """Sentinel grade strictly above every integer; shifts leave it fixed."""

    __slots__ = ()
    _singleton: Optional["Top"] = None

    def __new__(cls) -> "Top":
        if cls._singleton is None:
            cls._singleton = super().__new__(cls)
        return cls._singleton

    def __repr__(self) -> str:
        return "TOP"

    def __lt__(self, other):
        if isinstance(other, (int, Top)):
            return False
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, Top):
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, Top):
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (int, Top)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented


TOP = Top()

Grade = Union[int, Top]


def grade_str(g: Grade) -> str:
    return "-" if isinstance(g, Top) else str(g)


@dataclass(frozen=True)
class Window:
    """Inclusive level range [lo, hi] actually stored for a family."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise StructuralInputError(f"window [{self.lo}, {self.hi}] is empty")

    @property
    def below(self) -> int:
        """Grade meaning "related at no stored level" (full relation there)."""
        return self.lo - 1

    @property
    def above(self) -> int:
        """First level past the window; its relation is the diagonal."""
        return self.hi + 1

    def levels(self) -> range:
        return range(self.lo, self.hi + 1)

    @property
    def span(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True)
class Relation:
    """Binary relation on {0..n-1}, one int bitmask per row."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if len(self.rows) != self.n:
            raise StructuralInputError(
                f"relation has {len(self.rows)} rows for {self.n} points"
            )
        full = (1 << self.n) - 1
        for x, row in enumerate(self.rows):
            if not 0 <= row <= full:
                raise StructuralInputError(f"row {x} mask out of range")

    @classmethod
    def full(cls, n: int) -> "Relation":
        mask = (1 << n) - 1
        return cls(n, tuple(mask for _ in range(n)))

    @classmethod
    def diagonal(cls, n: int) -> "Relation":
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def empty(cls, n: int) -> "Relation":
        return cls(n, tuple(0 for _ in range(n)))

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "Relation":
        rows = [0] * n
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise IndexError(f"pair ({x}, {y}) out of range for {n} points")
            rows[x] |= 1 << y
        return cls(n, tuple(rows))

    def contains(self, x: int, y: int) -> bool:
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise IndexError(f"pair ({x}, {y}) out of range for {self.n} points")
        return bool((self.rows[x] >> y) & 1)

    def pairs(self) -> Iterator[tuple[int, int]]:
        for x, row in enumerate(self.rows):
            for y in iter_bits(row):
                yield (x, y)

    def subset_of(self, other: "Relation") -> bool:
        self._check_same_ground(other)
        return all(r & ~s == 0 for r, s in zip(self.rows, other.rows))

    def intersection(self, other: "Relation") -> "Relation":
        self._check_same_ground(other)
        return Relation(self.n, tuple(r & s for r, s in zip(self.rows, other.rows)))

    def is_symmetric(self) -> bool:
        return all(
            (self.rows[y] >> x) & 1
            for x, row in enumerate(self.rows)
            for y in iter_bits(row)
        )

    def is_reflexive(self) -> bool:
        return all((row >> x) & 1 for x, row in enumerate(self.rows))

    def _check_same_ground(self, other: "Relation") -> None:
        if self.n != other.n:
            raise StructuralInputError(
                f"relation size mismatch: {self.n} vs {other.n}"
            )


def compose(r: Relation, s: Relation) -> Relation:
    """Relational composition: (x, y) related iff some z has r(x,z) and s(z,y)."""
    r._check_same_ground(s)
    rows = []
    for row in r.rows:
        out = 0
        for z in iter_bits(row):
            out |= s.rows[z]
        rows.append(out)
    return Relation(r.n, tuple(rows))


@dataclass(frozen=True)
class GradeMatrix:
    """Symmetric matrix of grades with TOP exactly on the diagonal."""

    n: int
    entries: tuple[tuple[Grade, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.n:
            raise StructuralInputError(
                f"grade matrix has {len(self.entries)} rows for {self.n} points"
            )
        for x, row in enumerate(self.entries):
            if len(row) != self.n:
                raise StructuralInputError(f"grade matrix row {x} has length {len(row)}")
        for x in range(self.n):
            if not isinstance(self.entries[x][x], Top):
                raise StructuralInputError(f"diagonal entry ({x}, {x}) must be TOP")
            for y in range(self.n):
                if x == y:
                    continue
                g = self.entries[x][y]
                if not isinstance(g, int):
                    raise StructuralInputError(
                        f"off-diagonal entry ({x}, {y}) must be an integer, got {g!r}"
                    )
                if self.entries[y][x] != g:
                    raise StructuralInputError(
                        f"grade matrix asymmetric at ({x}, {y}) vs ({y}, {x})"
                    )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Grade]]) -> "GradeMatrix":
        return cls(len(rows), tuple(tuple(row) for row in rows))

    def grade(self, x: int, y: int) -> Grade:
        if not (0 <= x < self.n and 0 <= y < self.n):
            raise IndexError(f"pair ({x}, {y}) out of range for {self.n} points")
        return self.entries[x][y]


@dataclass(frozen=True)
class RelationalSystem:
    """Ground set with labels, a level window, and the grade of every pair."""

    labels: tuple[str, ...]
    window: Window
    grades: GradeMatrix

    def __post_init__(self):
        if len(self.labels) != self.grades.n:
            raise StructuralInputError(
                f"{len(self.labels)} labels for {self.grades.n} points"
            )
        if len(set(self.labels)) != len(self.labels):
            raise StructuralInputError("labels must be distinct")
        lo, hi = self.window.lo, self.window.hi
        for x in range(self.grades.n):
            for y in range(x + 1, self.grades.n):
                g = self.grades.entries[x][y]
                if not lo - 1 <= g <= hi:
                    raise StructuralInputError(
                        f"grade {g} at ({x}, {y}) outside [{lo - 1}, {hi}]"
                    )

    @property
    def n(self) -> int:
        return self.grades.n

    def grade(self, x: int, y: int) -> Grade:
        return self.grades.grade(x, y)


def make_system(
    labels: Sequence[str], window: tuple[int, int], rows: Sequence[Sequence[Grade]]
) -> RelationalSystem:
    """Convenience constructor from plain sequences."""
    return RelationalSystem(
        tuple(labels), Window(*window), GradeMatrix.from_rows(rows)
    )


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


@dataclass(frozen=True)
class LevelList:
    """Explicit per-level relations over a window, lowest level first."""

    window: Window
    per_level: tuple[Relation, ...]

    def __post_init__(self):
        expected = self.window.hi - self.window.lo + 1
        if len(self.per_level) != expected:
            raise StructuralInputError(
                f"{len(self.per_level)} levels for window "
                f"[{self.window.lo}, {self.window.hi}]"
            )
        sizes = {rel.n for rel in self.per_level}
        if len(sizes) > 1:
            raise StructuralInputError(f"levels disagree on point count: {sorted(sizes)}")

    @property
    def n(self) -> int:
        return self.per_level[0].n

    def at(self, n: int) -> Relation:
        if not self.window.lo <= n <= self.window.hi:
            raise IndexError(f"level {n} outside window")
        return self.per_level[n - self.window.lo]


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one structural check; a false report carries a witness."""

    axiom_id: str
    holds: bool
    witness: Optional[tuple] = None
    bound_grade: Optional[Grade] = None


def validate_level_list(levels: LevelList) -> tuple[AxiomReport, ...]:
    """Check symmetry per level, nesting, and within-window separation.

    Separation ("r4-window") asks that the intersection of all stored levels
    be exactly the diagonal: every level contains each (x, x), and no
    distinct pair survives every level.
    """
    reports = []

    witness = None
    for idx, rel in enumerate(levels.per_level):
        lvl = levels.window.lo + idx
        for x, y in rel.pairs():
            if not rel.contains(y, x):
                witness = (lvl, x, y)
                break
        if witness:
            break
    reports.append(AxiomReport("r1", witness is None, witness))

    witness = None
    for idx in range(1, len(levels.per_level)):
        cur, prev = levels.per_level[idx], levels.per_level[idx - 1]
        lvl = levels.window.lo + idx
        for x in range(cur.n):
            extra = cur.rows[x] & ~prev.rows[x]
            if extra:
                y = next(iter_bits(extra))
                witness = (lvl, x, y)
                break
        if witness:
            break
    reports.append(AxiomReport("r2", witness is None, witness))

    witness = None
    for idx, rel in enumerate(levels.per_level):
        lvl = levels.window.lo + idx
        for x in range(rel.n):
            if not rel.contains(x, x):
                witness = (lvl, x, x)
                break
        if witness:
            break
    if witness is None:
        inter = levels.per_level[0]
        for rel in levels.per_level[1:]:
            inter = inter.intersection(rel)
        for x in range(inter.n):
            off = inter.rows[x] & ~(1 << x)
            if off:
                witness = (x, next(iter_bits(off)))
                break
    reports.append(AxiomReport("r4-window", witness is None, witness))

    return tuple(reports)


def compact_to_grades(
    levels: LevelList, labels: Optional[Sequence[str]] = None
) -> RelationalSystem:
    """Collapse a validated level list into a grade matrix.

    The grade of a pair is the largest stored level containing it, lo - 1 if
    none does, and TOP on the diagonal.
    """
    for report in validate_level_list(levels):
        if not report.holds:
            raise StructuralInputError(
                f"level list fails {report.axiom_id} (witness {report.witness})"
            )
    n = levels.n
    lo = levels.window.lo
    entries = []
    for x in range(n):
        row: list[Grade] = []
        for y in range(n):
            if x == y:
                row.append(TOP)
                continue
            g: Grade = lo - 1
            for idx in range(len(levels.per_level) - 1, -1, -1):
                if levels.per_level[idx].contains(x, y):
                    g = lo + idx
                    break
            row.append(g)
        entries.append(tuple(row))
    lbls = tuple(labels) if labels is not None else default_labels(n)
    return RelationalSystem(lbls, levels.window, GradeMatrix(n, tuple(entries)))


def expand_level(sys: RelationalSystem, n: int) -> Relation:
    """Relation at level n: pairs whose grade is at least n.

    Works for any integer level; below the window this is the full relation
    and above it the diagonal, by the grade conventions alone.
    """
    rows = []
    for x in range(sys.n):
        row = 0
        for y in range(sys.n):
            if sys.grades.entries[x][y] >= n:
                row |= 1 << y
        rows.append(row)
    return Relation(sys.n, tuple(rows))


def to_level_list(sys: RelationalSystem) -> LevelList:
    """Expand every stored level of a system."""
    return LevelList(
        sys.window, tuple(expand_level(sys, n) for n in sys.window.levels())
    )


_CHECKABLE = ("r5", "r9", "r10", "transitive")


def check_axiom(sys: RelationalSystem, axiom_id: str) -> AxiomReport:
    """Check one optional property of a system; see _CHECKABLE for the ids.

    r5: every pair is related somewhere inside the window (the minimum
        off-diagonal grade, reported as the bound, reaches lo).
    r9/r10: the square/cube of each level's relation fits inside the
        previous level, checked for every level in [lo, hi + 1].
    transitive: every stored level is a transitive relation.
    """
    if axiom_id == "r5":
        return _check_bounded(sys)
    if axiom_id == "r9":
        return _check_composition_steps(sys, 2)
    if axiom_id == "r10":
        return _check_composition_steps(sys, 3)
    if axiom_id == "transitive":
        return _check_transitive(sys)
    raise UsageError(
        f"unknown or uncheckable axiom id {axiom_id!r}; expected one of {_CHECKABLE}"
    )


def _check_bounded(sys: RelationalSystem) -> AxiomReport:
    bound: Grade = TOP
    worst: Optional[tuple] = None
    for x in range(sys.n):
        for y in range(x + 1, sys.n):
            g = sys.grades.entries[x][y]
            if g < bound:
                bound = g
                worst = (x, y)
    holds = bound >= sys.window.lo
    return AxiomReport("r5", holds, None if holds else worst, bound)


def _check_composition_steps(sys: RelationalSystem, steps: int) -> AxiomReport:
    axiom_id = "r9" if steps == 2 else "r10"
    for n in range(sys.window.lo, sys.window.hi + 2):
        rel = expand_level(sys, n)
        power = rel
        for _ in range(steps - 1):
            power = compose(power, rel)
        prev = expand_level(sys, n - 1)
        for x in range(sys.n):
            extra = power.rows[x] & ~prev.rows[x]
            if not extra:
                continue
            y = next(iter_bits(extra))
            witness = _chain_witness(rel, x, y, steps)
            return AxiomReport(axiom_id, False, (n, *witness))
    return AxiomReport(axiom_id, True)


def _chain_witness(rel: Relation, x: int, y: int, steps: int) -> tuple:
    """First chain x .. y of the given length inside rel, endpoints included."""
    if steps == 2:
        for z in iter_bits(rel.rows[x]):
            if rel.contains(z, y):
                return (x, z, y)
    else:
        for z in iter_bits(rel.rows[x]):
            for w in iter_bits(rel.rows[z]):
                if rel.contains(w, y):
                    return (x, z, w, y)
    raise AssertionError("composition witness vanished")  # pragma: no cover


def _check_transitive(sys: RelationalSystem) -> AxiomReport:
    for n in sys.window.levels():
        rel = expand_level(sys, n)
        for x in range(sys.n):
            for z in iter_bits(rel.rows[x]):
                extra = rel.rows[z] & ~rel.rows[x]
                if extra:
                    y = next(iter_bits(extra))
                    return AxiomReport("transitive", False, (n, x, z, y))
    return AxiomReport("transitive", True)
