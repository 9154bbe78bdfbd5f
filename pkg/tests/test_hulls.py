"""Balls, hulls, admissible families, radii, and the structure checks."""

import pytest
from hypothesis import given, settings

from gradedrel import (
    ARBITRARY_CENTER,
    DyadicValue,
    PAPER_COV,
    PointSet,
    ResourceLimitError,
    StructuralInputError,
    TOP,
    ball,
    check_compact_structure,
    check_normal_structure,
    check_spherical_completeness,
    covering_level,
    enumerate_admissible,
    hull,
    make_system,
    min_distance_clique,
    normality_criteria,
    radii,
)

from test_relations import small_systems

MODES = (PAPER_COV, ARBITRARY_CENTER)


def pset(sys, *members):
    return PointSet.of(sys.n, members)


class TestBalls:
    def test_grid_balls(self, grid):
        assert ball(grid, 0, 2).members() == (0, 1)
        assert ball(grid, 0, 1).members() == (0, 1, 2)
        assert ball(grid, 0, 0).members() == (0, 1, 2, 3, 4)
        assert ball(grid, 0, 3).members() == (0,)

    def test_extreme_levels(self, grid):
        assert len(ball(grid, 2, grid.window.below)) == grid.n
        assert ball(grid, 2, grid.window.above).members() == (2,)

    def test_covering_level(self, grid):
        assert covering_level(grid, 0, pset(grid, 0, 1)) == 2
        assert covering_level(grid, 0, pset(grid, 0, 1, 2)) == 1
        assert covering_level(grid, 0, pset(grid, 0)) is TOP

    @given(small_systems())
    def test_balls_nest(self, sys):
        for x in range(sys.n):
            prev = None
            for lev in range(sys.window.below, sys.window.above + 1):
                cur = ball(sys, x, lev)
                assert x in cur
                if prev is not None:
                    assert cur.subset_of(prev)
                prev = cur


class TestHull:
    def test_hull_is_extensive_and_idempotent(self, grid):
        for mode in MODES:
            for bits in range(1, 1 << grid.n):
                s = PointSet(grid.n, bits)
                h = hull(grid, s, mode)
                assert s.subset_of(h.points)
                again = hull(grid, h.points, mode)
                assert again.points == h.points

    def test_hull_monotone(self, grid):
        small = pset(grid, 0, 1)
        big = pset(grid, 0, 1, 2)
        for mode in MODES:
            assert hull(grid, small, mode).points.subset_of(hull(grid, big, mode).points)

    def test_empty_set_rejected(self, grid):
        with pytest.raises(StructuralInputError):
            hull(grid, PointSet.empty(grid.n))

    def test_witness_balls_reproduce_hull(self, grid):
        for mode in MODES:
            h = hull(grid, pset(grid, 1, 3), mode)
            bits = (1 << grid.n) - 1
            for center, level in h.witness_balls:
                bits &= ball(grid, center, level).bits
            assert bits == h.points.bits

    def test_closure_mode_can_be_tighter(self, grid):
        # arbitrary centers can carve smaller hulls than member centers
        s = pset(grid, 1, 3)
        paper = hull(grid, s, PAPER_COV).points
        closure = hull(grid, s, ARBITRARY_CENTER).points
        assert closure.subset_of(paper)


class TestEnumerate:
    def test_chain_family_is_singletons_plus_upsets(self, chain):
        for mode in MODES:
            fam = [adm.points.members() for adm in enumerate_admissible(chain, mode)]
            singletons = [(x,) for x in range(6)]
            upsets = [tuple(range(k, 6)) for k in range(5)]
            assert sorted(fam) == sorted(singletons + upsets)

    def test_twins_family(self, twins):
        for mode in MODES:
            fam = [adm.points.members() for adm in enumerate_admissible(twins, mode)]
            assert sorted(fam) == [(0,), (0, 1), (1,)]

    def test_canonical_order(self, grid):
        fam = enumerate_admissible(grid, ARBITRARY_CENTER)
        keys = [adm.points.canonical_key() for adm in fam]
        assert keys == sorted(keys)

    @given(small_systems())
    @settings(max_examples=40)
    def test_closure_family_is_intersection_closed(self, sys):
        fam = {adm.points.bits for adm in enumerate_admissible(sys, ARBITRARY_CENTER)}
        for a in fam:
            for b in fam:
                u = a & b
                if u:
                    assert u in fam

    @given(small_systems())
    @settings(max_examples=40)
    def test_paper_family_within_closure_family(self, sys):
        paper = {adm.points.bits for adm in enumerate_admissible(sys, PAPER_COV)}
        closure = {adm.points.bits for adm in enumerate_admissible(sys, ARBITRARY_CENTER)}
        assert paper <= closure

    @given(small_systems())
    @settings(max_examples=40)
    def test_singletons_and_ground_set_always_admissible(self, sys):
        for mode in MODES:
            fam = {adm.points.bits for adm in enumerate_admissible(sys, mode)}
            assert (1 << sys.n) - 1 in fam
            for x in range(sys.n):
                assert (1 << x) in fam

    def test_resource_cap(self, grid):
        with pytest.raises(ResourceLimitError):
            enumerate_admissible(grid, PAPER_COV, max_intermediate=3)


class TestRadii:
    def test_grid_pair(self, grid):
        rep = radii(grid, pset(grid, 0, 1))
        assert rep.cheb_grade == 2
        assert rep.diam_grade == 2
        assert rep.cheb_radius == DyadicValue.pow2(-2)
        assert rep.diameter == DyadicValue.pow2(-2)

    def test_grid_triple(self, grid):
        rep = radii(grid, pset(grid, 0, 1, 2))
        # middle point reaches both ends at grade >= 1; ends see grade 1
        assert rep.diam_grade == 1
        assert rep.cheb_grade == 2
        assert rep.cheb_radius < rep.diameter

    def test_singleton(self, grid):
        rep = radii(grid, pset(grid, 3))
        assert rep.cheb_grade is TOP
        assert rep.diam_grade is TOP
        assert rep.cheb_radius.is_zero
        assert rep.diameter.is_zero

    def test_empty_rejected(self, grid):
        with pytest.raises(StructuralInputError):
            radii(grid, PointSet.empty(grid.n))

    @given(small_systems())
    def test_radius_never_exceeds_diameter_on_admissible(self, sys):
        for adm in enumerate_admissible(sys, ARBITRARY_CENTER):
            rep = radii(sys, adm.points)
            assert rep.cheb_radius <= rep.diameter
            assert rep.cheb_grade >= rep.diam_grade


class TestNormalityCriteria:
    def test_strict_on_grid_triple(self, grid):
        crit = normality_criteria(grid, pset(grid, 0, 1, 2))
        assert crit.agreed
        assert crit.grade_strict  # the middle point beats the diameter

    def test_flat_on_twins(self, twins):
        crit = normality_criteria(twins, pset(twins, 0, 1))
        assert crit.agreed
        assert not crit.grade_strict

    @given(small_systems())
    @settings(max_examples=40)
    def test_three_routes_agree_everywhere(self, sys):
        for adm in enumerate_admissible(sys, ARBITRARY_CENTER):
            crit = normality_criteria(sys, adm.points)
            assert crit.agreed


class TestNormalStructure:
    def test_chain_witness(self, chain):
        rep = check_normal_structure(chain)
        assert not rep.holds
        adm, rad = rep.witness
        assert adm.points.members() == (4, 5)
        assert rad.cheb_radius == rad.diameter
        assert rep.note == "radius equals diameter on the witness set"

    def test_single_point_vacuously_normal(self):
        one = make_system(["a"], (0, 1), [[TOP]])
        rep = check_normal_structure(one)
        assert rep.holds
        assert rep.note == "no admissible set with two or more points"

    @given(small_systems())
    @settings(max_examples=40)
    def test_never_holds_beyond_one_point(self, sys):
        if sys.n < 2:
            return
        for mode in MODES:
            rep = check_normal_structure(sys, mode)
            assert not rep.holds
            adm, rad = rep.witness
            assert len(adm.points) >= 2
            assert rad.cheb_radius == rad.diameter


class TestMinDistanceClique:
    def test_chain(self, chain):
        assert min_distance_clique(chain).members() == (4, 5)

    def test_grid(self, grid):
        got = min_distance_clique(grid)
        # highest off-diagonal grade is 2; the first such pair is (0, 1),
        # and no third point keeps grade 2 to both
        assert got.members() == (0, 1)

    def test_needs_two_points(self):
        one = make_system(["a"], (0, 1), [[TOP]])
        with pytest.raises(StructuralInputError):
            min_distance_clique(one)

    @given(small_systems())
    @settings(max_examples=60)
    def test_clique_properties(self, sys):
        if sys.n < 2:
            return
        clique = min_distance_clique(sys)
        members = clique.members()
        assert len(members) >= 2
        best = max(
            sys.grades.entries[x][y]
            for x in range(sys.n)
            for y in range(x + 1, sys.n)
        )
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                assert sys.grades.entries[x][y] == best
        # admissible in both modes, with radius equal to diameter
        for mode in MODES:
            assert hull(sys, clique, mode).points == clique
        rep = radii(sys, clique)
        assert rep.cheb_radius == rep.diameter

    @given(small_systems())
    @settings(max_examples=60)
    def test_clique_is_maximal(self, sys):
        if sys.n < 2:
            return
        clique = min_distance_clique(sys)
        members = clique.members()
        best = sys.grades.entries[members[0]][members[1]]
        for z in range(sys.n):
            if z in clique:
                continue
            assert not all(sys.grades.entries[z][m] == best for m in members)


class TestCompactAndSpherical:
    def test_finite_note(self, chain):
        rep = check_compact_structure(chain)
        assert rep.holds
        assert rep.note == "finite ground set: FIP automatic"

    def test_spherical_note(self, grid):
        rep = check_spherical_completeness(grid)
        assert rep.holds
        assert rep.note == "finite ground set: every nested ball chain is finite"

    @given(small_systems())
    @settings(max_examples=30)
    def test_always_hold_on_finite_systems(self, sys):
        assert check_compact_structure(sys).holds
        assert check_spherical_completeness(sys).holds
