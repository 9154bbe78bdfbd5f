"""Seeded generation, the claim catalog, falsification, and shrinking."""

import pytest
from hypothesis import given, settings, strategies as st

from gradedrel import (
    CLAIMS,
    GenParams,
    UsageError,
    check_axiom,
    falsify,
    gen_self_map,
    gen_system,
    is_homomorphism,
    parse_selfmap,
    parse_system,
    serialize_selfmap,
    serialize_system,
)
from gradedrel.harness import VACUOUS, _trial_seed, shrink

CLAIM_IDS = (
    "eq1-roundtrip",
    "finite-normal-structure-exists",
    "hull-equivalence",
    "prop-r10-metric",
    "prop-r9-2-inframetric",
    "radii-translation",
    "thm-asymptotic-fp",
    "thm-homo-iff-nonexp",
    "thm-ks-dichotomy",
    "thm-regular-fp",
    "transitive-ultrametric",
)


class TestGenParams:
    def test_defaults_valid(self):
        GenParams()

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"constraint": "r11"},
            {"map_kind": "isometry"},
            {"point_count": (3, 2)},
            {"point_count": (0, 4)},
            {"window_span": (0, 2)},
            {"window_lo": (2, -2)},
        ],
    )
    def test_rejects_bad_params(self, kwargs):
        with pytest.raises(UsageError):
            GenParams(**kwargs)


class TestGeneration:
    @given(st.integers(0, 10_000))
    @settings(max_examples=60)
    def test_system_is_deterministic(self, seed):
        a = gen_system(seed)
        b = gen_system(seed)
        assert serialize_system(a) == serialize_system(b)

    @given(st.integers(0, 10_000))
    @settings(max_examples=40)
    def test_constraints_hold_after_repair(self, seed):
        for constraint, axiom in (
            ("r9", "r9"),
            ("r10", "r10"),
            ("transitive", "transitive"),
        ):
            sys = gen_system(seed, GenParams(constraint=constraint))
            assert check_axiom(sys, axiom).holds

    @given(st.integers(0, 10_000))
    @settings(max_examples=40)
    def test_bounds_respected(self, seed):
        params = GenParams(point_count=(2, 4), window_span=(1, 2), window_lo=(0, 1))
        sys = gen_system(seed, params)
        assert 2 <= sys.n <= 4
        assert 0 <= sys.window.lo <= 1
        assert 1 <= sys.window.hi - sys.window.lo <= 2

    @given(st.integers(0, 10_000))
    @settings(max_examples=40)
    def test_map_generation(self, seed):
        sys = gen_system(seed)
        t_any = gen_self_map(seed, sys, "any")
        assert t_any.n == sys.n
        assert gen_self_map(seed, sys, "any").image == t_any.image
        t_hom = gen_self_map(seed, sys, "homomorphism")
        assert is_homomorphism(sys, t_hom).holds

    def test_unknown_map_kind(self, grid):
        with pytest.raises(UsageError):
            gen_self_map(0, grid, "isometry")

    def test_trial_seeds_spread(self):
        seeds = {_trial_seed(7, i) for i in range(1000)}
        assert len(seeds) == 1000


class TestCatalog:
    def test_claim_ids_frozen(self):
        assert tuple(sorted(CLAIMS)) == CLAIM_IDS

    def test_descriptions_and_params(self):
        for claim in CLAIMS.values():
            assert claim.description
            assert isinstance(claim.params, GenParams)
            if claim.needs_map:
                assert claim.params.map_kind in ("any", "homomorphism")

    def test_unknown_claim(self):
        with pytest.raises(UsageError) as exc:
            falsify("thm-unknown", 1, 0)
        assert "eq1-roundtrip" in str(exc.value)


class TestFalsify:
    def test_r10_counterexample_found_and_shrunk(self):
        verdict = falsify("prop-r10-metric", 200, seed=0)
        assert verdict.outcome == "counterexample"
        ce = verdict.instance
        assert ce.system.n == 3
        assert "triangle fails" in ce.locus
        # the shrunk instance still violates the claim
        claim = CLAIMS["prop-r10-metric"]
        assert claim.check(ce.system, ce.selfmap) not in (None, VACUOUS)

    def test_counterexample_survives_serialization(self):
        verdict = falsify("prop-r10-metric", 200, seed=0)
        ce = verdict.instance
        sys = parse_system(serialize_system(ce.system))
        t = parse_selfmap(serialize_selfmap(ce.selfmap)) if ce.selfmap else None
        claim = CLAIMS["prop-r10-metric"]
        assert claim.check(sys, t) not in (None, VACUOUS)

    def test_deterministic_verdicts(self):
        a = falsify("prop-r10-metric", 100, seed=42)
        b = falsify("prop-r10-metric", 100, seed=42)
        assert a == b

    def test_sound_claims_hold(self):
        for claim_id in (
            "eq1-roundtrip",
            "thm-homo-iff-nonexp",
            "transitive-ultrametric",
            "thm-ks-dichotomy",
        ):
            verdict = falsify(claim_id, 150, seed=1)
            assert verdict.outcome == "no-counterexample", claim_id
            assert verdict.instance is None
            assert verdict.trials == 150

    def test_vacuous_trials_counted(self):
        verdict = falsify("thm-regular-fp", 150, seed=3)
        assert verdict.outcome == "no-counterexample"
        assert 0 < verdict.vacuous_trials < 150

    def test_custom_params_override(self):
        params = GenParams(point_count=(1, 1))
        verdict = falsify("prop-r10-metric", 50, seed=0, params=params)
        # one-point systems never violate the triangle inequality
        assert verdict.outcome == "no-counterexample"


class TestShrink:
    def test_idempotent_on_minimal_instance(self):
        verdict = falsify("prop-r10-metric", 200, seed=0)
        ce = verdict.instance
        claim = CLAIMS["prop-r10-metric"]
        pred = lambda s, m: claim.check(s, m) not in (None, VACUOUS)
        again_sys, again_map = shrink(ce.system, ce.selfmap, pred)
        assert serialize_system(again_sys) == serialize_system(ce.system)

    def test_shrink_reaches_small_witness(self):
        # starting from a deliberately padded failing system, shrinking
        # keeps the failure while removing every point it can
        claim = CLAIMS["prop-r10-metric"]
        pred = lambda s, m: claim.check(s, m) not in (None, VACUOUS)
        params = GenParams(point_count=(6, 6), constraint="r10")
        big = next(
            sys
            for seed in range(200)
            for sys in [gen_system(seed, params)]
            if pred(sys, None)
        )
        small, _ = shrink(big, None, pred)
        assert small.n == 3
        assert pred(small, None)
