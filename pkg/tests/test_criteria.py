"""Strength criteria: L_p norms, value products, simplex volume, log means."""

import math
from fractions import Fraction as F

import pytest

from groupcut import (
    INFINITE,
    FiniteGroupFunction,
    dantzig,
    gom,
    log_geo_mean,
    lp_norm,
    md2,
    rearrange_finite,
    score_function,
    simplex_volume,
    volume_product,
)
from groupcut.finite_functions import compose
from groupcut.group_core import Automorphism, CyclicGroup


class TestLpNorm:
    def test_md2_l1_is_half_for_any_order(self):
        for q, b in [(3, 1), (5, 2), (7, 6), (11, 4)]:
            score = lp_norm(md2(q, b), 1)
            assert score.power == F(1, 2)
            assert score.root == 0.5

    def test_gom_l1_is_half(self):
        assert lp_norm(gom(5, 4), 1).power == F(1, 2)

    def test_gom_l2_squared(self):
        assert lp_norm(gom(5, 4), 2).power == F(3, 8)

    def test_md2_higher_powers_follow_closed_form(self):
        for q in (3, 5, 7, 11):
            for p in (2, 3):
                got = lp_norm(md2(q, q - 1), p).power
                assert got == F(1, 2) ** p + (1 - 2 * F(1, 2) ** p) / q

    def test_root_matches_power(self):
        score = lp_norm(gom(7, 3), 3)
        assert score.root == pytest.approx(float(score.power) ** (1 / 3), rel=1e-14)

    def test_every_minimal_function_has_l1_exactly_half(self, vertices_for):
        for b in range(1, 7):
            for vertex in vertices_for(7, b):
                assert lp_norm(vertex, 1).power == F(1, 2)


class TestVolumeProduct:
    def test_gom_reaches_the_floor(self):
        assert volume_product(gom(5, 4)) == F(3, 32)
        assert volume_product(gom(3, 1)) == F(1, 2)

    def test_brute_force_example(self):
        fn = FiniteGroupFunction.from_values(
            5, 4, [F(0), F(2, 3), F(1, 2), F(1, 3), F(1)]
        )
        assert volume_product(fn) == F(1, 9)

    def test_invariant_under_automorphism(self):
        for m in range(1, 7):
            phi = Automorphism(m, CyclicGroup(7))
            assert volume_product(compose(gom(7, 4), phi)) == volume_product(
                gom(7, 4)
            )

    def test_invariant_under_rearrangement(self):
        fn = md2(7, 2)
        assert volume_product(rearrange_finite(fn)) == volume_product(fn)


class TestSimplexVolume:
    def test_examples(self):
        assert simplex_volume(gom(3, 1)) == F(1)
        assert simplex_volume(gom(5, 4)) == F(4, 9)

    def test_zero_value_is_infinite(self):
        fn = FiniteGroupFunction.from_values(3, 2, [F(0), F(0), F(1)])
        assert simplex_volume(fn) == INFINITE


class TestLogGeoMean:
    def test_matches_volume_product_log(self):
        for fn in (gom(5, 4), gom(3, 1), md2(7, 3)):
            expected = math.log(float(volume_product(fn))) / (fn.q - 1)
            assert log_geo_mean(fn) == pytest.approx(expected, abs=1e-12)

    def test_zero_value_is_negative_infinity(self):
        fn = FiniteGroupFunction.from_values(3, 2, [F(0), F(0), F(1)])
        assert log_geo_mean(fn) == float("-inf")

    def test_reference_value(self):
        assert log_geo_mean(gom(5, 4)) == pytest.approx(
            math.log(3 / 32) / 4, abs=1e-12
        )


class TestScoreFunction:
    def test_report_round_trip_fields(self):
        report = score_function(gom(5, 4), ps=(1, 2))
        data = report.to_dict()
        assert data["q"] == 5 and data["b"] == 4
        assert data["lp_norms"]["1"]["power"] == "1/2"
        assert data["volume_product"] == "3/32"
        assert data["simplex_volume"] == "4/9"

    def test_infinite_volume_serialized_as_string(self):
        fn = FiniteGroupFunction.from_values(3, 2, [F(0), F(0), F(1)])
        assert score_function(fn).to_dict()["simplex_volume"] == "Infinite"

    def test_dantzig_scores_dominated_by_md2(self):
        weak = score_function(dantzig(5, 2))
        strong = score_function(md2(5, 2))
        assert weak.volume_product > strong.volume_product
        assert weak.lp_norms[2].power > strong.lp_norms[2].power
