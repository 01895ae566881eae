"""Tests for the named checks, the scan and convergence studies."""

import json
import math

import pytest
from pydantic import ValidationError

from warpcurv.ambient import EuclideanFiber, FlatTorus, WarpedAmbient
from warpcurv.errors import ArgumentError, HypothesisViolation, UnsupportedCheckError
from warpcurv.families import GeodesicSphere, Slice, TorusGraph
from warpcurv.quadrature import grid_for, integrate_surface, sample_surface, sphere_grid, torus_grid
from warpcurv.verifier import (
    TAG_NEITHER,
    TAG_SLICE,
    TAG_SPHERE,
    AlexandrovReport,
    CheckSpec,
    Tolerances,
    alexandrov_scan,
    ambient_selftest,
    check_garding,
    check_hk,
    check_l1_identity,
    check_lemma52,
    check_minkowski,
    check_second_form,
    classify,
    convergence_study,
    is_monotone,
    run_check,
)

from .conftest import TWO_PI

# two-mode graph u = 0.3 cos p1 + 0.1 sin p2 over the 2pi torus, c = 1
TWO_MODE_I1 = 49.5796054652913
TWO_MODE_I2 = -48.9702622941166
TWO_MODE_NORMALIZED = 0.0121978456671642


class TestTolerances:
    def test_defaults(self):
        tol = Tolerances()
        assert tol.identity == 1e-8
        assert tol.garding == 1e-12

    def test_unknown_key(self):
        with pytest.raises(ValidationError):
            Tolerances(bogus=1.0)

    def test_positive(self):
        with pytest.raises(ValidationError):
            Tolerances(identity=0.0)

    def test_frozen(self):
        with pytest.raises(ValidationError):
            Tolerances().identity = 1.0


class TestHeintzeKarcher:
    def test_slice_is_equality_case(self, torus_ambient, cache):
        fam = Slice(0.4)
        report = check_hk(fam, torus_ambient, torus_grid(torus_ambient.fiber.periods, 16), cache=cache)
        assert report.passed
        assert abs(report.normalized_residual) < 1e-12
        assert report.umbilicity_defect < 1e-12
        assert report.linkage_defect < 1e-12

    def test_two_mode_graph_baseline(self, torus_ambient, two_mode, cache):
        report = check_hk(two_mode, torus_ambient, torus_grid(torus_ambient.fiber.periods, 128), cache=cache)
        assert report.passed
        assert report.I1 == pytest.approx(TWO_MODE_I1, rel=1e-9)
        assert report.I2 == pytest.approx(TWO_MODE_I2, rel=1e-9)
        assert report.normalized_residual == pytest.approx(TWO_MODE_NORMALIZED, rel=1e-6)
        assert report.umbilicity_defect > 0.2
        assert report.min_mean_curvature > 0.5
        assert report.linkage_defect < 1e-10

    def test_sphere_equality_and_corollary(self, hyperbolic_ambient, unit_sphere, cache):
        report = check_hk(unit_sphere, hyperbolic_ambient, sphere_grid(2, 64), cache=cache)
        expected = 4.0 * math.pi * math.sinh(1.0) ** 3
        assert report.passed
        assert report.I1 == pytest.approx(expected, rel=1e-9)
        assert report.corollary_rhs == pytest.approx(expected, rel=1e-9)
        assert abs(report.normalized_residual) < 1e-9

    @pytest.mark.parametrize("rho", [0.5, 1.0, 2.0])
    def test_sphere_radius_sweep(self, hyperbolic_ambient, cache, rho):
        sphere = GeodesicSphere(rho=rho)
        grid = sphere_grid(2, 64)
        report = check_hk(sphere, hyperbolic_ambient, grid, cache=cache)
        assert report.passed
        assert abs(report.residual) / report.I1 < 1e-7
        assert report.umbilicity_defect < 1e-9
        assert report.min_mean_curvature == pytest.approx(1.0 / math.tanh(rho), rel=1e-8)
        area = integrate_surface(lambda s: 1.0, sphere, hyperbolic_ambient, grid, cache=cache)
        assert area == pytest.approx(4.0 * math.pi * math.sinh(rho) ** 2, rel=1e-8)

    def test_odd_dimension_sphere(self, cache):
        amb = WarpedAmbient(3, EuclideanFiber())
        sphere = GeodesicSphere(rho=1.0)
        grid = sphere_grid(3, 16)
        report = check_hk(sphere, amb, grid, cache=cache)
        assert report.passed
        assert abs(report.normalized_residual) < 1e-9
        assert report.umbilicity_defect < 1e-9
        for k in (0, 1):
            minkowski = check_minkowski(k, sphere, amb, grid, cache=cache)
            assert minkowski.passed
            assert abs(minkowski.normalized_residual) < 1e-9

    def test_unit_period_slice_exactness(self, cache):
        amb = WarpedAmbient(2, FlatTorus((1.0, 1.0)))
        fam = Slice(-0.3)
        grid = torus_grid(amb.fiber.periods, 8)
        report = check_hk(fam, amb, grid, cache=cache)
        assert abs(report.residual) <= 1e-12 * report.scale
        for k in (0, 1):
            assert abs(check_minkowski(k, fam, amb, grid, cache=cache).normalized_residual) <= 1e-12
        for data in sample_surface(fam, amb, grid, cache=cache):
            assert max(abs(lam - 1.0) for lam in data.principal) <= 1e-12
            assert data.hk(2) == pytest.approx(1.0, abs=1e-12)

    def test_scaling_covariance(self, two_mode, cache):
        periods = (TWO_PI, TWO_PI)
        grid = torus_grid(periods, 32)
        base = check_hk(two_mode, WarpedAmbient(2, FlatTorus(periods)), grid, cache=cache)
        scaled = check_hk(two_mode, WarpedAmbient(2, FlatTorus(periods), potential_scale=3.0), grid, cache=cache)
        assert scaled.I1 == pytest.approx(3.0 * base.I1, rel=1e-12)
        assert scaled.I2 == pytest.approx(3.0 * base.I2, rel=1e-12)
        assert scaled.passed == base.passed

    def test_negative_mean_curvature(self, torus_ambient, cache):
        fam = TorusGraph.single_mode(1.0)
        with pytest.raises(HypothesisViolation) as info:
            check_hk(fam, torus_ambient, torus_grid(torus_ambient.fiber.periods, 16), cache=cache)
        assert info.value.details["H"] <= 0.0

    def test_report_is_json_ready(self, torus_ambient, cache):
        report = check_hk(Slice(0.0), torus_ambient, torus_grid(torus_ambient.fiber.periods, 8), cache=cache)
        doc = report.to_dict()
        json.dumps(doc)
        assert doc["check"] == "hk"
        assert doc["params"] == {"s": 0.0}
        assert doc["tolerances"]["identity"] == 1e-8


class TestMinkowski:
    @pytest.mark.parametrize("k", [0, 1])
    def test_two_mode_graph(self, torus_ambient, two_mode, cache, k):
        report = check_minkowski(k, two_mode, torus_ambient, torus_grid(torus_ambient.fiber.periods, 64), cache=cache)
        assert report.passed
        assert abs(report.normalized_residual) < 1e-12

    @pytest.mark.parametrize("k", [0, 1])
    def test_sphere(self, hyperbolic_ambient, unit_sphere, cache, k):
        report = check_minkowski(k, unit_sphere, hyperbolic_ambient, sphere_grid(2, 64), cache=cache)
        assert report.passed

    def test_order_out_of_range(self, torus_ambient, cache):
        with pytest.raises(ArgumentError):
            check_minkowski(2, Slice(0.0), torus_ambient, torus_grid(torus_ambient.fiber.periods, 8), cache=cache)

    def test_higher_order_needs_flag(self, cache):
        amb = WarpedAmbient(3, FlatTorus((TWO_PI,) * 3))
        grid = torus_grid(amb.fiber.periods, 8)
        with pytest.raises(UnsupportedCheckError):
            check_minkowski(2, Slice(0.0), amb, grid, cache=cache)
        report = check_minkowski(2, Slice(0.0), amb, grid, allow_constant_curvature=True, cache=cache)
        assert report.passed


class TestConstantH2AndGarding:
    def test_lemma52_slice(self, torus_ambient, cache):
        report = check_lemma52(Slice(0.2), torus_ambient, torus_grid(torus_ambient.fiber.periods, 8), cache=cache)
        assert report.passed
        assert report.h2 == pytest.approx(1.0)
        assert abs(report.normalized_value) < 1e-12

    def test_lemma52_sphere(self, hyperbolic_ambient, unit_sphere, cache):
        report = check_lemma52(unit_sphere, hyperbolic_ambient, sphere_grid(2, 32), cache=cache)
        assert report.passed
        assert report.h2 == pytest.approx(unit_sphere.principal_curvature ** 2)

    def test_lemma52_needs_constant_h2(self, torus_ambient, two_mode, cache):
        with pytest.raises(HypothesisViolation) as info:
            check_lemma52(two_mode, torus_ambient, torus_grid(torus_ambient.fiber.periods, 16), cache=cache)
        assert info.value.details["h2_spread"] > 0.0

    def test_garding_two_mode(self, torus_ambient, two_mode, cache):
        report = check_garding(two_mode, torus_ambient, torus_grid(torus_ambient.fiber.periods, 64), cache=cache)
        assert report.passed
        assert report.value > 0.0
        assert report.chain_gaps == [report.value]

    def test_garding_umbilic(self, torus_ambient, cache):
        report = check_garding(Slice(0.0), torus_ambient, torus_grid(torus_ambient.fiber.periods, 8), cache=cache)
        assert report.passed
        assert abs(report.value) < 1e-12

    def test_garding_higher_dimension(self, cache):
        amb = WarpedAmbient(3, FlatTorus((TWO_PI,) * 3))
        fam = TorusGraph.single_mode(0.2, n=3)
        report = check_garding(fam, amb, torus_grid(amb.fiber.periods, 8), cache=cache)
        assert report.passed
        assert len(report.chain_gaps) == 2

    def test_garding_hypothesis(self, torus_ambient, cache):
        with pytest.raises(HypothesisViolation):
            check_garding(TorusGraph.single_mode(1.0), torus_ambient, torus_grid(torus_ambient.fiber.periods, 16),
                          cache=cache)


class TestAlexandrov:
    @pytest.mark.parametrize(
        "spread,defect,height_range,tag",
        [
            (0.0, 0.0, 0.0, TAG_SLICE),
            (0.0, 0.0, 1.0, TAG_SPHERE),
            (1.0, 0.0, 0.0, TAG_NEITHER),
            (0.0, 0.5, 0.0, TAG_NEITHER),
        ],
    )
    def test_classify(self, spread, defect, height_range, tag):
        assert classify(spread, defect, height_range, Tolerances()) == tag

    def test_torus_scan(self, torus_ambient, two_mode, cache):
        reports = alexandrov_scan([("flat", Slice(0.3)), two_mode], torus_ambient, resolution=16, cache=cache)
        assert [r.family for r in reports] == ["flat", "torus_graph-1"]
        assert [r.tag for r in reports] == [TAG_SLICE, TAG_NEITHER]
        assert all(r.passed for r in reports)
        assert reports[0].scalar_curvature_spread < 1e-12
        assert reports[1].scalar_curvature_spread > 1.0

    def test_sphere_scan(self, hyperbolic_ambient, cache):
        reports = alexandrov_scan([GeodesicSphere(rho=0.5), GeodesicSphere(rho=2.0)], hyperbolic_ambient,
                                  resolution=16, cache=cache)
        assert [r.tag for r in reports] == [TAG_SPHERE, TAG_SPHERE]
        rho = 2.0
        expected = 2.0 * (1.0 / math.tanh(rho) ** 2 - 1.0)
        assert reports[1].scalar_curvature_mean == pytest.approx(expected, rel=1e-9)


class TestIdentitiesAndSelftests:
    def test_l1_identity(self, torus_ambient, two_mode, cache):
        report = check_l1_identity(two_mode, torus_ambient, torus_grid(torus_ambient.fiber.periods, 32), cache=cache)
        assert report.passed
        assert max(report.relative_error_l0, report.relative_error_l1) < 1e-8

    def test_l1_identity_slice(self, torus_ambient, cache):
        report = check_l1_identity(Slice(0.5), torus_ambient, torus_grid(torus_ambient.fiber.periods, 8), cache=cache)
        assert report.passed

    def test_second_form(self, torus_ambient, two_mode, cache):
        report = check_second_form(two_mode, torus_ambient, torus_grid(torus_ambient.fiber.periods, 16),
                                   points=8, cache=cache)
        assert report.points == 8
        assert report.max_relative_deviation < 1e-6

    def test_ambient_selftest(self, torus_ambient):
        report = ambient_selftest(torus_ambient, samples=30, seed=4)
        assert report.passed
        doc = report.to_dict()
        json.dumps(doc)
        assert doc["family"] == "-"


class TestConvergence:
    def test_monotone(self):
        assert is_monotone([1.0, 0.1, 0.01], 0.0)
        assert not is_monotone([1.0, 2.0], 0.0)
        assert is_monotone([1.0, 1e-16, 2e-16], 1e-14)

    def test_minkowski_study(self, torus_ambient, two_mode, cache):
        report = convergence_study("minkowski:0", two_mode, torus_ambient, [16, 8, 32], cache=cache)
        assert [row.resolution for row in report.rows] == [8, 16, 32]
        assert report.monotone
        assert report.passed
        assert report.rows[0].error > report.rows[1].error

    def test_minkowski_first_order_ladder(self, torus_ambient, two_mode, cache):
        report = convergence_study("minkowski:1", two_mode, torus_ambient, [8, 16, 32, 64], cache=cache)
        errors = [row.error for row in report.rows]
        assert [row.resolution for row in report.rows] == [8, 16, 32, 64]
        assert report.monotone
        assert report.passed
        assert errors[1] < 1e-3 * errors[0]
        assert errors[2] < 1e-6 * errors[1]
        assert errors[2] <= 100 * report.floor
        assert errors[3] <= 100 * report.floor

    def test_hk_study_uses_differences(self, torus_ambient, two_mode, cache):
        report = convergence_study("hk", two_mode, torus_ambient, [8, 16, 32], cache=cache)
        assert report.rows[-1].error == 0.0
        assert report.rows[0].error > report.rows[1].error
        assert report.passed

    def test_needs_three_resolutions(self, torus_ambient, cache):
        with pytest.raises(ArgumentError):
            convergence_study("hk", Slice(0.0), torus_ambient, [8, 16], cache=cache)

    def test_unknown_target(self, torus_ambient, cache):
        with pytest.raises(UnsupportedCheckError):
            convergence_study("garding", Slice(0.0), torus_ambient, [8, 16, 32], cache=cache)


class TestDispatch:
    @pytest.mark.parametrize(
        "check_id,name,order,target",
        [
            ("hk", "hk", None, None),
            ("minkowski:1", "minkowski", 1, None),
            ("convergence:minkowski:0", "convergence", None, "minkowski:0"),
            ("convergence:l1-identity", "convergence", None, "l1-identity"),
            ("ambient-selftest", "ambient-selftest", None, None),
        ],
    )
    def test_parse(self, check_id, name, order, target):
        spec = CheckSpec.parse(check_id)
        assert (spec.name, spec.order, spec.target) == (name, order, target)

    @pytest.mark.parametrize("check_id", ["", "volume", "hk:1", "minkowski", "convergence:garding"])
    def test_parse_unknown(self, check_id):
        with pytest.raises(ArgumentError):
            CheckSpec.parse(check_id)

    def test_per_family(self):
        assert CheckSpec.parse("alexandrov").per_family
        assert not CheckSpec.parse("ambient-selftest").per_family

    def test_run_check(self, torus_ambient, cache):
        report = run_check(CheckSpec.parse("alexandrov"), Slice(0.0), torus_ambient, 8, name="flat", cache=cache)
        assert isinstance(report, AlexandrovReport)
        assert report.family == "flat"
        assert report.resolution == grid_for(Slice(0.0), torus_ambient, 8).resolution
