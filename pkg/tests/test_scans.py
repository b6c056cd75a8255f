"""Region classification, minimum scan, sign-change scan and asymmetry
diagnostics of the closed-form engine."""

import numpy as np
import pytest

from robinball import (
    BallGeometry,
    NonnegativityClass,
    asymmetry_metric,
    check_superharmonic_constraint,
    derive_model,
    nonlinearity_min_scan,
    sign_change_scan,
    superharmonic_threshold,
)


class TestConstraintClassifier:
    def test_canonical_is_guaranteed(self, canonical_model):
        geom = canonical_model.geom
        assert superharmonic_threshold(geom) == pytest.approx(1.0 / 3.0, rel=1e-15)
        cls = check_superharmonic_constraint(geom, 0.25)
        assert cls is NonnegativityClass.GUARANTEED_NONNEGATIVE

    def test_n2_threshold_is_inclusive(self):
        geom = BallGeometry(n=2, R=1.0, x0=np.array([0.5, 0.0]))
        # 1/3 and (R-a)/(R(R+a)) = 0.5/1.5 round to the same double
        assert check_superharmonic_constraint(geom, 1.0 / 3.0) is NonnegativityClass.GUARANTEED_NONNEGATIVE
        assert check_superharmonic_constraint(geom, (1.0 / 3.0) * (1 + 1e-9)) is NonnegativityClass.NOT_GUARANTEED

    def test_n3_threshold_is_offset_independent(self):
        for a in (0.0, 0.3, 0.8):
            x0 = np.zeros(3)
            x0[0] = a
            geom = BallGeometry(n=3, R=1.0, x0=x0)
            assert superharmonic_threshold(geom) == 0.5
            assert check_superharmonic_constraint(geom, 0.5) is NonnegativityClass.GUARANTEED_NONNEGATIVE
            assert check_superharmonic_constraint(geom, 0.5 + 1e-9) is NonnegativityClass.NOT_GUARANTEED

    def test_n1_never_qualifies(self):
        geom = BallGeometry(n=1, R=1.0, x0=np.array([0.5]))
        for beta in (1e-6, 0.1, 1.0, 50.0):
            assert check_superharmonic_constraint(geom, beta) is NonnegativityClass.NEVER_NONNEGATIVE


class TestMinScan:
    def test_canonical_minimum_is_nonnegative(self, canonical_model):
        assert nonlinearity_min_scan(canonical_model, 1000) >= -1e-12

    def test_c2_zero_case_is_nonnegative(self, model_n3):
        assert nonlinearity_min_scan(model_n3, 1000) >= 0.0

    def test_n1_minimum_value(self, model_n1):
        # f(phi) = 6 phi^2 (phi - 1) over phi in [1/3, 4/3]: minimum -8/9 at phi = 2/3
        assert nonlinearity_min_scan(model_n1, 2000) == pytest.approx(-8.0 / 9.0, abs=1e-9)

    def test_refinement_never_raises_the_minimum(self, model_n1, canonical_model):
        for model in (model_n1, canonical_model):
            coarse = nonlinearity_min_scan(model, 500)
            dense = nonlinearity_min_scan(model, 4000)
            assert dense <= coarse + 1e-12

    def test_rejects_nonpositive_samples(self, model_n1):
        with pytest.raises(ValueError):
            nonlinearity_min_scan(model_n1, 0)


class TestSignChangeScan:
    def test_n1_single_crossing_at_half(self, model_n1):
        roots = sign_change_scan(model_n1)
        assert len(roots) == 1
        assert roots[0] == pytest.approx(0.5, abs=1e-10)

    def test_c2_zero_case_has_no_crossing(self, model_n3):
        assert sign_change_scan(model_n3) == []

    def test_canonical_has_no_crossing(self, canonical_model):
        assert sign_change_scan(canonical_model) == []

    def test_crossings_move_with_beta(self):
        # for every beta the 1D composition changes sign somewhere in (0, R+a)
        geom = BallGeometry(n=1, R=1.0, x0=np.array([0.5]))
        for beta in (0.05, 0.3, 2.0, 8.0):
            roots = sign_change_scan(derive_model(geom, beta))
            assert roots, f"expected a sign change for beta={beta}"
            assert all(0.0 < r < 1.5 for r in roots)


class TestAsymmetryMetric:
    def test_canonical_boundary_asymmetry(self, canonical_model):
        diag = asymmetry_metric(canonical_model, [1.0], 360)
        assert diag.max_asymmetry == pytest.approx(1.0 - 3.0**-0.25, abs=1e-9)
        assert diag.asymmetry_radius == 1.0
        assert not diag.is_radial
        assert diag.radial_variance > 0.0

    def test_centered_model_is_exactly_radial(self):
        geom = BallGeometry(n=2, R=1.0, x0=np.zeros(2))
        model = derive_model(geom, 0.25)
        diag = asymmetry_metric(model, [0.25, 0.5, 1.0], 90)
        assert diag.max_asymmetry == 0.0
        # identical values still pick up mean-rounding in the variance
        assert diag.radial_variance <= 1e-30
        assert diag.is_radial

    def test_n1_boundary_gap(self, model_n1):
        diag = asymmetry_metric(model_n1, [1.0], 2)
        assert diag.max_asymmetry == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_is_radial_iff_within_tolerance(self, canonical_model):
        diag = asymmetry_metric(canonical_model, [1.0], 8, tolerance=1.0)
        assert diag.is_radial and diag.max_asymmetry > 0.0

    def test_spread_grows_with_radius(self, canonical_model):
        diag = asymmetry_metric(canonical_model, [0.1, 0.5, 1.0], 64)
        assert np.all(np.diff(diag.spread_per_radius) > 0.0)
        assert diag.asymmetry_radius == 1.0

    def test_input_validation(self, canonical_model):
        with pytest.raises(ValueError):
            asymmetry_metric(canonical_model, [0.5], 1)
        with pytest.raises(Exception):
            asymmetry_metric(canonical_model, [1.5], 8)
