import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings as hyp_settings
from hypothesis import strategies as st

from casimir_metal.dielectric import MemoizedModel, PlasmaModel
from casimir_metal.errors import ConvergenceError, DomainError
from casimir_metal.lifshitz import (
    PlatesGap,
    SpherePlate,
    energy_density_exact,
    force_sphere_exact,
    ideal_energy_density,
    ideal_pressure,
    ideal_sphere_force,
    pressure_plates_exact,
    reflection_pair,
    evaluate_geometry,
)
from casimir_metal.quadrature import QuadratureSettings

from oracles import plates_integral_midpoint

# constants arithmetic, frozen: -pi^2 hbar c/(240 a^4) etc. with
# hbar = 1.054571817e-34, c = 2.99792458e8
IDEAL_PRESSURE_1UM = -0.0013001257724477536
IDEAL_SPHERE_1UM_100UM = -2.722977050309745e-13
IDEAL_ENERGY_1UM = -4.333752574825845e-10

# eps -> infinity proxy well below any separation in use
IDEAL_PROXY = PlasmaModel(3e-14)


class Opaque:
    """Hides the model type so evaluators take the generic-eps path."""

    def __init__(self, model):
        self._m = model

    def eps(self, xi):
        return self._m.eps(xi)

    def deps_dxi(self, xi):
        return self._m.deps_dxi(xi)


class TestGeometry:
    def test_plates_validation(self):
        PlatesGap(1e-6)
        with pytest.raises(DomainError):
            PlatesGap(0.0)

    def test_sphere_validation(self):
        with pytest.raises(DomainError):
            SpherePlate(1e-6, 0.0)
        with pytest.raises(DomainError):
            SpherePlate(-1e-6, 1e-4)

    def test_sphere_warns_when_blunt(self):
        with pytest.warns(UserWarning, match="proximity force"):
            SpherePlate(0.5e-6, 1e-6)  # R/a = 2

    def test_sphere_silent_in_pft_regime(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            SpherePlate(1e-6, 100e-6)


class TestReflectionPair:
    def test_vacuum_is_transparent(self):
        pair = reflection_pair(1.0, 2.0)
        assert pair.r1_sq == 0.0 and pair.r2_sq == 0.0
        assert pair.s == pytest.approx(2.0)

    def test_ideal_metal_limit(self):
        pair = reflection_pair(1e12, 1.0)
        assert pair.r1_sq == pytest.approx(1.0, abs=1e-5)
        assert pair.r2_sq == pytest.approx(1.0, abs=1e-5)

    def test_reference_point(self):
        # ((sqrt2-2)/(sqrt2+2))^2 = ((sqrt2-1)/(sqrt2+1))^2 = 0.0294372515...
        pair = reflection_pair(2.0, 1.0)
        assert pair.s == pytest.approx(math.sqrt(2.0), rel=1e-15)
        assert pair.r1_sq == pytest.approx(0.029437251522859406, rel=1e-12)
        assert pair.r2_sq == pytest.approx(0.029437251522859434, rel=1e-12)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            reflection_pair(0.99, 2.0)
        with pytest.raises(DomainError):
            reflection_pair(2.0, 0.5)

    @given(
        st.floats(min_value=0.0, max_value=250.0),
        st.floats(min_value=1.0, max_value=1e8),
    )
    @hyp_settings(max_examples=200, deadline=None)
    def test_factors_stay_in_unit_interval(self, log_em1, p):
        eps = 1.0 + math.expm1(log_em1) if log_em1 < 700 else 1e300
        pair = reflection_pair(eps, p)
        assert 0.0 <= pair.r1_sq <= 1.0
        assert 0.0 <= pair.r2_sq <= 1.0
        assert pair.s >= p


class TestIdealClosedForms:
    def test_reference_values(self):
        assert ideal_pressure(1e-6) == pytest.approx(IDEAL_PRESSURE_1UM, rel=1e-14)
        assert ideal_sphere_force(1e-6, 100e-6) == pytest.approx(
            IDEAL_SPHERE_1UM_100UM, rel=1e-14
        )
        assert ideal_energy_density(1e-6) == pytest.approx(IDEAL_ENERGY_1UM, rel=1e-14)

    def test_pressure_scaling(self):
        assert ideal_pressure(2e-6) / ideal_pressure(1e-6) == pytest.approx(
            1.0 / 16.0, rel=1e-13
        )

    def test_positivity_checks(self):
        for fn in (ideal_pressure, ideal_energy_density):
            with pytest.raises(DomainError):
                fn(-1e-6)
        with pytest.raises(DomainError):
            ideal_sphere_force(1e-6, 0.0)


class TestIdealLimit:
    def test_plate_pressure(self):
        res = pressure_plates_exact(IDEAL_PROXY, 1e-6)
        assert res.correction_factor == pytest.approx(1.0, abs=1e-6)
        assert res.value == pytest.approx(IDEAL_PRESSURE_1UM, rel=1e-6)
        assert res.value < 0.0

    def test_energy_density(self):
        res = energy_density_exact(IDEAL_PROXY, 1e-6)
        assert res.correction_factor == pytest.approx(1.0, abs=1e-6)
        assert res.value == pytest.approx(IDEAL_ENERGY_1UM, rel=1e-6)

    def test_sphere_force_both_routes(self):
        for route in ("parts", "log"):
            res = force_sphere_exact(IDEAL_PROXY, 1e-6, 100e-6, route=route)
            assert res.correction_factor == pytest.approx(1.0, abs=1e-6)
            assert res.value == pytest.approx(IDEAL_SPHERE_1UM_100UM, rel=1e-6)


class TestVacuumLimit:
    def test_transparent_walls_mean_no_force(self):
        class Vacuum:
            def eps(self, xi):
                return np.ones_like(np.asarray(xi, dtype=float))

            def deps_dxi(self, xi):
                return np.zeros_like(np.asarray(xi, dtype=float))

        res = energy_density_exact(Vacuum(), 1e-6)
        assert res.value == pytest.approx(0.0, abs=1e-15)
        res = pressure_plates_exact(Vacuum(), 1e-6)
        assert res.value == pytest.approx(0.0, abs=1e-12)


class TestExactEvaluators:
    def test_against_midpoint_oracle(self, al_model):
        a = 0.1e-6
        ratio = al_model.penetration_depth / a
        oracle = plates_integral_midpoint(ratio)
        res = pressure_plates_exact(al_model, a)
        ideal_integral = 2.0 * math.pi**4 / 15.0
        assert res.correction_factor == pytest.approx(oracle / ideal_integral, rel=3e-5)

    def test_result_fields(self, al_model):
        res = pressure_plates_exact(al_model, 0.5e-6)
        assert res.value < 0.0
        assert 0.0 < res.correction_factor <= 1.0
        assert res.error > 0.0
        assert res.n_evals > 0
        assert res.value == pytest.approx(res.correction_factor * res.ideal, rel=1e-14)

    def test_generic_route_agrees_with_plasma_route(self, al_model):
        direct = pressure_plates_exact(al_model, 0.5e-6)
        opaque = pressure_plates_exact(Opaque(al_model), 0.5e-6)
        assert opaque.correction_factor == pytest.approx(
            direct.correction_factor, rel=1e-11
        )
        fs_direct = force_sphere_exact(al_model, 0.5e-6, 100e-6)
        fs_opaque = force_sphere_exact(Opaque(al_model), 0.5e-6, 100e-6)
        assert fs_opaque.correction_factor == pytest.approx(
            fs_direct.correction_factor, rel=1e-11
        )

    def test_memoized_model_matches_direct(self, al_model):
        wp = al_model.omega_p
        mem = MemoizedModel(al_model, 1e-4 * wp, 1e5 * wp, points_per_decade=40)
        direct = pressure_plates_exact(al_model, 0.5e-6)
        memo = pressure_plates_exact(mem, 0.5e-6)
        assert memo.correction_factor == pytest.approx(
            direct.correction_factor, rel=1e-7
        )

    def test_sphere_route_agreement(self, cu_model):
        for a in (0.2e-6, 0.5e-6, 2e-6):
            log = force_sphere_exact(cu_model, a, 100e-6, route="log")
            parts = force_sphere_exact(cu_model, a, 100e-6, route="parts")
            assert abs(log.value - parts.value) <= 10.0 * (log.error + parts.error)

    def test_unknown_route_rejected(self, cu_model):
        with pytest.raises(ValueError):
            force_sphere_exact(cu_model, 1e-6, 1e-4, route="magic")

    def test_pft_identity(self, al_model, cu_model):
        cases = [
            (al_model, 0.2e-6),
            (al_model, 1e-6),
            (cu_model, 0.3e-6),
            (cu_model, 2e-6),
            (PlasmaModel(200e-9), 0.5e-6),
        ]
        R = 150e-6
        for model, a in cases:
            force = force_sphere_exact(model, a, R, route="parts")
            energy = energy_density_exact(model, a)
            lhs = force.value
            rhs = 2.0 * math.pi * R * energy.value
            budget = 10.0 * (force.error + 2.0 * math.pi * R * energy.error)
            assert abs(lhs - rhs) <= budget

    def test_scaling_collapse(self):
        """Correction factor depends on (a, lambda_p) only through delta0/a."""
        f1 = pressure_plates_exact(PlasmaModel(98e-9), 0.49e-6).correction_factor
        f2 = pressure_plates_exact(PlasmaModel(196e-9), 0.98e-6).correction_factor
        assert f1 == pytest.approx(f2, rel=1e-12)

    def test_factor_monotone_in_gap(self, al_model):
        lp = al_model.plasma_wavelength
        gaps = np.geomspace(lp, 100.0 * lp, 8)
        factors = [
            pressure_plates_exact(al_model, float(a)).correction_factor for a in gaps
        ]
        assert np.all(np.diff(factors) > 0.0)
        assert factors[-1] > 0.98
        assert all(0.0 < f <= 1.0 for f in factors)

    def test_validation(self, al_model):
        with pytest.raises(DomainError):
            pressure_plates_exact(al_model, 0.0)
        with pytest.raises(DomainError):
            force_sphere_exact(al_model, 1e-6, -1e-4)

    def test_convergence_failure_carries_context(self, al_model):
        bad = QuadratureSettings(rel_tol=1e-13, abs_tol=1e-30, max_subdivisions=2)
        with pytest.raises(ConvergenceError, match="plates pressure"):
            pressure_plates_exact(al_model, 0.5e-6, bad)

    def test_evaluate_geometry_dispatch(self, al_model):
        plates = evaluate_geometry(al_model, PlatesGap(0.5e-6))
        assert plates.value == pytest.approx(
            pressure_plates_exact(al_model, 0.5e-6).value
        )
        sphere = evaluate_geometry(al_model, SpherePlate(0.5e-6, 100e-6))
        assert sphere.value == pytest.approx(
            force_sphere_exact(al_model, 0.5e-6, 100e-6).value
        )
        with pytest.raises(TypeError):
            evaluate_geometry(al_model, object())
