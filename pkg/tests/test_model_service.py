"""Tests for parameter validation, units, bath occupancies and drive strength."""

import math

import pytest

from backend.errors import DomainError, ParameterError
from backend.models.params import SystemParams, DriveParams, Units, QUADRATURES

TWO_PI = 2.0 * math.pi


class TestThermalOccupancy:

    def test_zero_temperature_is_exactly_zero(self, model_service):
        assert model_service.thermal_occupancy(TWO_PI * 10e6, 0.0) == 0.0

    def test_mechanical_mode_at_10_mK(self, model_service):
        assert model_service.thermal_occupancy(TWO_PI * 10e6, 0.01) == pytest.approx(20.34, abs=0.01)

    def test_microwave_mode_at_10_mK_is_negligible(self, model_service):
        assert model_service.thermal_occupancy(TWO_PI * 10e9, 0.01) < 1e-20

    def test_monotone_in_temperature_and_frequency(self, model_service):
        omega = TWO_PI * 10e6
        values = [model_service.thermal_occupancy(omega, T) for T in (0.01, 0.1, 1.0)]
        assert values == sorted(values)
        assert model_service.thermal_occupancy(2 * omega, 0.1) < model_service.thermal_occupancy(omega, 0.1)

    def test_rejects_non_positive_frequency(self, model_service):
        with pytest.raises(DomainError):
            model_service.thermal_occupancy(0.0, 1.0)


class TestDrive:

    def test_no_field_no_drive(self, model_service):
        assert model_service.rabi_from_drive(DriveParams(B1=0.0)) == 0.0

    def test_linear_in_field(self, model_service, drive):
        doubled = DriveParams(B1=2 * drive.B1)
        assert model_service.rabi_from_drive(doubled) == pytest.approx(2 * model_service.rabi_from_drive(drive))

    def test_scales_as_sqrt_volume(self, model_service, drive):
        bigger = DriveParams(B1=drive.B1, V=4 * drive.V)
        assert model_service.rabi_from_drive(bigger) == pytest.approx(2 * model_service.rabi_from_drive(drive))

    def test_closed_form(self, model_service, drive):
        expected = math.sqrt(5) / 4 * TWO_PI * 28e9 * math.sqrt(4.22e27 * drive.V) * 3.9e-5
        assert model_service.rabi_from_drive(drive) == pytest.approx(expected, rel=1e-12)

    def test_field_for_rabi_inverts(self, model_service, drive):
        omega = model_service.rabi_from_drive(drive)
        assert model_service.drive_field_for_rabi(omega, drive) == pytest.approx(drive.B1, rel=1e-12)

    def test_invalid_drive(self, model_service):
        with pytest.raises(ParameterError) as excinfo:
            model_service.rabi_from_drive(DriveParams(B1=-1.0, rho=0.0))
        assert set(excinfo.value.errors) == {"B1", "rho"}


class TestValidate:

    def test_accepts_baseline(self, model_service, fig2_params):
        assert model_service.validate(fig2_params) == fig2_params

    def test_rejects_zero_decay_rate(self, model_service, fig2_params):
        with pytest.raises(ParameterError) as excinfo:
            model_service.validate(fig2_params.with_updates(kappa_a=0.0))
        assert "kappa_a" in excinfo.value.errors

    def test_rejects_negative_occupancy(self, model_service, fig2_params):
        with pytest.raises(ParameterError) as excinfo:
            model_service.validate(fig2_params.with_updates(nbar_b=-0.1))
        assert "nbar_b" in excinfo.value.errors

    def test_reports_every_violation(self, model_service, fig2_params):
        with pytest.raises(ParameterError) as excinfo:
            model_service.validate(fig2_params.with_updates(kappa_m=-1.0, gamma_b=0.0, G_bm=-0.1))
        assert {"kappa_m", "gamma_b", "G_bm"} <= set(excinfo.value.errors)

    def test_temperature_resolves_occupancies(self, model_service, fig2_params):
        params = fig2_params.thermalized(0.01).with_updates(omega_c=1000.0, omega_m=1000.0)
        resolved = model_service.validate(params)
        assert resolved.nbar_b == pytest.approx(20.34, abs=0.01)
        assert resolved.nbar_a < 1e-20

    def test_temperature_needs_mode_frequencies(self, model_service, fig2_params):
        with pytest.raises(ParameterError) as excinfo:
            model_service.validate(fig2_params.thermalized(0.1))
        assert {"omega_c", "omega_m"} <= set(excinfo.value.errors)

    def test_inconsistent_occupancy_and_temperature(self, model_service, fig2_params):
        params = fig2_params.with_updates(temperature_K=0.01, omega_c=1000.0, omega_m=1000.0)
        with pytest.raises(ParameterError) as excinfo:
            model_service.validate(params)
        assert "nbar_b" in excinfo.value.errors

    def test_consistent_occupancy_and_temperature(self, model_service, fig2_params):
        nbar_b = model_service.thermal_occupancy(TWO_PI * 10e6, 0.05)
        params = SystemParams(
            kappa_a=0.1, kappa_m=0.1, gamma_b=0.01, G_bm=0.0,
            omega_c=1000.0, omega_m=1000.0,
            nbar_b=nbar_b, temperature_K=0.05,
        )
        resolved = model_service.validate(params)
        assert resolved.nbar_b == nbar_b
        # Defaulted occupancies follow the temperature instead of being compared
        expected = model_service.thermal_occupancy(TWO_PI * 10e9, 0.05)
        assert resolved.nbar_a == pytest.approx(expected, rel=1e-9)
        assert resolved.nbar_m == pytest.approx(expected, rel=1e-9)


class TestUnits:

    def test_dimensionless_is_unchanged(self, model_service, fig2_params):
        assert model_service.to_dimensionless(fig2_params) is fig2_params

    def test_si_rescaled_by_omega_b(self, model_service):
        omega_b = TWO_PI * 10e6
        params = SystemParams(
            units="SI", omega_b=omega_b,
            delta_c=-omega_b, delta_m=-omega_b,
            g_am=0.1 * omega_b, G_bm=0.035 * omega_b,
            kappa_a=0.1 * omega_b, kappa_m=0.1 * omega_b, gamma_b=0.01 * omega_b,
            nbar_b=0.2,
        )
        scaled = model_service.prepare(params)
        assert scaled.units == Units.OMEGA_B
        assert scaled.omega_b == 1.0
        assert scaled.kappa_a == pytest.approx(0.1, rel=1e-15)
        assert scaled.omega_b_si == pytest.approx(omega_b)
        assert model_service.to_dimensionless(scaled) is scaled

    def test_drive_in_units(self, model_service, fig2_params):
        assert model_service.drive_in_units(fig2_params.omega_b_si, fig2_params) == pytest.approx(1.0)


class TestQuadratureConvention:

    def test_ordering_and_vacuum(self):
        assert QUADRATURES.ordering == ("x1", "y1", "x2", "y2", "q", "p")
        assert QUADRATURES.vacuum(3).trace() == pytest.approx(3.0)

    def test_symplectic_form_blocks(self):
        J = QUADRATURES.symplectic_form(3)
        assert J[0, 1] == 1.0 and J[1, 0] == -1.0
        assert J[4, 5] == 1.0 and J[0, 4] == 0.0
