import math
import re

import numpy as np
import pytest

import casimir_metal.analysis
import casimir_metal.perturbation
from casimir_metal.analysis import FitReport
from casimir_metal.cli import main
from casimir_metal.perturbation import SeriesCoefficients


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def data_lines(out):
    return [ln for ln in out.splitlines() if ln and not ln.startswith("#")]


class TestCompareMode:
    def test_aluminum_reference_sweep(self, capsys):
        code, out, err = run_cli(
            capsys,
            "--geometry", "plates", "--material", "al",
            "--a-min", "0.1", "--a-max", "3", "--points", "3",
            "--log", "--mode", "compare",
        )
        assert code == 0
        lines = data_lines(out)
        assert lines[0] == "a_um,factor_exact,factor_order4,factor_order2,dev4,dev2,warn"
        rows = [ln.split(",") for ln in lines[1:]]
        assert len(rows) == 3
        # the 3-point log grid lands on 0.1, sqrt(0.3) = 0.548, 3 um, so the
        # middle row sits a bit above the 0.5 um reference factor
        order4 = [float(r[2]) for r in rows]
        for got, want in zip(order4, (0.56, 0.85, 0.97)):
            assert abs(got - want) <= 0.02
        assert [r[0] for r in rows] == ["0.1", "0.5477225575", "3"]

    def test_metadata_echoes_config(self, capsys):
        code, out, _ = run_cli(capsys, "--points", "2", "--mode", "compare")
        meta = [ln for ln in out.splitlines() if ln.startswith("#")]
        assert any("constants=codata2018" in ln for ln in meta)
        assert any("mode=compare" in ln and "material=al" in ln for ln in meta)

    def test_byte_determinism(self, capsys):
        args = ["--points", "3", "--a-min", "0.2", "--a-max", "2", "--log"]
        _, out1, _ = run_cli(capsys, *args)
        _, out2, _ = run_cli(capsys, *args)
        assert out1 == out2

    def test_near_ideal_custom_material(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--material", "custom", "--lambda-p", "0.001",
            "--points", "1", "--a-min", "0.5", "--a-max", "0.5",
            "--mode", "compare",
        )
        assert code == 0
        row = data_lines(out)[1].split(",")
        assert float(row[1]) == pytest.approx(1.0, abs=1e-4)
        assert float(row[2]) == pytest.approx(1.0, abs=1e-4)

    def test_copper_short_gap_warn_column(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--material", "cu", "--points", "1",
            "--a-min", "0.1", "--a-max", "0.1", "--mode", "compare",
        )
        assert code == 0
        assert data_lines(out)[1].split(",")[6] == "1"

    def test_output_file_matches_stdout(self, capsys, tmp_path):
        args = ["--points", "2", "--a-min", "0.3", "--a-max", "1", "--mode", "compare"]
        _, out, _ = run_cli(capsys, *args)
        target = tmp_path / "sweep.csv"
        code = main(args + ["--output", str(target)])
        capsys.readouterr()
        assert code == 0
        assert target.read_text() == out


class TestUsageErrors:
    def test_zero_plasma_wavelength(self, capsys):
        code, _, err = run_cli(
            capsys,
            "--points", "1", "--a-min", "0.5", "--a-max", "0.5",
            "--material", "custom", "--lambda-p", "0",
        )
        assert code == 2
        assert err.startswith("error:")

    def test_custom_requires_lambda(self, capsys):
        code, _, err = run_cli(capsys, "--material", "custom")
        assert code == 2
        assert "lambda-p" in err

    def test_bad_flag_value(self, capsys):
        code, _, err = run_cli(capsys, "--points", "zero")
        assert code == 2
        assert "error:" in err

    def test_inverted_range(self, capsys):
        code, _, err = run_cli(capsys, "--a-min", "2", "--a-max", "1")
        assert code == 2
        assert err.startswith("error:")

    def test_eps_table_incompatible_with_compare(self, capsys, tmp_path):
        f = tmp_path / "eps.csv"
        f.write_text("omega_rad_s,eps_imag\n1e14,2\n2e15,1\n")
        code, _, err = run_cli(capsys, "--eps-table", str(f), "--mode", "compare")
        assert code == 2
        assert err.startswith("error:")

    def test_missing_eps_table_file(self, capsys):
        code, _, err = run_cli(
            capsys, "--eps-table", "/nonexistent.csv", "--mode", "force", "--a", "1"
        )
        assert code == 2
        assert err.startswith("error:")


class TestForceMode:
    def test_ideal_plate_pressure(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--mode", "force", "--geometry", "plates",
            "--material", "custom", "--lambda-p", "0.0001", "--a", "1",
        )
        assert code == 0
        m = re.search(r"pressure = (\S+) Pa, correction_factor = (\S+), ideal = (\S+) Pa", out)
        assert m, out
        assert float(m.group(1)) == pytest.approx(-1.3001257724e-3, rel=1e-5)
        assert float(m.group(2)) == pytest.approx(1.0, abs=1e-5)

    def test_sphere_aluminum(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--mode", "force", "--geometry", "sphere", "--material", "al",
            "--a", "0.5", "--radius", "100",
        )
        assert code == 0
        m = re.search(r"force = ([^,\s]+) N, correction_factor = ([^,\s]+)", out)
        assert m, out
        assert 0.87 <= float(m.group(2)) <= 0.90
        ideal = -math.pi**3 * 1.054571817e-34 * 2.99792458e8 * 100e-6 / (360 * (0.5e-6) ** 3)
        assert float(m.group(1)) == pytest.approx(float(m.group(2)) * ideal, rel=1e-6)

    def test_copper_long_gap_factor(self, capsys):
        code, out, _ = run_cli(
            capsys, "--mode", "force", "--material", "cu", "--a", "3"
        )
        assert code == 0
        m = re.search(r"correction_factor = ([^,\s]+)", out)
        assert float(m.group(1)) == pytest.approx(0.96, abs=0.005)

    def test_pft_warning_for_blunt_sphere(self, capsys):
        code, out, err = run_cli(
            capsys,
            "--mode", "force", "--geometry", "sphere", "--material", "al",
            "--a", "0.5", "--radius", "1",
        )
        assert code == 0
        assert "warning:" in err and "proximity force" in err

    def test_eps_table_input(self, capsys, tmp_path, drude_table):
        rows = "\n".join(
            f"{w:.9e},{e:.9e}" for w, e in zip(drude_table.omega, drude_table.eps_imag)
        )
        f = tmp_path / "drude.csv"
        f.write_text("omega_rad_s,eps_imag\n" + rows + "\n")
        code, out, _ = run_cli(
            capsys, "--mode", "force", "--eps-table", str(f), "--a", "0.5"
        )
        assert code == 0
        m = re.search(r"correction_factor = ([^,\s]+)", out)
        # near-plasma table: factor close to the aluminum plasma value 0.8546
        assert float(m.group(1)) == pytest.approx(0.8546, abs=0.01)


class TestFactorMode:
    def test_columns_and_units(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "--mode", "factor", "--material", "al",
            "--points", "2", "--a-min", "0.5", "--a-max", "3", "--log",
        )
        assert code == 0
        lines = data_lines(out)
        assert lines[0] == "a_um,value,ideal,factor,error,unit"
        first = lines[1].split(",")
        assert first[5] == "Pa"
        assert float(first[3]) == pytest.approx(0.8546, abs=0.001)
        assert float(first[1]) < 0.0


class TestFitMode:
    def test_reports_coefficients(self, capsys):
        code, out, _ = run_cli(capsys, "--mode", "fit", "--geometry", "plates")
        assert code == 0
        m = re.search(r"c1_fit=(\S+) uncertainty=\S+ closed_form=(\S+)", out)
        assert m, out
        assert float(m.group(1)) == pytest.approx(-16.0 / 3.0, rel=0.01)
        assert out.count("rel_dev=") == 4


class TestVerifyMode:
    def test_default_run_all_pass(self, capsys):
        code, out, _ = run_cli(capsys, "--mode", "verify")
        assert code == 0
        lines = data_lines(out)
        assert len(lines) == 4
        assert all(ln.startswith("PASS") for ln in lines)
        assert any("pft_order_consistency" in ln for ln in lines)
        assert any("sphere_route_agreement" in ln for ln in lines)
        assert any("coefficient_fit_plates" in ln for ln in lines)
        assert any("coefficient_fit_sphere" in ln for ln in lines)

    def test_injected_wrong_coefficient_fails(self, capsys, monkeypatch):
        real = casimir_metal.perturbation.series_coefficients

        def crooked(geometry):
            c = real(geometry)
            if geometry != "sphere":
                return c
            return SeriesCoefficients(geometry, c.c1, c.c2, c.c3 * 1.5, c.c4)

        monkeypatch.setattr(
            casimir_metal.perturbation, "series_coefficients", crooked
        )
        # keep the run cheap: the fit itself returns the true closed forms
        true_coeffs = real("plates").as_tuple(), real("sphere").as_tuple()

        def stub_fit(geometry, ratios, settings=None, factor_fn=None):
            coeffs = true_coeffs[0] if geometry == "plates" else true_coeffs[1]
            return FitReport(
                geometry, coeffs, (1e-6,) * 4, np.asarray(ratios),
                np.ones(len(ratios)), 0.0,
            )

        monkeypatch.setattr(casimir_metal.analysis, "extract_coefficients", stub_fit)
        code, out, _ = run_cli(capsys, "--mode", "verify")
        assert code == 1
        assert "FAIL coefficient_fit_sphere" in out
        assert "PASS coefficient_fit_plates" in out
        # the injected sphere coefficient also breaks the order-by-order relation
        assert "FAIL pft_order_consistency" in out
