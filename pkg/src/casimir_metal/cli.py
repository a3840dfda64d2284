"""Command-line front end: presets, sweeps, CSV output, verification.

Units at the boundary follow the conventional presentation ranges:
separations in micrometers, plasma wavelengths in nanometers, radii in
micrometers; forces are emitted in SI (Pa for plates, N for sphere-plate)
with an explicit unit column.

Exit codes: 0 success, 1 computation failure, 2 usage error.  Every failure
path prints a single line starting with ``error:`` to stderr.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import dataclass

import numpy as np

from . import __version__, analysis, kernels, perturbation
from .constants import CONSTANTS_VERSION
from .dielectric import MemoizedModel, PlasmaModel, TabulatedModel, load_table
from .errors import CasimirMetalError
from .lifshitz import (
    PlatesGap,
    SpherePlate,
    force_sphere_exact,
    pressure_plates_exact,
)
from .quadrature import QuadratureSettings

MATERIAL_LAMBDA_P_NM = {"al": 98.0, "cu": 132.0, "au": 132.0}

_FIT_GRID = np.geomspace(0.002, 0.02, 8)


class UsageError(CasimirMetalError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(
        prog="casimir-metal",
        description="Casimir forces between real metals: exact Lifshitz "
        "integrals and the penetration-depth correction series.",
    )
    p.add_argument(
        "--mode",
        choices=["force", "factor", "compare", "fit", "verify"],
        default="compare",
        help="what to compute (default: compare)",
    )
    p.add_argument("--geometry", choices=["plates", "sphere"], default="plates")
    p.add_argument(
        "--material",
        choices=["al", "cu", "au", "custom"],
        default="al",
        help="plasma-wavelength preset; 'custom' requires --lambda-p",
    )
    p.add_argument(
        "--lambda-p",
        type=float,
        default=None,
        metavar="NM",
        help="plasma wavelength in nm (overrides the preset)",
    )
    p.add_argument(
        "--eps-table",
        default=None,
        metavar="CSV",
        help="permittivity table (omega_rad_s,eps_imag) instead of a plasma model",
    )
    p.add_argument("--radius", type=float, default=100.0, metavar="UM",
                   help="sphere radius in um (sphere geometry; default 100)")
    p.add_argument("--a", type=float, default=None, metavar="UM",
                   help="single separation in um (force mode)")
    p.add_argument("--a-min", type=float, default=0.1, metavar="UM")
    p.add_argument("--a-max", type=float, default=3.0, metavar="UM")
    p.add_argument("--points", type=int, default=10)
    spacing = p.add_mutually_exclusive_group()
    spacing.add_argument("--log", dest="log_spacing", action="store_true",
                         help="log-spaced a-grid")
    spacing.add_argument("--linear", dest="log_spacing", action="store_false",
                         help="linearly spaced a-grid (default)")
    p.set_defaults(log_spacing=False)
    p.add_argument("--order", type=int, choices=range(0, 5), default=4,
                   metavar="0..4",
                   help="series truncation order, echoed in metadata "
                   "(compare emits the fixed order-4 and order-2 columns)")
    p.add_argument("--rel-tol", type=float, default=QuadratureSettings().rel_tol)
    p.add_argument("--abs-tol", type=float, default=QuadratureSettings().abs_tol)
    p.add_argument("--output", default="-", metavar="PATH",
                   help="output file ('-' = stdout)")
    return p


@dataclass
class RunConfig:
    mode: str
    geometry: str
    material: str
    lambda_p_nm: float | None
    model: object
    radius_m: float
    a_m: float | None
    a_grid_m: np.ndarray
    order: int
    settings: QuadratureSettings
    output: str
    spacing: str


def _forward_warnings(caught) -> None:
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


def resolve_config(args) -> RunConfig:
    if args.points < 1:
        raise UsageError("--points must be at least 1")
    if not args.a_min > 0.0:
        raise UsageError("--a-min must be positive")
    if args.a_max < args.a_min:
        raise UsageError("--a-max must be >= --a-min")
    if not args.radius > 0.0:
        raise UsageError("--radius must be positive")
    if args.a is not None and not args.a > 0.0:
        raise UsageError("--a must be positive")
    try:
        settings = QuadratureSettings(rel_tol=args.rel_tol, abs_tol=args.abs_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None

    lambda_p_nm = args.lambda_p
    if args.eps_table is not None:
        if args.mode in ("compare", "fit"):
            raise UsageError(f"mode '{args.mode}' needs a plasma model, not --eps-table")
        try:
            table = load_table(args.eps_table)
        except (OSError, CasimirMetalError) as exc:
            raise UsageError(f"--eps-table: {exc}") from None
        a_lo = min(args.a_min, args.a or args.a_min) * 1e-6
        a_hi = max(args.a_max, args.a or args.a_max) * 1e-6
        from .constants import C_LIGHT

        model = MemoizedModel(
            TabulatedModel(table),
            xi_min=1e-4 * C_LIGHT / (2.0 * a_hi),
            xi_max=2.0 * settings.x_max * C_LIGHT / (2.0 * a_lo),
        )
    else:
        if args.material == "custom":
            if lambda_p_nm is None:
                raise UsageError("material 'custom' requires --lambda-p")
        elif lambda_p_nm is None:
            lambda_p_nm = MATERIAL_LAMBDA_P_NM[args.material]
        if not lambda_p_nm > 0.0:
            raise UsageError("--lambda-p must be positive")
        model = PlasmaModel(lambda_p_nm * 1e-9)

    if args.log_spacing:
        grid = np.geomspace(args.a_min, args.a_max, args.points)
    else:
        grid = np.linspace(args.a_min, args.a_max, args.points)
    a_grid_m = grid * 1e-6
    a_m = args.a * 1e-6 if args.a is not None else None

    # constructing the geometry validates it (and fires the PFT warning)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        if args.geometry == "sphere":
            SpherePlate(a_m if a_m is not None else float(a_grid_m[0]), args.radius * 1e-6)
        else:
            PlatesGap(a_m if a_m is not None else float(a_grid_m[0]))
    _forward_warnings(caught)

    return RunConfig(
        mode=args.mode,
        geometry=args.geometry,
        material="table" if args.eps_table else args.material,
        lambda_p_nm=lambda_p_nm,
        model=model,
        radius_m=args.radius * 1e-6,
        a_m=a_m,
        a_grid_m=a_grid_m,
        order=args.order,
        settings=settings,
        output=args.output,
        spacing="log" if args.log_spacing else "linear",
    )


def _fmt(v) -> str:
    return f"{v:.10g}"


def _metadata_lines(config: RunConfig) -> list[str]:
    lam = "none" if config.lambda_p_nm is None else _fmt(config.lambda_p_nm)
    return [
        f"# casimir-metal {__version__} constants={CONSTANTS_VERSION} "
        f"kernels={kernels.BACKEND}",
        "# config: "
        f"mode={config.mode} geometry={config.geometry} "
        f"material={config.material} lambda_p_nm={lam} "
        f"radius_um={_fmt(config.radius_m * 1e6)} "
        f"a_grid_um={_fmt(config.a_grid_m[0] * 1e6)}..{_fmt(config.a_grid_m[-1] * 1e6)} "
        f"points={config.a_grid_m.size} spacing={config.spacing} "
        f"order={config.order} rel_tol={config.settings.rel_tol:g} "
        f"abs_tol={config.settings.abs_tol:g}",
    ]


def cmd_sweep(config: RunConfig, out) -> int:
    """compare/factor sweeps; returns the exit code."""
    for line in _metadata_lines(config):
        print(line, file=out)
    failures = 0
    if config.mode == "compare":
        print("a_um,factor_exact,factor_order4,factor_order2,dev4,dev2,warn", file=out)
        rows = analysis.compare_series_vs_exact(
            config.model, config.geometry, config.a_grid_m, config.settings
        )
        for row in rows:
            print(
                ",".join(
                    [
                        _fmt(row.a * 1e6),
                        _fmt(row.exact),
                        _fmt(row.order4),
                        _fmt(row.order2),
                        _fmt(row.dev4),
                        _fmt(row.dev2),
                        str(int(row.warn)),
                    ]
                ),
                file=out,
            )
            if row.failed:
                failures += 1
                print(f"# error: a_um={_fmt(row.a * 1e6)} integral did not converge", file=out)
    else:  # factor
        print("a_um,value,ideal,factor,error,unit", file=out)
        unit = "Pa" if config.geometry == "plates" else "N"
        for a in config.a_grid_m:
            try:
                if config.geometry == "plates":
                    res = pressure_plates_exact(config.model, a, config.settings)
                else:
                    res = force_sphere_exact(
                        config.model, a, config.radius_m, config.settings
                    )
            except CasimirMetalError as exc:
                failures += 1
                print(f"{_fmt(a * 1e6)},nan,nan,nan,nan,{unit}", file=out)
                print(f"# error: a_um={_fmt(a * 1e6)} {exc}", file=out)
                continue
            print(
                ",".join(
                    [
                        _fmt(a * 1e6),
                        _fmt(res.value),
                        _fmt(res.ideal),
                        _fmt(res.correction_factor),
                        _fmt(res.error),
                        unit,
                    ]
                ),
                file=out,
            )
    return 1 if failures else 0


def cmd_force(config: RunConfig, out) -> int:
    a = config.a_m if config.a_m is not None else float(config.a_grid_m[0])
    if config.geometry == "plates":
        res = pressure_plates_exact(config.model, a, config.settings)
        name, unit = "pressure", "Pa"
    else:
        res = force_sphere_exact(config.model, a, config.radius_m, config.settings)
        name, unit = "force", "N"
    print(
        f"{name} = {res.value:.6e} {unit}, correction_factor = "
        f"{res.correction_factor:.6f}, ideal = {res.ideal:.6e} {unit}",
        file=out,
    )
    return 0


def cmd_fit(config: RunConfig, out) -> int:
    for line in _metadata_lines(config):
        print(line, file=out)
    report = analysis.extract_coefficients(config.geometry, _FIT_GRID)
    targets = perturbation.series_coefficients(config.geometry).as_tuple()
    print(f"geometry={config.geometry} residual_norm={report.residual_norm:.3e}", file=out)
    for k in range(4):
        fit = report.coefficients[k]
        unc = report.uncertainties[k]
        tgt = targets[k]
        rel = abs(fit - tgt) / abs(tgt)
        print(
            f"c{k + 1}_fit={fit:.6g} uncertainty={unc:.2e} "
            f"closed_form={tgt:.6g} rel_dev={rel:.2e}",
            file=out,
        )
    return 0


_FIT_TOLERANCES = (0.01, 0.02, 0.10, 0.25)
_VERIFY_GAPS_M = (0.25e-6, 0.5e-6, 1.0e-6)


def cmd_verify(config: RunConfig, out) -> int:
    all_ok = True

    residuals = perturbation.pft_order_consistency()
    plates_c = perturbation.series_coefficients("plates").as_tuple()
    max_rel = max(res / abs(c) for (_, res), c in zip(residuals, plates_c))
    ok = max_rel <= 1e-14
    all_ok &= ok
    print(f"{'PASS' if ok else 'FAIL'} pft_order_consistency "
          f"max_rel_residual={max_rel:.2e}", file=out)

    model = PlasmaModel(132e-9)
    worst = 0.0
    ok = True
    for a in _VERIFY_GAPS_M:
        try:
            f_log = force_sphere_exact(model, a, config.radius_m, config.settings, route="log")
            f_parts = force_sphere_exact(model, a, config.radius_m, config.settings, route="parts")
        except CasimirMetalError as exc:
            print(f"FAIL sphere_route_agreement a_um={_fmt(a * 1e6)} error: {exc}", file=out)
            ok = False
            break
        budget = 10.0 * (f_log.error + f_parts.error)
        gap = abs(f_log.value - f_parts.value)
        worst = max(worst, gap / budget if budget else 0.0)
        if gap > budget:
            ok = False
    all_ok &= ok
    print(f"{'PASS' if ok else 'FAIL'} sphere_route_agreement "
          f"points={len(_VERIFY_GAPS_M)} worst_gap_over_budget={worst:.3f}", file=out)

    for geometry in ("plates", "sphere"):
        try:
            report = analysis.extract_coefficients(geometry, _FIT_GRID)
        except CasimirMetalError as exc:
            all_ok = False
            print(f"FAIL coefficient_fit_{geometry} error: {exc}", file=out)
            continue
        targets = perturbation.series_coefficients(geometry).as_tuple()
        rel_devs = [
            abs(report.coefficients[k] - targets[k]) / abs(targets[k]) for k in range(4)
        ]
        ok = all(rel <= tol for rel, tol in zip(rel_devs, _FIT_TOLERANCES))
        all_ok &= ok
        devs = " ".join(f"c{k + 1}={rel_devs[k]:.2e}" for k in range(4))
        print(f"{'PASS' if ok else 'FAIL'} coefficient_fit_{geometry} {devs}", file=out)

    return 0 if all_ok else 1


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        config = resolve_config(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    def run(out) -> int:
        if config.mode in ("compare", "factor"):
            return cmd_sweep(config, out)
        if config.mode == "force":
            return cmd_force(config, out)
        if config.mode == "fit":
            return cmd_fit(config, out)
        return cmd_verify(config, out)

    try:
        if config.output == "-":
            return run(sys.stdout)
        with open(config.output, "w", encoding="utf-8") as out:
            return run(out)
    except (CasimirMetalError, OSError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
