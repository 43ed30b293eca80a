import argparse
import os
import sys

ROOT_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT_DIR not in sys.path:
    sys.path.append(ROOT_DIR)

from src import __version__
from src.beams import scenario_warnings
from src.config import ANGULAR_GRID, ORACLE_TOL, STANDARD_SCENARIO_PATH
from src.errors import BirefringenceError
from src.oracle import integrate_full
from src.output import RunManifest, write_summary, write_table
from src.scan import ScanSpec, angular_table, run_scan
from src.scenario_loader import load_config, scenario_from_dict
from src.signal import build_report
from src.units import Dimension, parse_quantity, to_natural
from src.utils import setup_logging

logger = setup_logging()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xfel-birefringence",
        description="Polarization-flipped signal photons in XFEL / high-intensity laser collisions",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", default=STANDARD_SCENARIO_PATH, help="Scenario YAML file.")

    total = sub.add_parser("total", help="Totals, divergences and discernible counts for one scenario.")
    add_config(total)
    total.add_argument("--out", "--summary", dest="out", default=None, help="Optional JSON summary path.")
    total.add_argument("--oracle", action="store_true", help="Also integrate the unreduced rate.")
    total.add_argument("--tol", type=float, default=ORACLE_TOL, help="Relative tolerance of the oracle.")

    scan = sub.add_parser("scan", help="Scan one scalar scenario field.")
    add_config(scan)
    scan.add_argument("--param", required=True, help="Dotted field path, e.g. offsets.x0.")
    scan.add_argument("--from", dest="start", required=True, help='Start value with unit, e.g. "0 um".')
    scan.add_argument("--to", dest="stop", required=True, help="Stop value with unit.")
    scan.add_argument("--steps", type=int, required=True)
    scan.add_argument("--scale", choices=["linear", "log"], default="linear")
    scan.add_argument("--out", required=True, help="Output CSV path.")

    angular = sub.add_parser("angular", help="Angular profiles of signal and probe.")
    add_config(angular)
    angular.add_argument("--theta-max", default=None, help='Largest polar angle, e.g. "100 urad".')
    angular.add_argument("--grid", type=int, default=ANGULAR_GRID)
    angular.add_argument("--out", required=True, help="Output CSV path.")
    return parser


def cmd_total(args) -> int:
    raw = load_config(args.config)
    scenario = scenario_from_dict(raw)
    report = build_report(scenario, strict=True)

    print(f"chi = {report.f_args.chi:.6g}")
    print(f"chi0 = {report.f_args.chi0:.6g}")
    print(f"rho = {report.f_args.rho:.6g}")
    print(f"f_value = {report.f_value:.6g}")
    print(f"n_perp = {report.n_perp:.4e}")
    print(f"n_perp_over_n = {report.n_perp_over_n:.4e}")
    for phi, label in ((0.0, "phi0"), (max(report.divergence_by_phi), "phi90")):
        print(f"theta_probe_{label} = {report.probe_divergence_by_phi[phi]:.4e} rad")
        print(f"theta_perp_{label} = {report.divergence_by_phi[phi]:.4e} rad")
        if phi in report.theta_equal_by_phi:
            print(f"theta_equal_{label} = {report.theta_equal_by_phi[phi]:.4e} rad")
    if report.discernible_n_perp is not None:
        print(f"n_perp_discernible = {report.discernible_n_perp:.4e}")

    extra = {}
    if args.oracle:
        result = integrate_full(scenario, args.tol)
        deviation = (result.value - report.n_perp) / report.n_perp
        print(f"oracle_n_perp = {result.value:.4e} +- {result.error:.1e}")
        print(f"oracle_deviation = {deviation:+.3%}")
        extra = {"oracle_n_perp": result.value, "oracle_error": result.error, "oracle_deviation": deviation}

    for message in report.warnings:
        print(f"warning: {message}")

    if args.out:
        manifest = RunManifest.for_config(raw, report.warnings)
        write_summary(report, args.out, manifest, extra)
    return 0


def cmd_scan(args) -> int:
    raw = load_config(args.config)
    base = scenario_from_dict(raw)
    spec = ScanSpec(param=args.param, start=args.start, stop=args.stop, steps=args.steps, scale=args.scale)
    table = run_scan(raw, spec)
    manifest = RunManifest.for_config(
        {"config": raw, "scan": [spec.param, str(spec.start), str(spec.stop), spec.steps, spec.scale]},
        scenario_warnings(base),
    )
    write_table(table, args.out, manifest)
    print(f"Wrote {len(table)} rows to {args.out}")
    return 0


def cmd_angular(args) -> int:
    raw = load_config(args.config)
    scenario = scenario_from_dict(raw)
    theta_max = None
    if args.theta_max is not None:
        theta_max = to_natural(parse_quantity(args.theta_max, Dimension.DIMENSIONLESS, "theta_max"))
    table = angular_table(scenario, theta_max=theta_max, grid=args.grid)
    manifest = RunManifest.for_config(
        {"config": raw, "angular": [args.theta_max, args.grid]}, scenario_warnings(scenario)
    )
    write_table(table, args.out, manifest)
    print(f"Wrote {len(table)} rows to {args.out}")
    return 0


COMMANDS = {"total": cmd_total, "scan": cmd_scan, "angular": cmd_angular}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logger.info(f"Running {args.command} (config {args.config})")
    try:
        return COMMANDS[args.command](args)
    except BirefringenceError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
