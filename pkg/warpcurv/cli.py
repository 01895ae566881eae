"""
Command Line Interface

Subcommands:
    verify       run every check of a config file
    selftest     ambient, potential and kernel invariants (plus the
                 two-route second form on configured families)
    convergence  convergence tables for the config's convergence checks
    schema       print the run file JSON Schema

Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 an error occurred.
"""

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from warpcurv import __version__
from warpcurv.config import get_settings
from warpcurv.errors import ConfigError, WarpcurvError
from warpcurv.host import create_and_run_suite
from warpcurv.observability import configure_observability
from warpcurv.reports import EXIT_ERROR, build_document, exit_code, render_csv, render_json, write_output
from warpcurv.runconfig import RunConfig, config_schema, load_config

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="warpcurv",
        description="Curvature identities and inequalities for hypersurfaces of R x_exp P.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="report path (default: config output.path or stdout)")
    common.add_argument("--format", choices=("json", "csv"), help="report format")
    common.add_argument("--resolution", type=int, help="override the config resolution")
    common.add_argument("--tol", type=float, help="override the identity tolerance")
    common.add_argument("--no-timestamp", action="store_true", help="omit wall-clock fields from reports")
    common.add_argument("--threads", type=int, help="worker threads (fallback: WARPCURV_THREADS)")

    verify = sub.add_parser("verify", parents=[common], help="run a config file")
    verify.add_argument("--config", required=True, help="run file (TOML or JSON)")

    selftest = sub.add_parser("selftest", parents=[common], help="ambient and kernel self-tests")
    selftest.add_argument("--config", help="optional run file supplying ambient and families")
    selftest.add_argument("--samples", type=int, help="random sample count")

    convergence = sub.add_parser("convergence", parents=[common], help="convergence tables")
    convergence.add_argument("--config", required=True, help="run file (TOML or JSON)")
    convergence.add_argument("--check", action="append", default=[],
                             help="additional check to study on every family (e.g. minkowski:1)")

    sub.add_parser("schema", help="print the run file JSON Schema")
    return parser


# =============================================================================
# CONFIG ASSEMBLY
# =============================================================================

def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    update = {}
    if args.resolution is not None:
        if args.resolution < 8:
            raise ConfigError(f"--resolution must be >= 8, got {args.resolution}", ["--resolution"])
        update["resolution"] = args.resolution
    if args.tol is not None:
        if args.tol <= 0.0:
            raise ConfigError(f"--tol must be positive, got {args.tol}", ["--tol"])
        update["tolerances"] = cfg.tolerances.model_copy(update={"identity": args.tol})
    return cfg.model_copy(update=update) if update else cfg


def _derive(cfg: RunConfig, checks: list) -> RunConfig:
    """Revalidate cfg with a replacement check list."""
    data = cfg.model_dump(mode="json")
    data["checks"] = checks
    return RunConfig.model_validate(data)


def _selftest_config(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig(checks=[{"id": "ambient-selftest"}])
    checks = [{"id": "ambient-selftest"}]
    if base.families:
        checks.append({"id": "second-form"})
    cfg = _derive(base, checks)
    if args.samples is not None:
        cfg = cfg.model_copy(update={"selftest_samples": max(1, args.samples)})
    return cfg


def _convergence_config(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config)
    checks = [e.model_dump() for e in base.checks if e.id.startswith("convergence:")]
    checks += [{"id": f"convergence:{c}"} for c in args.check]
    if not checks:
        raise ConfigError("no convergence checks in the config and none given with --check", ["checks"])
    return _derive(base, checks)


def _load(args: argparse.Namespace) -> RunConfig:
    if args.command == "verify":
        cfg = load_config(args.config)
    elif args.command == "selftest":
        cfg = _selftest_config(args)
    else:
        cfg = _convergence_config(args)
    return _apply_overrides(cfg, args)


# =============================================================================
# ENTRY POINT
# =============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, run the suite, write the report and return the exit code."""
    args = build_parser().parse_args(argv)
    if args.command == "schema":
        print(json.dumps(config_schema(), indent=2, sort_keys=True))
        return 0

    settings = get_settings()
    settings.configure_logging()
    configure_observability()

    try:
        cfg = _load(args)
    except ConfigError as e:
        print(f"❌ Config error: {e.message}", file=sys.stderr)
        return EXIT_ERROR

    try:
        results = create_and_run_suite(cfg, threads=args.threads, settings=settings)
    except WarpcurvError as e:
        print(f"❌ Run setup failed: {e.message}", file=sys.stderr)
        return EXIT_ERROR
    timestamp = settings.reports.timestamp and not args.no_timestamp
    fmt = args.format or cfg.output.format
    if fmt == "csv":
        text = render_csv(results)
    else:
        meta = {
            "command": args.command,
            "config": getattr(args, "config", None),
            "resolution": cfg.resolution,
            "seed": cfg.seed,
            "n": cfg.ambient.n,
            "fiber": cfg.ambient.fiber,
        }
        text = render_json(build_document(results, meta, timestamp=timestamp))

    try:
        write_output(text, args.out or cfg.output.path)
    except OSError as e:
        print(f"❌ Cannot write report: {e}", file=sys.stderr)
        return EXIT_ERROR
    return exit_code(results)


if __name__ == "__main__":
    sys.exit(main())
