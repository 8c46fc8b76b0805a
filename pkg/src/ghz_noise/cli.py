"""``sim`` command-line driver.

Exit codes: 0 success, 1 configuration error, 2 validation failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import emit as emitter
from .config import ConfigError, parse_config
from .run import SWEEP_AXES, parse_values, run_evolve, run_sweep
from .validate import FAULTS, format_report, report_dicts, run_validate

EXIT_OK, EXIT_CONFIG, EXIT_VALIDATION, EXIT_IO = 0, 1, 2, 3


def _overrides(extra: list[str]) -> dict[str, str]:
    """Turn leftover ``--key value`` / ``--key=value`` tokens into config overrides."""
    out: dict[str, str] = {}
    it = iter(extra)
    for token in it:
        if not token.startswith("--"):
            raise ConfigError(None, f"unexpected argument {token!r}")
        key = token[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        else:
            try:
                value = next(it)
            except StopIteration:
                raise ConfigError(key, "missing value") from None
        out[key.replace("-", "_")] = value
    return out


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sim", description="GHZ-Werner state under power-law noise")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_run_options(p):
        p.add_argument("--config", help="key = value config file")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=emitter.WRITERS, help="output format")
        p.add_argument("--workers", type=int, default=1, help="worker processes")

    evolve = sub.add_parser("evolve", help="single run over the tau grid; other --key value pairs override the config")
    add_run_options(evolve)
    sweep = sub.add_parser("sweep", help="run over several values of one parameter")
    add_run_options(sweep)
    sweep.add_argument("--axis", required=True, choices=SWEEP_AXES)
    sweep.add_argument("--values", required=True, help="comma-separated values")
    val = sub.add_parser("validate", help="run the self-check suite")
    val.add_argument("--json", action="store_true", help="print the report as JSON")
    val.add_argument("--inject-fault", choices=FAULTS, help="perturb a component to exercise failure reporting")
    val.add_argument("--mc-samples", type=int, default=100_000)
    return parser


def _run(args, extra) -> int:
    text = ""
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return EXIT_IO
    try:
        overrides = _overrides(extra)
        if args.format:
            overrides["format"] = args.format
        if args.out:
            overrides["output"] = args.out
        cfg = parse_config(text, overrides)
        if args.workers < 1:
            raise ConfigError("workers", "must be >= 1")
        if args.command == "sweep":
            try:
                values = parse_values(args.values)
                records = run_sweep(cfg, args.axis, values, workers=args.workers)
            except ValueError as exc:
                raise ConfigError(args.axis, str(exc)) from None
        else:
            records = run_evolve(cfg, workers=args.workers)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if cfg.output:
        try:
            emitter.emit(records, cfg.format, cfg.output)
        except OSError as exc:
            print(f"error: cannot write {cfg.output}: {exc}", file=sys.stderr)
            return EXIT_IO
    else:
        sys.stdout.write(emitter.render(records, cfg.format))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args, extra = parser.parse_known_args(argv)
    if args.command == "validate":
        if extra:
            parser.error(f"unrecognized arguments: {' '.join(extra)}")
        results, code = run_validate(args.inject_fault, mc_samples=args.mc_samples)
        if args.json:
            print(json.dumps({"exit_code": code, "checks": report_dicts(results)}, indent=1))
        else:
            print(format_report(results))
        return code
    return _run(args, extra)


if __name__ == "__main__":
    sys.exit(main())
