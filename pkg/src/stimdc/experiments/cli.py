"""Command line entry point.

Exit status is 0 on success, 2 for invalid configurations or arguments and 1
for failures while running.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from ..propagation import PropagationMethod
from .config import ConfigError, load_config
from .io import OutputError
from .presets import PRESETS, preset_config, preset_text
from .runner import ExperimentError, metrics_json, run_experiment, write_result

EXIT_OK, EXIT_RUNTIME, EXIT_INVALID = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return v


def _even_int(text):
    v = int(text)
    if v < 2 or v % 2:
        raise argparse.ArgumentTypeError(f"must be an even integer >= 2, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stimdc", description="Stimulated down-conversion image transfer simulator.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    overrides = _Parser(add_help=False)
    overrides.add_argument("--grid", type=_even_int, metavar="N", help="square N x N grid")
    overrides.add_argument("--dx", type=_positive_float, metavar="METERS", help="grid pitch")
    overrides.add_argument(
        "--method", choices=[m.value for m in PropagationMethod], help="force propagation method"
    )
    overrides.add_argument("--out", metavar="DIR", help="output directory")

    r = sub.add_parser("run", parents=[overrides], help="run a configuration file")
    r.add_argument("config")
    pr = sub.add_parser("preset", parents=[overrides], help="run a built-in layout")
    pr.add_argument("name", choices=sorted(PRESETS))
    pr.add_argument("--show", action="store_true", help="print the preset configuration and exit")
    sub.add_parser("list-presets", help="list built-in layouts")
    v = sub.add_parser("validate", help="check a configuration file")
    v.add_argument("config")
    return p


def _execute(cfg, args) -> int:
    cfg = cfg.with_overrides(grid_n=args.grid, dx=args.dx, method=args.method)
    result = run_experiment(cfg)
    out = args.out or cfg.output_directory
    if out:
        write_result(result, out)
    sys.stdout.write(metrics_json(result.metrics))
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-presets":
            for name in PRESETS:
                print(f"{name}\t{(PRESETS[name].__doc__ or '').strip()}")
            return EXIT_OK
        if args.command == "preset":
            if args.show:
                sys.stdout.write(preset_text(args.name))
                return EXIT_OK
            return _execute(preset_config(args.name), args)
        cfg = load_config(args.config)
        if args.command == "validate":
            print(f"{args.config}: ok")
            return EXIT_OK
        return _execute(cfg, args)
    except ConfigError as exc:
        print(f"{getattr(args, 'config', '')}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FileNotFoundError as exc:
        print(f"cannot read {exc.filename}: {exc.strerror}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        # grid overrides that produce an invalid layout
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ExperimentError, OutputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
