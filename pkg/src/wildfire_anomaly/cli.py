"""Command-line interface.

Subcommands mirror the pipeline stages: prepare, train, detect, cluster,
importance, evaluate, report, plus run to chain everything after prepare.
A run is configured by a JSON file (--config), a named preset (--preset),
and flag overrides; --synthetic swaps in the bundled generated dataset so
the whole pipeline works without the real data. Exit code is 0 only when
every requested output was written.
"""

from __future__ import annotations

import argparse
import sys

from .config import DATA_DIR_ENV, resolve_config
from .pipeline import (
    cmd_cluster,
    cmd_detect,
    cmd_evaluate,
    cmd_importance,
    cmd_prepare,
    cmd_report,
    cmd_run,
    cmd_train,
)
from .presets import PRESETS

_COMMANDS = {
    "prepare": cmd_prepare,
    "train": cmd_train,
    "detect": cmd_detect,
    "cluster": cmd_cluster,
    "importance": cmd_importance,
    "evaluate": cmd_evaluate,
    "report": cmd_report,
    "run": cmd_run,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wildfire-anomaly",
        description="Unsupervised wildfire anomaly detection pipeline",
        epilog=f"Dataset files resolve against the {DATA_DIR_ENV} environment "
               f"variable when given as relative paths.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in _COMMANDS.items():
        cmd = sub.add_parser(name, help=fn.__doc__.splitlines()[0].lower().rstrip("."))
        cmd.add_argument("--config", help="JSON config file")
        cmd.add_argument("--preset", choices=sorted(PRESETS),
                         help="named experiment preset")
        cmd.add_argument("--seed", type=int, help="random seed (recorded in outputs)")
        cmd.add_argument("--out", default="runs", help="output directory (default: runs)")
        cmd.add_argument("--synthetic", action="store_true",
                         help="use the bundled synthetic dataset")
        cmd.add_argument("--feature-set", choices=["Dataset1", "Dataset2"],
                         help="feature set override")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.synthetic:
        overrides["dataset"] = {"synthetic": True}
    if args.feature_set:
        overrides["feature_set"] = args.feature_set
    overrides["out_dir"] = args.out

    try:
        config = resolve_config(args.config, args.preset, overrides)
        written = _COMMANDS[args.command](config, args.out)
    except Exception as exc:  # surface a one-line error and a nonzero exit
        print(f"error: {exc}", file=sys.stderr)
        return 1

    for name, path in sorted(written.items()):
        print(f"{name}: {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
