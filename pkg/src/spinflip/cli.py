"""Command-line front end.

Subcommands: scan, conductivity, compare, gap, preset.  Exit codes:
0 success (including partial per-point failures, which are recorded in the
status column), 2 configuration error, 3 every grid point failed.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import plotting, scans
from ._version import __version__
from .config import make_config, read_config_file
from .errors import ConfigError


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="configuration file")
    p.add_argument("--override", metavar="KEY=VALUE", action="append",
                   default=[], help="override a configuration key (repeatable)")
    p.add_argument("--output", metavar="PATH", help="output CSV path")
    p.add_argument("--plot", metavar="PATH", nargs="?", const="",
                   help="also render a figure (default: CSV path with .png)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinflip",
        description="Spin-flip lifetimes of trapped atoms near conducting "
                    "and superconducting slabs")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("scan", "sweep T, H or z and tabulate the total rate"),
        ("conductivity", "tabulate the selected conductivity model"),
        ("compare", "exact lifetime vs the closed-form approximations"),
        ("gap", "tabulate the superconducting gap"),
    ]:
        p = sub.add_parser(name, help=help_text)
        _add_common(p)

    p = sub.add_parser("preset", help="run a pinned figure-reproduction scan")
    p.add_argument("name", choices=sorted(scans.PRESETS))
    _add_common(p)
    p.add_argument("--no-plot", action="store_true",
                   help="skip the figure next to the CSV")
    return parser


_RUNNERS = {
    "scan": (scans.run_scan, scans.RATE_COLUMNS, plotting.plot_rate_scan),
    "conductivity": (scans.run_conductivity_table, scans.CONDUCTIVITY_COLUMNS,
                     plotting.plot_conductivity),
    "compare": (scans.run_compare, scans.COMPARE_COLUMNS, plotting.plot_compare),
    "gap": (scans.run_gap_table, scans.GAP_COLUMNS, plotting.plot_gap),
}


def _plot_path(requested: Optional[str], csv_path: str) -> str:
    if requested:
        return requested
    base, _ = os.path.splitext(csv_path)
    return base + ".png"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "preset":
            cfg = scans.preset_config(args.name, overrides=args.override)
            runner = scans.PRESET_RUNNERS[args.name]
            columns = scans.PRESET_COLUMNS[args.name]
            plot_fn = (plotting.plot_conductivity if args.name == "fig2"
                       else plotting.plot_rate_scan)
            want_plot = not args.no_plot
        else:
            file_cfg = read_config_file(args.config) if args.config else None
            cfg = make_config(file_cfg, overrides=args.override)
            runner, columns, plot_fn = _RUNNERS[args.command]
            want_plot = args.plot is not None
        if args.output:
            cfg["output.path"] = args.output
    except (ConfigError, OSError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    out_path = cfg["output.path"]
    # fail on an unwritable destination before any computation
    try:
        with open(out_path, "w", encoding="utf-8"):
            pass
    except OSError as exc:
        print(f"cannot write output: {exc}", file=sys.stderr)
        return 2

    header, rows = runner(cfg)
    scans.write_csv(out_path, header, columns, rows)
    n_ok = sum(1 for r in rows if r["status"] == "ok")
    print(f"{len(rows)} points ({n_ok} ok) -> {out_path}")

    if want_plot and n_ok:
        plot_target = _plot_path(getattr(args, "plot", None), out_path)
        plot_fn(rows, cfg, plot_target)
        print(f"figure -> {plot_target}")

    if n_ok == 0:
        print("all grid points failed", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
