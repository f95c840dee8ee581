"""Command line entry point: ``negspace {sweep,optimize,reproduce,uqt-check,dump-net}``."""
from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from . import scenario
from .channels import apply_two_qubit, kraus
from .correlations import MEASURES
from .dwf import dump_net
from .errors import NegspaceError
from .matcore import TOL
from .optimizer import STRENGTH_GRID, ObjectiveSpec, optimize_pq
from .teleport import uqt_check
from .wmqmr import pipeline


def _scenario_flags(p: argparse.ArgumentParser) -> None:
    # defaults are None so that a scenario file can fill in unset flags
    p.add_argument("--scenario", help="flat key = value scenario file; flags override it")
    p.add_argument("--state", help="bell, ns1, ns2 or ns3")
    p.add_argument("--state-file", help="4x4 density matrix in plain-text form")
    p.add_argument("--channel", choices=scenario.CHANNELS)
    p.add_argument("--g", type=float, help="AD reservoir line width")
    p.add_argument("--gamma", type=float, help="AD coupling or RTN fluctuation rate")
    p.add_argument("--b", type=float, help="RTN coupling")
    p.add_argument("--measure", choices=MEASURES)
    p.add_argument("--wm", type=float, help="weak measurement strength p")
    p.add_argument("--qmr", type=float, help="measurement reversal strength q")
    p.add_argument("--optimize-strengths", action="store_const", const="true", default=None,
                   help="pick (p, q) by the t = 0 grid search")
    p.add_argument("--t-end", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--log-base", choices=("e", "2"))
    p.add_argument("--out", help="output path (stdout if omitted)")


def _settings(args) -> dict:
    settings = {}
    if getattr(args, "scenario", None):
        settings.update(scenario.parse_scenario_file(Path(args.scenario).read_text()))
    for key in ("state", "state_file", "channel", "g", "gamma", "b", "measure", "wm", "qmr",
                "optimize_strengths", "t_end", "steps", "log_base", "out"):
        value = getattr(args, key, None)
        if value is not None:
            settings[key] = value
    # an explicit --state wins over a state_file inherited from the scenario file
    if getattr(args, "state", None) is not None and getattr(args, "state_file", None) is None:
        settings.pop("state_file", None)
    return settings


def _emit(text: str, out) -> None:
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> int:
    scen = scenario.build_scenario(_settings(args))
    _emit(scenario.records_to_csv(scenario.run_sweep(scen)), scen.out)
    return 0


def cmd_optimize(args) -> int:
    settings = _settings(args)
    if args.objective:
        settings["measure"] = args.objective
    scen = scenario.build_scenario(settings)
    spec = ObjectiveSpec(scen.measure, scen.state, scen.channel, scen.param_kwargs, scen.log_base)
    rec = optimize_pq(spec, keep_grid=bool(args.grid))
    print(f"p* = {rec.p:.2f}  q* = {rec.q:.2f}  {scen.measure} = {rec.value:.12g}"
          f"  ({spec.direction}, {rec.failures} skipped)")
    if args.grid:
        path = Path(args.grid)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["p", "q", "value"])
            for a, p in enumerate(STRENGTH_GRID):
                for b, q in enumerate(STRENGTH_GRID):
                    v = rec.grid[a, b]
                    w.writerow([f"{p:.2f}", f"{q:.2f}", "" if v != v else f"{v:.12g}"])
    return 0


def cmd_reproduce(args) -> int:
    paths = scenario.reproduce(args.target, args.out or ".", t_end=args.t_end,
                               steps=args.steps or scenario.DEFAULT_STEPS,
                               log_base=args.log_base or "e")
    for path in paths:
        print(path)
    return 0


def cmd_uqt_check(args) -> int:
    scen = scenario.build_scenario(_settings(args))
    rho = scenario.resolve_state(scen.state)
    t = args.t or 0.0
    family = kraus(scen.params, t)
    strengths = scenario.resolve_strengths(scen)
    rho = apply_two_qubit(family, rho) if strengths is None else pipeline(rho, family, strengths).state
    report = uqt_check(rho, args.uqt_tolerance)
    _emit("\n".join([f"state = {scen.state_name}  channel = {scen.channel}  t = {t:g}"]
                    + report.lines()) + "\n", scen.out)
    return 0


def cmd_dump_net(args) -> int:
    _emit(dump_net(), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="negspace", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="time sweep of one measure, CSV output")
    _scenario_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("optimize", help="(p, q) grid search at t = 0")
    _scenario_flags(p)
    p.add_argument("--objective", choices=MEASURES, help="alias of --measure")
    p.add_argument("--grid", help="write the full 99x99 objective grid to this CSV")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("reproduce", help="figure CSVs or a table ordering report")
    p.add_argument("target", help="fig1..fig10, table1 or table2")
    p.add_argument("--t-end", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--log-base", choices=("e", "2"))
    p.add_argument("--out", help="output directory (default: current)")
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("uqt-check", help="teleportation fidelity report")
    _scenario_flags(p)
    p.add_argument("--t", type=float, help="evolution time (default 0)")
    p.add_argument("--uqt-tolerance", type=float, default=TOL["uqt"])
    p.set_defaults(func=cmd_uqt_check)

    p = sub.add_parser("dump-net", help="MUBs, line assignment and A_alpha spectra")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dump_net)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except NegspaceError as exc:
        parser.exit(2, f"negspace: error: {exc}\n")
    except OSError as exc:
        parser.exit(1, f"negspace: error: {exc}\n")


if __name__ == "__main__":
    sys.exit(main())
