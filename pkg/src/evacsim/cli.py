"""Command line front end: ``evacsim run|sweep|validate|compliance|render``.

Exit codes: 0 success, 1 usage or parse error, 2 validation error,
3 a simulation hit its tick cap.
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import analytical as an
from .engine import init_state, run, step
from .firecode import ComplianceReport, check_compliance
from .render import render_snapshot
from .scenario import ParseError, ScenarioConfig, ValidationError, load_scenarios, parse_scenario, table1_dir
from .sweep import run_sweep

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_TIMEOUT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(x, ".6g")


def validate_report(occupants: float = 1000, area: float = 3025.0, ph: float = 0.125,
                    params: an.VanBogaertParams = an.VanBogaertParams(),
                    sim_mean: Optional[float] = None, sim_label: str = "simulated mean") -> str:
    inp = an.PmInputs(N=occupants, Ph=ph, A=area)
    da = an.dimensionless_density(inp)
    v = an.pm_walking_velocity(da)
    ve = an.pm_emergency_velocity(v, da)
    tmax = an.van_bogaert_tmax(params)
    lines = [
        f"occupants N = {_fmt(occupants)}",
        f"floor area A = {_fmt(area)} m2",
        f"area per person Ph = {_fmt(ph)} m2",
        f"dimensionless density Da = {_fmt(da)}" + (" (jammed)" if da > an.JAM_DENSITY else ""),
        f"walking velocity V = {_fmt(v)} m/s",
        f"emergency velocity V_VE = {_fmt(ve)} m/s",
        f"Van Bogaert T_max = {_fmt(tmax)} s "
        f"(S={_fmt(params.S)} I={_fmt(params.I)} Fd={_fmt(params.Fd)} H={_fmt(params.H)} R={_fmt(params.R)})",
    ]
    if sim_mean is not None:
        verdict = "below" if sim_mean < tmax else "NOT below"
        lines.append(f"{sim_label} {sim_mean:.3f} s is {verdict} T_max {_fmt(tmax)} s")
    return "\n".join(lines) + "\n"


def compliance_text(cfg_name: str, report: ComplianceReport) -> str:
    req = report.requirement
    lines = [
        f"scenario {cfg_name}: {req.occupants} occupants",
        f"required: {req.required_pu} PU ({_fmt(report.required_meters)} m legal width), "
        f"{req.required_exits} independent exits",
        f"provided: {report.provided_pu} PU ({_fmt(report.provided_meters)} m legal width, "
        f"{report.provided_pu} m simulated), {report.provided_exits} open exits, "
        f"{report.independent_count} independent",
    ]
    for slot, metres in sorted(report.exit_meters.items()):
        lines.append(f"  exit slot {slot}: {_fmt(metres)} m legal width")
    vx, vy = report.vantage
    lines.append(f"pair angles seen from ({_fmt(vx)}, {_fmt(vy)}):")
    for s, t, a in report.pair_angles:
        mark = "independent" if a >= 45 else "too close"
        lines.append(f"  slots {s}-{t}: {a:.2f} deg ({mark})")
    if report.max_travel_m is not None:
        lines.append(f"max travel to nearest exit: {_fmt(report.max_travel_m)} m (informational)")
    for v in report.violations:
        lines.append(f"violation: {v}")
    lines.append(f"compliant = {'true' if report.compliant else 'false'}")
    return "\n".join(lines) + "\n"


def _cmd_run(args) -> int:
    cfg = parse_scenario(args.scenario)
    seeds = args.seed if args.seed else cfg.run_seeds()
    world = cfg.world()
    status = EXIT_OK
    for seed in seeds:
        res = run(world, cfg.occupants, seed, args.max_ticks or cfg.max_ticks)
        per_exit = " ".join(f"{s}:{c}" for s, c in sorted(res.per_exit_throughput.items()))
        flag = " TIMEOUT" if res.timed_out else ""
        print(f"{cfg.name} seed={seed} evac_time={res.evac_time_ticks}s "
              f"capacity_bound={res.capacity_lower_bound} travel_bound={res.travel_lower_bound} "
              f"per_exit={per_exit}{flag}")
        if res.timed_out:
            status = EXIT_TIMEOUT
    return status


def _cmd_sweep(args) -> int:
    paths = list(args.scenarios)
    if args.table1:
        paths.append(table1_dir())
    if not paths:
        raise ParseError("no scenarios given (pass files/directories or --table1)")
    scenarios = load_scenarios(paths)
    text = run_sweep(scenarios, args.out, jobs=args.jobs)
    if args.out is None:
        sys.stdout.write(text)
    else:
        print(f"wrote {len(text.splitlines()) - 1} rows to {args.out}")
    return EXIT_TIMEOUT if ",timeout\n" in text else EXIT_OK


def _cmd_validate(args) -> int:
    params = an.VanBogaertParams(args.S, args.I, args.Fd, args.H, args.R)
    sim_mean, label = args.sim_mean, "simulated mean"
    if args.from_csv:
        with open(args.from_csv, newline="", encoding="utf-8") as fh:
            means = [r for r in csv.DictReader(fh) if r["status"] == "mean" and r["mean_over_seeds"]]
        if args.scenario:
            means = [r for r in means if r["scenario_name"] == args.scenario]
        if not means:
            raise ValidationError("from_csv", "no aggregate rows found")
        sim_mean = float(means[-1]["mean_over_seeds"])
        label = f"simulated mean of {means[-1]['scenario_name']}"
    sys.stdout.write(validate_report(args.occupants, args.area, args.ph, params, sim_mean, label))
    return EXIT_OK


def _cmd_compliance(args) -> int:
    cfg = parse_scenario(args.scenario)
    occupants = cfg.occupants if args.occupants is None else args.occupants
    report = check_compliance(occupants, cfg.layout, tuple(args.vantage) if args.vantage else None,
                              cfg.grid_width, cfg.grid_height)
    sys.stdout.write(compliance_text(cfg.name, report))
    return EXIT_OK


def render_at(cfg: ScenarioConfig, seed: int, tick: int, fmt: str, scale: int = 1) -> bytes:
    state = init_state(cfg.world(), cfg.occupants, seed)
    while state.tick < tick and state.n_live:
        step(state)
    return render_snapshot(state, fmt, scale)


def _cmd_render(args) -> int:
    cfg = parse_scenario(args.scenario)
    seed = args.seed if args.seed is not None else cfg.run_seeds()[0]
    data = render_at(cfg, seed, args.tick, args.format, args.scale)
    if args.out:
        Path(args.out).write_bytes(data)
    elif args.format == "text":
        sys.stdout.write(data.decode("ascii"))
    else:
        sys.stdout.buffer.write(data)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="evacsim", description="Single-room evacuation simulator")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("run", help="run one scenario file")
    r.add_argument("scenario")
    r.add_argument("--seed", type=int, action="append", help="run seed (repeatable)")
    r.add_argument("--max-ticks", type=int)
    r.set_defaults(func=_cmd_run)

    s = sub.add_parser("sweep", help="run scenarios x seeds and write a CSV")
    s.add_argument("scenarios", nargs="*", help="scenario files or directories")
    s.add_argument("--table1", action="store_true", help="include the bundled Table I scenarios")
    s.add_argument("--out", "-o", help="CSV path (default: stdout)")
    s.add_argument("--jobs", "-j", type=int, default=1)
    s.set_defaults(func=_cmd_sweep)

    v = sub.add_parser("validate", help="analytical reference values")
    v.add_argument("--occupants", type=float, default=1000)
    v.add_argument("--area", type=float, default=3025.0)
    v.add_argument("--ph", type=float, default=0.125)
    for name, default in (("S", 3.0), ("I", 0.75), ("Fd", 0.36), ("H", 1.0), ("R", 1.0)):
        v.add_argument(f"--{name}", type=float, default=default)
    g = v.add_mutually_exclusive_group()
    g.add_argument("--sim-mean", type=float, help="simulated mean evacuation time to compare")
    g.add_argument("--from-csv", help="take the comparison mean from a sweep CSV")
    v.add_argument("--scenario", help="scenario name to pick from --from-csv (default: last)")
    v.set_defaults(func=_cmd_validate)

    c = sub.add_parser("compliance", help="fire-code exit sizing check")
    c.add_argument("scenario")
    c.add_argument("--occupants", type=int)
    c.add_argument("--vantage", type=float, nargs=2, metavar=("X", "Y"))
    c.set_defaults(func=_cmd_compliance)

    d = sub.add_parser("render", help="snapshot of a run")
    d.add_argument("scenario")
    d.add_argument("--seed", type=int)
    d.add_argument("--tick", type=int, default=0)
    d.add_argument("--format", choices=("text", "ppm"), default="text")
    d.add_argument("--scale", type=int, default=1)
    d.add_argument("--out", "-o")
    d.set_defaults(func=_cmd_render)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (ValidationError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
