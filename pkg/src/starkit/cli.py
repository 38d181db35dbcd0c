"""Command-line front end.

Subcommands: gen (schedule corpora), synth (full pipeline plus artifact
emission), simulate (replay a netlist against constraints), sweep (grid
of binding configurations to CSV).

Exit codes: 0 synthesized and simulation-verified, 1 input error,
2 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .architecture import InfeasibleBindingError, emit_netlist, emit_rtl, load_netlist
from .binding import GreedyConfig
from .generators import gen_schedule
from .pipeline import default_sweep_grid, report_csv, report_table, run_synthesis
from .schedule import ScheduleError, parse_schedule
from .simulator import SimulationError, format_trace, occupancy_bound, simulate

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VERIFY = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="star",
        description="Synthesize space-time adapter architectures from I/O "
        "access schedules and validate them cycle by cycle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a constraint file")
    gen.add_argument("--kind", required=True,
                     choices=["identity", "reversal", "block", "random"])
    gen.add_argument("--n", type=int, default=8)
    gen.add_argument("--latency", type=int, default=1)
    gen.add_argument("--rows", type=int, default=4)
    gen.add_argument("--cols", type=int, default=4)
    gen.add_argument("--offset", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, type=Path)

    synth = sub.add_parser("synth", help="synthesize an adapter from constraints")
    synth.add_argument("--constraints", required=True, type=Path)
    synth.add_argument("--min-len", type=int, default=2)
    synth.add_argument("--fill", type=float, default=0.0)
    synth.add_argument("--no-fifo", action="store_true")
    synth.add_argument("--no-lifo", action="store_true")
    synth.add_argument("--priority", choices=["fifo", "lifo"], default="fifo")
    synth.add_argument("--netlist", type=Path)
    synth.add_argument("--rtl", type=Path)
    synth.add_argument("--report", type=Path)

    sim = sub.add_parser("simulate", help="replay a netlist against constraints")
    sim.add_argument("--netlist", required=True, type=Path)
    sim.add_argument("--constraints", required=True, type=Path)
    sim.add_argument("--trace", action="store_true")

    sweep = sub.add_parser("sweep", help="run a grid of binding configs")
    sweep.add_argument("--constraints", required=True, type=Path)
    sweep.add_argument("--configs", type=Path,
                       help="JSON array of config objects; defaults to the stock grid")
    sweep.add_argument("--csv", required=True, type=Path)

    return parser


def _load_schedule(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScheduleError(f"cannot read {path}: {exc.strerror}") from None
    return parse_schedule(text)


def _synth_config(args: argparse.Namespace) -> GreedyConfig:
    return GreedyConfig(
        min_len=args.min_len,
        fill_threshold=args.fill,
        fifo_enabled=not args.no_fifo,
        lifo_enabled=not args.no_lifo,
        priority=f"{args.priority}_first",
    )


def _cmd_gen(args) -> int:
    params: dict[str, object] = {}
    if args.kind == "identity":
        params = {"n": args.n, "latency": args.latency}
    elif args.kind == "reversal":
        params = {"n": args.n}
    elif args.kind == "block":
        params = {"rows": args.rows, "cols": args.cols, "offset": args.offset}
    else:
        params = {"n": args.n, "seed": args.seed, "offset": args.offset}
    s = gen_schedule(args.kind, **params)
    args.out.write_text(s.to_json(), encoding="utf-8")
    print(f"wrote {s.name}: {s.n_data} data, {len(s.events)} events -> {args.out}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    s = _load_schedule(args.constraints)
    cfg = _synth_config(args)
    arch, report = run_synthesis(s, cfg)
    if args.netlist:
        args.netlist.write_text(emit_netlist(arch), encoding="utf-8")
    if args.rtl:
        args.rtl.write_text(emit_rtl(arch), encoding="utf-8")
    if args.report:
        args.report.write_text(report.to_json(), encoding="utf-8")
    print(report_table([report]), end="")
    return EXIT_OK


def _cmd_simulate(args) -> int:
    s = _load_schedule(args.constraints)
    try:
        text = args.netlist.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScheduleError(f"cannot read {args.netlist}: {exc.strerror}") from None
    try:
        arch = load_netlist(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise ScheduleError(f"bad netlist {args.netlist}: {exc}") from None
    trace = simulate(arch, s)
    if args.trace:
        print(format_trace(trace), end="")
    peaks = occupancy_bound(trace)
    summary = " ".join(f"{sid}={peak}" for sid, peak in peaks.items())
    print(f"pass: {len(trace.records)} active cycles, peak occupancy {summary}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    s = _load_schedule(args.constraints)
    if args.configs:
        try:
            doc = json.loads(args.configs.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ScheduleError(f"cannot read {args.configs}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise ScheduleError(f"bad config file {args.configs}: {exc.msg}") from None
        if not isinstance(doc, list) or not doc:
            raise ScheduleError("config file must hold a non-empty JSON array")
        try:
            grid = [GreedyConfig.from_json_dict(c) for c in doc]
        except (ValueError, TypeError) as exc:
            raise ScheduleError(f"bad config file {args.configs}: {exc}") from None
    else:
        grid = default_sweep_grid()
    reports = [run_synthesis(s, cfg)[1] for cfg in grid]
    args.csv.write_text(report_csv(reports), encoding="utf-8")
    print(report_table(reports), end="")
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "synth": _cmd_synth,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ScheduleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleBindingError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except SimulationError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        if exc.trace is not None and exc.trace.records:
            tail = format_trace(exc.trace).splitlines()[-6:]
            print("\n".join(tail), file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
