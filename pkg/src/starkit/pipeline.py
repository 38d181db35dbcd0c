"""Synthesis pipeline orchestration and metric reporting.

run_synthesis chains graph construction, binding, merging, architecture
generation, and a mandatory simulation gate: an architecture is only
returned together with its report when the replay passes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .architecture import StarArchitecture, generate_architecture
from .binding import GreedyConfig, greedy_bind
from .optimize import build_hier_rcg, merge_structures
from .rcg import build_rcg
from .schedule import Schedule, compute_lifetimes, maxlive
from .simulator import simulate


@dataclass(frozen=True)
class Report:
    """Synthesis metrics for one (schedule, config) run. saved counts
    registers against the one-register-per-datum reference."""

    schedule: str
    n_data: int
    reference_capacity: int
    final_capacity: int
    saved: int
    ctrl: int
    maxlive: int
    makespan: int
    max_residency: int
    config: GreedyConfig

    @property
    def throughput(self) -> float:
        """Data words per cycle over the makespan."""
        return self.n_data / self.makespan

    def to_json_dict(self) -> dict:
        return {
            "schedule": self.schedule,
            "n_data": self.n_data,
            "reference_capacity": self.reference_capacity,
            "final_capacity": self.final_capacity,
            "saved": self.saved,
            "ctrl": self.ctrl,
            "maxlive": self.maxlive,
            "makespan": self.makespan,
            "max_residency": self.max_residency,
            "throughput": round(self.throughput, 6),
            "config": self.config.to_json_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def run_synthesis(s: Schedule, cfg: GreedyConfig) -> tuple[StarArchitecture, Report]:
    """Full pipeline with the simulation gate.

    Raises SimulationError (with the diagnostic trace attached) if the
    generated architecture fails its own replay; that is a synthesis
    bug, never a user-input problem.
    """
    lifetimes = compute_lifetimes(s)
    g = build_rcg(lifetimes)
    bound = greedy_bind(g, cfg, lifetimes)
    optimized = merge_structures(build_hier_rcg(bound), bound)
    arch = generate_architecture(optimized, s)
    simulate(arch, s)

    report = Report(
        schedule=s.name,
        n_data=s.n_data,
        reference_capacity=s.n_data,
        final_capacity=arch.total_capacity,
        saved=s.n_data - arch.total_capacity,
        ctrl=arch.ctrl_count,
        maxlive=maxlive(s),
        makespan=s.makespan,
        max_residency=max(lt.tau_max - lt.tau_min for lt in lifetimes.values()),
        config=cfg,
    )
    return arch, report


_COLUMNS = (
    "schedule",
    "n_data",
    "reference_capacity",
    "final_capacity",
    "saved",
    "ctrl",
    "maxlive",
    "makespan",
    "max_residency",
    "throughput",
    "min_len",
    "fill",
    "fifo",
    "lifo",
    "priority",
)


def _row(r: Report) -> dict[str, object]:
    row: dict[str, object] = {
        "schedule": r.schedule,
        "n_data": r.n_data,
        "reference_capacity": r.reference_capacity,
        "final_capacity": r.final_capacity,
        "saved": r.saved,
        "ctrl": r.ctrl,
        "maxlive": r.maxlive,
        "makespan": r.makespan,
        "max_residency": r.max_residency,
        "throughput": f"{r.throughput:.4f}",
    }
    row.update(r.config.to_json_dict())
    return row


def report_table(reports: list[Report]) -> str:
    """Aligned text table, one row per (schedule, config)."""
    rows = [_row(r) for r in reports]
    widths = {
        c: max(len(c), *(len(str(row[c])) for row in rows)) for c in _COLUMNS
    }
    head = "  ".join(c.ljust(widths[c]) for c in _COLUMNS)
    body = [
        "  ".join(str(row[c]).ljust(widths[c]) for c in _COLUMNS) for row in rows
    ]
    return "\n".join([head] + body) + "\n"


def report_csv(reports: list[Report]) -> str:
    """CSV form of report_table; round-trips through csv.DictReader."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in reports:
        writer.writerow(_row(r))
    return buf.getvalue()


def default_sweep_grid() -> list[GreedyConfig]:
    """Stock configuration grid for sweeps: the no-structure baseline,
    permissive binding under both priorities, the usual minimum-length /
    fill pairings, and single-kind runs."""
    return [
        GreedyConfig(min_len=2, fill_threshold=0.0, fifo_enabled=False, lifo_enabled=False),
        GreedyConfig(min_len=2, fill_threshold=0.0, priority="fifo_first"),
        GreedyConfig(min_len=2, fill_threshold=0.0, priority="lifo_first"),
        GreedyConfig(min_len=7, fill_threshold=0.0, priority="fifo_first"),
        GreedyConfig(min_len=7, fill_threshold=0.95, priority="fifo_first"),
        GreedyConfig(min_len=15, fill_threshold=0.90, priority="fifo_first"),
        GreedyConfig(min_len=2, fill_threshold=0.0, lifo_enabled=False),
        GreedyConfig(min_len=2, fill_threshold=0.0, fifo_enabled=False, priority="lifo_first"),
    ]
