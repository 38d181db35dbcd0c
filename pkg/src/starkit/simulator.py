"""Cycle-accurate replay of a schedule through an adapter architecture.

The simulator is the arbiter of functional correctness for everything
the synthesis stages produce: it executes the control table cycle by
cycle (reads before writes), enforces queue/stack/register discipline
and capacities, and checks that every read event receives the right
datum on the right port at the right cycle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .architecture import (
    LOAD,
    POP,
    PUSH,
    READ_FRONT,
    READ_REG,
    READ_TOP,
    ControlOp,
    StarArchitecture,
    generate_architecture,
)
from .binding import BoundGraph, HierNode
from .rcg import CompatTag, build_rcg
from .schedule import WRITE, Schedule, chrono_key, compute_lifetimes


class SimulationError(Exception):
    """Base of all replay failures; carries cycle/storage/datum context
    and the partial trace up to the failure."""

    def __init__(self, message: str, *, cycle: int, storage: str | None = None,
                 data: str | None = None, trace: "SimTrace | None" = None):
        super().__init__(message)
        self.cycle = cycle
        self.storage = storage
        self.data = data
        self.trace = trace


class DisciplineViolation(SimulationError):
    """A read found the wrong datum at the element's front/top/slot."""


class CapacityOverflow(SimulationError):
    """An element was asked to hold more data than its capacity."""


class MissingOp(SimulationError):
    """A schedule event has no matching control operation."""


class WrongCycle(SimulationError):
    """A control operation matches no schedule event at its cycle/port."""


@dataclass(frozen=True)
class CycleRecord:
    cycle: int
    ops: tuple[ControlOp, ...]
    occupancy: dict[str, int]
    emitted: dict[str, str]


@dataclass(frozen=True)
class SimTrace:
    records: tuple[CycleRecord, ...]
    peak: dict[str, int]
    verdict: str


_READ_SIDE = {POP, READ_FRONT, READ_TOP, READ_REG}
_ACTIONS_FOR_KIND = {
    CompatTag.FIFO: {PUSH, POP, READ_FRONT},
    CompatTag.LIFO: {PUSH, POP, READ_TOP},
    CompatTag.REGISTER: {LOAD, READ_REG},
}


class _Element:
    """One storage element under replay. Data enter at pushes/loads and
    leave at pops; register data leave at their final read."""

    def __init__(self, kind: CompatTag, capacity: int):
        self.kind = kind
        self.capacity = capacity
        self.store: deque[str] = deque()
        self.peak = 0

    def insert(self, d: str) -> bool:
        self.store.append(d)
        self.peak = max(self.peak, len(self.store))
        return len(self.store) <= self.capacity

    def visible(self) -> str | None:
        if not self.store:
            return None
        if self.kind is CompatTag.FIFO:
            return self.store[0]
        return self.store[-1]

    def remove_visible(self) -> None:
        if self.kind is CompatTag.FIFO:
            self.store.popleft()
        else:
            self.store.pop()


def simulate(a: StarArchitecture, s: Schedule) -> SimTrace:
    """Replay s through a and return the trace, or raise a structured
    SimulationError naming the first violation."""
    lifetimes = compute_lifetimes(s)
    events_at = {(e.cycle, e.port_id): e for e in s.events}
    ops_at: dict[tuple[int, str], ControlOp] = {}
    records: list[CycleRecord] = []

    def fail(exc_type, message, *, cycle, storage=None, data=None):
        trace = SimTrace(records=tuple(records), peak=_peaks(elements), verdict="fail")
        raise exc_type(message, cycle=cycle, storage=storage, data=data, trace=trace)

    elements = {st.id: _Element(st.kind, st.capacity) for st in a.storages}

    for op in a.control:
        key = (op.cycle, op.port)
        ev = events_at.get(key)
        if ev is None or (ev.kind == WRITE) != op.is_write_side:
            fail(
                WrongCycle,
                f"control op {op.action} of {op.data!r} at cycle {op.cycle} matches "
                f"no schedule event on port {op.port!r}",
                cycle=op.cycle, storage=op.storage, data=op.data,
            )
        if key in ops_at:
            fail(
                WrongCycle,
                f"port {op.port!r} carries two control ops at cycle {op.cycle}",
                cycle=op.cycle, storage=op.storage, data=op.data,
            )
        st = elements.get(op.storage)
        if st is None:
            fail(
                WrongCycle,
                f"control op references unknown storage {op.storage!r}",
                cycle=op.cycle, storage=op.storage, data=op.data,
            )
        if op.action not in _ACTIONS_FOR_KIND[st.kind]:
            fail(
                DisciplineViolation,
                f"action {op.action!r} is illegal on {st.kind.value} storage "
                f"{op.storage!r}",
                cycle=op.cycle, storage=op.storage, data=op.data,
            )
        ops_at[key] = op

    for e in s.events:
        if (e.cycle, e.port_id) not in ops_at:
            fail(
                MissingOp,
                f"no control op serves the {e.kind} of {e.data_id!r} on port "
                f"{e.port_id!r} at cycle {e.cycle}",
                cycle=e.cycle, data=e.data_id,
            )

    for cycle in sorted({op.cycle for op in a.control}):
        todays = [op for op in a.control if op.cycle == cycle]
        todays.sort(key=lambda op: (op.is_write_side, op.port))
        emitted: dict[str, str] = {}
        for op in todays:
            el = elements[op.storage]
            expect = events_at[(op.cycle, op.port)].data_id
            if op.is_write_side:
                if not el.insert(op.data):
                    fail(
                        CapacityOverflow,
                        f"storage {op.storage!r} holds {len(el.store)} data at cycle "
                        f"{cycle}, capacity {el.capacity}",
                        cycle=cycle, storage=op.storage, data=op.data,
                    )
                continue
            if el.kind is CompatTag.REGISTER:
                if op.data not in el.store:
                    fail(
                        DisciplineViolation,
                        f"register {op.storage!r} does not hold {op.data!r} at cycle "
                        f"{cycle}",
                        cycle=cycle, storage=op.storage, data=op.data,
                    )
                served = op.data
                if cycle == lifetimes[op.data].tau_max:
                    el.store.remove(op.data)
            else:
                front = el.visible()
                if front != op.data:
                    fail(
                        DisciplineViolation,
                        f"storage {op.storage!r}: {op.action} of {op.data!r} at cycle "
                        f"{cycle} but {front!r} is accessible",
                        cycle=cycle, storage=op.storage, data=op.data,
                    )
                served = front
                if op.action == POP:
                    el.remove_visible()
            if served != expect:
                fail(
                    DisciplineViolation,
                    f"port {op.port!r} receives {served!r} at cycle {cycle}, schedule "
                    f"expects {expect!r}",
                    cycle=cycle, storage=op.storage, data=served,
                )
            emitted[op.port] = served
        records.append(
            CycleRecord(
                cycle=cycle,
                ops=tuple(todays),
                occupancy={sid: len(el.store) for sid, el in sorted(elements.items())},
                emitted=emitted,
            )
        )

    return SimTrace(records=tuple(records), peak=_peaks(elements), verdict="pass")


def _peaks(elements: dict[str, "_Element"]) -> dict[str, int]:
    return {sid: el.peak for sid, el in sorted(elements.items())}


def occupancy_bound(trace: SimTrace) -> dict[str, int]:
    """Per-storage peak occupancy of a passing replay; cross-checks the
    declared capacities."""
    return dict(trace.peak)


def coarse_reference(s: Schedule) -> StarArchitecture:
    """Baseline adapter: one register per datum. Always correct, never
    smaller than n."""
    lifetimes = compute_lifetimes(s)
    order = sorted(lifetimes.values(), key=chrono_key)
    nodes = tuple(
        HierNode(
            id=f"register{i}",
            kind=CompatTag.REGISTER,
            members=(lt.data_id,),
            capacity=1,
            lifetime=((lt.tau_min, lt.tau_max),),
        )
        for i, lt in enumerate(order)
    )
    bound = BoundGraph(nodes=nodes, rcg=build_rcg(lifetimes))
    return generate_architecture(bound, s)


def format_trace(trace: SimTrace) -> str:
    """Line-oriented debug dump (not a stable format)."""
    lines = [f"# verdict={trace.verdict}"]
    for rec in trace.records:
        for op in rec.ops:
            occ = rec.occupancy[op.storage]
            lines.append(
                f"{rec.cycle:>6} | {op.action:<10} | {op.storage:<12} | "
                f"{op.data:<10} | occ={occ}"
            )
    peaks = " ".join(f"{sid}={peak}" for sid, peak in trace.peak.items())
    lines.append(f"# peak {peaks}")
    return "\n".join(lines) + "\n"
