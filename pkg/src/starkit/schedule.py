"""Access-schedule data model: ports, data, timestamped events, lifetimes.

A schedule is the complete set of write and read accesses of all data
over the adapter's ports, on a discrete integer clock. Within one cycle
reads are processed before writes, so a storage slot freed by a read can
accept a new datum in the same cycle. All values are immutable after
construction and every operation here is a pure function.
"""

from __future__ import annotations

import json
from array import array
from dataclasses import dataclass

from . import _kernels

INPUT = "input"
OUTPUT = "output"
WRITE = "write"
READ = "read"


class ScheduleError(ValueError):
    """Raised for malformed or semantically invalid constraint input."""


@dataclass(frozen=True)
class Port:
    id: str
    direction: str  # "input" | "output"
    width: int


@dataclass(frozen=True)
class DataItem:
    id: str
    width: int


@dataclass(frozen=True)
class AccessEvent:
    data_id: str
    port_id: str
    cycle: int
    kind: str  # "write" | "read"


@dataclass(frozen=True)
class Lifetime:
    """Per-datum interval from its write to its last read.

    reads is the strictly increasing list of read cycles; tau_first is
    reads[0] and tau_max the final one. write_port is carried along so
    data written in the same cycle on parallel ports still have a total
    chronological order.
    """

    data_id: str
    tau_min: int
    reads: tuple[int, ...]
    write_port: str | None = None

    def __post_init__(self) -> None:
        if not self.reads:
            raise ScheduleError(f"datum {self.data_id!r}: no read dates")
        if any(b <= a for a, b in zip(self.reads, self.reads[1:])):
            raise ScheduleError(
                f"datum {self.data_id!r}: read dates not strictly increasing"
            )
        if self.reads[0] <= self.tau_min:
            raise ScheduleError(
                f"datum {self.data_id!r}: first read at cycle {self.reads[0]} "
                f"does not follow write at cycle {self.tau_min}"
            )

    @property
    def tau_first(self) -> int:
        return self.reads[0]

    @property
    def tau_max(self) -> int:
        return self.reads[-1]

    def tau_r(self, i: int) -> int:
        """i-th read date, 1-based (tau_r(1) == tau_first)."""
        return self.reads[i - 1]


def chrono_key(lt: Lifetime) -> tuple[int, str, str]:
    """Total chronological order over data: write cycle, then write port
    id, then datum id as a final fallback for synthetic lifetimes."""
    return (lt.tau_min, lt.write_port or "", lt.data_id)


@dataclass(frozen=True)
class Schedule:
    """Validated I/O access schedule. Construction enforces all
    invariants; use parse_schedule for constraint-file input."""

    name: str
    ports: tuple[Port, ...]
    data: tuple[DataItem, ...]
    events: tuple[AccessEvent, ...]

    def __post_init__(self) -> None:
        # canonical event order (cycle, reads-first, port): equal schedules
        # compare equal regardless of input file ordering
        object.__setattr__(
            self,
            "events",
            tuple(sorted(self.events, key=lambda e: (e.cycle, e.kind != READ, e.port_id))),
        )
        _validate(self)

    @property
    def n_data(self) -> int:
        return len(self.data)

    def port(self, port_id: str) -> Port:
        for p in self.ports:
            if p.id == port_id:
                return p
        raise KeyError(port_id)

    def datum_width(self, data_id: str) -> int:
        for d in self.data:
            if d.id == data_id:
                return d.width
        raise KeyError(data_id)

    @property
    def makespan(self) -> int:
        """Cycles from the first write through the last read, inclusive."""
        first_write = min(e.cycle for e in self.events if e.kind == WRITE)
        last_read = max(e.cycle for e in self.events if e.kind == READ)
        return last_read - first_write + 1

    def to_json(self) -> str:
        """Canonical constraint-file form (stable bytes for equal input)."""
        doc = {
            "name": self.name,
            "ports": [
                {"id": p.id, "dir": p.direction, "width": p.width}
                for p in self.ports
            ],
            "data": [{"id": d.id, "width": d.width} for d in self.data],
            "events": [
                {"data": e.data_id, "port": e.port_id, "cycle": e.cycle, "kind": e.kind}
                for e in self.events
            ],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _validate(s: Schedule) -> None:
    port_ids = [p.id for p in s.ports]
    if len(set(port_ids)) != len(port_ids):
        dup = next(p for p in port_ids if port_ids.count(p) > 1)
        raise ScheduleError(f"duplicate port id {dup!r}")
    for p in s.ports:
        if p.direction not in (INPUT, OUTPUT):
            raise ScheduleError(f"port {p.id!r}: unknown direction {p.direction!r}")
        if p.width < 1:
            raise ScheduleError(f"port {p.id!r}: width must be positive")

    data_ids = [d.id for d in s.data]
    if len(set(data_ids)) != len(data_ids):
        dup = next(d for d in data_ids if data_ids.count(d) > 1)
        raise ScheduleError(f"duplicate datum id {dup!r}")
    for d in s.data:
        if d.width < 1:
            raise ScheduleError(f"datum {d.id!r}: width must be positive")

    ports = {p.id: p for p in s.ports}
    known = set(data_ids)
    seen_slot: dict[tuple[str, int], str] = {}
    writes: dict[str, int] = {}
    reads: dict[str, list[int]] = {d: [] for d in data_ids}
    for e in s.events:
        if e.kind not in (WRITE, READ):
            raise ScheduleError(f"datum {e.data_id!r}: unknown event kind {e.kind!r}")
        if e.cycle < 0:
            raise ScheduleError(f"datum {e.data_id!r}: negative cycle {e.cycle}")
        if e.data_id not in known:
            raise ScheduleError(f"event references unknown datum {e.data_id!r}")
        port = ports.get(e.port_id)
        if port is None:
            raise ScheduleError(f"event references unknown port {e.port_id!r}")
        want = INPUT if e.kind == WRITE else OUTPUT
        if port.direction != want:
            raise ScheduleError(
                f"datum {e.data_id!r}: {e.kind} event on {port.direction} "
                f"port {e.port_id!r}"
            )
        slot = (e.port_id, e.cycle)
        if slot in seen_slot:
            raise ScheduleError(
                f"port {e.port_id!r} carries both {seen_slot[slot]!r} and "
                f"{e.data_id!r} at cycle {e.cycle}"
            )
        seen_slot[slot] = e.data_id
        if e.kind == WRITE:
            if e.data_id in writes:
                raise ScheduleError(
                    f"datum {e.data_id!r}: written more than once "
                    f"(cycles {writes[e.data_id]} and {e.cycle})"
                )
            writes[e.data_id] = e.cycle
        else:
            reads[e.data_id].append(e.cycle)

    for d in data_ids:
        if d not in writes:
            raise ScheduleError(f"datum {d!r}: no write event")
        if not reads[d]:
            raise ScheduleError(f"datum {d!r}: no read event")
        rs = sorted(reads[d])
        if len(set(rs)) != len(rs):
            raise ScheduleError(f"datum {d!r}: duplicate read cycle")
        if rs[0] <= writes[d]:
            raise ScheduleError(
                f"datum {d!r}: read at cycle {rs[0]} does not strictly follow "
                f"write at cycle {writes[d]}"
            )


def _expect_obj(node: object, where: str, required: set[str], optional: set[str] = frozenset()) -> dict:
    if not isinstance(node, dict):
        raise ScheduleError(f"{where}: expected an object")
    unknown = set(node) - required - optional
    if unknown:
        raise ScheduleError(f"{where}: unknown field {sorted(unknown)[0]!r}")
    missing = required - set(node)
    if missing:
        raise ScheduleError(f"{where}: missing field {sorted(missing)[0]!r}")
    return node


def _expect_str(node: dict, key: str, where: str) -> str:
    v = node[key]
    if not isinstance(v, str) or not v:
        raise ScheduleError(f"{where}: field {key!r} must be a non-empty string")
    return v


def _expect_int(node: dict, key: str, where: str) -> int:
    v = node[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ScheduleError(f"{where}: field {key!r} must be an integer")
    return v


def parse_schedule(text: str) -> Schedule:
    """Parse and validate a UTF-8 JSON constraint file.

    Raises ScheduleError with line/field context for syntax problems and
    with the offending ids for semantic ones.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScheduleError(
            f"constraint file is not valid JSON: {exc.msg} "
            f"(line {exc.lineno}, column {exc.colno})"
        ) from None

    top = _expect_obj(doc, "top level", {"ports", "data", "events"}, {"name"})
    name = top.get("name", "unnamed")
    if not isinstance(name, str):
        raise ScheduleError("top level: field 'name' must be a string")

    if not isinstance(top["ports"], list) or not top["ports"]:
        raise ScheduleError("'ports' must be a non-empty array")
    ports = []
    for idx, node in enumerate(top["ports"]):
        where = f"ports[{idx}]"
        obj = _expect_obj(node, where, {"id", "dir", "width"})
        direction = _expect_str(obj, "dir", where)
        if direction not in (INPUT, OUTPUT):
            raise ScheduleError(f"{where}: 'dir' must be 'input' or 'output'")
        ports.append(
            Port(_expect_str(obj, "id", where), direction, _expect_int(obj, "width", where))
        )

    if not isinstance(top["data"], list) or not top["data"]:
        raise ScheduleError("'data' must be a non-empty array")
    data = []
    for idx, node in enumerate(top["data"]):
        where = f"data[{idx}]"
        obj = _expect_obj(node, where, {"id", "width"})
        data.append(DataItem(_expect_str(obj, "id", where), _expect_int(obj, "width", where)))

    if not isinstance(top["events"], list) or not top["events"]:
        raise ScheduleError("'events' must be a non-empty array")
    events = []
    for idx, node in enumerate(top["events"]):
        where = f"events[{idx}]"
        obj = _expect_obj(node, where, {"data", "port", "cycle", "kind"})
        kind = _expect_str(obj, "kind", where)
        if kind not in (WRITE, READ):
            raise ScheduleError(f"{where}: 'kind' must be 'write' or 'read'")
        events.append(
            AccessEvent(
                _expect_str(obj, "data", where),
                _expect_str(obj, "port", where),
                _expect_int(obj, "cycle", where),
                kind,
            )
        )

    return Schedule(name=name, ports=tuple(ports), data=tuple(data), events=tuple(events))


def compute_lifetimes(s: Schedule) -> dict[str, Lifetime]:
    """Lifetime of every datum, keyed by id in chronological order."""
    writes: dict[str, AccessEvent] = {}
    reads: dict[str, list[int]] = {d.id: [] for d in s.data}
    for e in s.events:
        if e.kind == WRITE:
            writes[e.data_id] = e
        else:
            reads[e.data_id].append(e.cycle)
    lifetimes = [
        Lifetime(
            data_id=d.id,
            tau_min=writes[d.id].cycle,
            reads=tuple(sorted(reads[d.id])),
            write_port=writes[d.id].port_id,
        )
        for d in s.data
    ]
    lifetimes.sort(key=chrono_key)
    return {lt.data_id: lt for lt in lifetimes}


def maxlive(s: Schedule) -> int:
    """Peak number of simultaneously stored data; a lower bound on any
    adapter's total capacity.

    A datum occupies a slot from its write cycle through the read phase
    of its last-read cycle; since reads precede writes within a cycle, a
    datum written exactly when another is last read can reuse its slot.
    """
    lifetimes = compute_lifetimes(s)
    tmin = array("q", (lt.tau_min for lt in lifetimes.values()))
    tmax = array("q", (lt.tau_max for lt in lifetimes.values()))
    return int(_kernels.peak_live(tmin, tmax))
