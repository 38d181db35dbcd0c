"""Materialize a bound graph into an adapter architecture and emit it.

The architecture is storage elements (fifo/lifo/register), the
port-to-storage interconnect actually exercised, and an explicit
per-cycle control table (the unrolled form of the control FSM). Two
serializations exist: a canonical netlist JSON that round-trips, and a
structural VHDL-style text built from a fixed template library plus a
cycle-counter FSM process.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .binding import BoundGraph
from .rcg import CompatTag
from .schedule import READ, WRITE, Port, Schedule, compute_lifetimes

PUSH = "push"
POP = "pop"
LOAD = "load"
READ_FRONT = "read_front"
READ_TOP = "read_top"
READ_REG = "read_reg"

WRITE_ACTIONS = (PUSH, LOAD)
READ_ACTIONS = (POP, READ_FRONT, READ_TOP, READ_REG)


class InfeasibleBindingError(Exception):
    """Two control operations collide on one storage port in one cycle;
    storage elements have a single read and a single write port."""

    def __init__(self, cycle: int, storage: str, message: str):
        super().__init__(message)
        self.cycle = cycle
        self.storage = storage


@dataclass(frozen=True)
class StorageElement:
    id: str
    kind: CompatTag
    capacity: int
    width: int


@dataclass(frozen=True)
class ControlOp:
    cycle: int
    action: str
    storage: str
    port: str
    data: str

    @property
    def is_write_side(self) -> bool:
        return self.action in WRITE_ACTIONS


@dataclass(frozen=True)
class StarArchitecture:
    """Synthesizable adapter: storages + interconnect + control table +
    the datum-to-storage binding map."""

    name: str
    ports: tuple[Port, ...]
    storages: tuple[StorageElement, ...]
    interconnect: tuple[tuple[str, str], ...]
    control: tuple[ControlOp, ...]
    binding: dict[str, str]

    @property
    def total_capacity(self) -> int:
        return sum(st.capacity for st in self.storages)

    @property
    def ctrl_count(self) -> int:
        """Number of storage structures the control FSM manages."""
        return len(self.storages)

    def storage(self, storage_id: str) -> StorageElement:
        for st in self.storages:
            if st.id == storage_id:
                return st
        raise KeyError(storage_id)


def _read_action(kind: CompatTag, final: bool) -> str:
    if kind is CompatTag.REGISTER:
        return READ_REG
    if final:
        return POP
    return READ_FRONT if kind is CompatTag.FIFO else READ_TOP


def generate_architecture(b: BoundGraph, s: Schedule) -> StarArchitecture:
    """Build storages, control table, and interconnect from a bound
    graph covering the schedule's data.

    Write events become push (fifo/lifo) or load (register); reads
    become pop/read_reg at the datum's last read and non-destructive
    front/top/register reads before that.
    """
    lifetimes = compute_lifetimes(s)
    owner = {m: n for n in b.nodes for m in n.members}
    missing = [d.id for d in s.data if d.id not in owner]
    if missing:
        raise ValueError(f"bound graph does not cover datum {missing[0]!r}")

    storages = tuple(
        StorageElement(
            id=n.id,
            kind=n.kind,
            capacity=n.capacity,
            width=max(s.datum_width(m) for m in n.members),
        )
        for n in b.nodes
    )

    ops = []
    for e in sorted(s.events, key=lambda e: (e.cycle, e.kind != READ, e.port_id)):
        node = owner[e.data_id]
        if e.kind == WRITE:
            action = PUSH if node.kind is not CompatTag.REGISTER else LOAD
        else:
            final = e.cycle == lifetimes[e.data_id].tau_max
            action = _read_action(node.kind, final)
        ops.append(
            ControlOp(cycle=e.cycle, action=action, storage=node.id, port=e.port_id, data=e.data_id)
        )

    seen: dict[tuple[str, int, bool], ControlOp] = {}
    for op in ops:
        key = (op.storage, op.cycle, op.is_write_side)
        if key in seen:
            side = "write" if op.is_write_side else "read"
            raise InfeasibleBindingError(
                op.cycle,
                op.storage,
                f"storage {op.storage!r}: two {side}-side operations at cycle "
                f"{op.cycle} ({seen[key].data!r} and {op.data!r})",
            )
        seen[key] = op

    links = set()
    for op in ops:
        if op.is_write_side:
            links.add((op.port, op.storage))
        else:
            links.add((op.storage, op.port))

    return StarArchitecture(
        name=s.name,
        ports=s.ports,
        storages=storages,
        interconnect=tuple(sorted(links)),
        control=tuple(ops),
        binding={d.id: owner[d.id].id for d in sorted(s.data, key=lambda d: d.id)},
    )


NETLIST_FORMAT = 1


def emit_netlist(a: StarArchitecture) -> str:
    """Canonical netlist JSON: stable key order and list order, so equal
    architectures emit identical bytes."""
    doc = {
        "format": NETLIST_FORMAT,
        "name": a.name,
        "ports": [
            {"id": p.id, "dir": p.direction, "width": p.width} for p in a.ports
        ],
        "storages": [
            {"id": st.id, "kind": st.kind.value, "capacity": st.capacity, "width": st.width}
            for st in a.storages
        ],
        "interconnect": [{"from": src, "to": dst} for src, dst in a.interconnect],
        "binding": dict(sorted(a.binding.items())),
        "control": [
            {"cycle": op.cycle, "action": op.action, "storage": op.storage,
             "port": op.port, "data": op.data}
            for op in a.control
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_netlist(text: str) -> StarArchitecture:
    """Inverse of emit_netlist; load(emit(a)) == a."""
    doc = json.loads(text)
    if doc.get("format") != NETLIST_FORMAT:
        raise ValueError(f"unsupported netlist format {doc.get('format')!r}")
    kinds = {t.value: t for t in CompatTag}
    return StarArchitecture(
        name=doc["name"],
        ports=tuple(Port(p["id"], p["dir"], p["width"]) for p in doc["ports"]),
        storages=tuple(
            StorageElement(st["id"], kinds[st["kind"]], st["capacity"], st["width"])
            for st in doc["storages"]
        ),
        interconnect=tuple((l["from"], l["to"]) for l in doc["interconnect"]),
        control=tuple(
            ControlOp(c["cycle"], c["action"], c["storage"], c["port"], c["data"])
            for c in doc["control"]
        ),
        binding=dict(doc["binding"]),
    )


_FIFO_TEMPLATE = """\
entity star_fifo is
  generic (WIDTH : positive; DEPTH : positive);
  port (
    clk  : in  std_logic;
    rst  : in  std_logic;
    push : in  std_logic;
    pop  : in  std_logic;
    din  : in  std_logic_vector(WIDTH - 1 downto 0);
    dout : out std_logic_vector(WIDTH - 1 downto 0)
  );
end entity star_fifo;

architecture rtl of star_fifo is
  type mem_t is array (0 to DEPTH - 1) of std_logic_vector(WIDTH - 1 downto 0);
  signal mem  : mem_t;
  signal head : natural range 0 to DEPTH - 1 := 0;
  signal tail : natural range 0 to DEPTH - 1 := 0;
begin
  dout <= mem(head);
  process (clk)
  begin
    if rising_edge(clk) then
      if rst = '1' then
        head <= 0;
        tail <= 0;
      else
        if pop = '1' then
          head <= (head + 1) mod DEPTH;
        end if;
        if push = '1' then
          mem(tail) <= din;
          tail <= (tail + 1) mod DEPTH;
        end if;
      end if;
    end if;
  end process;
end architecture rtl;
"""

_LIFO_TEMPLATE = """\
entity star_lifo is
  generic (WIDTH : positive; DEPTH : positive);
  port (
    clk  : in  std_logic;
    rst  : in  std_logic;
    push : in  std_logic;
    pop  : in  std_logic;
    din  : in  std_logic_vector(WIDTH - 1 downto 0);
    dout : out std_logic_vector(WIDTH - 1 downto 0)
  );
end entity star_lifo;

architecture rtl of star_lifo is
  type mem_t is array (0 to DEPTH - 1) of std_logic_vector(WIDTH - 1 downto 0);
  signal mem : mem_t;
  signal top : natural range 0 to DEPTH := 0;
begin
  dout <= mem(top - 1);
  process (clk)
  begin
    if rising_edge(clk) then
      if rst = '1' then
        top <= 0;
      else
        if pop = '1' then
          top <= top - 1;
        end if;
        if push = '1' then
          mem(top) <= din;
          top <= top + 1;
        end if;
      end if;
    end if;
  end process;
end architecture rtl;
"""

_REG_TEMPLATE = """\
entity star_reg is
  generic (WIDTH : positive);
  port (
    clk  : in  std_logic;
    rst  : in  std_logic;
    load : in  std_logic;
    din  : in  std_logic_vector(WIDTH - 1 downto 0);
    dout : out std_logic_vector(WIDTH - 1 downto 0)
  );
end entity star_reg;

architecture rtl of star_reg is
  signal value : std_logic_vector(WIDTH - 1 downto 0);
begin
  dout <= value;
  process (clk)
  begin
    if rising_edge(clk) then
      if rst = '1' then
        value <= (others => '0');
      elsif load = '1' then
        value <= din;
      end if;
    end if;
  end process;
end architecture rtl;
"""

_KIND_TEMPLATE = {
    CompatTag.FIFO: _FIFO_TEMPLATE,
    CompatTag.LIFO: _LIFO_TEMPLATE,
    CompatTag.REGISTER: _REG_TEMPLATE,
}


def _vhdl_ident(name: str) -> str:
    cleaned = "".join(c if c.isalnum() or c == "_" else "_" for c in name)
    if not cleaned or not cleaned[0].isalpha():
        cleaned = "star_" + cleaned
    return cleaned.lower()


def _strobes(st: StorageElement) -> list[str]:
    if st.kind is CompatTag.REGISTER:
        return ["load"]
    return ["push", "pop"]


def emit_rtl(a: StarArchitecture) -> str:
    """Structural VHDL-style text: storage entities from the template
    library, one instance per storage element, an output mux layer, and
    a control process that replays the control table off a cycle
    counter. Deterministic for equal inputs; validated by golden file,
    not by a simulator."""
    top = _vhdl_ident(a.name) + "_star"
    horizon = max(op.cycle for op in a.control) + 1
    used_kinds = sorted({st.kind for st in a.storages}, key=lambda k: k.value)
    in_ports = [p for p in a.ports if p.direction == "input"]
    out_ports = [p for p in a.ports if p.direction == "output"]
    by_cycle: dict[int, list[ControlOp]] = {}
    for op in a.control:
        by_cycle.setdefault(op.cycle, []).append(op)

    # which storages feed each output port / are fed by each input port
    sources: dict[str, list[str]] = {p.id: [] for p in out_ports}
    sinks: dict[str, list[str]] = {st.id: [] for st in a.storages}
    for src, dst in a.interconnect:
        if src in sinks:
            sources[dst].append(src)
        else:
            sinks[dst].append(src)

    w = []
    w.append(f"-- {a.name}: space-time adapter")
    w.append(f"-- {len(a.storages)} storage element(s), {len(a.control)} control step(s)")
    w.append("")
    w.append("library ieee;")
    w.append("use ieee.std_logic_1164.all;")
    w.append("use ieee.numeric_std.all;")
    w.append("")
    for kind in used_kinds:
        w.append(_KIND_TEMPLATE[kind])
    w.append(f"entity {top} is")
    w.append("  port (")
    w.append("    clk : in  std_logic;")
    w.append("    rst : in  std_logic;")
    port_lines = []
    for p in in_ports:
        port_lines.append(f"    {_vhdl_ident(p.id)} : in  std_logic_vector({p.width - 1} downto 0)")
    for p in out_ports:
        port_lines.append(f"    {_vhdl_ident(p.id)} : out std_logic_vector({p.width - 1} downto 0)")
    w.append(";\n".join(port_lines))
    w.append("  );")
    w.append(f"end entity {top};")
    w.append("")
    w.append(f"architecture rtl of {top} is")
    for kind in used_kinds:
        name = f"star_{'reg' if kind is CompatTag.REGISTER else kind.value}"
        if kind is CompatTag.REGISTER:
            w.append(f"  component {name} is generic (WIDTH : positive);")
            w.append("    port (clk, rst, load : in std_logic;")
        else:
            w.append(f"  component {name} is generic (WIDTH : positive; DEPTH : positive);")
            w.append("    port (clk, rst, push, pop : in std_logic;")
        w.append("          din : in std_logic_vector(WIDTH - 1 downto 0);")
        w.append("          dout : out std_logic_vector(WIDTH - 1 downto 0));")
        w.append("  end component;")
    w.append(f"  signal cycle : natural range 0 to {horizon} := 0;")
    for st in a.storages:
        sid = _vhdl_ident(st.id)
        for strobe in _strobes(st):
            w.append(f"  signal {sid}_{strobe} : std_logic := '0';")
        w.append(f"  signal {sid}_din  : std_logic_vector({st.width - 1} downto 0);")
        w.append(f"  signal {sid}_dout : std_logic_vector({st.width - 1} downto 0);")
    for p in out_ports:
        n = len(sources[p.id])
        if n > 1:
            w.append(f"  signal {_vhdl_ident(p.id)}_sel : natural range 0 to {n - 1} := 0;")
    for st in a.storages:
        n = len(sinks[st.id])
        if n > 1:
            w.append(f"  signal {_vhdl_ident(st.id)}_src : natural range 0 to {n - 1} := 0;")
    w.append("begin")
    for st in a.storages:
        sid = _vhdl_ident(st.id)
        name = f"star_{'reg' if st.kind is CompatTag.REGISTER else st.kind.value}"
        if st.kind is CompatTag.REGISTER:
            generics = f"WIDTH => {st.width}"
            strobe_map = f"load => {sid}_load"
        else:
            generics = f"WIDTH => {st.width}, DEPTH => {st.capacity}"
            strobe_map = f"push => {sid}_push, pop => {sid}_pop"
        w.append(f"  u_{sid} : {name}")
        w.append(f"    generic map ({generics})")
        w.append(
            f"    port map (clk => clk, rst => rst, {strobe_map}, "
            f"din => {sid}_din, dout => {sid}_dout);"
        )
    w.append("")
    w.append("  -- input dispatch")
    for st in a.storages:
        sid = _vhdl_ident(st.id)
        feeders = sorted(sinks[st.id])
        if len(feeders) == 1:
            w.append(f"  {sid}_din <= {_vhdl_ident(feeders[0])};")
        else:
            w.append(f"  with {sid}_src select {sid}_din <=")
            for i, f in enumerate(feeders[:-1]):
                w.append(f"    {_vhdl_ident(f)} when {i},")
            w.append(f"    {_vhdl_ident(feeders[-1])} when others;")
    w.append("")
    w.append("  -- output mux layer")
    for p in out_ports:
        pid = _vhdl_ident(p.id)
        srcs = sorted(sources[p.id])
        if len(srcs) == 1:
            w.append(f"  {pid} <= {_vhdl_ident(srcs[0])}_dout;")
        else:
            arms = [
                f"{_vhdl_ident(s)}_dout when {i}," for i, s in enumerate(srcs[:-1])
            ]
            w.append(f"  with {pid}_sel select {pid} <=")
            for arm in arms:
                w.append(f"    {arm}")
            w.append(f"    {_vhdl_ident(srcs[-1])}_dout when others;")
    w.append("")
    w.append("  control : process (clk)")
    w.append("  begin")
    w.append("    if rising_edge(clk) then")
    w.append("      if rst = '1' then")
    w.append("        cycle <= 0;")
    w.append("      else")
    for st in a.storages:
        sid = _vhdl_ident(st.id)
        for strobe in _strobes(st):
            w.append(f"        {sid}_{strobe} <= '0';")
    w.append("        case cycle is")
    w.extend(_render_case(by_cycle, sources, sinks))
    w.append("        end case;")
    w.append(f"        if cycle < {horizon} then")
    w.append("          cycle <= cycle + 1;")
    w.append("        end if;")
    w.append("      end if;")
    w.append("    end if;")
    w.append("  end process control;")
    w.append("")
    w.append("end architecture rtl;")
    return "\n".join(w) + "\n"


def _render_case(by_cycle, sources, sinks) -> list[str]:
    lines = []
    for cycle in sorted(by_cycle):
        lines.append(f"          when {cycle} =>")
        for op in by_cycle[cycle]:
            sid = _vhdl_ident(op.storage)
            if op.is_write_side:
                if len(sinks.get(op.storage, [])) > 1:
                    src = sorted(sinks[op.storage]).index(op.port)
                    lines.append(f"            {sid}_src <= {src};")
                strobe = "load" if op.action == LOAD else "push"
                lines.append(f"            {sid}_{strobe} <= '1';  -- {op.data} <- {op.port}")
            else:
                muxed = len(sources.get(op.port, [])) > 1
                if muxed:
                    sel = sorted(sources[op.port]).index(op.storage)
                    lines.append(
                        f"            {_vhdl_ident(op.port)}_sel <= {sel};"
                        f"  -- {op.data} -> {op.port}"
                    )
                if op.action == POP:
                    lines.append(f"            {sid}_pop <= '1';  -- {op.data} leaves {op.storage}")
                elif not muxed:
                    lines.append(f"            null;  -- {op.data} readable on {op.port}")
    lines.append("          when others =>")
    lines.append("            null;")
    return lines
