"""Structural Verilog subset for pre-mapped netlists.

Supported: one module with scalar input/output/wire declarations and
named-port cell instances.  No assigns, no behavioral blocks, no buses.
"""

import re
from dataclasses import dataclass, field

from .aig import Aig
from .cells import CellLibrary, expr_to_aig
from .errors import (
    CycleDetected,
    MultipleDrivers,
    ParseError,
    UndrivenNet,
    UnknownCell,
    UnsupportedFeature,
)


@dataclass
class Instance:
    name: str
    cell: str
    pins: dict  # pin name -> net name


@dataclass
class MappedNetlist:
    name: str
    pis: list = field(default_factory=list)
    pos: list = field(default_factory=list)
    wires: list = field(default_factory=list)
    instances: list = field(default_factory=list)


def _strip_comments(text: str) -> str:
    text = re.sub(r"/\*.*?\*/", " ", text, flags=re.S)
    text = re.sub(r"//[^\n]*", "", text)
    return text


_IDENT = r"[A-Za-z_][A-Za-z0-9_$]*"


def read_mapped_verilog(text: str, lib: CellLibrary) -> MappedNetlist:
    src = _strip_comments(text)
    m = re.search(rf"\bmodule\s+({_IDENT})\s*(\([^)]*\))?\s*;", src)
    if not m:
        raise ParseError("no module header found", line=1)
    net = MappedNetlist(name=m.group(1))
    body = src[m.end() :]
    end = body.find("endmodule")
    if end < 0:
        raise ParseError("missing 'endmodule'", line=src.count("\n", 0, m.end()) + 1)
    body = body[:end]

    statements = [s.strip() for s in body.split(";") if s.strip()]
    declared: dict[str, str] = {}
    for st in statements:
        kw = st.split(None, 1)[0] if st.split() else ""
        if kw in ("input", "output", "wire"):
            rest = st[len(kw) :].strip()
            if "[" in rest:
                raise UnsupportedFeature(f"bus declaration in {st!r}: only scalar nets are supported")
            names = [n.strip() for n in rest.split(",") if n.strip()]
            for n in names:
                if not re.fullmatch(_IDENT, n):
                    raise ParseError(f"bad net name {n!r}")
                declared[n] = kw
                if kw == "input":
                    net.pis.append(n)
                elif kw == "output":
                    net.pos.append(n)
                else:
                    net.wires.append(n)
        elif kw in ("assign", "always", "initial", "reg"):
            raise UnsupportedFeature(f"{kw!r} statements are not supported in mapped netlists")
        else:
            im = re.fullmatch(rf"({_IDENT})\s+({_IDENT})\s*\((.*)\)", st, flags=re.S)
            if not im:
                raise ParseError(f"cannot parse statement {st!r}")
            cell_name, inst_name, conns = im.group(1), im.group(2), im.group(3)
            cell = lib.get(cell_name)
            if cell is None:
                raise UnknownCell(f"instance {inst_name!r} uses unknown cell {cell_name!r}")
            pins = {}
            for pm in re.finditer(rf"\.\s*({_IDENT})\s*\(\s*({_IDENT})\s*\)", conns):
                pin, wire = pm.group(1), pm.group(2)
                if pin in pins:
                    raise ParseError(f"instance {inst_name!r} binds pin {pin!r} twice")
                pins[pin] = wire
            stripped = re.sub(rf"\.\s*{_IDENT}\s*\(\s*{_IDENT}\s*\)", "", conns).replace(",", "").strip()
            if stripped:
                raise ParseError(f"instance {inst_name!r}: only named-port connections are supported")
            for pin in pins:
                if pin != cell.output_pin and pin not in cell.input_pins:
                    raise ParseError(f"instance {inst_name!r}: cell {cell_name!r} has no pin {pin!r}")
            for pin in cell.input_pins:
                if pin not in pins:
                    raise ParseError(f"instance {inst_name!r}: input pin {pin!r} is unconnected")
            if cell.output_pin not in pins:
                raise ParseError(f"instance {inst_name!r}: output pin {cell.output_pin!r} is unconnected")
            net.instances.append(Instance(name=inst_name, cell=cell_name, pins=pins))

    _check_netlist(net, lib)
    return net


def _check_netlist(net: MappedNetlist, lib: CellLibrary) -> None:
    drivers: dict[str, str] = {}
    for n in net.pis:
        if n in drivers:
            raise MultipleDrivers(f"net {n!r} driven by {drivers[n]} and input port")
        drivers[n] = "input port"
    for inst in net.instances:
        cell = lib.get(inst.cell)
        out_net = inst.pins[cell.output_pin]
        if out_net in drivers:
            raise MultipleDrivers(f"net {out_net!r} driven by {drivers[out_net]} and {inst.name}")
        drivers[out_net] = inst.name
    for inst in net.instances:
        cell = lib.get(inst.cell)
        for pin in cell.input_pins:
            if inst.pins[pin] not in drivers:
                raise UndrivenNet(f"net {inst.pins[pin]!r} (pin {pin} of {inst.name}) has no driver")
    for n in net.pos:
        if n not in drivers:
            raise UndrivenNet(f"output net {n!r} has no driver")
    instance_order(net, lib)  # raises CycleDetected on loops


def instance_order(net: MappedNetlist, lib: CellLibrary) -> list:
    """Instances sorted so every instance's input nets are already driven."""
    producer = {}
    for idx, inst in enumerate(net.instances):
        producer[inst.pins[lib.get(inst.cell).output_pin]] = idx
    ready_nets = set(net.pis)
    order = []
    pending = list(range(len(net.instances)))
    while pending:
        stuck = []
        for idx in pending:
            inst = net.instances[idx]
            cell = lib.get(inst.cell)
            if all(inst.pins[p] in ready_nets for p in cell.input_pins):
                order.append(idx)
                ready_nets.add(inst.pins[cell.output_pin])
            else:
                stuck.append(idx)
        if len(stuck) == len(pending):
            names = [net.instances[i].name for i in stuck]
            raise CycleDetected(f"combinational loop among instances {names}")
        pending = stuck
    return order


def mapped_to_aig(net: MappedNetlist, lib: CellLibrary) -> Aig:
    """Strash every cell function; the result is equivalent to direct netlist simulation."""
    g = Aig(net.name)
    lits = {}
    for n in net.pis:
        lits[n] = g.add_pi(n)
    for idx in instance_order(net, lib):
        inst = net.instances[idx]
        cell = lib.get(inst.cell)
        pin_lits = {p: lits[inst.pins[p]] for p in cell.input_pins}
        lits[inst.pins[cell.output_pin]] = expr_to_aig(g, cell.function, pin_lits)
    for n in net.pos:
        g.add_po(lits[n], n)
    g.cleanup()
    return g


def simulate_netlist(net: MappedNetlist, lib: CellLibrary, words: dict, width: int) -> dict:
    """Reference bit-parallel evaluation directly on the netlist; returns net values."""
    from .cells import eval_expr

    mask = (1 << width) - 1
    vals = {n: words[n] & mask for n in net.pis}
    for idx in instance_order(net, lib):
        inst = net.instances[idx]
        cell = lib.get(inst.cell)
        pin_vals = {p: vals[inst.pins[p]] for p in cell.input_pins}
        vals[inst.pins[cell.output_pin]] = eval_expr(cell.function, pin_vals, mask)
    return vals
