"""BLIF subset reader/writer.

Supported: .model, .inputs, .outputs, .names (single-output SOP covers with
up to 10 inputs), .latch (init 0/1, default 0), .end, '#' comments, and
backslash line continuation.  Anything else is an unsupported directive.
"""

from .aig import Aig, lit_node, lit_not
from .errors import ParseError, UnsupportedDirective


def _logical_lines(text: str):
    buf = ""
    start = None
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip() and not buf:
            continue
        if start is None:
            start = i
        if line.endswith("\\"):
            buf += line[:-1] + " "
            continue
        yield (buf + line).strip(), start
        buf = ""
        start = None
    if buf.strip():
        yield buf.strip(), start


def read_blif(text: str) -> Aig:
    model = None
    inputs: list[str] = []
    outputs: list[str] = []
    latches: list[tuple[str, str, int, int]] = []
    covers: list[tuple[list[str], str, list[tuple[str, str]], int]] = []
    cur_cover = None

    def close_cover():
        nonlocal cur_cover
        if cur_cover is not None:
            covers.append(cur_cover)
            cur_cover = None

    for line, lineno in _logical_lines(text):
        if line.startswith("."):
            parts = line.split()
            directive = parts[0]
            if directive == ".model":
                close_cover()
                model = parts[1] if len(parts) > 1 else ""
            elif directive == ".inputs":
                close_cover()
                inputs.extend(parts[1:])
            elif directive == ".outputs":
                close_cover()
                outputs.extend(parts[1:])
            elif directive == ".names":
                close_cover()
                if len(parts) < 2:
                    raise ParseError(".names needs at least an output", line=lineno)
                if len(parts) - 2 > 10:
                    raise ParseError(f".names with {len(parts) - 2} inputs exceeds the 10-input limit", line=lineno)
                cur_cover = (parts[1:-1], parts[-1], [], lineno)
            elif directive == ".latch":
                close_cover()
                if len(parts) < 3:
                    raise ParseError(".latch needs input and output nets", line=lineno)
                init = 0
                if len(parts) > 3 and parts[-1] in ("0", "1"):
                    init = int(parts[-1])
                latches.append((parts[1], parts[2], init, lineno))
            elif directive == ".end":
                close_cover()
                break
            else:
                raise UnsupportedDirective(directive, line=lineno)
        else:
            if cur_cover is None:
                raise ParseError(f"cover row outside .names: {line!r}", line=lineno)
            parts = line.split()
            if len(cur_cover[0]) == 0:
                if len(parts) != 1:
                    raise ParseError("constant cover row must be a single output value", line=lineno)
                cur_cover[2].append(("", parts[0]))
            else:
                if len(parts) != 2:
                    raise ParseError("cover row must be '<pattern> <value>'", line=lineno)
                if len(parts[0]) != len(cur_cover[0]):
                    raise ParseError("cover pattern width does not match input count", line=lineno)
                cur_cover[2].append((parts[0], parts[1]))
    close_cover()

    g = Aig(model or "")
    nets: dict[str, int] = {}
    for name in inputs:
        if name in nets:
            raise ParseError(f"net {name!r} driven twice", line=1)
        nets[name] = g.add_pi(name)
    latch_nodes = []
    for in_net, out_net, init, lineno in latches:
        if out_net in nets:
            raise ParseError(f"net {out_net!r} driven twice", line=lineno)
        nets[out_net] = g.add_latch(init=init, name=out_net)
        latch_nodes.append((in_net, nets[out_net] >> 1, lineno))

    def build_cover(in_names, out_name, rows, lineno):
        values = {v for _, v in rows}
        if len(values) > 1:
            raise ParseError(f"cover for {out_name!r} mixes on-set and off-set rows", line=lineno)
        onset = not rows or rows[0][1] == "1"
        cubes = []
        for pattern, _ in rows:
            lits = []
            for ch, name in zip(pattern, in_names):
                if ch == "1":
                    lits.append(nets[name])
                elif ch == "0":
                    lits.append(lit_not(nets[name]))
                elif ch != "-":
                    raise ParseError(f"bad cover character {ch!r}", line=lineno)
            cube = 1
            for l in lits:
                cube = g.strash_and(cube, l)
            cubes.append(cube)
        if not rows:
            acc = 0  # empty cover: constant 0
        else:
            acc = 0
            for cube in cubes:
                acc = lit_not(g.strash_and(lit_not(acc), lit_not(cube)))
        return acc if onset else lit_not(acc)

    # covers may be listed in any order; resolve iteratively
    pending = list(covers)
    defined = set(nets) | {c[1] for c in covers}
    while pending:
        stuck = []
        for cover in pending:
            in_names, out_name, rows, lineno = cover
            for name in in_names:
                if name not in defined:
                    raise ParseError(f"net {name!r} is never driven", line=lineno)
            if all(name in nets for name in in_names):
                if out_name in nets:
                    raise ParseError(f"net {out_name!r} driven twice", line=lineno)
                nets[out_name] = build_cover(in_names, out_name, rows, lineno)
            else:
                stuck.append(cover)
        if len(stuck) == len(pending):
            raise ParseError("combinational loop among .names covers", line=stuck[0][3])
        pending = stuck

    for in_net, latch_node, lineno in latch_nodes:
        if in_net not in nets:
            raise ParseError(f"latch input net {in_net!r} is never driven", line=lineno)
        g.set_latch_next(latch_node, nets[in_net])
    for name in outputs:
        if name not in nets:
            raise ParseError(f"output net {name!r} is never driven", line=1)
        g.add_po(nets[name], name)
    g.cleanup()
    return g


def _net_name(g: Aig, n: int, pi_names: dict) -> str:
    if n in pi_names:
        return pi_names[n]
    return f"n{n}"


def write_blif(g: Aig) -> str:
    """One .names per AND (fanin complements folded into the cover) plus
    buffer/inverter covers at PO and latch boundaries."""
    pi_names = {}
    for i, n in enumerate(g.pis):
        pi_names[n] = g.node_name(n) or f"pi{i}"
    for i, n in enumerate(g.latches):
        pi_names[n] = g.node_name(n) or f"lat{i}"
    po_names = [g.po_names[i] or f"po{i}" for i in range(len(g.pos))]

    out = [f".model {g.name or 'top'}"]
    if g.pis:
        out.append(".inputs " + " ".join(pi_names[n] for n in g.pis))
    if g.pos:
        out.append(".outputs " + " ".join(po_names))
    lines_latch = []
    lines_names = []
    live = g.live_nodes()
    for i, n in enumerate(g.latches):
        nxt = g.latch_next(n)
        src = lit_node(nxt)
        in_net = _net_name(g, src, pi_names) if src else None
        if src == 0:
            feed = f"lnext{i}"
            lines_names.append(f".names {feed}" + ("\n1" if nxt & 1 else ""))
        elif nxt & 1:
            feed = f"lnext{i}"
            lines_names.append(f".names {in_net} {feed}\n0 1")
        else:
            feed = in_net
        lines_latch.append(f".latch {feed} {pi_names[n]} {g.latch_init(n)}")
    for n in sorted(g.and_nodes()):
        if n not in live:
            continue
        a, b = g.fanin0(n), g.fanin1(n)
        na = _net_name(g, lit_node(a), pi_names)
        nb = _net_name(g, lit_node(b), pi_names)
        row = ("0" if a & 1 else "1") + ("0" if b & 1 else "1")
        lines_names.append(f".names {na} {nb} n{n}\n{row} 1")
    for i, l in enumerate(g.pos):
        src = lit_node(l)
        if src == 0:
            lines_names.append(f".names {po_names[i]}" + ("\n1" if l & 1 else ""))
        else:
            drv = _net_name(g, src, pi_names)
            if drv == po_names[i] and not l & 1:
                continue  # output net is the driver itself
            lines_names.append(f".names {drv} {po_names[i]}\n" + ("0 1" if l & 1 else "1 1"))
    out.extend(lines_latch)
    out.extend(lines_names)
    out.append(".end")
    return "\n".join(out) + "\n"
