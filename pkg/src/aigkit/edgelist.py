"""Edgelist export for graph-learning consumers, plus the matching parser.

AIG flavor, one space-separated line per edge:

    <ext> <node> Pi 00          one per input (latches appear as extra inputs)
    <src> <dst> AIG <ff>        two per AND node, fanin0's line first; <ff> is
                                the node's inverter embedding (bit 1 = fanin0
                                complemented, bit 2 = fanin1 complemented)
    <node> <ext> Po 00          one per output (latch next-states at the end)

Mapped flavor replaces the AIG lines with one line per cell instance:
`<fanin ids in pin order> <dst> <cellname>`.

External input ids count 1..nIn, outputs nIn+1..nIn+nOut; internal ids
follow, input nodes first, then gates in topological order.  A complemented
output literal has no direct encoding, so the writer materializes a
two-edge inverter gate AND(~d,~d) in the document; the parser's structural
hashing collapses it back into an output complement.
"""

from dataclasses import dataclass, field
from typing import Optional

from .aig import Aig, lit_node
from .cells import CellLibrary
from .errors import InconsistentFeature, ParseError
from .vlog import MappedNetlist, instance_order


def _io_lists(g: Aig):
    inputs = g.pis + g.latches
    outputs = list(g.pos) + [g.latch_next(n) for n in g.latches]
    return inputs, outputs


def _aig_numbering(g: Aig):
    inputs, outputs = _io_lists(g)
    n_in, n_out = len(inputs), len(outputs)
    ids: dict[int, int] = {}
    nxt = n_in + n_out + 1
    for n in inputs:
        ids[n] = nxt
        nxt += 1
    if any(lit_node(l) == 0 for l in outputs):
        ids[0] = nxt
        nxt += 1
    ands = [n for n in g.topo_order() if g.is_and(n)]
    live = g.live_nodes()
    ands = [n for n in ands if n in live]
    for n in ands:
        ids[n] = nxt
        nxt += 1
    return inputs, outputs, ids, ands, nxt


def _token(g: Aig, n: int, ids: dict, keep_names: bool) -> str:
    if keep_names:
        name = g.node_name(n)
        if name:
            return name
    return str(ids[n])


def write_edgelist_aig(g: Aig, keep_names: bool = False) -> str:
    inputs, outputs, ids, ands, nxt = _aig_numbering(g)
    lines = []
    for i, n in enumerate(inputs):
        lines.append(f"{i + 1} {_token(g, n, ids, keep_names)} Pi 00")
    for n in ands:
        f0, f1 = g.fanin0(n), g.fanin1(n)
        feat = f"{f0 & 1}{f1 & 1}"
        dst = _token(g, n, ids, keep_names)
        lines.append(f"{_token(g, lit_node(f0), ids, keep_names)} {dst} AIG {feat}")
        lines.append(f"{_token(g, lit_node(f1), ids, keep_names)} {dst} AIG {feat}")
    # complemented outputs go through materialized inverter gates
    inv_of: dict[int, int] = {}
    po_src: list[str] = []
    for l in outputs:
        n = lit_node(l)
        if l & 1:
            key = n
            if key not in inv_of:
                inv_of[key] = nxt
                nxt += 1
                src = _token(g, n, ids, keep_names)
                lines.append(f"{src} {inv_of[key]} AIG 11")
                lines.append(f"{src} {inv_of[key]} AIG 11")
            po_src.append(str(inv_of[key]))
        else:
            po_src.append(_token(g, n, ids, keep_names))
    n_in = len(inputs)
    for i, src in enumerate(po_src):
        lines.append(f"{src} {n_in + 1 + i} Po 00")
    return "\n".join(lines) + "\n"


def write_edgelist_mapped(net: MappedNetlist, lib: CellLibrary, keep_names: bool = False) -> str:
    n_in, n_out = len(net.pis), len(net.pos)
    ids: dict[str, int] = {}
    nxt = n_in + n_out + 1
    for name in net.pis:
        ids[name] = nxt
        nxt += 1
    order = instance_order(net, lib)
    for idx in order:
        inst = net.instances[idx]
        out_net = inst.pins[lib.get(inst.cell).output_pin]
        ids[out_net] = nxt
        nxt += 1

    def tok(net_name: str) -> str:
        return net_name if keep_names else str(ids[net_name])

    lines = []
    for i, name in enumerate(net.pis):
        lines.append(f"{i + 1} {tok(name)} Pi 00")
    for idx in order:
        inst = net.instances[idx]
        cell = lib.get(inst.cell)
        fanins = " ".join(tok(inst.pins[p]) for p in cell.input_pins)
        lines.append(f"{fanins} {tok(inst.pins[cell.output_pin])} {inst.cell}")
    for i, name in enumerate(net.pos):
        lines.append(f"{tok(name)} {n_in + 1 + i} Po 00")
    return "\n".join(lines) + "\n"


@dataclass
class ParsedEdgelist:
    flavor: str  # "aig" | "mapped"
    node_count: int
    edge_count: int
    edges: list = field(default_factory=list)  # (src token, dst token)
    features: dict = field(default_factory=dict)  # dst token -> "ff" or cell name
    aig: Optional[Aig] = None  # reconstructed network (aig flavor only)
    input_tokens: list = field(default_factory=list)
    output_tokens: list = field(default_factory=list)


def parse_edgelist(text: str) -> ParsedEdgelist:
    """Summary plus, for the AIG flavor, a reconstructed equivalent network."""
    pi_lines = []
    po_lines = []
    gate_lines = []
    flavor = None
    edges = []
    tokens_seen: dict[str, None] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 3:
            raise ParseError(f"line too short: {line!r}", line=lineno)
        tag = parts[2] if len(parts) == 4 and parts[2] in ("Pi", "Po") else None
        if tag == "Pi":
            if parts[3] != "00":
                raise ParseError("Pi lines carry feature 00", line=lineno)
            pi_lines.append((parts[0], parts[1], lineno))
            edges.append((parts[0], parts[1]))
            tokens_seen.setdefault(parts[0])
            tokens_seen.setdefault(parts[1])
        elif tag == "Po":
            if parts[3] != "00":
                raise ParseError("Po lines carry feature 00", line=lineno)
            po_lines.append((parts[0], parts[1], lineno))
            edges.append((parts[0], parts[1]))
            tokens_seen.setdefault(parts[0])
            tokens_seen.setdefault(parts[1])
        elif len(parts) == 4 and parts[2] == "AIG":
            if flavor == "mapped":
                raise ParseError("AIG line in a mapped-flavor document", line=lineno)
            flavor = "aig"
            if len(parts[3]) != 2 or any(c not in "01" for c in parts[3]):
                raise ParseError(f"bad AIG feature {parts[3]!r}", line=lineno)
            gate_lines.append((parts[0], parts[1], parts[3], lineno))
            edges.append((parts[0], parts[1]))
            tokens_seen.setdefault(parts[0])
            tokens_seen.setdefault(parts[1])
        else:
            if flavor == "aig":
                raise ParseError("cell line in an AIG-flavor document", line=lineno)
            flavor = "mapped"
            *fanins, dst, cellname = parts
            if not fanins:
                raise ParseError("cell line needs at least one fanin", line=lineno)
            gate_lines.append((tuple(fanins), dst, cellname, lineno))
            for s in fanins:
                edges.append((s, dst))
                tokens_seen.setdefault(s)
            tokens_seen.setdefault(dst)
    if flavor is None:
        flavor = "aig"  # inputs/outputs only

    doc = ParsedEdgelist(
        flavor=flavor,
        node_count=len(tokens_seen),
        edge_count=len(edges),
        edges=edges,
        input_tokens=[t for _, t, _ in pi_lines],
        output_tokens=[t for t, _, _ in po_lines],
    )
    if flavor == "mapped":
        for fanins, dst, cellname, lineno in gate_lines:
            doc.features[dst] = cellname
        return doc

    features: dict[str, str] = {}
    lut: dict[str, int] = {}
    g = Aig("parsed")
    for ext, tok, lineno in pi_lines:
        if tok in lut:
            raise ParseError(f"input node {tok} defined twice", line=lineno)
        lut[tok] = g.add_pi(tok if not tok.isdigit() else None)
    if len(gate_lines) % 2:
        raise ParseError("odd number of AIG lines; each gate needs two", line=gate_lines[-1][3])
    for i in range(0, len(gate_lines), 2):
        s0, d0, f0, l0 = gate_lines[i]
        s1, d1, f1, l1 = gate_lines[i + 1]
        if d0 != d1:
            raise ParseError(f"gate {d0}: fanin lines are not adjacent", line=l1)
        if f0 != f1:
            raise InconsistentFeature(f"gate {d0}: features {f0} vs {f1}", line=l1)
        if d0 in lut:
            raise ParseError(f"gate {d0} defined twice", line=l0)
        for s, l in ((s0, l0), (s1, l1)):
            if s not in lut:
                raise ParseError(f"gate {d0} references undefined node {s}", line=l)
        a = lut[s0] ^ int(f0[0])
        b = lut[s1] ^ int(f0[1])
        lut[d0] = g.strash_and(a, b)
        features[d0] = f0
    for tok, ext, lineno in po_lines:
        if tok not in lut:
            raise ParseError(f"output references undefined node {tok}", line=lineno)
        g.add_po(lut[tok])
    g.cleanup()
    doc.features = features
    doc.aig = g
    return doc


def write_features(source, lib: Optional[CellLibrary] = None, keep_names: bool = False) -> str:
    """Per-node feature rows.

    AIG flavor: `node_id,f0,f1` with the inverter embedding on AND nodes and
    zero rows on inputs.  Mapped flavor: one-hot over the netlist's cell
    vocabulary (first appearance order), with a `# vocab:` header line.
    """
    if isinstance(source, Aig):
        g = source
        inputs, outputs, ids, ands, nxt = _aig_numbering(g)
        lines = ["node_id,f1,f2"]
        for n in inputs:
            lines.append(f"{_token(g, n, ids, keep_names)},0,0")
        for n in ands:
            f0, f1 = g.fanin0(n), g.fanin1(n)
            lines.append(f"{_token(g, n, ids, keep_names)},{f0 & 1},{f1 & 1}")
        # inverter gates materialized for complemented outputs share the
        # edgelist's id space, so they get rows too
        seen_inv = set()
        for l in outputs:
            if l & 1 and lit_node(l) not in seen_inv:
                seen_inv.add(lit_node(l))
                lines.append(f"{nxt},1,1")
                nxt += 1
        return "\n".join(lines) + "\n"
    net = source
    if lib is None:
        raise ParseError("mapped feature export needs the cell library")
    order = instance_order(net, lib)
    vocab: list[str] = []
    for idx in order:
        if net.instances[idx].cell not in vocab:
            vocab.append(net.instances[idx].cell)
    n_in, n_out = len(net.pis), len(net.pos)
    ids = {}
    nxt = n_in + n_out + 1
    for name in net.pis:
        ids[name] = nxt
        nxt += 1
    for idx in order:
        inst = net.instances[idx]
        ids[inst.pins[lib.get(inst.cell).output_pin]] = nxt
        nxt += 1
    lines = ["# vocab: " + ",".join(vocab)]
    width = len(vocab)
    header = "node_id," + ",".join(f"f{i + 1}" for i in range(width))
    lines.append(header)

    def tok(name):
        return name if keep_names else str(ids[name])

    for name in net.pis:
        lines.append(tok(name) + "," + ",".join("0" for _ in range(width)))
    for idx in order:
        inst = net.instances[idx]
        hot = vocab.index(inst.cell)
        row = ",".join("1" if i == hot else "0" for i in range(width))
        lines.append(tok(inst.pins[lib.get(inst.cell).output_pin]) + "," + row)
    return "\n".join(lines) + "\n"
