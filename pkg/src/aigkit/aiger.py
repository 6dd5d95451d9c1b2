"""AIGER reader/writer, ASCII ("aag") and binary ("aig") forms.

The reader strashes gates on the fly, so the in-memory network may be
slightly smaller than the header advertises when the file contains
foldable gates.
"""

from .aig import Aig, lit_node
from .errors import ParseError, UnsupportedFeature


def read_aiger(data) -> Aig:
    if isinstance(data, str):
        data = data.encode("ascii")
    if data.startswith(b"aag"):
        return _read_ascii(data)
    if data.startswith(b"aig"):
        return _read_binary(data)
    raise ParseError("not an AIGER file (expected 'aag' or 'aig' magic)", line=1)


def read_aiger_file(path) -> Aig:
    with open(path, "rb") as f:
        g = read_aiger(f.read())
    base = str(path).rsplit("/", 1)[-1]
    g.name = base.rsplit(".", 1)[0]
    return g


def _parse_header(line: bytes, lineno: int):
    parts = line.split()
    if len(parts) < 6:
        raise ParseError("AIGER header needs 'aag M I L O A'", line=lineno)
    try:
        nums = [int(p) for p in parts[1:]]
    except ValueError:
        raise ParseError("non-numeric AIGER header field", line=lineno)
    if len(nums) > 5 and any(n != 0 for n in nums[5:]):
        raise UnsupportedFeature("bad/constraint/justice/fairness sections are not supported")
    m, i, l, o, a = nums[:5]
    return m, i, l, o, a


def _read_ascii(data: bytes) -> Aig:
    lines = data.decode("ascii", errors="replace").splitlines()
    if not lines:
        raise ParseError("empty file", line=1)
    m, ni, nl, no, na = _parse_header(lines[0], 1)
    g = Aig()
    lut = {0: 0}  # aiger variable -> our literal

    def lookup(aig_lit, lineno):
        var = aig_lit >> 1
        if var not in lut:
            raise ParseError(f"literal {aig_lit} references undefined variable {var}", line=lineno)
        return lut[var] ^ (aig_lit & 1)

    idx = 1

    def need_line():
        nonlocal idx
        if idx >= len(lines):
            raise ParseError("unexpected end of file", line=len(lines))
        s = lines[idx]
        idx += 1
        return s, idx

    pi_vars = []
    for k in range(ni):
        s, lineno = need_line()
        try:
            lit_in = int(s.split()[0])
        except (ValueError, IndexError):
            raise ParseError("bad input line", line=lineno)
        if lit_in & 1 or lit_in == 0:
            raise ParseError(f"input literal {lit_in} must be a positive even literal", line=lineno)
        lut[lit_in >> 1] = g.add_pi()
        pi_vars.append(lit_in >> 1)
    latch_specs = []
    for k in range(nl):
        s, lineno = need_line()
        parts = s.split()
        if len(parts) < 2:
            raise ParseError("latch line needs 'lit next [init]'", line=lineno)
        try:
            ll = int(parts[0])
            nxt = int(parts[1])
            init = int(parts[2]) if len(parts) > 2 else 0
        except ValueError:
            raise ParseError("bad latch line", line=lineno)
        if init not in (0, 1):
            raise UnsupportedFeature(f"latch init {init} unsupported (only 0/1)")
        lut[ll >> 1] = g.add_latch(init=init)
        latch_specs.append((ll >> 1, nxt, lineno))
    out_specs = []
    for k in range(no):
        s, lineno = need_line()
        try:
            out_specs.append((int(s.split()[0]), lineno))
        except (ValueError, IndexError):
            raise ParseError("bad output line", line=lineno)
    and_defs = []
    for k in range(na):
        s, lineno = need_line()
        parts = s.split()
        if len(parts) != 3:
            raise ParseError("and line needs 'lhs rhs0 rhs1'", line=lineno)
        try:
            lhs, r0, r1 = (int(p) for p in parts)
        except ValueError:
            raise ParseError("bad and line", line=lineno)
        if lhs & 1 or lhs == 0:
            raise ParseError(f"and output {lhs} must be a positive even literal", line=lineno)
        and_defs.append((lhs, r0, r1, lineno))
    # gates may appear in any order in the ASCII form; resolve iteratively
    declared = set(lut) | {lhs >> 1 for lhs, _, _, _ in and_defs}
    pending = and_defs
    while pending:
        stuck = []
        for lhs, r0, r1, lineno in pending:
            if r0 >> 1 in lut and r1 >> 1 in lut:
                lut[lhs >> 1] = g.strash_and(lookup(r0, lineno), lookup(r1, lineno))
            else:
                for r in (r0, r1):
                    if r >> 1 not in declared:
                        raise ParseError(f"literal {r} references undefined variable {r >> 1}", line=lineno)
                stuck.append((lhs, r0, r1, lineno))
        if len(stuck) == len(pending):
            raise ParseError(f"combinational loop among and gates (line {stuck[0][3]})", line=stuck[0][3])
        pending = stuck
    for var, nxt, lineno in latch_specs:
        g.set_latch_next(lut[var] >> 1, lookup(nxt, lineno))
    for out_lit, lineno in out_specs:
        g.add_po(lookup(out_lit, lineno))
    _read_symbols(g, lines[idx:], idx + 1)
    g.cleanup()
    return g


def _read_symbols(g: Aig, lines, first_lineno: int) -> None:
    pis = g.pis
    lats = g.latches
    for off, s in enumerate(lines):
        if s.startswith("c"):
            break  # comment section
        if not s.strip():
            continue
        kind = s[0]
        rest = s[1:]
        try:
            pos_str, name = rest.split(" ", 1)
            pos = int(pos_str)
        except ValueError:
            raise ParseError(f"bad symbol line {s!r}", line=first_lineno + off)
        if kind == "i" and pos < len(pis):
            g.set_node_name(pis[pos], name)
        elif kind == "l" and pos < len(lats):
            g.set_node_name(lats[pos], name)
        elif kind == "o" and pos < len(g.pos):
            g.set_po_name(pos, name)
        else:
            raise ParseError(f"bad symbol line {s!r}", line=first_lineno + off)


def _read_binary(data: bytes) -> Aig:
    nl_pos = data.find(b"\n")
    if nl_pos < 0:
        raise ParseError("missing header newline", line=1)
    m, ni, nlat, no, na = _parse_header(data[:nl_pos], 1)
    g = Aig()
    lut = {0: 0}
    for k in range(ni):
        lut[k + 1] = g.add_pi()
    pos = nl_pos + 1
    lineno = 2

    def read_line():
        nonlocal pos, lineno
        end = data.find(b"\n", pos)
        if end < 0:
            raise ParseError("unexpected end of file", line=lineno)
        s = data[pos:end].decode("ascii", errors="replace")
        pos = end + 1
        lineno += 1
        return s

    latch_specs = []
    for k in range(nlat):
        parts = read_line().split()
        if not parts:
            raise ParseError("bad latch line", line=lineno - 1)
        nxt = int(parts[0])
        init = int(parts[1]) if len(parts) > 1 else 0
        if init not in (0, 1):
            raise UnsupportedFeature(f"latch init {init} unsupported (only 0/1)")
        var = ni + 1 + k
        lut[var] = g.add_latch(init=init)
        latch_specs.append((var, nxt))
    out_lits = []
    for k in range(no):
        out_lits.append(int(read_line().split()[0]))

    def read_delta():
        nonlocal pos
        shift = 0
        val = 0
        while True:
            if pos >= len(data):
                raise ParseError("truncated binary and section", offset=pos)
            byte = data[pos]
            pos += 1
            val |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return val
            shift += 7

    for k in range(na):
        var = ni + nlat + 1 + k
        lhs = 2 * var
        d0 = read_delta()
        d1 = read_delta()
        rhs0 = lhs - d0
        rhs1 = rhs0 - d1
        if rhs0 < 0 or rhs1 < 0:
            raise ParseError(f"bad and deltas for variable {var}", offset=pos)

        def look(al):
            v = al >> 1
            if v not in lut:
                raise ParseError(f"and references undefined variable {v}", offset=pos)
            return lut[v] ^ (al & 1)

        lut[var] = g.strash_and(look(rhs0), look(rhs1))
    for var, nxt in latch_specs:
        if nxt >> 1 not in lut:
            raise ParseError(f"latch next-state references undefined variable {nxt >> 1}", offset=pos)
        g.set_latch_next(lut[var] >> 1, lut[nxt >> 1] ^ (nxt & 1))
    for ol in out_lits:
        v = ol >> 1
        if v not in lut:
            raise ParseError(f"output references undefined variable {v}", offset=pos)
        g.add_po(lut[v] ^ (ol & 1))
    tail = data[pos:].decode("ascii", errors="replace").splitlines()
    _read_symbols(g, tail, lineno)
    g.cleanup()
    return g


def _numbering(g: Aig):
    """AIGER variable numbering: PIs, latches, then ANDs in topo order."""
    var = {0: 0}
    nxt = 1
    for n in g.pis:
        var[n] = nxt
        nxt += 1
    for n in g.latches:
        var[n] = nxt
        nxt += 1
    ands = [n for n in g.topo_order() if g.is_and(n)]
    for n in ands:
        var[n] = nxt
        nxt += 1
    return var, ands


def write_aiger(g: Aig, binary: bool = False):
    """Serialize; returns str for ASCII mode, bytes for binary mode."""
    live = g.live_nodes()
    dangling = [n for n in g.and_nodes() if n not in live]
    if dangling:
        g = g.clone()
        g.cleanup()
    var, ands = _numbering(g)

    def x(l):  # our literal -> aiger literal
        return 2 * var[lit_node(l)] + (l & 1)

    maxvar = len(g.pis) + len(g.latches) + len(ands)
    symbols = []
    for i, n in enumerate(g.pis):
        if g.node_name(n) is not None:
            symbols.append(f"i{i} {g.node_name(n)}")
    for i, n in enumerate(g.latches):
        if g.node_name(n) is not None:
            symbols.append(f"l{i} {g.node_name(n)}")
    for i, name in enumerate(g.po_names):
        if name is not None:
            symbols.append(f"o{i} {name}")
    if not binary:
        out = [f"aag {maxvar} {len(g.pis)} {len(g.latches)} {len(g.pos)} {len(ands)}"]
        for n in g.pis:
            out.append(str(2 * var[n]))
        for n in g.latches:
            out.append(f"{2 * var[n]} {x(g.latch_next(n))} {g.latch_init(n)}")
        for l in g.pos:
            out.append(str(x(l)))
        for n in ands:
            a, b = x(g.fanin0(n)), x(g.fanin1(n))
            if a < b:
                a, b = b, a
            out.append(f"{2 * var[n]} {a} {b}")
        out.extend(symbols)
        return "\n".join(out) + "\n"
    buf = bytearray()
    buf += f"aig {maxvar} {len(g.pis)} {len(g.latches)} {len(g.pos)} {len(ands)}\n".encode()
    for n in g.latches:
        buf += f"{x(g.latch_next(n))} {g.latch_init(n)}\n".encode()
    for l in g.pos:
        buf += f"{x(l)}\n".encode()
    for n in ands:
        lhs = 2 * var[n]
        a, b = x(g.fanin0(n)), x(g.fanin1(n))
        if a < b:
            a, b = b, a
        for delta in (lhs - a, a - b):
            while True:
                byte = delta & 0x7F
                delta >>= 7
                if delta:
                    buf.append(byte | 0x80)
                else:
                    buf.append(byte)
                    break
    for s in symbols:
        buf += s.encode() + b"\n"
    return bytes(buf)


def write_aiger_file(g: Aig, path) -> None:
    binary = str(path).endswith(".aig")
    data = write_aiger(g, binary=binary)
    mode = "wb" if binary else "w"
    with open(path, mode) as f:
        f.write(data)
