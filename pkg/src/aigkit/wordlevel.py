"""Word-level Verilog subset and its bit-blaster.

Covers single-module designs whose body is input/output bus declarations and
`assign out = expr;` statements over the operators * + - & | ^ ~.  Buses are
unsigned, [w-1:0].
"""

import re
from dataclasses import dataclass, field

from .aig import Aig, lit_not
from .errors import ParseError, UnsupportedOperator


@dataclass
class WordLevelModule:
    name: str
    inputs: list = field(default_factory=list)  # (name, width)
    outputs: list = field(default_factory=list)
    assigns: dict = field(default_factory=dict)  # output name -> expr tree


_IDENT = r"[A-Za-z_][A-Za-z0-9_$]*"


def _strip_comments(text: str) -> str:
    text = re.sub(r"/\*.*?\*/", " ", text, flags=re.S)
    return re.sub(r"//[^\n]*", "", text)


def looks_word_level(text: str) -> bool:
    return re.search(r"\bassign\b", _strip_comments(text)) is not None


def parse_word_module(text: str) -> WordLevelModule:
    src = _strip_comments(text)
    m = re.search(rf"\bmodule\s+({_IDENT})\s*(\([^)]*\))?\s*;", src)
    if not m:
        raise ParseError("no module header found", line=1)
    mod = WordLevelModule(name=m.group(1))
    body = src[m.end() :]
    end = body.find("endmodule")
    if end < 0:
        raise ParseError("missing 'endmodule'")
    for st in (s.strip() for s in body[:end].split(";") if s.strip()):
        kw = st.split(None, 1)[0]
        if kw in ("input", "output"):
            rest = st[len(kw) :].strip()
            width = 1
            wm = re.match(r"\[\s*(\d+)\s*:\s*(\d+)\s*\]", rest)
            if wm:
                msb, lsb = int(wm.group(1)), int(wm.group(2))
                if lsb != 0 or msb < 0:
                    raise ParseError(f"bus range [{msb}:{lsb}] must be [w-1:0]")
                width = msb + 1
                rest = rest[wm.end() :]
            names = [n.strip() for n in rest.split(",") if n.strip()]
            target = mod.inputs if kw == "input" else mod.outputs
            for n in names:
                if not re.fullmatch(_IDENT, n):
                    raise ParseError(f"bad bus name {n!r}")
                target.append((n, width))
        elif kw == "assign":
            am = re.fullmatch(rf"assign\s+({_IDENT})\s*=\s*(.+)", st, flags=re.S)
            if not am:
                raise ParseError(f"cannot parse assign statement {st!r}")
            out_name = am.group(1)
            if out_name in mod.assigns:
                raise ParseError(f"output {out_name!r} assigned twice")
            mod.assigns[out_name] = _parse_word_expr(am.group(2))
        elif kw == "wire":
            raise UnsupportedOperator("intermediate wires are not supported at word level")
        else:
            raise ParseError(f"unsupported statement {st!r}")
    out_names = {n for n, _ in mod.outputs}
    for o in mod.assigns:
        if o not in out_names:
            raise ParseError(f"assign target {o!r} is not a declared output")
    for n, _ in mod.outputs:
        if n not in mod.assigns:
            raise ParseError(f"output {n!r} has no assign")
    return mod


# precedence, loosest first
_BINARY_LEVELS = [["|"], ["^"], ["&"], ["+", "-"], ["*"]]


def _tokenize_expr(s: str):
    tokens = []
    i = 0
    while i < len(s):
        c = s[i]
        if c.isspace():
            i += 1
            continue
        if c in "|^&+-*~()":
            tokens.append(c)
            i += 1
            continue
        m = re.match(_IDENT, s[i:])
        if not m:
            if c.isdigit():
                raise UnsupportedOperator("numeric constants are not supported")
            raise ParseError(f"bad character {c!r} in expression")
        tokens.append(m.group(0))
        i += len(m.group(0))
    return tokens


def _parse_word_expr(s: str):
    tokens = _tokenize_expr(s)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def level(depth):
        nonlocal pos
        if depth == len(_BINARY_LEVELS):
            return unary()
        lhs = level(depth + 1)
        while peek() in _BINARY_LEVELS[depth]:
            op = tokens[pos]
            pos += 1
            rhs = level(depth + 1)
            lhs = (op, lhs, rhs)
        return lhs

    def unary():
        nonlocal pos
        t = peek()
        if t == "~":
            pos += 1
            return ("~", unary())
        if t == "(":
            pos += 1
            e = level(0)
            if peek() != ")":
                raise ParseError("missing ')'")
            pos += 1
            return e
        if t is None:
            raise ParseError("unexpected end of expression")
        if not re.fullmatch(_IDENT, t):
            raise ParseError(f"unexpected token {t!r}")
        pos += 1
        return t

    e = level(0)
    if pos != len(tokens):
        raise ParseError(f"trailing tokens {tokens[pos:]}")
    return e


def _xor(g, a, b):
    n1 = g.strash_and(lit_not(a), lit_not(b))
    n2 = g.strash_and(a, b)
    return g.strash_and(lit_not(n1), lit_not(n2))


def _or(g, a, b):
    return lit_not(g.strash_and(lit_not(a), lit_not(b)))


def _full_add(g, a, b, c):
    """(sum, carry) with the shared-AND xor form."""
    s1 = _xor(g, a, b)
    s = _xor(g, s1, c)
    carry = _or(g, g.strash_and(a, b), g.strash_and(s1, c))
    return s, carry


def _add(g, xs, ys, width):
    xs = _zext(xs, width)
    ys = _zext(ys, width)
    out = []
    carry = 0
    for i in range(width):
        if carry == 0:
            s = _xor(g, xs[i], ys[i])
            carry = g.strash_and(xs[i], ys[i])
            out.append(s)
        else:
            s, carry = _full_add(g, xs[i], ys[i], carry)
            out.append(s)
    return out


def _zext(bits, width):
    bits = list(bits[:width])
    while len(bits) < width:
        bits.append(0)
    return bits


def _blast(g, expr, buses):
    """Returns the bit vector (LSB first) of a word expression."""
    if isinstance(expr, str):
        if expr not in buses:
            raise ParseError(f"unknown bus {expr!r}")
        return list(buses[expr])
    op = expr[0]
    if op == "~":
        a = _blast(g, expr[1], buses)
        return [lit_not(b) for b in a]
    a = _blast(g, expr[1], buses)
    b = _blast(g, expr[2], buses)
    if op in ("&", "|", "^"):
        w = max(len(a), len(b))
        a, b = _zext(a, w), _zext(b, w)
        if op == "&":
            return [g.strash_and(x, y) for x, y in zip(a, b)]
        if op == "|":
            return [_or(g, x, y) for x, y in zip(a, b)]
        return [_xor(g, x, y) for x, y in zip(a, b)]
    if op == "+":
        w = max(len(a), len(b)) + 1
        return _add(g, a, b, w)
    if op == "-":
        # two's complement: a + ~b + 1, truncated to max width
        w = max(len(a), len(b))
        a = _zext(a, w)
        nb = [lit_not(x) for x in _zext(b, w)]
        one = [1] + [0] * (w - 1)
        return _zext(_add(g, _add(g, a, one, w), nb, w), w)
    if op == "*":
        # shift-and-add over partial products; full m+n product
        w = len(a) + len(b)
        acc = [0] * w
        for j, bj in enumerate(b):
            pp = [0] * j + [g.strash_and(ai, bj) for ai in a]
            acc = _add(g, acc, pp, w)
        return acc[:w]
    raise UnsupportedOperator(f"operator {op!r} is not supported")


def bit_blast(mod: WordLevelModule) -> Aig:
    """AIG whose POs are the output bits, LSB first."""
    g = Aig(mod.name)
    buses = {}
    for name, width in mod.inputs:
        buses[name] = [g.add_pi(f"{name}[{i}]") for i in range(width)]
    for name, width in mod.outputs:
        bits = _zext(_blast(g, mod.assigns[name], buses), width)
        for i in range(width):
            g.add_po(bits[i], f"{name}[{i}]")
    g.cleanup()
    return g


MULT2B_SOURCE = """\
module mult2b (a,b,z);
  input [1:0] a,b;
  output [3:0] z;
    assign z = a * b;
endmodule
"""


def mult2b() -> Aig:
    """The 2-bit multiplier fixture used across tests and docs."""
    return bit_blast(parse_word_module(MULT2B_SOURCE))
