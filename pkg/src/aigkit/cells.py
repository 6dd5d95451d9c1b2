"""Minimal standard-cell library: names, pins, and a boolean function per cell.

Library text format, one cell per line ('#' starts a comment):

    cell <NAME> inputs <p1> <p2> ... output <po> function <expr>

Expressions are parenthesized prefix forms over the input pins:
(NOT x), (AND a b ...), (OR a b ...), (XOR a b), or a bare pin name.
"""

from dataclasses import dataclass, field

from .aig import Aig, lit_not
from .errors import DuplicateCell, ParseError, UnsupportedFeature

_OPS = ("AND", "OR", "NOT", "XOR")


def parse_expr(text: str, lineno=None):
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of expression", line=lineno)
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise ParseError("unexpected end of expression", line=lineno)
            op = tokens[pos]
            pos += 1
            if op not in _OPS:
                raise ParseError(f"unknown operator {op!r}", line=lineno)
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(parse())
            if pos >= len(tokens):
                raise ParseError("missing ')'", line=lineno)
            pos += 1
            if op == "NOT" and len(args) != 1:
                raise ParseError("NOT takes exactly one argument", line=lineno)
            if op != "NOT" and len(args) < 2:
                raise ParseError(f"{op} needs at least two arguments", line=lineno)
            return (op, *args)
        if tok == ")":
            raise ParseError("unexpected ')'", line=lineno)
        return tok

    e = parse()
    if pos != len(tokens):
        raise ParseError("trailing tokens after expression", line=lineno)
    return e


def expr_pins(expr) -> set:
    if isinstance(expr, str):
        return {expr}
    out = set()
    for a in expr[1:]:
        out |= expr_pins(a)
    return out


def eval_expr(expr, values: dict, mask: int) -> int:
    """Bit-parallel evaluation over pin value words."""
    if isinstance(expr, str):
        return values[expr]
    op = expr[0]
    args = [eval_expr(a, values, mask) for a in expr[1:]]
    if op == "NOT":
        return args[0] ^ mask
    if op == "AND":
        acc = mask
        for a in args:
            acc &= a
        return acc
    if op == "OR":
        acc = 0
        for a in args:
            acc |= a
        return acc
    acc = 0  # XOR
    for a in args:
        acc ^= a
    return acc


def expr_to_aig(g: Aig, expr, pin_lits: dict) -> int:
    if isinstance(expr, str):
        return pin_lits[expr]
    op = expr[0]
    args = [expr_to_aig(g, a, pin_lits) for a in expr[1:]]
    if op == "NOT":
        return lit_not(args[0])
    if op == "AND":
        acc = args[0]
        for a in args[1:]:
            acc = g.strash_and(acc, a)
        return acc
    if op == "OR":
        acc = args[0]
        for a in args[1:]:
            acc = lit_not(g.strash_and(lit_not(acc), lit_not(a)))
        return acc
    acc = args[0]  # XOR: positive-root shared-AND form
    for a in args[1:]:
        n1 = g.strash_and(lit_not(acc), lit_not(a))
        n2 = g.strash_and(acc, a)
        acc = g.strash_and(lit_not(n1), lit_not(n2))
    return acc


@dataclass(frozen=True)
class Cell:
    name: str
    input_pins: tuple
    output_pin: str
    function: tuple

    def truth_table(self) -> int:
        """Table over input_pins, pin 0 least significant."""
        n = len(self.input_pins)
        size = 1 << n
        mask = (1 << size) - 1
        from .cuts import leaf_patterns

        pats = leaf_patterns(n)
        values = {p: pats[i] for i, p in enumerate(self.input_pins)}
        return eval_expr(self.function, values, mask)


@dataclass
class CellLibrary:
    cells: dict = field(default_factory=dict)
    order: list = field(default_factory=list)

    def add(self, cell: Cell) -> None:
        if cell.name in self.cells:
            raise DuplicateCell(f"cell {cell.name!r} defined twice")
        self.cells[cell.name] = cell
        self.order.append(cell.name)

    def get(self, name: str):
        return self.cells.get(name)

    def __len__(self) -> int:
        return len(self.cells)


def read_cell_library(text: str) -> CellLibrary:
    lib = CellLibrary()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] != "cell":
            raise ParseError(f"expected 'cell', got {parts[0]!r}", line=lineno)
        try:
            name = parts[1]
            i_inputs = parts.index("inputs")
            i_output = parts.index("output")
            i_function = parts.index("function")
        except (IndexError, ValueError):
            raise ParseError("cell line needs 'cell NAME inputs ... output PO function EXPR'", line=lineno)
        inputs = tuple(parts[i_inputs + 1 : i_output])
        outputs = parts[i_output + 1 : i_function]
        if len(outputs) != 1:
            raise UnsupportedFeature(f"cell {name!r}: multi-output cells are not supported (line {lineno})")
        if not inputs:
            raise ParseError(f"cell {name!r} has no input pins", line=lineno)
        if len(set(inputs)) != len(inputs):
            raise ParseError(f"cell {name!r} has duplicate input pins", line=lineno)
        expr = parse_expr(" ".join(parts[i_function + 1 :]), lineno)
        bad = expr_pins(expr) - set(inputs)
        if bad:
            raise ParseError(f"cell {name!r} function uses undeclared pins {sorted(bad)}", line=lineno)
        lib.add(Cell(name=name, input_pins=inputs, output_pin=outputs[0], function=expr))
    return lib
