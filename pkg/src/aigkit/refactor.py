"""Refactoring: rebuild one reconvergence-driven cut as a factored form.

The cut function's irredundant sum-of-products comes from the
Minato-Morreale recursion on the truth table; the SOP is then factored
algebraically by greedy literal-count kernel extraction and strashed back.
"""

from functools import lru_cache

from .aig import Aig
from .cuts import window_function
from .transforms import CODE_REFACTOR, Candidate, PassContext, price_candidate

REFACTOR_CUT_SIZE = 8


# ---------------------------------------------------------------- cut choice

def reconvergence_cut(g: Aig, v: int, max_leaves: int = REFACTOR_CUT_SIZE) -> tuple[int, ...]:
    """Greedy cut growth from v's fanins, preferring expansions that reconverge."""
    leaves = {g.fanin0(v) >> 1, g.fanin1(v) >> 1}
    while True:
        best = None
        best_key = None
        for leaf in sorted(leaves):
            if not g.is_and(leaf):
                continue
            f0 = g.fanin0(leaf) >> 1
            f1 = g.fanin1(leaf) >> 1
            grown = (f0 not in leaves) + (f1 not in leaves) - 1
            if len(leaves) + grown > max_leaves:
                continue
            key = (grown, leaf)
            if best_key is None or key < best_key:
                best_key = key
                best = (leaf, f0, f1)
        if best is None:
            return tuple(sorted(leaves))
        leaf, f0, f1 = best
        leaves.discard(leaf)
        leaves.add(f0)
        leaves.add(f1)


# ---------------------------------------------------------------- isop

@lru_cache(maxsize=64)
def _var_masks(n: int, i: int) -> tuple[int, int]:
    size = 1 << n
    block = (1 << (1 << i)) - 1
    period = 1 << (i + 1)
    hi = 0
    for base in range(1 << i, size, period):
        hi |= block << base
    full = (1 << size) - 1
    return hi, full ^ hi


def _cofactor(tt: int, n: int, i: int) -> tuple[int, int]:
    hi, lo = _var_masks(n, i)
    shift = 1 << i
    f1 = (tt & hi) | ((tt & hi) >> shift)
    f0 = (tt & lo) | (((tt & lo) << shift) & ((1 << (1 << n)) - 1))
    return f0, f1


def isop(lower: int, upper: int, n: int) -> list[tuple[tuple[int, int], ...]]:
    """Irredundant SOP covering at least `lower` and at most `upper`.

    Cubes are tuples of (var, phase) literals, phase 1 = positive.
    """
    full = (1 << (1 << n)) - 1
    if lower == 0:
        return []
    if upper == full:
        return [()]
    for i in range(n):
        l0, l1 = _cofactor(lower, n, i)
        u0, u1 = _cofactor(upper, n, i)
        if l0 != l1 or u0 != u1:
            break
    c0 = isop(l0 & (full ^ u1), u0, n)
    c1 = isop(l1 & (full ^ u0), u1, n)
    f0 = _cover_tt(c0, n)
    f1 = _cover_tt(c1, n)
    l_rest = (l0 & (full ^ f0)) | (l1 & (full ^ f1))
    cd = isop(l_rest, u0 & u1, n)
    out = [cube + ((i, 0),) for cube in c0]
    out += [cube + ((i, 1),) for cube in c1]
    out += cd
    return out


def _cover_tt(cubes, n: int) -> int:
    full = (1 << (1 << n)) - 1
    acc = 0
    for cube in cubes:
        w = full
        for var, phase in cube:
            hi, lo = _var_masks(n, var)
            w &= hi if phase else lo
        acc |= w
    return acc


# ---------------------------------------------------------------- factoring

def _most_common_literal(cubes):
    counts: dict[tuple[int, int], int] = {}
    for cube in cubes:
        for lit in cube:
            counts[lit] = counts.get(lit, 0) + 1
    best = max(sorted(counts), key=lambda l: counts[l])
    return best, counts[best]


def factor_cubes(cubes):
    """Factored expression tree: ("lit", var, phase) | ("and", ...) | ("or", ...).

    Greedy kernel extraction: divide by the most frequent literal, pull the
    quotient's common cube into the co-kernel, recurse on kernel and remainder.
    """
    if not cubes:
        return ("const0",)
    if any(len(c) == 0 for c in cubes):
        return ("const1",)
    if len(cubes) == 1:
        lits = [("lit", var, phase) for var, phase in sorted(cubes[0])]
        return lits[0] if len(lits) == 1 else ("and", *lits)
    lit, count = _most_common_literal(cubes)
    if count < 2:
        terms = [factor_cubes([c]) for c in sorted(cubes)]
        return ("or", *terms)
    quotient = [tuple(l for l in c if l != lit) for c in cubes if lit in c]
    remainder = [c for c in cubes if lit not in c]
    common = set(quotient[0])
    for c in quotient[1:]:
        common &= set(c)
    cokernel = [lit] + sorted(common)
    kernel = [tuple(l for l in c if l not in common) for c in quotient]
    head = [("lit", var, phase) for var, phase in cokernel]
    kernel_expr = factor_cubes(kernel)
    if kernel_expr == ("const1",):
        product = head[0] if len(head) == 1 else ("and", *head)
    else:
        product = ("and", *head, kernel_expr)
    if not remainder:
        return product
    rest = factor_cubes(remainder)
    return ("or", product, rest)


def _expr_to_recipe(expr):
    """Lower a factored expression to builder ops over leaf slots."""
    ops: list[tuple] = []

    def balanced(items, conj: bool):
        layer = list(items)
        while len(layer) > 1:
            nxt = []
            for i in range(0, len(layer) - 1, 2):
                a, b = layer[i], layer[i + 1]
                if conj:
                    ops.append((a, b))
                    nxt.append(("op", len(ops) - 1, 0))
                else:
                    ops.append(((a[0], a[1], a[2] ^ 1), (b[0], b[1], b[2] ^ 1)))
                    nxt.append(("op", len(ops) - 1, 1))
            if len(layer) % 2:
                nxt.append(layer[-1])
            layer = nxt
        return layer[0]

    def lower(e):
        if e == ("const0",):
            return ("lit", 0, 0)
        if e == ("const1",):
            return ("lit", 0, 1)
        if e[0] == "lit":
            return ("leaf", e[1], e[2] ^ 1)  # phase 1 = positive leaf
        parts = [lower(x) for x in e[1:]]
        return balanced(parts, conj=(e[0] == "and"))

    root = lower(expr)
    return ops, root


def refactor_check(g: Aig, v: int, ctx: PassContext | None = None, zero_cost: bool = False,
                   max_leaves: int = REFACTOR_CUT_SIZE):
    if not g.is_and(v):
        return None
    ctx = ctx or PassContext(g)
    cut = reconvergence_cut(g, v, max_leaves)
    n = len(cut)
    tt = window_function(g, v, cut)
    cubes = isop(tt, tt, n)
    expr = factor_cubes(cubes)
    recipe, root_spec = _expr_to_recipe(expr)
    leaf_lits = tuple(2 * l for l in cut)
    priced = price_candidate(g, v, recipe, root_spec, leaf_lits)
    if priced is None:
        return None
    gain, _, _ = priced
    if gain < 0 or (gain == 0 and not zero_cost):
        return None
    return Candidate(
        kind=CODE_REFACTOR,
        node=v,
        version=g.version,
        est_gain=gain,
        recipe=recipe,
        root_spec=root_spec,
        leaves=leaf_lits,
    )
