"""Miter construction and combinational/bounded-sequential equivalence checking.

Sequential networks are compared combinationally by treating latch outputs as
extra inputs and latch next-states as extra outputs.
"""

import random
from dataclasses import dataclass, field
from typing import Optional

from .aig import Aig, lit_not
from .cuts import leaf_patterns
from .errors import InterfaceMismatch
from .sat import CnfFormula, sat_solve


@dataclass
class CecLimits:
    exhaustive_threshold: int = 16  # max combined inputs for the complete simulation path
    sim_words: int = 64  # 64-bit words of random simulation before the CNF path
    max_conflicts: Optional[int] = None  # None = run the SAT search to completion
    seed: int = 0xC0FFEE


@dataclass
class CecResult:
    verdict: str  # "equivalent" | "not_equivalent" | "unknown"
    counterexample: Optional[dict] = None  # input name -> 0/1

    @property
    def equivalent(self) -> bool:
        return self.verdict == "equivalent"


@dataclass
class Miter:
    aig: Aig
    inputs_a: list  # node ids in network a, aligned with miter PI order
    inputs_b: list
    input_names: list
    pairing: list = field(default_factory=list)  # (output label, a literal, b literal)


def _or_reduce(g: Aig, lits: list[int]) -> int:
    """Balanced OR tree in AND/inverter form."""
    if not lits:
        return 0
    layer = lits
    while len(layer) > 1:
        nxt = []
        for i in range(0, len(layer) - 1, 2):
            nxt.append(lit_not(g.strash_and(lit_not(layer[i]), lit_not(layer[i + 1]))))
        if len(layer) % 2:
            nxt.append(layer[-1])
        layer = nxt
    return layer[0]


def _xor(g: Aig, a: int, b: int) -> int:
    n1 = g.strash_and(lit_not(a), lit_not(b))
    n2 = g.strash_and(a, b)
    return g.strash_and(lit_not(n1), lit_not(n2))


def _input_nodes(g: Aig) -> list[int]:
    return g.pis + g.latches


def _output_lits(g: Aig) -> list[tuple[str, int]]:
    outs = []
    for i, l in enumerate(g.pos):
        outs.append((g.po_names[i] or f"po{i}", l))
    for i, n in enumerate(g.latches):
        outs.append((g.node_name(n) or f"latch{i}", g.latch_next(n)))
    return outs


def _output_names(g: Aig) -> list:
    return [g.po_names[i] for i in range(len(g.pos))] + [g.node_name(n) for n in g.latches]


def _match_order(names_a, names_b, what: str):
    """Positions of b's items aligned to a's order.

    Name-based when both sides are fully named, positional when at least one
    side is entirely unnamed; a partially named side is rejected rather than
    silently falling back.
    """
    if len(names_a) != len(names_b):
        raise InterfaceMismatch(f"{what} counts differ: {len(names_a)} vs {len(names_b)}")
    for names, side in ((names_a, "first"), (names_b, "second")):
        named = [n for n in names if n is not None]
        if named and len(named) != len(names):
            raise InterfaceMismatch(f"{what} naming is mixed on the {side} network")
    full_a = all(n is not None for n in names_a) and len(set(names_a)) == len(names_a)
    full_b = all(n is not None for n in names_b) and len(set(names_b)) == len(names_b)
    if full_a and full_b:
        pos_b = {n: i for i, n in enumerate(names_b)}
        order = []
        for n in names_a:
            if n not in pos_b:
                raise InterfaceMismatch(f"{what} {n!r} missing from second network")
            order.append(pos_b[n])
        return order
    return list(range(len(names_a)))


def build_miter(a: Aig, b: Aig) -> Miter:
    """Single-output network that is 1 exactly where a and b disagree."""
    ins_a = _input_nodes(a)
    ins_b = _input_nodes(b)
    names_a = [a.node_name(n) for n in ins_a]
    names_b = [b.node_name(n) for n in ins_b]
    in_order = _match_order(names_a, names_b, "input")
    outs_a = _output_lits(a)
    outs_b = _output_lits(b)
    out_order = _match_order(_output_names(a), _output_names(b), "output")

    g = Aig(name=f"miter({a.name},{b.name})")
    in_names = [names_a[i] or f"pi{i}" for i in range(len(ins_a))]
    miter_pis = [g.add_pi(in_names[i]) for i in range(len(ins_a))]

    def copy_into(src: Aig, input_map: dict) -> dict:
        m = dict(input_map)
        m[0] = 0
        for n in src.topo_order():
            if src.is_and(n):
                fa, fb = src.fanin0(n), src.fanin1(n)
                m[n] = g.strash_and(m[fa >> 1] ^ (fa & 1), m[fb >> 1] ^ (fb & 1))
        return m

    map_a = copy_into(a, {n: miter_pis[i] for i, n in enumerate(ins_a)})
    map_b = copy_into(b, {ins_b[in_order[i]]: miter_pis[i] for i in range(len(ins_b))})

    xors = []
    pairing = []
    for i, (label, la) in enumerate(outs_a):
        _, lb = outs_b[out_order[i]]
        la_m = map_a[la >> 1] ^ (la & 1)
        lb_m = map_b[lb >> 1] ^ (lb & 1)
        pairing.append((label, la_m, lb_m))
        xors.append(_xor(g, la_m, lb_m))
    g.add_po(_or_reduce(g, xors), "miter")
    g.cleanup()
    return Miter(aig=g, inputs_a=ins_a, inputs_b=[ins_b[i] for i in in_order], input_names=in_names, pairing=pairing)


def tseitin(g: Aig, root_lit: int) -> tuple[CnfFormula, dict[int, int]]:
    """CNF of the cone of root_lit with the root asserted true."""
    f = CnfFormula()
    var: dict[int, int] = {}
    cone = []
    stack = [root_lit >> 1]
    seen = set()
    while stack:
        n = stack.pop()
        if n in seen or n == 0:
            continue
        seen.add(n)
        cone.append(n)
        if g.is_and(n):
            stack.append(g.fanin0(n) >> 1)
            stack.append(g.fanin1(n) >> 1)
    for n in sorted(cone):
        var[n] = f.new_var()

    def sv(l: int) -> int:  # signed CNF literal for an AIG literal
        v = var[l >> 1]
        return -v if l & 1 else v

    for n in sorted(cone):
        if not g.is_and(n):
            continue
        v = var[n]
        a, b = sv(g.fanin0(n)), sv(g.fanin1(n))
        f.add_clause([-v, a])
        f.add_clause([-v, b])
        f.add_clause([v, -a, -b])
    if root_lit == 1:
        pass  # constant true: no clause needed
    elif root_lit == 0:
        f.add_clause([f.new_var()])
        f.add_clause([-f.n_vars])  # constant false: unsatisfiable
    else:
        f.add_clause([sv(root_lit)])
    return f, var


def _assignment_from_bit(names: list[str], bit_index: int) -> dict:
    return {name: (bit_index >> i) & 1 for i, name in enumerate(names)}


def _validate_ce(a: Aig, b: Aig, miter: Miter, ce: dict) -> bool:
    wa = {n: ce[miter.input_names[i]] for i, n in enumerate(miter.inputs_a)}
    wb = {n: ce[miter.input_names[i]] for i, n in enumerate(miter.inputs_b)}
    va = a.simulate_nodes(wa, 1)
    vb = b.simulate_nodes(wb, 1)
    outs_a = _output_lits(a)
    outs_b = _output_lits(b)
    names_b = [n for n, _ in outs_b]
    for label, la in outs_a:
        lb = outs_b[names_b.index(label)][1] if label in names_b else None
        if lb is None:
            continue
        oa = va[la >> 1] ^ (la & 1)
        ob = vb[lb >> 1] ^ (lb & 1)
        if oa != ob:
            return True
    # positional pairing fallback
    for i, (label, la) in enumerate(outs_a):
        lb = outs_b[i][1]
        if (va[la >> 1] ^ (la & 1)) != (vb[lb >> 1] ^ (lb & 1)):
            return True
    return False


def cec(a: Aig, b: Aig, limits: Optional[CecLimits] = None) -> CecResult:
    """Complete combinational equivalence check.

    Exhaustive bit-parallel simulation when the input count is small enough,
    otherwise random simulation to hunt counterexamples followed by a complete
    CNF search on the miter.
    """
    limits = limits or CecLimits()
    miter = build_miter(a, b)
    g = miter.aig
    out = g.pos[0]
    if out == 0:
        return CecResult("equivalent")
    n = len(miter.input_names)
    if out == 1:
        ce = _assignment_from_bit(miter.input_names, 0)
        return CecResult("not_equivalent", ce)
    if n <= limits.exhaustive_threshold:
        width = 1 << n
        pats = leaf_patterns(n)
        words = {g.pis[i]: pats[i] for i in range(n)}
        res = g.simulate(words, width=width)[0]
        if res == 0:
            return CecResult("equivalent")
        bit = (res & -res).bit_length() - 1
        ce = _assignment_from_bit(miter.input_names, bit)
        assert _validate_ce(a, b, miter, ce)
        return CecResult("not_equivalent", ce)
    # random simulation
    rng = random.Random(limits.seed)
    width = 64 * limits.sim_words
    words = {g.pis[i]: rng.getrandbits(width) for i in range(n)}
    res = g.simulate(words, width=width)[0]
    if res != 0:
        bit = (res & -res).bit_length() - 1
        ce = {miter.input_names[i]: (words[g.pis[i]] >> bit) & 1 for i in range(n)}
        assert _validate_ce(a, b, miter, ce)
        return CecResult("not_equivalent", ce)
    # complete CNF search
    f, var = tseitin(g, out)
    res = sat_solve(f, max_conflicts=limits.max_conflicts)
    if res.status == "unsat":
        return CecResult("equivalent")
    if res.status == "unknown":
        return CecResult("unknown")
    model = res.model
    ce = {}
    for i, pi in enumerate(g.pis):
        v = var.get(pi)
        ce[miter.input_names[i]] = 1 if (v is not None and model.get(v, False)) else 0
    assert _validate_ce(a, b, miter, ce)
    return CecResult("not_equivalent", ce)


@dataclass
class SeqResult:
    verdict: str  # "equivalent_to_depth" | "not_equivalent"
    depth: int
    trace: Optional[list] = None  # per-step input assignments up to the mismatch


def bounded_seq_equiv(a: Aig, b: Aig, depth: int = 16, vectors: int = 1000, seed: int = 1) -> SeqResult:
    """Compare PO streams of two sequential networks from their latch inits.

    Random input sequences always run; when both machines are small enough an
    exhaustive joint-state/input exploration to `depth` runs as well.
    """
    names_a = [a.node_name(n) for n in a.pis]
    names_b = [b.node_name(n) for n in b.pis]
    order = _match_order(names_a, names_b, "input")
    if len(a.pos) != len(b.pos):
        raise InterfaceMismatch(f"output counts differ: {len(a.pos)} vs {len(b.pos)}")
    pis_b = [b.pis[i] for i in order]
    order_a = a.topo_order()
    order_b = b.topo_order()

    def step(g, state_words, pi_words, order_cache):
        words = dict(pi_words)
        words.update(state_words)
        vals = g.simulate_nodes(words, width, order=order_cache)
        return vals

    # ---- random phase
    width = max(vectors, 1)
    mask = (1 << width) - 1
    rng = random.Random(seed)
    state_a = {n: mask if a.latch_init(n) else 0 for n in a.latches}
    state_b = {n: mask if b.latch_init(n) else 0 for n in b.latches}
    inputs_trace = []
    for t in range(depth):
        step_words_a = {}
        step_words_b = {}
        step_inputs = {}
        for i, pa in enumerate(a.pis):
            w = rng.getrandbits(width)
            step_words_a[pa] = w
            step_words_b[pis_b[i]] = w
            step_inputs[i] = w
        inputs_trace.append(step_inputs)
        va = step(a, state_a, step_words_a, order_a)
        vb = step(b, state_b, step_words_b, order_b)
        for k, la in enumerate(a.pos):
            lb = b.pos[k]
            oa = va[la >> 1] ^ (mask if la & 1 else 0)
            ob = vb[lb >> 1] ^ (mask if lb & 1 else 0)
            diff = oa ^ ob
            if diff:
                bit = (diff & -diff).bit_length() - 1
                trace = [
                    {i: (st[i] >> bit) & 1 for i in st} for st in inputs_trace
                ]
                return SeqResult("not_equivalent", t, trace)
        state_a = {n: va[a.latch_next(n) >> 1] ^ (mask if a.latch_next(n) & 1 else 0) for n in a.latches}
        state_b = {n: vb[b.latch_next(n) >> 1] ^ (mask if b.latch_next(n) & 1 else 0) for n in b.latches}

    # ---- exhaustive phase
    n_pi = len(a.pis)
    if n_pi <= 10 and len(a.latches) <= 10 and len(b.latches) <= 10:
        res = _exhaustive_joint(a, b, pis_b, depth)
        if res is not None:
            return res
    return SeqResult("equivalent_to_depth", depth)


def _exhaustive_joint(a: Aig, b: Aig, pis_b: list[int], depth: int) -> Optional[SeqResult]:
    n_pi = len(a.pis)
    width = 1 << n_pi
    mask = (1 << width) - 1
    pats = leaf_patterns(n_pi) if n_pi else ()
    order_a = a.topo_order()
    order_b = b.topo_order()
    init = (
        tuple(a.latch_init(n) for n in a.latches),
        tuple(b.latch_init(n) for n in b.latches),
    )
    frontier = {init: None}  # joint state -> (parent state, input index)
    visited = {init}
    parents = {init: None}
    for t in range(depth):
        nxt = {}
        for state in sorted(frontier):
            sa, sb = state
            words = {pa: pats[i] for i, pa in enumerate(a.pis)}
            words.update({n: mask if sa[i] else 0 for i, n in enumerate(a.latches)})
            va = a.simulate_nodes(words, width, order=order_a)
            words_b = {pis_b[i]: pats[i] for i in range(n_pi)}
            words_b.update({n: mask if sb[i] else 0 for i, n in enumerate(b.latches)})
            vb = b.simulate_nodes(words_b, width, order=order_b)
            for k, la in enumerate(a.pos):
                lb = b.pos[k]
                oa = va[la >> 1] ^ (mask if la & 1 else 0)
                ob = vb[lb >> 1] ^ (mask if lb & 1 else 0)
                diff = oa ^ ob
                if diff:
                    bit = (diff & -diff).bit_length() - 1
                    trace = _rebuild_trace(parents, state, n_pi) + [
                        {i: (bit >> i) & 1 for i in range(n_pi)}
                    ]
                    return SeqResult("not_equivalent", t, trace)
            na_words = [va[a.latch_next(n) >> 1] ^ (mask if a.latch_next(n) & 1 else 0) for n in a.latches]
            nb_words = [vb[b.latch_next(n) >> 1] ^ (mask if b.latch_next(n) & 1 else 0) for n in b.latches]
            for inp in range(width):
                ns = (
                    tuple((w >> inp) & 1 for w in na_words),
                    tuple((w >> inp) & 1 for w in nb_words),
                )
                if ns not in visited:
                    visited.add(ns)
                    nxt[ns] = None
                    parents[ns] = (state, inp)
        frontier = nxt
        if not frontier:
            break
    return None


def _rebuild_trace(parents, state, n_pi: int) -> list:
    steps = []
    cur = state
    while parents.get(cur) is not None:
        prev, inp = parents[cur]
        steps.append(inp)
        cur = prev
    steps.reverse()
    return [{i: (inp >> i) & 1 for i in range(n_pi)} for inp in steps]
