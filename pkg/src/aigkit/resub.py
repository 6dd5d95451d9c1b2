"""Resubstitution: re-express a node with divisors already in the network.

A window is built from one cut of the node (up to 8 leaves) plus the node's
cone over it; divisors are live nodes outside that cone whose support lies
inside the cut, gathered by forward closure from the leaves in discovery
order and capped.  Substitutions are validated exhaustively over all leaf
assignments before being priced.
"""

from .aig import Aig
from .cuts import leaf_patterns
from .refactor import reconvergence_cut
from .transforms import CODE_RESUB, Candidate, PassContext, price_candidate

RESUB_CUT_SIZE = 8
MAX_DIVISORS = 64
MAX_WINDOW = 512


def _cone_over_cut(g: Aig, v: int, leaves: set[int]) -> set[int]:
    cone = set()
    stack = [v]
    while stack:
        n = stack.pop()
        if n in cone or n in leaves:
            continue
        cone.add(n)
        stack.append(g.fanin0(n) >> 1)
        stack.append(g.fanin1(n) >> 1)
    return cone


def collect_divisors(g: Aig, v: int, cut: tuple[int, ...]):
    """Divisor node list (proximity order) and their functions over the cut.

    Returns (divisors, values, v_value, mask).  Values are 2^|cut|-bit words.
    """
    leaves = set(cut)
    cone = _cone_over_cut(g, v, leaves)
    n = len(cut)
    pats = leaf_patterns(n)
    mask = (1 << (1 << n)) - 1
    vals = {leaf: pats[i] for i, leaf in enumerate(cut)}
    # evaluate the cone for v's target function
    order = []
    stack = [(v, False)]
    seen = set(leaves)
    while stack:
        m, expanded = stack.pop()
        if expanded:
            order.append(m)
            continue
        if m in seen:
            continue
        seen.add(m)
        stack.append((m, True))
        stack.append((g.fanin1(m) >> 1, False))
        stack.append((g.fanin0(m) >> 1, False))
    for m in order:
        a, b = g.fanin0(m), g.fanin1(m)
        va = vals[a >> 1] ^ (mask if a & 1 else 0)
        vb = vals[b >> 1] ^ (mask if b & 1 else 0)
        vals[m] = va & vb
    v_value = vals[v]
    # forward closure from the leaves: nodes whose support is inside the cut
    divisors = [l for l in cut]
    qualified = set(leaves)
    frontier = list(cut)
    examined = 0
    while frontier and len(divisors) < MAX_DIVISORS and examined < MAX_WINDOW:
        next_frontier = []
        for src in frontier:
            for c in g.fanouts(src):
                if len(divisors) >= MAX_DIVISORS or examined >= MAX_WINDOW:
                    break
                if c in qualified or c in cone or not g.is_and(c):
                    continue
                examined += 1
                f0 = g.fanin0(c) >> 1
                f1 = g.fanin1(c) >> 1
                if f0 in qualified and f1 in qualified:
                    qualified.add(c)
                    a, b = g.fanin0(c), g.fanin1(c)
                    va = vals[f0] ^ (mask if a & 1 else 0)
                    vb = vals[f1] ^ (mask if b & 1 else 0)
                    vals[c] = va & vb
                    divisors.append(c)
                    next_frontier.append(c)
        frontier = next_frontier
    return divisors, vals, v_value, mask


def resub_check(g: Aig, v: int, ctx: PassContext | None = None,
                max_leaves: int = RESUB_CUT_SIZE):
    """First validated substitution with positive gain: v == +/-d, then
    v == AND(+/-d1, +/-d2)."""
    if not g.is_and(v):
        return None
    cut = reconvergence_cut(g, v, max_leaves)
    divisors, vals, target, mask = collect_divisors(g, v, cut)

    def candidate(recipe, root_spec, leaves, gain):
        return Candidate(
            kind=CODE_RESUB,
            node=v,
            version=g.version,
            est_gain=gain,
            recipe=recipe,
            root_spec=root_spec,
            leaves=leaves,
        )

    # 0-resub: v equivalent to a divisor or its complement
    for d in divisors:
        if d == v:
            continue
        if vals[d] == target or vals[d] == target ^ mask:
            compl = 0 if vals[d] == target else 1
            priced = price_candidate(g, v, [], ("lit", 2 * d, compl), ())
            if priced is None:
                continue
            gain, _, _ = priced
            if gain > 0:
                return candidate([], ("lit", 2 * d, compl), (), gain)
    # 1-resub: v equivalent to an AND of two (possibly complemented) divisors
    for i in range(len(divisors)):
        di = divisors[i]
        if di == v:
            continue
        for j in range(i + 1, len(divisors)):
            dj = divisors[j]
            if dj == v:
                continue
            for ci in (0, 1):
                vi = vals[di] ^ (mask if ci else 0)
                for cj in (0, 1):
                    vj = vals[dj] ^ (mask if cj else 0)
                    if vi & vj == target:
                        recipe = [(("lit", 2 * di, ci), ("lit", 2 * dj, cj))]
                        priced = price_candidate(g, v, recipe, ("op", 0, 0), ())
                        if priced is None:
                            continue
                        gain, _, _ = priced
                        if gain > 0:
                            return candidate(recipe, ("op", 0, 0), (), gain)
    return None
