"""k-feasible cut enumeration and cut-local truth tables."""

from functools import lru_cache

from .aig import AND, Aig, lit_node
from .errors import AigError

DEFAULT_MAX_CUTS = 8


def _merge_cut_sets(cuts0, cuts1, k: int):
    """All unions of one cut from each side with at most k leaves."""
    out = set()
    for c0 in cuts0:
        for c1 in cuts1:
            u = frozenset(c0) | frozenset(c1)
            if len(u) <= k:
                out.add(tuple(sorted(u)))
    return out


def _filter_dominated(cuts):
    """Drop any cut that is a superset of another cut in the set."""
    by_size = sorted(cuts, key=lambda c: (len(c), c))
    kept: list[tuple[int, ...]] = []
    kept_sets: list[frozenset] = []
    for c in by_size:
        cs = frozenset(c)
        if any(s <= cs for s in kept_sets):
            continue
        kept.append(c)
        kept_sets.append(cs)
    return kept


def node_cuts(aig: Aig, v: int, k: int, max_cuts: int, memo: dict) -> list[tuple[int, ...]]:
    """Cut set of one node, computing (and memoizing) its fanin cone on demand.

    Cuts are sorted-leaf tuples; the trivial cut (v,) comes first, then by
    (leaf count, lexicographic leaves).  `max_cuts` truncates after the
    trivial cut; pass a large value to disable truncation.
    """
    cached = memo.get(v)
    if cached is not None:
        return cached
    # collect the uncomputed part of the fanin cone, children first
    stack = [(v, False)]
    post: list[int] = []
    seen = set()
    while stack:
        n, expanded = stack.pop()
        if expanded:
            post.append(n)
            continue
        if n in seen or n in memo:
            continue
        seen.add(n)
        stack.append((n, True))
        if aig.kind(n) == AND:
            stack.append((lit_node(aig.fanin1(n)), False))
            stack.append((lit_node(aig.fanin0(n)), False))
    for n in post:
        if n in memo:
            continue
        if aig.kind(n) != AND:
            memo[n] = [(n,)]
            continue
        c0 = memo[lit_node(aig.fanin0(n))]
        c1 = memo[lit_node(aig.fanin1(n))]
        good = _filter_dominated(_merge_cut_sets(c0, c1, k))
        memo[n] = [(n,)] + sorted(good, key=lambda c: (len(c), c))[: max(max_cuts - 1, 0)]
    return memo[v]


def enumerate_cuts(aig: Aig, k: int, max_cuts_per_node: int = DEFAULT_MAX_CUTS) -> dict[int, list[tuple[int, ...]]]:
    """Cut sets for every live node, bottom-up."""
    if not 2 <= k <= 6:
        raise AigError(f"cut width k must be in [2, 6], got {k}")
    memo: dict[int, list[tuple[int, ...]]] = {}
    for n in aig.topo_order():
        node_cuts(aig, n, k, max_cuts_per_node, memo)
    return memo


def cut_truth_table(aig: Aig, root: int, leaves) -> tuple[int, int]:
    """Truth table of `root` over the cut `leaves` (ascending node ids).

    Returns (bits, n) where bit i is the root's value when the leaves take
    the binary expansion of i (leaves[0] is the least significant variable).
    """
    leaves = tuple(leaves)
    n = len(leaves)
    if n > 6:
        raise AigError(f"cut truth tables support at most 6 leaves, got {n}")
    return window_function(aig, root, leaves), n


@lru_cache(maxsize=32)
def leaf_patterns(n: int) -> tuple[int, ...]:
    """Exhaustive input patterns for n variables as 2^n-bit words."""
    size = 1 << n
    out = []
    for i in range(n):
        block = (1 << (1 << i)) - 1  # run of 2^i ones
        period = 1 << (i + 1)
        word = 0
        for base in range(1 << i, size, period):
            word |= block << base
        out.append(word)
    return tuple(out)


def window_function(aig: Aig, root: int, leaves: tuple[int, ...]) -> int:
    """Evaluate `root` over all assignments to `leaves` by local simulation."""
    n = len(leaves)
    pats = leaf_patterns(n)
    vals = {leaf: pats[i] for i, leaf in enumerate(leaves)}
    vals[0] = 0
    mask = (1 << (1 << n)) - 1
    order: list[int] = []
    stack = [(root, False)]
    seen = set(leaves) | {0}
    while stack:
        m, expanded = stack.pop()
        if expanded:
            order.append(m)
            continue
        if m in seen:
            continue
        seen.add(m)
        if aig.kind(m) != AND:
            raise AigError(f"cut does not cover node {m}")
        stack.append((m, True))
        stack.append((lit_node(aig.fanin1(m)), False))
        stack.append((lit_node(aig.fanin0(m)), False))
    for m in order:
        a, b = aig.fanin0(m), aig.fanin1(m)
        va = vals[a >> 1] ^ (mask if a & 1 else 0)
        vb = vals[b >> 1] ^ (mask if b & 1 else 0)
        vals[m] = va & vb
    return vals[root]
