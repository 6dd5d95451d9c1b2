"""Depth-optimal k-LUT covering by dynamic programming over cut sets."""

from typing import NamedTuple

from .aig import Aig, lit_node
from .cuts import enumerate_cuts
from .errors import AigError


class LutMapping(NamedTuple):
    lut_count: int
    lut_depth: int
    cover: dict  # root node -> chosen cut (tuple of leaves)


def klut_map(g: Aig, k: int, max_cuts: int = 64) -> LutMapping:
    """Cover all PO/PPO cones with k-input LUTs, minimizing depth.

    arrival(v) = min over v's non-trivial cuts of 1 + max leaf arrival; ties
    broken toward fewer leaves, then lexicographically smaller leaf sets.
    Inverters (complemented edges) are free.
    """
    if not 2 <= k <= 6:
        raise AigError(f"LUT width must be in [2, 6], got {k}")
    cuts = enumerate_cuts(g, k, max_cuts_per_node=max_cuts)
    arrival: dict[int, int] = {}
    chosen: dict[int, tuple] = {}
    for n in g.topo_order():
        if not g.is_and(n):
            arrival[n] = 0
            continue
        best = None
        best_key = None
        for cut in cuts[n]:
            if cut == (n,):
                continue
            depth = 1 + max(arrival[leaf] for leaf in cut)
            key = (depth, len(cut), cut)
            if best_key is None or key < best_key:
                best_key = key
                best = cut
        arrival[n] = best_key[0]
        chosen[n] = best
    roots = [lit_node(l) for l in g.pos] + [lit_node(g.latch_next(n)) for n in g.latches]
    cover: dict[int, tuple] = {}
    stack = [r for r in roots if g.is_and(r)]
    while stack:
        n = stack.pop()
        if n in cover:
            continue
        cover[n] = chosen[n]
        for leaf in chosen[n]:
            if g.is_and(leaf) and leaf not in cover:
                stack.append(leaf)
    depth = max((arrival[r] for r in roots), default=0)
    return LutMapping(lut_count=len(cover), lut_depth=depth, cover=cover)
