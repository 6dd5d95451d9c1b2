"""Sequential augmentation by random atomic retiming moves.

A backward move pushes latches from a gate's output onto its fanins; a
forward move pulls latches on both fanins to the gate's output.  Every move
preserves sequential behavior from the declared initial state, which the
test harness confirms with bounded product-machine exploration.
"""

from dataclasses import dataclass

from .aig import Aig, lit_node
from .errors import NoLatches
from .rng import SplitMix64


@dataclass
class RetimeConfig:
    seed: int = 0
    max_moves: int = 10


def _backward_feasible(g: Aig, n: int) -> bool:
    """Gate output feeds only latches, all with next == +n and init 0; the
    gate drives no PO directly."""
    if not g.is_and(n):
        return False
    if g._n2pos.get(n):
        return False
    outs = g.fanouts(n)
    if not outs:
        return False
    for c in outs:
        if not g.is_latch(c):
            return False
        if g.latch_next(c) != 2 * n or g.latch_init(c) != 0:
            return False
    return True


def _forward_feasible(g: Aig, n: int) -> bool:
    """Both fanins are latch outputs with equal init values."""
    if not g.is_and(n):
        return False
    a = lit_node(g.fanin0(n))
    b = lit_node(g.fanin1(n))
    if not (g.is_latch(a) and g.is_latch(b)):
        return False
    return g.latch_init(a) == g.latch_init(b)


def _apply_backward(g: Aig, n: int) -> None:
    f0, f1 = g.fanin0(n), g.fanin1(n)
    out_latches = [c for c in g.fanouts(n) if g.is_latch(c)]
    la = g.add_latch(init=0)
    lb = g.add_latch(init=0)
    g.set_latch_next(la >> 1, f0)
    g.set_latch_next(lb >> 1, f1)
    n2 = g.strash_and(la, lb)
    for lat in out_latches:
        g.replace(lat, n2)
        g.remove_latch(lat)


def _apply_forward(g: Aig, n: int) -> None:
    f0, f1 = g.fanin0(n), g.fanin1(n)
    a, b = lit_node(f0), lit_node(f1)
    nxt = g.strash_and(g.latch_next(a) ^ (f0 & 1), g.latch_next(b) ^ (f1 & 1))
    init = ((g.latch_init(a) ^ (f0 & 1)) & (g.latch_init(b) ^ (f1 & 1)))
    lat = g.add_latch(init=init)
    g.set_latch_next(lat >> 1, nxt)
    g.replace(n, lat)
    for src in (a, b):
        if g.is_latch(src) and g.ref_count(src) == 0:
            g.remove_latch(src)


def feasible_moves(g: Aig) -> list[tuple[str, int]]:
    moves = []
    for n in g.and_nodes():
        if g.is_dead(n):
            continue
        if _backward_feasible(g, n):
            moves.append(("B", n))
        if _forward_feasible(g, n):
            moves.append(("F", n))
    return sorted(moves)


def retime_augment(aig: Aig, cfg: RetimeConfig) -> Aig:
    """Up to max_moves random feasible moves, drawn with SplitMix64(seed)."""
    if not aig.latches:
        raise NoLatches("retiming needs at least one latch")
    g = aig.clone()
    g.cleanup()
    rng = SplitMix64(cfg.seed)
    for _ in range(cfg.max_moves):
        moves = feasible_moves(g)
        if not moves:
            break
        kind, n = moves[rng.below(len(moves))]
        if kind == "B":
            _apply_backward(g, n)
        else:
            _apply_forward(g, n)
    return g
