"""Seeded network generators shared by the test suite.

All generators are deterministic in their arguments so expected values can be
frozen into tests.
"""

import random

from aigkit.aig import Aig, lit_not


def random_aig(seed, n_pis=6, n_ands=30, n_pos=3, p_compl=0.5, name=None):
    """Random strashed network; actual AND count may be below n_ands due to sharing."""
    rng = random.Random(seed)
    g = Aig(name or f"rand{seed}")
    lits = [g.add_pi(f"x{i}") for i in range(n_pis)]
    for _ in range(n_ands):
        a = rng.choice(lits)
        b = rng.choice(lits)
        if rng.random() < p_compl:
            a = lit_not(a)
        if rng.random() < p_compl:
            b = lit_not(b)
        lits.append(g.strash_and(a, b))
    pool = [l for l in lits if l > 1]
    for i in range(n_pos):
        l = rng.choice(pool) if pool else 0
        if rng.random() < p_compl:
            l = lit_not(l)
        g.add_po(l, f"y{i}")
    g.cleanup()
    return g


def random_sequential_aig(seed, n_pis=4, n_latches=3, n_ands=20, n_pos=2, name=None):
    rng = random.Random(seed)
    g = Aig(name or f"seq{seed}")
    pis = [g.add_pi(f"x{i}") for i in range(n_pis)]
    lats = [g.add_latch(init=0, name=f"s{i}") for i in range(n_latches)]
    lits = pis + lats
    for _ in range(n_ands):
        a, b = rng.choice(lits), rng.choice(lits)
        if rng.random() < 0.5:
            a = lit_not(a)
        if rng.random() < 0.5:
            b = lit_not(b)
        lits.append(g.strash_and(a, b))
    pool = [l for l in lits if l > 1]
    for i in range(n_pos):
        g.add_po(rng.choice(pool), f"y{i}")
    for i, l in enumerate(lats):
        g.set_latch_next(l >> 1, rng.choice(pool))
    g.cleanup()
    return g


def xor_lit(g, a, b):
    """XOR as AND of two NANDs; shares the AND(a,b) node and keeps the root positive."""
    n1 = g.strash_and(lit_not(a), lit_not(b))
    n2 = g.strash_and(a, b)
    return g.strash_and(lit_not(n1), lit_not(n2))


def mux_lit(g, s, t, e):
    """s ? t : e"""
    u = g.strash_and(s, t)
    v = g.strash_and(lit_not(s), e)
    return lit_not(g.strash_and(lit_not(u), lit_not(v)))


def layered_bench(seed, n_pis, n_layers, layer_width, n_pos, name):
    """Deterministic mid-size benchmark with optimization slack.

    Mixes ANDs, ORs, XORs and MUXes and duplicates some local structure, so
    rewrite/refactor/resub all find work without the network collapsing.
    """
    rng = random.Random(seed)
    g = Aig(name)
    frontier = [g.add_pi(f"x{i}") for i in range(n_pis)]
    all_lits = list(frontier)
    for _ in range(n_layers):
        nxt = []
        for _ in range(layer_width):
            op = rng.randrange(6)
            a, b = rng.choice(frontier), rng.choice(all_lits)
            if rng.random() < 0.4:
                a = lit_not(a)
            if rng.random() < 0.4:
                b = lit_not(b)
            if op == 0:
                l = g.strash_and(a, b)
            elif op == 1:
                l = lit_not(g.strash_and(lit_not(a), lit_not(b)))  # OR
            elif op == 2:
                l = xor_lit(g, a, b)
            elif op == 3:
                c = rng.choice(all_lits)
                l = mux_lit(g, a, b, c)
            elif op == 4:
                # redundant chain a & (b & (a & c)): refactoring fodder
                c = rng.choice(all_lits)
                l = g.strash_and(a, g.strash_and(b, g.strash_and(a, c)))
            else:
                # same function, alternative association: resub fodder
                c = rng.choice(all_lits)
                g.strash_and(g.strash_and(a, b), c)
                l = g.strash_and(a, g.strash_and(b, c))
            nxt.append(l)
        all_lits.extend(nxt)
        frontier = nxt
    # outputs drawn from the last layer keep deep cones live
    pool = [l for l in frontier if l > 1] or [l for l in all_lits if l > 1]
    for i in range(n_pos):
        g.add_po(pool[rng.randrange(len(pool))], f"y{i}")
    g.cleanup()
    return g


# acceptance benchmark suite: PI counts stay <= 16 so equivalence checking can
# use the complete exhaustive path; live AND counts bracket the classic
# c432..i10 size range (roughly 160, 300, 560, 1800, 2650)
BENCH_SPECS = {
    "bench_a": dict(seed=101, n_pis=14, n_layers=9, layer_width=14, n_pos=10),
    "bench_b": dict(seed=202, n_pis=15, n_layers=11, layer_width=20, n_pos=14),
    "bench_c": dict(seed=303, n_pis=16, n_layers=14, layer_width=30, n_pos=20),
    "bench_d": dict(seed=404, n_pis=16, n_layers=18, layer_width=68, n_pos=44),
    "bench_e": dict(seed=505, n_pis=16, n_layers=22, layer_width=96, n_pos=60),
}


def bench(name):
    spec = BENCH_SPECS[name]
    return layered_bench(name=name, **spec)
