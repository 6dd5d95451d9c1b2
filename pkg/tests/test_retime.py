import pytest

from aigkit.aig import Aig, lit_not
from aigkit.aiger import write_aiger
from aigkit.cec import bounded_seq_equiv
from aigkit.errors import NoLatches
from aigkit.retime import RetimeConfig, feasible_moves, retime_augment

from netgen import random_aig


def forward_fixture():
    """AND fed by two latches (init 0): forward move drops one latch."""
    g = Aig("fwd")
    x, y = g.add_pi("x"), g.add_pi("y")
    la = g.add_latch(init=0, name="la")
    lb = g.add_latch(init=0, name="lb")
    g.set_latch_next(la >> 1, x)
    g.set_latch_next(lb >> 1, y)
    n = g.strash_and(la, lb)
    g.add_po(n, "out")
    return g


def backward_fixture():
    """AND feeding only a latch (init 0): backward move splits the latch."""
    g = Aig("bwd")
    x, y = g.add_pi("x"), g.add_pi("y")
    m = g.strash_and(x, y)
    lat = g.add_latch(init=0, name="s")
    g.set_latch_next(lat >> 1, m)
    g.add_po(lat, "out")
    return g


def mixed_fixture(seed=0):
    import random as _r

    rng = _r.Random(seed)
    g = Aig(f"mix{seed}")
    pis = [g.add_pi(f"x{i}") for i in range(4)]
    la = g.add_latch(init=0, name="la")
    lb = g.add_latch(init=0, name="lb")
    lc = g.add_latch(init=0, name="lc")
    g.set_latch_next(la >> 1, pis[0])
    g.set_latch_next(lb >> 1, pis[1])
    n1 = g.strash_and(la, lb)
    n2 = g.strash_and(pis[2], pis[3])
    g.set_latch_next(lc >> 1, n2)
    n3 = g.strash_and(n1, lc)
    g.add_po(n3, "out")
    return g


def test_no_latches_raises():
    g = random_aig(1, n_pis=4, n_ands=10)
    with pytest.raises(NoLatches):
        retime_augment(g, RetimeConfig(seed=0, max_moves=1))


def test_zero_moves_is_identity():
    g = mixed_fixture()
    out = retime_augment(g, RetimeConfig(seed=0, max_moves=0))
    assert write_aiger(out) == write_aiger(g)


def test_forward_move_drops_a_latch():
    g = forward_fixture()
    assert ("F", g.pos[0] >> 1) in feasible_moves(g)
    out = retime_augment(g, RetimeConfig(seed=0, max_moves=1))
    assert out.stats().latch_count == 1
    res = bounded_seq_equiv(g, out, depth=16, vectors=300)
    assert res.verdict == "equivalent_to_depth"


def test_backward_move_adds_latches():
    g = backward_fixture()
    moves = feasible_moves(g)
    assert any(kind == "B" for kind, _ in moves)
    out = retime_augment(g, RetimeConfig(seed=0, max_moves=1))
    assert out.stats().latch_count == 2
    res = bounded_seq_equiv(g, out, depth=16, vectors=300)
    assert res.verdict == "equivalent_to_depth"


def test_determinism():
    g = mixed_fixture()
    o1 = retime_augment(g, RetimeConfig(seed=5, max_moves=4))
    o2 = retime_augment(g, RetimeConfig(seed=5, max_moves=4))
    assert write_aiger(o1) == write_aiger(o2)


def test_many_random_sequences_preserve_behavior():
    for seed in range(20):
        g = mixed_fixture(seed % 3)
        out = retime_augment(g, RetimeConfig(seed=seed, max_moves=3))
        res = bounded_seq_equiv(g, out, depth=16, vectors=200, seed=seed)
        assert res.verdict == "equivalent_to_depth", f"seed {seed}"
        out.check()


def test_flipped_init_detected_by_checker():
    # the latch drives the PO, so a flipped init shows at step 0
    g = backward_fixture()
    h = g.clone()
    h._latch_init[h.latches[0]] ^= 1
    res = bounded_seq_equiv(g, h, depth=16, vectors=300)
    assert res.verdict == "not_equivalent"
    assert res.trace is not None
