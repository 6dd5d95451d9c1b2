import pytest

from aigkit.aig import Aig, lit_not
from aigkit.blif import read_blif, write_blif
from aigkit.cec import cec
from aigkit.cells import read_cell_library
from aigkit.errors import (
    DuplicateCell,
    MultipleDrivers,
    ParseError,
    UndrivenNet,
    UnknownCell,
    UnsupportedDirective,
    UnsupportedFeature,
)
from aigkit.vlog import mapped_to_aig, read_mapped_verilog, simulate_netlist
from aigkit.wordlevel import bit_blast, mult2b, parse_word_module

from fixtures import CELL_LIB_TEXT, MULTI2_VERILOG
from netgen import random_aig, random_sequential_aig


# ---------------------------------------------------------------- blif

def test_blif_and_gate():
    g = read_blif(".model t\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end\n")
    assert g.stats() == (2, 1, 0, 1, 1)
    assert g.simulate([0b0101, 0b0011], width=4) == [0b0001]


def test_blif_inverter_cover():
    g = read_blif(".model t\n.inputs a\n.outputs y\n.names a y\n0 1\n.end\n")
    assert g.and_count() == 0
    assert g.pos[0] & 1 == 1
    assert g.simulate([0b01], width=2) == [0b10]


def test_blif_offset_cover():
    # off-set rows: y = NOT(a | b)
    g = read_blif(".model t\n.inputs a b\n.outputs y\n.names a b y\n1- 0\n-1 0\n.end\n")
    assert g.simulate([0b0101, 0b0011], width=4) == [0b1000]


def test_blif_constants():
    g = read_blif(".model t\n.inputs a\n.outputs one zero\n.names one\n1\n.names zero\n.end\n")
    assert g.simulate([0b1], width=1) == [1, 0]


def test_blif_unsupported_directive():
    with pytest.raises(UnsupportedDirective):
        read_blif(".model t\n.inputs a\n.outputs y\n.subckt foo a y\n.end\n")


def test_blif_mixed_cover_rejected():
    with pytest.raises(ParseError):
        read_blif(".model t\n.inputs a b\n.outputs y\n.names a b y\n11 1\n00 0\n.end\n")


def test_blif_roundtrip_random():
    for seed in range(15):
        g = random_aig(seed, n_pis=5, n_ands=30, n_pos=3)
        h = read_blif(write_blif(g))
        assert cec(g, h).equivalent
        s, t = g.stats(), h.stats()
        assert (s.pi_count, s.po_count, s.latch_count) == (t.pi_count, t.po_count, t.latch_count)


def test_blif_roundtrip_sequential():
    for seed in range(6):
        g = random_sequential_aig(seed)
        h = read_blif(write_blif(g))
        assert cec(g, h).equivalent
        assert h.stats().latch_count == g.stats().latch_count


def test_blif_latch_init_roundtrip():
    g = Aig("t")
    a = g.add_pi("a")
    lat = g.add_latch(init=1, name="s")
    g.set_latch_next(lat >> 1, a)
    g.add_po(lat, "y")
    h = read_blif(write_blif(g))
    assert h.latch_init(h.latches[0]) == 1


def test_blif_multiplier_equivalent_to_bitblast():
    g = mult2b()
    h = read_blif(write_blif(g))
    assert cec(g, h).equivalent


# ---------------------------------------------------------------- cell library

def test_read_cell_library_basics():
    lib = read_cell_library("cell INVX1 inputs A output Y function (NOT A)\n")
    assert len(lib) == 1
    assert lib.get("INVX1").input_pins == ("A",)


def test_nor2_truth_table():
    lib = read_cell_library("cell NOR2 inputs A B output Y function (NOT (OR A B))\n")
    assert lib.get("NOR2").truth_table() == 0b0001


def test_duplicate_cell_rejected():
    text = "cell INVX1 inputs A output Y function (NOT A)\ncell INVX1 inputs A output Y function A\n"
    with pytest.raises(DuplicateCell):
        read_cell_library(text)


def test_multi_output_cell_rejected():
    with pytest.raises(UnsupportedFeature):
        read_cell_library("cell FA inputs A B output S C function (XOR A B)\n")


def test_undeclared_pin_rejected():
    with pytest.raises(ParseError):
        read_cell_library("cell BAD inputs A output Y function (AND A B)\n")


def test_fixture_library_loads():
    lib = read_cell_library(CELL_LIB_TEXT)
    assert len(lib) == 10


# ---------------------------------------------------------------- mapped verilog

def lib():
    return read_cell_library(CELL_LIB_TEXT)


def test_multi2_loads():
    net = read_mapped_verilog(MULTI2_VERILOG, lib())
    assert len(net.instances) == 10
    assert len(net.wires) == 6
    assert net.pis == ["a0", "a1", "b0", "b1"]
    assert net.pos == ["m0", "m1", "m2", "m3"]


def test_multiple_drivers_rejected():
    text = """
module t (a, y);
  input a;
  output y;
  INVx1_ASAP7_75t_L g0(.A(a), .Y(y));
  INVx1_ASAP7_75t_L g1(.A(a), .Y(y));
endmodule
"""
    with pytest.raises(MultipleDrivers):
        read_mapped_verilog(text, lib())


def test_unknown_cell_rejected():
    text = "module t (a, y);\ninput a;\noutput y;\nNOPE g0(.A(a), .Y(y));\nendmodule\n"
    with pytest.raises(UnknownCell):
        read_mapped_verilog(text, lib())


def test_undriven_net_rejected():
    text = """
module t (a, y);
  input a;
  output y;
  wire w;
  NAND2xp33_ASAP7_75t_L g0(.A(a), .B(w), .Y(y));
endmodule
"""
    with pytest.raises(UndrivenNet):
        read_mapped_verilog(text, lib())


def test_bus_declaration_rejected():
    text = "module t (a, y);\ninput [1:0] a;\noutput y;\nendmodule\n"
    with pytest.raises(UnsupportedFeature):
        read_mapped_verilog(text, lib())


def test_mapped_to_aig_inverter():
    text = "module t (a, y);\ninput a;\noutput y;\nINVx1_ASAP7_75t_L g0(.A(a), .Y(y));\nendmodule\n"
    g = mapped_to_aig(read_mapped_verilog(text, lib()), lib())
    assert g.and_count() == 0
    assert g.pos[0] & 1 == 1


def test_mapped_to_aig_nor2():
    text = "module t (a, b, y);\ninput a, b;\noutput y;\nNOR2xp33_ASAP7_75t_L g0(.A(a), .B(b), .Y(y));\nendmodule\n"
    g = mapped_to_aig(read_mapped_verilog(text, lib()), lib())
    assert g.simulate([0b0101, 0b0011], width=4) == [0b1000]


def test_multi2_is_a_multiplier():
    l = lib()
    net = read_mapped_verilog(MULTI2_VERILOG, l)
    g = mapped_to_aig(net, l)
    for a in range(4):
        for b in range(4):
            words = {}
            for n in g.pis:
                name = g.node_name(n)
                src = a if name[0] == "a" else b
                words[n] = (src >> int(name[1])) & 1
            out = g.simulate(words, width=1)
            z = sum(v << i for i, v in enumerate(out))
            assert z == a * b, (a, b, z)


def test_mapped_aig_commutes_with_netlist_simulation():
    l = lib()
    net = read_mapped_verilog(MULTI2_VERILOG, l)
    g = mapped_to_aig(net, l)
    width = 16
    from aigkit.cuts import leaf_patterns

    pats = leaf_patterns(4)
    net_words = {name: pats[i] for i, name in enumerate(net.pis)}
    vals = simulate_netlist(net, l, net_words, width)
    aig_words = {n: net_words[g.node_name(n)] for n in g.pis}
    got = g.simulate(aig_words, width=width)
    for i, name in enumerate(net.pos):
        assert got[i] == vals[name]


# ---------------------------------------------------------------- word level

def test_mult2b_matches_integer_multiplication():
    g = mult2b()
    # the shift-add construction lands exactly on the reference size
    assert g.stats() == (4, 4, 0, 10, 4)
    assert g.stats().and_count <= 13 and g.stats().level <= 6
    from aigkit.cuts import leaf_patterns

    pats = leaf_patterns(4)
    words = {n: pats[i] for i, n in enumerate(g.pis)}  # a0 a1 b0 b1
    out = g.simulate(words, width=16)
    for m in range(16):
        a = m & 3
        b = (m >> 2) & 3
        z = sum(((out[i] >> m) & 1) << i for i in range(4))
        assert z == a * b


def test_word_and():
    mod = parse_word_module("module t(a,b,z);\ninput [1:0] a,b;\noutput [1:0] z;\nassign z = a & b;\nendmodule\n")
    g = bit_blast(mod)
    assert g.and_count() == 2


def test_word_add_matches_oracle():
    mod = parse_word_module("module t(a,b,z);\ninput [1:0] a,b;\noutput [2:0] z;\nassign z = a + b;\nendmodule\n")
    g = bit_blast(mod)
    from aigkit.cuts import leaf_patterns

    pats = leaf_patterns(4)
    words = {n: pats[i] for i, n in enumerate(g.pis)}
    out = g.simulate(words, width=16)
    for m in range(16):
        a = m & 3
        b = (m >> 2) & 3
        z = sum(((out[i] >> m) & 1) << i for i in range(3))
        assert z == (a + b) % 8


def test_word_sub_matches_oracle():
    mod = parse_word_module("module t(a,b,z);\ninput [2:0] a,b;\noutput [2:0] z;\nassign z = a - b;\nendmodule\n")
    g = bit_blast(mod)
    from aigkit.cuts import leaf_patterns

    pats = leaf_patterns(6)
    words = {n: pats[i] for i, n in enumerate(g.pis)}
    out = g.simulate(words, width=64)
    for m in range(64):
        a = m & 7
        b = (m >> 3) & 7
        z = sum(((out[i] >> m) & 1) << i for i in range(3))
        assert z == (a - b) % 8


def test_word_xor_or_not():
    mod = parse_word_module(
        "module t(a,b,z);\ninput [1:0] a,b;\noutput [1:0] z;\nassign z = ~(a ^ b) | (a & b);\nendmodule\n"
    )
    g = bit_blast(mod)
    from aigkit.cuts import leaf_patterns

    pats = leaf_patterns(4)
    words = {n: pats[i] for i, n in enumerate(g.pis)}
    out = g.simulate(words, width=16)
    for m in range(16):
        a = m & 3
        b = (m >> 2) & 3
        want = ((~(a ^ b)) | (a & b)) & 3
        z = sum(((out[i] >> m) & 1) << i for i in range(2))
        assert z == want


def test_word_constant_rejected():
    from aigkit.errors import UnsupportedOperator

    with pytest.raises((UnsupportedOperator, ParseError)):
        parse_word_module("module t(a,z);\ninput [1:0] a;\noutput [1:0] z;\nassign z = a + 1;\nendmodule\n")


def test_mult2b_blif_session_values():
    # the documented flow serializes the multiplier to BLIF and back
    g = mult2b()
    text = write_blif(g)
    h = read_blif(text)
    assert cec(g, h).equivalent
