import pytest

from aigkit.aig import Aig, lit_not
from aigkit.cec import cec
from aigkit.cells import read_cell_library
from aigkit.edgelist import parse_edgelist, write_edgelist_aig, write_edgelist_mapped, write_features
from aigkit.errors import InconsistentFeature, ParseError
from aigkit.vlog import read_mapped_verilog
from aigkit.wordlevel import mult2b

from fixtures import CELL_LIB_TEXT, MULTI2_VERILOG
from netgen import random_aig, random_sequential_aig


def test_mult2b_line_count_and_census():
    g = mult2b()
    text = write_edgelist_aig(g)
    lines = text.strip().splitlines()
    s = g.stats()
    assert len(lines) == s.pi_count + 2 * s.and_count + s.po_count == 28
    doc = parse_edgelist(text)
    assert doc.flavor == "aig"
    assert doc.node_count == 22  # 4 ext-PI + 4 PI nodes + 10 ANDs + 4 ext-PO
    assert doc.edge_count == 28


def test_pi_line_shape():
    g = mult2b()
    first = write_edgelist_aig(g).splitlines()[0].split()
    assert first == ["1", "9", "Pi", "00"]


def test_feature_on_both_in_edges():
    g = Aig("t")
    a, b = g.add_pi("a"), g.add_pi("b")
    v = g.strash_and(lit_not(a), lit_not(b))
    g.add_po(v, "y")
    lines = [l.split() for l in write_edgelist_aig(g).splitlines() if l.split()[2] == "AIG"]
    assert len(lines) == 2
    assert lines[0][3] == lines[1][3] == "11"
    assert lines[0][1] == lines[1][1]


def test_mixed_feature_disambiguated_by_line_order():
    g = Aig("t")
    a, b = g.add_pi("a"), g.add_pi("b")
    v = g.strash_and(lit_not(a), b)  # fanin0 = ~a (lower literal first)
    g.add_po(v, "y")
    doc = write_edgelist_aig(g)
    aig_lines = [l.split() for l in doc.splitlines() if l.split()[2] == "AIG"]
    assert aig_lines[0][3] == "10"
    h = parse_edgelist(doc).aig
    assert cec(g, h).equivalent


def test_roundtrip_cec_random():
    for seed in range(40):
        g = random_aig(seed, n_pis=6, n_ands=40, n_pos=4)
        doc = write_edgelist_aig(g)
        h = parse_edgelist(doc).aig
        assert cec(g, h).equivalent, f"seed {seed}"


def test_roundtrip_with_latches_line_law():
    g = random_sequential_aig(2, n_pis=3, n_latches=2, n_ands=12, n_pos=2)
    text = write_edgelist_aig(g)
    lines = text.strip().splitlines()
    s = g.stats()
    n_and_lines = sum(1 for l in lines if l.split()[2] == "AIG")
    # the + 2 per latch shows up as one extra Pi and one extra Po line
    assert len(lines) == (s.pi_count + s.latch_count) + n_and_lines + (s.po_count + s.latch_count)
    h = parse_edgelist(text).aig
    assert cec(g, h).equivalent


def test_complemented_po_roundtrips_via_inverter_gate():
    g = Aig("t")
    a, b = g.add_pi("a"), g.add_pi("b")
    v = g.strash_and(a, b)
    g.add_po(lit_not(v), "nand")
    text = write_edgelist_aig(g)
    lines = text.strip().splitlines()
    # 2 Pi + 2 AND-lines + 2 inverter lines + 1 Po
    assert len(lines) == 7
    h = parse_edgelist(text).aig
    assert cec(g, h).equivalent
    # canonical documents are written back byte-identically
    assert write_edgelist_aig(h) == text


def test_write_parse_byte_identical_on_canonical_docs():
    for seed in range(15):
        g = random_aig(seed, n_pis=5, n_ands=30, n_pos=3)
        doc = write_edgelist_aig(g)
        assert write_edgelist_aig(parse_edgelist(doc).aig) == doc


def test_inconsistent_feature_rejected():
    text = "1 3 Pi 00\n2 4 Pi 00\n3 5 AIG 10\n4 5 AIG 01\n5 6 Po 00\n"
    with pytest.raises(InconsistentFeature):
        parse_edgelist(text)


def test_parse_error_line_numbers():
    with pytest.raises(ParseError) as e:
        parse_edgelist("1 3 Pi 00\nbroken\n")
    assert e.value.line == 2


def test_keep_names_uses_source_names():
    g = Aig("t")
    a, b = g.add_pi("ina"), g.add_pi("inb")
    g.add_po(g.strash_and(a, b), "out")
    text = write_edgelist_aig(g, keep_names=True)
    assert "ina" in text and "inb" in text


def test_determinism():
    g = random_aig(12, n_pis=6, n_ands=35, n_pos=3)
    assert write_edgelist_aig(g) == write_edgelist_aig(g.clone())


# ---------------------------------------------------------------- mapped flavor

def _multi2():
    lib = read_cell_library(CELL_LIB_TEXT)
    net = read_mapped_verilog(MULTI2_VERILOG, lib)
    return net, lib


def test_mapped_line_count():
    net, lib = _multi2()
    lines = write_edgelist_mapped(net, lib).strip().splitlines()
    assert len(lines) == 4 + 10 + 4


def test_mapped_arities_match_pin_counts():
    net, lib = _multi2()
    for line in write_edgelist_mapped(net, lib).strip().splitlines():
        parts = line.split()
        if parts[2] in ("Pi", "Po"):
            continue
        cell = lib.get(parts[-1])
        assert cell is not None
        assert len(parts) == len(cell.input_pins) + 2


def test_mapped_inverter_line_shape():
    net, lib = _multi2()
    inv_lines = [l.split() for l in write_edgelist_mapped(net, lib).splitlines()
                 if l.endswith("INVx1_ASAP7_75t_L")]
    assert inv_lines and all(len(p) == 3 for p in inv_lines)


def test_mapped_parse_summary():
    net, lib = _multi2()
    doc = parse_edgelist(write_edgelist_mapped(net, lib))
    assert doc.flavor == "mapped"
    assert doc.edge_count == 4 + sum(len(lib.get(i.cell).input_pins) for i in net.instances) + 4
    assert len(doc.features) == 10


# ---------------------------------------------------------------- features

def test_features_aig_rows():
    g = Aig("t")
    a, b = g.add_pi("a"), g.add_pi("b")
    v = g.strash_and(lit_not(a), b)
    g.add_po(v, "y")
    text = write_features(g)
    rows = text.strip().splitlines()
    assert rows[0] == "node_id,f1,f2"
    assert rows[1].endswith(",0,0") and rows[2].endswith(",0,0")
    assert rows[3].endswith(",1,0")


def test_features_mapped_one_hot():
    net, lib = _multi2()
    text = write_features(net, lib)
    lines = text.splitlines()
    assert lines[0].startswith("# vocab: ")
    vocab = lines[0][len("# vocab: "):].split(",")
    assert len(vocab) == 6  # distinct cells in Multi2
    first_cell_row = lines[2 + 4].split(",")  # header + 4 PI rows
    assert first_cell_row[1:].count("1") == 1
    assert first_cell_row[1 + vocab.index("INVx1_ASAP7_75t_L")] == "1"
