"""And-inverter-graph toolkit: netlist I/O, seeded logic-optimization
sampling for dataset augmentation, equivalence checking, and edgelist export
for graph learning."""

from .aig import AND, CONST, DEAD, LATCH, PI, Aig, Literal, Stats, lit, lit_compl, lit_node, lit_not
from .aiger import read_aiger, read_aiger_file, write_aiger, write_aiger_file
from .augment import AugConfig, DecisionLog, DecisionRecord, aig_augment, batch_generate, write_decision_log
from .blif import read_blif, write_blif
from .cec import CecLimits, CecResult, Miter, bounded_seq_equiv, build_miter, cec, tseitin
from .cells import Cell, CellLibrary, read_cell_library
from .cuts import cut_truth_table, enumerate_cuts, node_cuts
from .edgelist import ParsedEdgelist, parse_edgelist, write_edgelist_aig, write_edgelist_mapped, write_features
from .lutmap import LutMapping, klut_map
from .npn import NpnClass, apply_npn, npn_canonicalize
from .passes import is_transformable, refactor_node, resub_node, rewrite_apply
from .refactor import refactor_check
from .resub import resub_check
from .retime import RetimeConfig, retime_augment
from .rewrite import RewriteLibrary, build_rewrite_library, rewrite_check, rewrite_library
from .rng import SplitMix64
from .sat import CnfFormula, SatResult, sat_solve
from .transforms import Candidate, PassContext, TransformOutcome, apply_candidate
from .vlog import MappedNetlist, mapped_to_aig, read_mapped_verilog
from .wordlevel import WordLevelModule, bit_blast, parse_word_module

__version__ = "0.1.0"
