"""Interactive shell and script runner.

Commands mirror the usual logic-synthesis session flow: read a design,
strash it, augment, export edgelists, check equivalence.  Semicolons chain
commands; `#` starts a comment; `-c "cmds"` runs a chain non-interactively.

Exit codes: 0 success, 1 command error, 2 usage error.
"""

import os
import shlex
import sys

from .aig import Aig
from .aiger import read_aiger_file, write_aiger_file
from .augment import AugConfig, aig_augment, batch_generate
from .blif import read_blif, write_blif
from .cec import cec
from .cells import read_cell_library
from .edgelist import write_edgelist_aig, write_edgelist_mapped
from .errors import AigError
from .lutmap import klut_map
from .retime import RetimeConfig, retime_augment
from .vlog import MappedNetlist, instance_order, mapped_to_aig, read_mapped_verilog
from .wordlevel import bit_blast, looks_word_level, parse_word_module


class UsageError(Exception):
    pass


class HelpRequested(Exception):
    """Raised by '-h'; carries the usage text and is never an error."""


class CommandError(Exception):
    pass


class Session:
    def __init__(self):
        self.network = None  # Aig or MappedNetlist
        self.library = None
        self.counter = 1

    def need_aig(self) -> Aig:
        if self.network is None:
            raise CommandError("no network loaded (use 'read <file>')")
        if isinstance(self.network, MappedNetlist):
            raise CommandError("current network is a mapped netlist; run 'strash' first")
        return self.network

    def need_any(self):
        if self.network is None:
            raise CommandError("no network loaded (use 'read <file>')")
        return self.network


def _read_design(path: str, session: Session):
    if not os.path.exists(path):
        raise CommandError(f"cannot open {path!r}")
    ext = os.path.splitext(path)[1].lower()
    if ext in (".aag", ".aig"):
        return read_aiger_file(path)
    if ext == ".blif":
        with open(path) as f:
            return read_blif(f.read())
    if ext == ".v":
        with open(path) as f:
            text = f.read()
        if looks_word_level(text):
            return bit_blast(parse_word_module(text))
        if session.library is None:
            raise CommandError("mapped Verilog needs a cell library (use 'read_lib <file>')")
        return read_mapped_verilog(text, session.library)
    raise CommandError(f"unknown design extension {ext!r} (.aag/.aig/.blif/.v)")


def _flags(args, spec, usage):
    """spec: {flag: 'int'|'str'|'bool'}; returns (options, positionals)."""
    opts = {}
    pos = []
    i = 0
    while i < len(args):
        a = args[i]
        if a == "-h":
            raise HelpRequested(usage)
        if a in spec:
            kind = spec[a]
            if kind == "bool":
                opts[a] = True
            else:
                i += 1
                if i >= len(args):
                    raise UsageError(f"flag {a} needs a value\n{usage}")
                if kind == "int":
                    try:
                        opts[a] = int(args[i])
                    except ValueError:
                        raise UsageError(f"flag {a} needs an integer\n{usage}")
                else:
                    opts[a] = args[i]
        elif a.startswith("-") and a != "-":
            raise UsageError(f"unknown flag {a}\n{usage}")
        else:
            pos.append(a)
        i += 1
    return opts, pos


# ------------------------------------------------------------------ commands

def cmd_read(session, args, out):
    usage = "usage: read <file>\n  loads a design; .aag/.aig/.blif/.v by extension\n  word-level .v is bit-blasted; mapped .v needs a loaded library"
    _, pos = _flags(args, {}, usage)
    if len(pos) != 1:
        raise UsageError(usage)
    session.network = _read_design(pos[0], session)


def cmd_read_lib(session, args, out):
    usage = "usage: read_lib <file>\n  loads the cell library used by mapped-Verilog designs"
    _, pos = _flags(args, {}, usage)
    if len(pos) != 1:
        raise UsageError(usage)
    if not os.path.exists(pos[0]):
        raise CommandError(f"cannot open {pos[0]!r}")
    with open(pos[0]) as f:
        session.library = read_cell_library(f.read())
    out(f"library loaded: {len(session.library)} cells")


def cmd_strash(session, args, out):
    usage = "usage: strash\n  converts the current network into a structurally hashed AIG"
    _flags(args, {}, usage)
    net = session.need_any()
    if isinstance(net, MappedNetlist):
        if session.library is None:
            raise CommandError("mapped netlist without a library; use 'read_lib'")
        session.network = mapped_to_aig(net, session.library)
    # an Aig is already hash-canonical


def cmd_print_stats(session, args, out):
    usage = "usage: print_stats\n  prints name: i/o, latch, and, level counts"
    _flags(args, {}, usage)
    net = session.need_any()
    if isinstance(net, MappedNetlist):
        depth = _mapped_depth(net, session.library)
        out(f"{net.name}: i/o = {len(net.pis)}/{len(net.pos)}  lat = 0  and = {len(net.instances)}  lev = {depth}")
        return
    s = net.stats()
    out(f"{net.name}: i/o = {s.pi_count}/{s.po_count}  lat = {s.latch_count}  and = {s.and_count}  lev = {s.level}")


def _mapped_depth(net, lib):
    order = instance_order(net, lib)
    depth = {n: 0 for n in net.pis}
    best = 0
    for idx in order:
        inst = net.instances[idx]
        cell = lib.get(inst.cell)
        d = 1 + max((depth.get(inst.pins[p], 0) for p in cell.input_pins), default=0)
        depth[inst.pins[cell.output_pin]] = d
        best = max(best, d)
    return best


def cmd_aigaug(session, args, out):
    usage = (
        "usage: aigaug [-s N] [-d file] [-z] [-Z]\n"
        "  random per-node optimization sampling (rewrite/refactor/resub)\n"
        "  -s N     random seed (default 0)\n"
        "  -d file  write the per-node decision log as CSV\n"
        "  -z       allow zero-gain rewrites\n"
        "  -Z       allow zero-gain refactors"
    )
    opts, pos = _flags(args, {"-s": "int", "-d": "str", "-z": "bool", "-Z": "bool"}, usage)
    if pos:
        raise UsageError(usage)
    g = session.need_aig()
    cfg = AugConfig(seed=opts.get("-s", 0), zero_rw=opts.get("-z", False),
                    zero_rf=opts.get("-Z", False), log_path=opts.get("-d"))
    session.network, _ = aig_augment(g, cfg)


def cmd_write_edgelist(session, args, out):
    usage = (
        "usage: write_edgelist [-N] <file>\n"
        "  writes the network into edgelist file\n"
        "  -N     : toggle keeping original naming of the netlist in edgelist (default=False)\n"
        "  file   : the name of the file to write (extension .el)"
    )
    opts, pos = _flags(args, {"-N": "bool"}, usage)
    if len(pos) != 1:
        raise UsageError(usage)
    net = session.need_any()
    keep = opts.get("-N", False)
    if isinstance(net, MappedNetlist):
        text = write_edgelist_mapped(net, session.library, keep_names=keep)
    else:
        text = write_edgelist_aig(net, keep_names=keep)
    with open(pos[0], "w") as f:
        f.write(text)
    out(f"writing edgelist to {pos[0]}")


def cmd_write(session, args, out):
    usage = "usage: write <file>\n  serializes the AIG; .aag/.aig/.blif by extension"
    _, pos = _flags(args, {}, usage)
    if len(pos) != 1:
        raise UsageError(usage)
    g = session.need_aig()
    ext = os.path.splitext(pos[0])[1].lower()
    if ext in (".aag", ".aig"):
        write_aiger_file(g, pos[0])
    elif ext == ".blif":
        with open(pos[0], "w") as f:
            f.write(write_blif(g))
    else:
        raise CommandError(f"unknown output extension {ext!r} (.aag/.aig/.blif)")


def cmd_cec(session, args, out):
    usage = (
        "usage: cec [--dump-cnf file] <file1> <file2>\n"
        "  complete combinational equivalence check of two designs\n"
        "  --dump-cnf file  write the miter's CNF in DIMACS form (debugging)"
    )
    opts, pos = _flags(args, {"--dump-cnf": "str"}, usage)
    if len(pos) != 2:
        raise UsageError(usage)
    a = _read_design(pos[0], session)
    b = _read_design(pos[1], session)
    if isinstance(a, MappedNetlist):
        a = mapped_to_aig(a, session.library)
    if isinstance(b, MappedNetlist):
        b = mapped_to_aig(b, session.library)
    if "--dump-cnf" in opts:
        from .cec import build_miter, tseitin

        miter = build_miter(a, b)
        formula, _ = tseitin(miter.aig, miter.aig.pos[0])
        with open(opts["--dump-cnf"], "w") as f:
            f.write(formula.to_dimacs())
        out(f"miter CNF written to {opts['--dump-cnf']}")
    res = cec(a, b)
    if res.verdict == "equivalent":
        out("Networks are equivalent.")
    elif res.verdict == "not_equivalent":
        out("Networks are NOT equivalent.")
        ce = " ".join(f"{k}={v}" for k, v in sorted(res.counterexample.items()))
        out(f"counterexample: {ce}")
    else:
        raise CommandError("equivalence unresolved within resource limits")


def cmd_sample(session, args, out):
    usage = (
        "usage: sample -n N [-s seed] -o dir [-k K]\n"
        "  batch-generates N equivalence-verified augmented samples with labels\n"
        "  -n N     sample count\n"
        "  -s seed  base seed (sample i uses seed base+i; default 0)\n"
        "  -o dir   output directory (sample_<i>.el, labels.csv, manifest.json)\n"
        "  -k K     LUT width for labels (default 4)"
    )
    opts, pos = _flags(args, {"-n": "int", "-s": "int", "-o": "str", "-k": "int"}, usage)
    if pos or "-n" not in opts or "-o" not in opts:
        raise UsageError(usage)
    g = session.need_aig()
    manifest = batch_generate(g, n=opts["-n"], base_seed=opts.get("-s", 0),
                              out_dir=opts["-o"], k=opts.get("-k", 4))
    out(f"wrote {manifest['n']} samples to {opts['-o']}")


def cmd_retime_aug(session, args, out):
    usage = (
        "usage: retime_aug [-s seed] [-m moves]\n"
        "  applies random register-relocation moves, preserving sequential behavior\n"
        "  -s seed  random seed (default 0)\n"
        "  -m moves move budget (default 10)"
    )
    opts, pos = _flags(args, {"-s": "int", "-m": "int"}, usage)
    if pos:
        raise UsageError(usage)
    g = session.need_aig()
    session.network = retime_augment(g, RetimeConfig(seed=opts.get("-s", 0), max_moves=opts.get("-m", 10)))


def cmd_lutmap(session, args, out):
    usage = "usage: lutmap [-k K]\n  depth-optimal K-input LUT covering (default K=4); prints counts"
    opts, pos = _flags(args, {"-k": "int"}, usage)
    if pos:
        raise UsageError(usage)
    g = session.need_aig()
    m = klut_map(g, opts.get("-k", 4))
    out(f"luts = {m.lut_count}  depth = {m.lut_depth}")


def cmd_help(session, args, out):
    usage = "usage: help [command]"
    _, pos = _flags(args, {}, usage)
    if pos:
        name = pos[0]
        if name not in COMMANDS:
            raise CommandError(f"unknown command {name!r}")
        try:
            COMMANDS[name](session, ["-h"], out)
        except HelpRequested as e:
            out(str(e))
        return
    out("commands: " + " ".join(sorted(COMMANDS)))
    out("run '<command> -h' or 'help <command>' for details")


def cmd_quit(session, args, out):
    raise EOFError


COMMANDS = {
    "read": cmd_read,
    "read_lib": cmd_read_lib,
    "strash": cmd_strash,
    "print_stats": cmd_print_stats,
    "aigaug": cmd_aigaug,
    "write_edgelist": cmd_write_edgelist,
    "write": cmd_write,
    "cec": cmd_cec,
    "sample": cmd_sample,
    "retime_aug": cmd_retime_aug,
    "lutmap": cmd_lutmap,
    "help": cmd_help,
    "quit": cmd_quit,
}


def split_commands(line: str):
    line = line.split("#", 1)[0]
    return [c.strip() for c in line.split(";") if c.strip()]


def execute(session: Session, command: str, out=print) -> None:
    """Run one command; raises UsageError/CommandError/AigError on failure."""
    try:
        parts = shlex.split(command)
    except ValueError as e:
        raise UsageError(f"cannot parse command: {e}")
    if not parts:
        return
    name, args = parts[0], parts[1:]
    handler = COMMANDS.get(name)
    if handler is None:
        raise UsageError(f"unknown command {name!r} (try 'help')")
    handler(session, args, out)
    session.counter += 1


def run_lines(session: Session, lines, out=print, err=lambda s: print(s, file=sys.stderr)) -> int:
    """Execute commands line by line; returns the process exit code."""
    for lineno, line in enumerate(lines, start=1):
        for command in split_commands(line):
            try:
                execute(session, command, out)
            except EOFError:
                return 0
            except HelpRequested as e:
                out(str(e))
            except UsageError as e:
                err(f"line {lineno}: {e}")
                return 2
            except (CommandError, AigError) as e:
                err(f"line {lineno}: {e}")
                return 1
    return 0


def run_script(path) -> int:
    session = Session()
    try:
        with open(path) as f:
            lines = f.read().splitlines()
    except OSError as e:
        print(f"cannot read script: {e}", file=sys.stderr)
        return 1
    return run_lines(session, lines)


def repl() -> int:
    session = Session()
    while True:
        try:
            line = input(f"aigkit {session.counter:02d}> ")
        except EOFError:
            print()
            return 0
        for command in split_commands(line):
            try:
                execute(session, command)
            except EOFError:
                return 0
            except HelpRequested as e:
                print(e)
            except (UsageError, CommandError, AigError) as e:
                print(f"error: {e}", file=sys.stderr)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if argv and argv[0] in ("-h", "--help"):
        print(__doc__.strip())
        print("\nusage: aigkit [script]  |  aigkit -c \"cmd; cmd; ...\"")
        return 0
    if argv and argv[0] == "-c":
        if len(argv) < 2:
            print("-c needs a command string", file=sys.stderr)
            return 2
        session = Session()
        return run_lines(session, [argv[1]])
    if argv:
        return run_script(argv[0])
    return repl()


if __name__ == "__main__":
    sys.exit(main())
