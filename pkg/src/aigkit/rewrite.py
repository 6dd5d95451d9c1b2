"""Cut rewriting against a precomputed library of small AIG structures.

The library maps each of the 222 NPN classes of 4-input functions to a
size-minimal AND-tree found by exhaustive function-space enumeration up to a
node budget; classes out of reach fall back to recursive Shannon
decomposition.  At rewrite time a cut's function is canonicalized, the class
structure is instantiated over the cut leaves through the inverse NPN
transform, and the candidate is priced exactly.
"""

from dataclasses import dataclass

import numpy as np

from .aig import Aig
from .cuts import node_cuts, window_function
from .npn import npn_canonicalize, pad_truth_table
from .transforms import CODE_REWRITE, Candidate, PassContext, price_candidate

DP_BUDGET = 7
REWRITE_CUT_LIMIT = 16

_VAR_TTS = (0xAAAA, 0xCCCC, 0xF0F0, 0xFF00)
_FULL = 0xFFFF


class _FunctionDp:
    """Minimal AND-tree size per 4-input function, up to the node budget."""

    def __init__(self, budget: int = DP_BUDGET):
        INF = 99
        cost = np.full(1 << 16, INF, dtype=np.int32)
        expr: dict[int, tuple] = {}

        def note(tt: int, c: int, e: tuple, bucket):
            if c < cost[tt]:
                cost[tt] = c
                cost[tt ^ _FULL] = c  # output complement is free
                expr[tt] = e
                bucket.append(tt)

        frontier: list[np.ndarray] = []
        base: list[int] = []
        note(0, 0, ("const0",), base)
        for i, vt in enumerate(_VAR_TTS):
            note(vt, 0, ("leaf", i), base)
        level0 = base + [t ^ _FULL for t in base]
        frontier.append(np.array(sorted(set(level0)), dtype=np.int64))
        for total in range(1, budget + 1):
            bucket: list[int] = []
            for c1 in range((total - 1) // 2 + 1):
                c2 = total - 1 - c1
                if c2 >= len(frontier) or c1 >= len(frontier):
                    continue
                A, B = frontier[c1], frontier[c2]
                if len(A) == 0 or len(B) == 0:
                    continue
                chunk = max(1, (1 << 22) // max(len(B), 1))
                for lo in range(0, len(A), chunk):
                    arows = A[lo : lo + chunk]
                    cand = (arows[:, None] & B[None, :]).ravel()
                    fresh = np.flatnonzero(cost[cand] > total)
                    if len(fresh) == 0:
                        continue
                    vals = cand[fresh]
                    uniq, first = np.unique(vals, return_index=True)
                    for tt, fi in zip(uniq.tolist(), fresh[first].tolist()):
                        if cost[tt] <= total:
                            continue
                        ia = lo + fi // len(B)
                        ib = fi % len(B)
                        note(int(tt), total, ("and", int(A[ia]), int(B[ib])), bucket)
            merged = sorted(set(bucket) | {t ^ _FULL for t in bucket})
            frontier.append(np.array(merged, dtype=np.int64))
        self.cost = cost
        self.expr = expr
        self.budget = budget

    def lookup(self, tt: int):
        """Expression for tt, following the free output complement."""
        e = self.expr.get(tt)
        if e is not None:
            return e, 0
        e = self.expr.get(tt ^ _FULL)
        if e is not None:
            return e, 1
        return None, 0

    def ensure(self, tt: int) -> None:
        """Install a Shannon-decomposition expression for an out-of-budget function."""
        if self.lookup(tt)[0] is not None:
            return
        for i in range(4):
            f0, f1 = _cofactors(tt, i)
            if f0 != f1:
                break
        self.ensure(f0)
        self.ensure(f1)
        x = _VAR_TTS[i]
        t1 = x & f1
        t0 = (x ^ _FULL) & f0
        for sub, parts in ((t1, ("and", x, f1)), (t0, ("and", x ^ _FULL, f0))):
            if self.lookup(sub)[0] is None:
                self.expr[sub] = parts
                self.cost[sub] = self.cost[sub ^ _FULL] = 90
        inner = (t1 ^ _FULL) & (t0 ^ _FULL)
        if self.lookup(inner)[0] is None:
            self.expr[inner] = ("and", t1 ^ _FULL, t0 ^ _FULL)
            self.cost[inner] = self.cost[inner ^ _FULL] = 90
        assert self.lookup(tt)[0] is not None


def _cofactors(tt: int, i: int) -> tuple[int, int]:
    pat = _VAR_TTS[i]
    shift = 1 << i
    hi = tt & pat
    lo = tt & (pat ^ _FULL)
    f1 = hi | (hi >> shift)
    f0 = lo | (lo << shift) & _FULL
    return f0 & _FULL, f1 & _FULL


@dataclass(frozen=True)
class LibEntry:
    recipe: tuple  # ((a_spec, b_spec), ...)
    root_spec: tuple
    size: int
    depth: int


class RewriteLibrary:
    def __init__(self, entries: dict[int, LibEntry], budget: int):
        self.entries = entries
        self.budget = budget

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, canonical_tt: int) -> LibEntry:
        return self.entries[canonical_tt]


def _expr_to_entry(dp: _FunctionDp, tt: int) -> LibEntry:
    ops: list[tuple] = []
    spec_of: dict[int, tuple] = {}
    depth_of: dict[int, int] = {}

    def build(t: int) -> tuple:
        cached = spec_of.get(t)
        if cached is not None:
            return cached
        e, flip = dp.lookup(t)
        assert e is not None, f"no expression for {t:04x}"
        if e[0] == "const0":
            spec = ("lit", 0, flip)
            depth_of[t] = 0
        elif e[0] == "leaf":
            spec = ("leaf", e[1], flip)
            depth_of[t] = 0
        else:
            if flip:
                sa = build(t ^ _FULL)
                spec = (sa[0], sa[1], sa[2] ^ 1)
                depth_of[t] = depth_of[t ^ _FULL]
            else:
                sa = build(e[1])
                sb = build(e[2])
                ops.append((sa, sb))
                spec = ("op", len(ops) - 1, 0)
                depth_of[t] = 1 + max(depth_of[e[1]], depth_of[e[2]])
        spec_of[t] = spec
        return spec

    root = build(tt)
    return LibEntry(recipe=tuple(ops), root_spec=root, size=len(ops), depth=depth_of[tt])


_library: RewriteLibrary | None = None


def build_rewrite_library(budget: int = DP_BUDGET) -> RewriteLibrary:
    """Size-optimized structure per NPN class; built once and cached in-process."""
    dp = _FunctionDp(budget)
    reps = sorted({npn_canonicalize(tt, 4).canonical_tt for tt in range(1 << 16)})
    entries = {}
    for rep in reps:
        dp.ensure(rep)
        entries[rep] = _expr_to_entry(dp, rep)
    return RewriteLibrary(entries, budget)


def rewrite_library() -> RewriteLibrary:
    global _library
    if _library is None:
        _library = build_rewrite_library()
    return _library


def _instance_depth(entry: LibEntry, leaf_levels, ctx_level_const: int = 0) -> int:
    depths = []

    def depth_of(spec) -> int:
        tag, x, _ = spec
        if tag == "leaf":
            return leaf_levels[x]
        if tag == "op":
            return depths[x]
        return 0

    for a_spec, b_spec in entry.recipe:
        depths.append(1 + max(depth_of(a_spec), depth_of(b_spec)))
    return depth_of(entry.root_spec)


def rewrite_check(g: Aig, v: int, ctx: PassContext | None = None, zero_cost: bool = False,
                  cut_limit: int = REWRITE_CUT_LIMIT):
    """Best rewriting candidate at v, or None.

    Evaluates the node's 4-feasible cuts (bounded priority set), requires the
    node's level not to increase, and ranks candidates by gain, then smaller
    depth, then lexicographically smallest leaf set.
    """
    if not g.is_and(v):
        return None
    ctx = ctx or PassContext(g)
    lib = rewrite_library()
    cuts = node_cuts(g, v, 4, cut_limit, ctx.cut_memo)
    level_v = ctx.level(v)
    best = None
    best_key = None
    for cut in cuts:
        if cut == (v,):
            continue
        tt = window_function(g, v, cut)
        n = len(cut)
        cls = npn_canonicalize(pad_truth_table(tt, n, 4), 4)
        entry = lib.get(cls.canonical_tt)
        leaf_lits = []
        leaf_levels = []
        for i in range(4):
            src = cls.perm[i]
            compl = (cls.input_mask >> i) & 1
            if src < n:
                leaf_lits.append(2 * cut[src] ^ compl)
                leaf_levels.append(ctx.level(cut[src]))
            else:
                leaf_lits.append(0)
                leaf_levels.append(0)
        root_spec = (entry.root_spec[0], entry.root_spec[1], entry.root_spec[2] ^ (1 if cls.output_compl else 0))
        if _instance_depth(LibEntry(entry.recipe, root_spec, entry.size, entry.depth), leaf_levels) > level_v:
            continue
        priced = price_candidate(g, v, entry.recipe, root_spec, leaf_lits)
        if priced is None:
            continue
        gain, _, root = priced
        if gain < 0 or (gain == 0 and not zero_cost):
            continue
        depth = _instance_depth(LibEntry(entry.recipe, root_spec, 0, 0), leaf_levels)
        key = (-gain, depth, cut)
        if best_key is None or key < best_key:
            best_key = key
            best = Candidate(
                kind=CODE_REWRITE,
                node=v,
                version=g.version,
                est_gain=gain,
                recipe=list(entry.recipe),
                root_spec=root_spec,
                leaves=tuple(leaf_lits),
                depth=depth,
            )
    return best
