"""Shared machinery for the node-level optimization passes.

Every pass is split into a pure check that produces a Candidate and an apply
that replays the candidate's build recipe against the live network.  The
check estimates its gain with a dry-run builder that mirrors strash_and
exactly (same folding, same hash lookups, same id sequence), so the replay
is guaranteed to construct precisely the structure the estimate priced.
"""

from dataclasses import dataclass
from typing import Optional

from .aig import AND, Aig
from .errors import StaleCandidate

CODE_NONE = 0
CODE_REWRITE = 1
CODE_REFACTOR = 2
CODE_RESUB = 3

CODE_NAMES = {CODE_NONE: "none", CODE_REWRITE: "rw", CODE_REFACTOR: "rf", CODE_RESUB: "rs"}


@dataclass
class TransformOutcome:
    applied: bool
    gain: int = 0
    structural_change: bool = False


@dataclass
class Candidate:
    kind: int  # CODE_REWRITE / CODE_REFACTOR / CODE_RESUB
    node: int
    version: int  # network version the recipe was computed against
    est_gain: int
    recipe: list  # [(a_spec, b_spec), ...] in build order
    root_spec: tuple
    leaves: tuple = ()  # literal per recipe leaf slot
    depth: int = 0


class PassContext:
    """Per-pass memo store for cuts and levels with staleness purging."""

    def __init__(self, g: Aig):
        self.g = g
        self.cut_memo: dict[int, list] = {}
        self.level_memo: dict[int, int] = {}

    def level(self, n: int) -> int:
        """Level of n, filling the memo over its fanin cone."""
        memo = self.level_memo
        cached = memo.get(n)
        if cached is not None:
            return cached
        g = self.g
        stack = [(n, False)]
        while stack:
            m, expanded = stack.pop()
            if m in memo:
                continue
            if g.kind(m) != AND:
                memo[m] = 0
                continue
            f0 = g.fanin0(m) >> 1
            f1 = g.fanin1(m) >> 1
            if expanded:
                memo[m] = 1 + max(memo[f0], memo[f1])
            else:
                stack.append((m, True))
                if f0 not in memo:
                    stack.append((f0, False))
                if f1 not in memo:
                    stack.append((f1, False))
        return memo[n]

    def purge_after_update(self, touched) -> None:
        """Drop memo entries for nodes whose fanin cone may have changed:
        the touched nodes themselves plus everything in their fanout cones."""
        g = self.g
        stale = set()
        stack = list(touched)
        while stack:
            n = stack.pop()
            if n in stale:
                continue
            stale.add(n)
            stack.extend(g._fanout.get(n, ()))
        for n in stale:
            self.cut_memo.pop(n, None)
            self.level_memo.pop(n, None)


# operand specs used in recipes: ("leaf", index, compl) / ("op", index, compl) / ("lit", literal, compl)
class DryBuilder:
    """Mirror of strash_and that prices a build without mutating the network.

    Virtual nodes get the exact ids the replay will allocate, so literal
    ordering, hash keys, and the resulting structure are identical.
    """

    def __init__(self, g: Aig, avoid: int):
        self.g = g
        self.avoid = avoid  # the node being replaced; reusing it would create a cycle
        self.base = len(g._kind)
        self.virtual: dict[tuple[int, int], int] = {}
        self.new_children: list[tuple[int, int]] = []
        self.hit_avoid = False

    def and_(self, a: int, b: int) -> int:
        if a > b:
            a, b = b, a
        if a == 0:
            return 0
        if a == 1:
            return b
        if (a >> 1) == (b >> 1):
            return a if a == b else 0
        key = (a, b)
        if b < 2 * self.base:  # both operands are real nodes
            hit = self.g._strash.get(key)
            if hit is not None:
                if hit == self.avoid:
                    self.hit_avoid = True
                return 2 * hit
        vid = self.virtual.get(key)
        if vid is None:
            vid = self.base + len(self.new_children)
            self.virtual[key] = vid
            self.new_children.append(key)
        return 2 * vid

    def is_virtual(self, l: int) -> bool:
        return (l >> 1) >= self.base

    def extra_refs(self) -> dict[int, int]:
        """Real-node references the new structure will add."""
        refs: dict[int, int] = {}
        for a, b in self.new_children:
            for l in (a, b):
                n = l >> 1
                if n < self.base and n != 0:
                    refs[n] = refs.get(n, 0) + 1
        return refs


def freed_by_replace(g: Aig, v: int, extra_refs: dict[int, int], root_lit: int) -> int:
    """AND nodes that die when v's consumers move to root_lit and the new
    structure holds the references in extra_refs.  Mirrors the deletion
    cascade replace() will run."""
    extra = dict(extra_refs)
    root_node = root_lit >> 1
    if root_node < len(g._kind) and root_node != v:
        extra[root_node] = extra.get(root_node, 0) + 1  # consumers of v re-point here
    dec: dict[int, int] = {v: g._refs[v]}
    dead = set()
    stack = [v]
    while stack:
        n = stack.pop()
        if n in dead or not g.is_and(n):
            continue
        if g._refs[n] + extra.get(n, 0) - dec.get(n, 0) > 0:
            continue
        dead.add(n)
        for f in (g.fanin0(n), g.fanin1(n)):
            fn = f >> 1
            dec[fn] = dec.get(fn, 0) + 1
            if fn not in dead and g.is_and(fn):
                stack.append(fn)
    return len(dead)


def run_recipe(builder_and, recipe, root_spec, leaf_lits):
    """Execute a recipe against any and-builder; returns the root literal."""
    results = []

    def resolve(spec):
        tag, x, c = spec
        if tag == "leaf":
            return leaf_lits[x] ^ c
        if tag == "op":
            return results[x] ^ c
        return x ^ c  # ("lit", literal, compl)

    for a_spec, b_spec in recipe:
        results.append(builder_and(resolve(a_spec), resolve(b_spec)))
    return resolve(root_spec)


def price_candidate(g: Aig, v: int, recipe, root_spec, leaf_lits):
    """Dry-run a recipe: returns (est_gain, structural_change, root_is_buildable).

    est_gain = AND nodes freed by the replacement minus new nodes created.
    """
    dry = DryBuilder(g, avoid=v)
    root = run_recipe(dry.and_, recipe, root_spec, leaf_lits)
    if dry.hit_avoid or (root >> 1) == v:
        return None  # would rebuild v or route through it
    cost = len(dry.new_children)
    freed = freed_by_replace(g, v, dry.extra_refs(), root)
    return freed - cost, True, root


def apply_candidate(g: Aig, cand: Candidate, ctx: Optional[PassContext] = None, leaf_lits=None) -> TransformOutcome:
    """Replay a candidate's recipe and substitute the result for its node."""
    if cand.version != g.version:
        raise StaleCandidate(f"network changed since the {CODE_NAMES[cand.kind]} check (version {cand.version} -> {g.version})")
    if leaf_lits is None:
        leaf_lits = list(cand.leaves)
    before = g.num_live_ands()
    root = run_recipe(g.strash_and, cand.recipe, cand.root_spec, leaf_lits)
    deleted = g.replace(cand.node, root)
    gain = before - g.num_live_ands()
    if ctx is not None:
        # every node above the substitution point may have new cuts/levels
        touched = set(deleted)
        touched.add(root >> 1)
        ctx.purge_after_update(touched)
    return TransformOutcome(applied=True, gain=gain, structural_change=True)
