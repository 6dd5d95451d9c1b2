"""And-inverter graph with structural hashing.

Literals are plain ints encoded as 2*node_id + complement, the usual AIGER
convention: literal 0 is constant false, literal 1 constant true.  Node 0 is
the reserved constant node.  Latches are modeled as pseudo-primary inputs;
their next-state literal acts as a pseudo-primary output.
"""

from collections import deque
from typing import Iterable, NamedTuple, Optional

from .errors import AigError, CycleDetected

CONST = 0
PI = 1
AND = 2
LATCH = 3
DEAD = 4

KIND_NAMES = {CONST: "const", PI: "pi", AND: "and", LATCH: "latch", DEAD: "dead"}


def lit(node: int, complemented: bool = False) -> int:
    return 2 * node + (1 if complemented else 0)


def lit_node(l: int) -> int:
    return l >> 1


def lit_compl(l: int) -> int:
    return l & 1


def lit_not(l: int) -> int:
    return l ^ 1


class Literal(NamedTuple):
    """Unpacked view of an int literal, for callers that prefer named fields."""

    node_id: int
    complemented: bool

    @staticmethod
    def from_int(l: int) -> "Literal":
        return Literal(l >> 1, bool(l & 1))

    def to_int(self) -> int:
        return 2 * self.node_id + (1 if self.complemented else 0)


class Stats(NamedTuple):
    pi_count: int
    po_count: int
    latch_count: int
    and_count: int
    level: int


class Aig:
    """Mutable AIG with hash-canonical AND construction and in-place substitution."""

    def __init__(self, name: str = ""):
        self.name = name
        self._kind = [CONST]
        self._f0 = [0]  # fanin literals; unused slots hold 0
        self._f1 = [0]
        self._refs = [0]
        self._pis: list[int] = []
        self._latches: list[int] = []
        self._latch_init: dict[int, int] = {}
        self._po: list[int] = []
        self._po_names: list[Optional[str]] = []
        self._names: dict[int, str] = {}
        self._strash: dict[tuple[int, int], int] = {}
        self._fanout: dict[int, set[int]] = {0: set()}
        self._n2pos: dict[int, set[int]] = {}
        self._alias: dict[int, int] = {}
        self._n_live_ands = 0
        self.version = 0  # bumped on every structural mutation

    # ------------------------------------------------------------------
    # construction

    def _new_node(self, kind: int) -> int:
        n = len(self._kind)
        self._kind.append(kind)
        self._f0.append(0)
        self._f1.append(0)
        self._refs.append(0)
        self._fanout[n] = set()
        return n

    def add_pi(self, name: Optional[str] = None) -> int:
        n = self._new_node(PI)
        self._pis.append(n)
        if name is not None:
            self._names[n] = name
        self.version += 1
        return lit(n)

    def add_latch(self, init: int = 0, name: Optional[str] = None) -> int:
        if init not in (0, 1):
            raise AigError(f"latch init must be 0 or 1, got {init}")
        n = self._new_node(LATCH)
        self._latches.append(n)
        self._latch_init[n] = init
        self._f0[n] = 0  # next-state literal, set later
        self._refs[0] += 1
        self._fanout[0].add(n)
        if name is not None:
            self._names[n] = name
        self.version += 1
        return lit(n)

    def set_latch_next(self, latch: int, nxt: int) -> None:
        if self._kind[latch] != LATCH:
            raise AigError(f"node {latch} is not a latch")
        old = self._f0[latch]
        on = lit_node(old)
        self._refs[on] -= 1
        self._f0[latch] = nxt
        nn = lit_node(nxt)
        if nn != on:
            self._fanout[on].discard(latch)
        self._refs[nn] += 1
        self._fanout[nn].add(latch)
        self.version += 1

    def latch_next(self, latch: int) -> int:
        return self._f0[latch]

    def latch_init(self, latch: int) -> int:
        return self._latch_init[latch]

    def strash_and(self, a: int, b: int) -> int:
        """AND of two literals with constant folding and structural hashing."""
        if a > b:
            a, b = b, a
        # constants sort first: node 0
        if a == 0:
            return 0
        if a == 1:
            return b
        na, nb = a >> 1, b >> 1
        if na == nb:
            return a if a == b else 0
        key = (a, b)
        hit = self._strash.get(key)
        if hit is not None:
            return lit(hit)
        n = self._new_node(AND)
        self._f0[n] = a
        self._f1[n] = b
        self._refs[na] += 1
        self._refs[nb] += 1
        self._fanout[na].add(n)
        self._fanout[nb].add(n)
        self._strash[key] = n
        self._n_live_ands += 1
        self.version += 1
        return lit(n)

    def add_po(self, l: int, name: Optional[str] = None) -> int:
        idx = len(self._po)
        self._po.append(l)
        self._po_names.append(name)
        n = lit_node(l)
        self._refs[n] += 1
        self._n2pos.setdefault(n, set()).add(idx)
        self.version += 1
        return idx

    def set_po(self, idx: int, l: int) -> None:
        old = self._po[idx]
        on = lit_node(old)
        self._refs[on] -= 1
        slots = self._n2pos.get(on)
        if slots is not None:
            slots.discard(idx)
            if not slots:
                del self._n2pos[on]
        self._po[idx] = l
        n = lit_node(l)
        self._refs[n] += 1
        self._n2pos.setdefault(n, set()).add(idx)
        self.version += 1

    # ------------------------------------------------------------------
    # queries

    def __len__(self) -> int:
        return len(self._kind)

    def kind(self, n: int) -> int:
        return self._kind[n]

    def is_and(self, n: int) -> bool:
        return self._kind[n] == AND

    def is_pi(self, n: int) -> bool:
        return self._kind[n] == PI

    def is_latch(self, n: int) -> bool:
        return self._kind[n] == LATCH

    def is_dead(self, n: int) -> bool:
        return self._kind[n] == DEAD

    def fanin0(self, n: int) -> int:
        return self._f0[n]

    def fanin1(self, n: int) -> int:
        return self._f1[n]

    def fanouts(self, n: int) -> list[int]:
        return sorted(self._fanout.get(n, ()))

    def ref_count(self, n: int) -> int:
        return self._refs[n]

    @property
    def pis(self) -> list[int]:
        return list(self._pis)

    @property
    def latches(self) -> list[int]:
        return list(self._latches)

    @property
    def pos(self) -> list[int]:
        return list(self._po)

    @property
    def po_names(self) -> list[Optional[str]]:
        return list(self._po_names)

    def node_name(self, n: int) -> Optional[str]:
        return self._names.get(n)

    def set_node_name(self, n: int, name: str) -> None:
        self._names[n] = name

    def set_po_name(self, idx: int, name: str) -> None:
        self._po_names[idx] = name

    def nodes(self) -> Iterable[int]:
        """All non-dead node ids, ascending."""
        return (n for n in range(len(self._kind)) if self._kind[n] != DEAD)

    def and_nodes(self) -> list[int]:
        return [n for n in range(len(self._kind)) if self._kind[n] == AND]

    def num_live_ands(self) -> int:
        """Non-dead AND slots; equals and_count() when nothing dangles."""
        return self._n_live_ands

    # ------------------------------------------------------------------
    # traversal

    def topo_order(self) -> list[int]:
        """Live nodes, fanins before consumers: const, PIs, latches, then ANDs.

        Ready AND nodes are emitted in ascending id order.  Raises
        CycleDetected if some AND never becomes ready.
        """
        import heapq

        order = [0] + list(self._pis) + list(self._latches)
        dep_count: dict[int, int] = {}
        waiters: dict[int, list[int]] = {}
        ready: list[int] = []
        total_ands = 0
        for n in range(len(self._kind)):
            if self._kind[n] != AND:
                continue
            total_ands += 1
            d = 0
            for f in (self._f0[n], self._f1[n]):
                fn = lit_node(f)
                if self._kind[fn] == AND:
                    d += 1
                    waiters.setdefault(fn, []).append(n)
            dep_count[n] = d
            if d == 0:
                heapq.heappush(ready, n)
        emitted = 0
        while ready:
            n = heapq.heappop(ready)
            order.append(n)
            emitted += 1
            for w in waiters.get(n, ()):
                dep_count[w] -= 1
                if dep_count[w] == 0:
                    heapq.heappush(ready, w)
        if emitted != total_ands:
            raise CycleDetected("combinational loop detected")
        return order

    def compute_levels(self) -> dict[int, int]:
        """Level per live node: sources at 0, AND = 1 + max(fanin levels)."""
        levels: dict[int, int] = {}
        for n in self.topo_order():
            k = self._kind[n]
            if k == AND:
                levels[n] = 1 + max(levels[lit_node(self._f0[n])], levels[lit_node(self._f1[n])])
            else:
                levels[n] = 0
        return levels

    def network_level(self) -> int:
        levels = self.compute_levels()
        roots = [lit_node(l) for l in self._po]
        roots += [lit_node(self._f0[n]) for n in self._latches]
        return max((levels[r] for r in roots), default=0)

    def live_nodes(self) -> set[int]:
        """Nodes reachable backwards from POs and latch next-states, plus ports."""
        mark = set()
        stack = [lit_node(l) for l in self._po]
        stack += [lit_node(self._f0[n]) for n in self._latches]
        while stack:
            n = stack.pop()
            if n in mark:
                continue
            mark.add(n)
            if self._kind[n] == AND:
                stack.append(lit_node(self._f0[n]))
                stack.append(lit_node(self._f1[n]))
        mark.add(0)
        mark.update(self._pis)
        mark.update(self._latches)
        return mark

    def and_count(self) -> int:
        live = self.live_nodes()
        return sum(1 for n in live if self._kind[n] == AND)

    def stats(self) -> Stats:
        return Stats(
            pi_count=len(self._pis),
            po_count=len(self._po),
            latch_count=len(self._latches),
            and_count=self.and_count(),
            level=self.network_level(),
        )

    # ------------------------------------------------------------------
    # simulation (bit-parallel over arbitrary-width python ints)

    def simulate_nodes(self, words: dict[int, int], width: int, order=None) -> dict[int, int]:
        """Evaluate every live node; `words` maps PI/latch node id -> pattern word.

        `order` may carry a precomputed topo_order to amortize repeated calls.
        """
        mask = (1 << width) - 1
        vals: dict[int, int] = {0: 0}
        for n in self._pis:
            vals[n] = words[n] & mask
        for n in self._latches:
            vals[n] = words[n] & mask
        f0, f1, kinds = self._f0, self._f1, self._kind
        for n in (order if order is not None else self.topo_order()):
            if kinds[n] != AND:
                continue
            a = f0[n]
            b = f1[n]
            va = vals[a >> 1]
            if a & 1:
                va ^= mask
            vb = vals[b >> 1]
            if b & 1:
                vb ^= mask
            vals[n] = va & vb
        return vals

    def simulate(self, patterns, width: int = 64) -> list[int]:
        """Bit-parallel evaluation; `patterns` is a dict node->word or a list
        ordered as PIs then latches.  Returns one word per PO."""
        if not isinstance(patterns, dict):
            inputs = self._pis + self._latches
            if len(patterns) != len(inputs):
                raise AigError(f"expected {len(inputs)} pattern words, got {len(patterns)}")
            patterns = dict(zip(inputs, patterns))
        mask = (1 << width) - 1
        vals = self.simulate_nodes(patterns, width)
        out = []
        for l in self._po:
            v = vals[lit_node(l)]
            if l & 1:
                v ^= mask
            out.append(v)
        return out

    def next_state_words(self, vals: dict[int, int], width: int) -> list[int]:
        mask = (1 << width) - 1
        out = []
        for n in self._latches:
            l = self._f0[n]
            v = vals[lit_node(l)]
            if l & 1:
                v ^= mask
            out.append(v)
        return out

    # ------------------------------------------------------------------
    # substitution and garbage collection

    def resolve(self, l: int) -> int:
        """Follow alias links left behind by merges."""
        n = lit_node(l)
        while n in self._alias:
            l = self._alias[n] ^ (l & 1)
            n = lit_node(l)
        return l

    def _release_fanins(self, n: int, cascade: list[int]) -> None:
        for f in (self._f0[n], self._f1[n]) if self._kind[n] == AND else (self._f0[n],):
            fn = lit_node(f)
            self._refs[fn] -= 1
            self._fanout[fn].discard(n)
            if self._refs[fn] == 0 and self._kind[fn] == AND:
                cascade.append(fn)

    def _kill_and(self, n: int, cascade: list[int], deleted: list[int]) -> None:
        key = (self._f0[n], self._f1[n])
        if self._strash.get(key) == n:
            del self._strash[key]
        self._release_fanins(n, cascade)
        self._kind[n] = DEAD
        self._n_live_ands -= 1
        deleted.append(n)

    def _run_cascade(self, cascade: list[int], deleted: list[int]) -> None:
        while cascade:
            n = cascade.pop()
            if self._kind[n] == AND and self._refs[n] == 0:
                self._kill_and(n, cascade, deleted)

    def replace(self, node: int, new_lit: int) -> list[int]:
        """Redirect every consumer of `node` (gates, latches, POs) onto `new_lit`,
        merging any gate that becomes structurally identical to an existing one
        and deleting gates that end up unreferenced.  Returns deleted node ids.
        """
        if self._kind[node] not in (AND, LATCH):
            raise AigError(f"can only replace AND or latch nodes, got {KIND_NAMES[self._kind[node]]}")
        if lit_node(new_lit) == node:
            raise AigError("cannot replace a node with itself")
        deleted: list[int] = []
        cascade: list[int] = []
        tasks = deque()

        def enqueue(old: int, nl: int) -> None:
            self._refs[lit_node(nl)] += 1  # pin target while queued
            tasks.append((old, nl))

        enqueue(node, new_lit)
        while tasks:
            old, nl = tasks.popleft()
            self._refs[lit_node(nl)] -= 1
            nl = self.resolve(nl)
            tgt = lit_node(nl)
            if self._kind[old] == AND:
                # drop the drained node's hash identity now: a rewired consumer
                # may reproduce its exact structure and must become the new
                # owner of that key rather than merge back into `old`
                key = (self._f0[old], self._f1[old])
                if self._strash.get(key) == old:
                    del self._strash[key]
            # move PO references
            for slot in sorted(self._n2pos.get(old, ())):
                self.set_po(slot, nl ^ (self._po[slot] & 1))
            # move gate/latch references
            for c in sorted(self._fanout.get(old, ())):
                k = self._kind[c]
                if k == DEAD:
                    continue
                if k == LATCH:
                    cur = self._f0[c]
                    self._f0[c] = nl ^ (cur & 1)
                    self._fanout[old].discard(c)
                    self._refs[old] -= 1
                    self._fanout[tgt].add(c)
                    self._refs[tgt] += 1
                    continue
                # AND consumer: substitute and re-canonicalize
                key = (self._f0[c], self._f1[c])
                if self._strash.get(key) == c:
                    del self._strash[key]
                a, b = key
                if lit_node(a) == old:
                    a = nl ^ (a & 1)
                else:
                    b = nl ^ (b & 1)
                if a > b:
                    a, b = b, a
                alias_to = None
                if a == 0:
                    alias_to = 0
                elif a == 1:
                    alias_to = b
                elif lit_node(a) == lit_node(b):
                    alias_to = a if a == b else 0
                else:
                    hit = self._strash.get((a, b))
                    if hit is not None and hit != c:
                        alias_to = lit(hit)
                if alias_to is None:
                    self._f0[c] = a
                    self._f1[c] = b
                    self._strash[(a, b)] = c
                    self._fanout[old].discard(c)
                    self._refs[old] -= 1
                    self._fanout[tgt].add(c)
                    self._refs[tgt] += 1
                else:
                    # c collapses; release both of its (old) fanins and forward it
                    for f in key:
                        fn = lit_node(f)
                        self._refs[fn] -= 1
                        self._fanout[fn].discard(c)
                        if self._refs[fn] == 0 and self._kind[fn] == AND and fn != old:
                            cascade.append(fn)
                    self._kind[c] = DEAD
                    self._n_live_ands -= 1
                    self._alias[c] = alias_to
                    deleted.append(c)
                    enqueue(c, alias_to)
            if self._kind[old] == AND and self._refs[old] == 0:
                self._kill_and(old, cascade, deleted)
            self._run_cascade(cascade, deleted)
        self.version += 1
        return deleted

    def cleanup(self) -> int:
        """Remove every node unreachable from POs and latch next-states."""
        live = self.live_nodes()
        removed = 0
        for n in range(len(self._kind) - 1, 0, -1):
            if self._kind[n] == AND and n not in live:
                key = (self._f0[n], self._f1[n])
                if self._strash.get(key) == n:
                    del self._strash[key]
                for f in key:
                    fn = lit_node(f)
                    self._refs[fn] -= 1
                    self._fanout[fn].discard(n)
                self._kind[n] = DEAD
                self._n_live_ands -= 1
                removed += 1
        if removed:
            self.version += 1
        return removed

    def remove_latch(self, latch: int) -> None:
        """Drop a latch whose output is no longer used (retiming helper)."""
        if self._kind[latch] != LATCH:
            raise AigError(f"node {latch} is not a latch")
        if self._refs[latch] != 0:
            raise AigError(f"latch {latch} still has {self._refs[latch]} references")
        deleted: list[int] = []
        cascade: list[int] = []
        self._release_fanins(latch, cascade)
        self._run_cascade(cascade, deleted)
        self._kind[latch] = DEAD
        self._latches.remove(latch)
        del self._latch_init[latch]
        self.version += 1

    # ------------------------------------------------------------------
    # misc

    def clone(self) -> "Aig":
        g = Aig.__new__(Aig)
        g.name = self.name
        g._kind = list(self._kind)
        g._f0 = list(self._f0)
        g._f1 = list(self._f1)
        g._refs = list(self._refs)
        g._pis = list(self._pis)
        g._latches = list(self._latches)
        g._latch_init = dict(self._latch_init)
        g._po = list(self._po)
        g._po_names = list(self._po_names)
        g._names = dict(self._names)
        g._strash = dict(self._strash)
        g._fanout = {n: set(s) for n, s in self._fanout.items()}
        g._n2pos = {n: set(s) for n, s in self._n2pos.items()}
        g._alias = dict(self._alias)
        g._n_live_ands = self._n_live_ands
        g.version = self.version
        return g

    def check(self) -> None:
        """Structural self-check used by the tests; raises AigError on corruption."""
        for n in range(len(self._kind)):
            k = self._kind[n]
            if k == AND:
                a, b = self._f0[n], self._f1[n]
                if not (a < b and lit_node(a) != lit_node(b)):
                    raise AigError(f"node {n}: fanins not canonical: {a}, {b}")
                for f in (a, b):
                    if self._kind[lit_node(f)] == DEAD:
                        raise AigError(f"node {n}: dead fanin {f}")
                if self._strash.get((a, b)) != n:
                    raise AigError(f"node {n}: missing from strash table")
        refs = [0] * len(self._kind)
        for n in range(len(self._kind)):
            k = self._kind[n]
            if k == AND:
                refs[lit_node(self._f0[n])] += 1
                refs[lit_node(self._f1[n])] += 1
            elif k == LATCH:
                refs[lit_node(self._f0[n])] += 1
        for l in self._po:
            refs[lit_node(l)] += 1
        for n in range(len(self._kind)):
            if self._kind[n] != DEAD and refs[n] != self._refs[n]:
                raise AigError(f"node {n}: ref count {self._refs[n]} != actual {refs[n]}")
        self.topo_order()  # raises on cycles
