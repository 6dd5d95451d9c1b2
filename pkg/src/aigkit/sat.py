"""Small complete SAT solver: CDCL with two watched literals and 1UIP learning.

Clauses are lists of nonzero ints, DIMACS convention (negative = complemented
variable).  Variables are 1..n_vars.
"""

import heapq
from typing import NamedTuple, Optional

from .errors import AigError


class SatResult(NamedTuple):
    status: str  # "sat" | "unsat" | "unknown"
    model: Optional[dict]  # var -> bool, only for "sat"


class CnfFormula:
    def __init__(self, n_vars: int = 0):
        self.n_vars = n_vars
        self.clauses: list[list[int]] = []

    def add_clause(self, lits) -> None:
        lits = list(lits)
        for l in lits:
            if l == 0:
                raise AigError("0 is not a valid CNF literal")
            self.n_vars = max(self.n_vars, abs(l))
        self.clauses.append(lits)

    def new_var(self) -> int:
        self.n_vars += 1
        return self.n_vars

    def to_dimacs(self) -> str:
        out = [f"p cnf {self.n_vars} {len(self.clauses)}"]
        for c in self.clauses:
            out.append(" ".join(str(l) for l in c) + " 0")
        return "\n".join(out) + "\n"


def check_model(clauses, model) -> bool:
    for c in clauses:
        if not any(model.get(abs(l), False) == (l > 0) for l in c):
            return False
    return True


def sat_solve(formula, n_vars: Optional[int] = None, max_conflicts: Optional[int] = None) -> SatResult:
    """Complete search within max_conflicts; returns "unknown" past the limit.

    `formula` is a CnfFormula or plain list of clauses.
    """
    if isinstance(formula, CnfFormula):
        raw = formula.clauses
        nv = formula.n_vars
    else:
        raw = formula
        nv = n_vars if n_vars is not None else max((abs(l) for c in raw for l in c), default=0)

    clauses: list[list[int]] = []
    units: list[int] = []
    for c in raw:
        lits = sorted(set(c), key=abs)
        if not lits:
            return SatResult("unsat", None)
        if any(-l in lits for l in lits):
            continue  # tautology
        if len(lits) == 1:
            units.append(lits[0])
        clauses.append(lits)

    assigns = [-1] * (nv + 1)  # -1 unassigned, 0 false, 1 true
    reason: list[Optional[int]] = [None] * (nv + 1)
    level = [0] * (nv + 1)
    activity = [0.0] * (nv + 1)
    polarity = [0] * (nv + 1)
    trail: list[int] = []
    trail_lim: list[int] = []
    watches: dict[int, list[int]] = {}

    def value(lit: int) -> int:
        v = assigns[abs(lit)]
        if v < 0:
            return -1
        return v if lit > 0 else 1 - v

    def watch(lit: int, ci: int) -> None:
        watches.setdefault(lit, []).append(ci)

    for ci, c in enumerate(clauses):
        if len(c) >= 2:
            watch(c[0], ci)
            watch(c[1], ci)

    def enqueue(lit: int, why: Optional[int]) -> bool:
        v = abs(lit)
        if assigns[v] >= 0:
            return value(lit) == 1
        assigns[v] = 1 if lit > 0 else 0
        reason[v] = why
        level[v] = len(trail_lim)
        trail.append(lit)
        return True

    qhead = 0

    def propagate() -> Optional[int]:
        nonlocal qhead
        while qhead < len(trail):
            p = trail[qhead]
            qhead += 1
            falsified = -p
            ws = watches.get(falsified)
            if not ws:
                continue
            keep = []
            i = 0
            conflict = None
            while i < len(ws):
                ci = ws[i]
                i += 1
                c = clauses[ci]
                # ensure falsified lit is at position 1
                if c[0] == falsified:
                    c[0], c[1] = c[1], c[0]
                if value(c[0]) == 1:
                    keep.append(ci)
                    continue
                moved = False
                for j in range(2, len(c)):
                    if value(c[j]) != 0:
                        c[1], c[j] = c[j], c[1]
                        watch(c[1], ci)
                        moved = True
                        break
                if moved:
                    continue
                keep.append(ci)
                if value(c[0]) == 0:
                    keep.extend(ws[i:])
                    conflict = ci
                    break
                enqueue(c[0], ci)
            watches[falsified] = keep
            if conflict is not None:
                return conflict
        return None

    var_inc = 1.0
    heap = [(0.0, v) for v in range(1, nv + 1)]
    heapq.heapify(heap)

    def bump(v: int) -> None:
        nonlocal var_inc
        activity[v] += var_inc
        if activity[v] > 1e100:
            for u in range(1, nv + 1):
                activity[u] *= 1e-100
            var_inc *= 1e-100
        heapq.heappush(heap, (-activity[v], v))

    def analyze(confl: int):
        learnt = []
        seen = [False] * (nv + 1)
        counter = 0
        p = None
        index = len(trail) - 1
        cur_level = len(trail_lim)
        first = True
        while True:
            c = clauses[confl]
            start = 0 if first else 1
            if not first and c[0] != p:
                # reason clause: asserted literal should be first
                for j, l in enumerate(c):
                    if l == p:
                        c[0], c[j] = c[j], c[0]
                        break
            for l in c[start:]:
                v = abs(l)
                if not seen[v] and level[v] > 0:
                    seen[v] = True
                    bump(v)
                    if level[v] >= cur_level:
                        counter += 1
                    else:
                        learnt.append(l)
            first = False
            while not seen[abs(trail[index])]:
                index -= 1
            p_lit = trail[index]
            p = p_lit
            v = abs(p_lit)
            seen[v] = False
            counter -= 1
            index -= 1
            if counter == 0:
                learnt.insert(0, -p_lit)
                break
            confl = reason[v]
        back = 0
        if len(learnt) > 1:
            back = max(level[abs(l)] for l in learnt[1:])
        return learnt, back

    def cancel_until(lvl: int) -> None:
        nonlocal qhead
        while trail_lim and len(trail_lim) > lvl:
            lim = trail_lim.pop()
            while len(trail) > lim:
                lit = trail.pop()
                v = abs(lit)
                polarity[v] = assigns[v]
                assigns[v] = -1
                reason[v] = None
                heapq.heappush(heap, (-activity[v], v))
        qhead = len(trail)

    # top-level units
    for u in units:
        if not enqueue(u, None):
            return SatResult("unsat", None)
    if propagate() is not None:
        return SatResult("unsat", None)

    conflicts = 0
    luby_base = 256
    restart_at = luby_base
    restarts = 0

    def luby(i: int) -> int:
        k = 1
        while (1 << (k + 1)) <= i + 1:
            k += 1
        if (1 << (k + 1)) == i + 2:
            return 1 << k
        return luby(i - (1 << k) + 1)

    order = list(range(1, nv + 1))
    while True:
        confl = propagate()
        if confl is not None:
            conflicts += 1
            if max_conflicts is not None and conflicts > max_conflicts:
                return SatResult("unknown", None)
            if not trail_lim:
                return SatResult("unsat", None)
            learnt, back = analyze(confl)
            cancel_until(back)
            ci = len(clauses)
            clauses.append(learnt)
            if len(learnt) >= 2:
                watch(learnt[0], ci)
                watch(learnt[1], ci)
            enqueue(learnt[0], ci if len(learnt) >= 2 else None)
            var_inc /= 0.95
            if conflicts >= restart_at:
                restarts += 1
                restart_at = conflicts + luby_base * luby(restarts)
                cancel_until(0)
            continue
        # pick a branching variable (lazy heap; stale entries are skipped)
        best = None
        while heap:
            _, v = heapq.heappop(heap)
            if assigns[v] < 0:
                best = v
                break
        if best is None and any(assigns[v] < 0 for v in order):
            best = next(v for v in order if assigns[v] < 0)
        if best is None:
            model = {v: assigns[v] == 1 for v in range(1, nv + 1)}
            if not check_model(raw, model):
                raise AigError("internal error: model does not satisfy the formula")
            return SatResult("sat", model)
        trail_lim.append(len(trail))
        enqueue(best if polarity[best] == 1 else -best, None)
