"""NPN canonicalization of small truth tables.

A function tt over n vars is stored as a 2^n-bit int; bit m is the value at
the assignment whose binary expansion is m (var 0 least significant).

The transform convention: apply_npn(tt, perm, mask, out) is the table of

    g(y_0..y_{n-1}) = out XOR tt(z_0..z_{n-1}),  z_j = y_{perm[j]} XOR mask_j

The canonical form of f is the minimum table over all transforms of f, and
the recorded transform maps the canonical table back onto f.
"""

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .errors import AigError


def apply_npn(tt: int, n: int, perm, mask: int, out: bool) -> int:
    size = 1 << n
    res = 0
    for m in range(size):
        src = 0
        for j in range(n):
            bit = ((m >> perm[j]) & 1) ^ ((mask >> j) & 1)
            src |= bit << j
        if (tt >> src) & 1:
            res |= 1 << m
    if out:
        res ^= (1 << size) - 1
    return res


@dataclass(frozen=True)
class NpnClass:
    canonical_tt: int
    var_count: int
    perm: tuple
    input_mask: int
    output_compl: bool

    def reconstruct(self) -> int:
        """Apply the stored transform to the canonical table: the original function."""
        return apply_npn(self.canonical_tt, self.var_count, self.perm, self.input_mask, self.output_compl)


class _NpnTables:
    """Full canonicalization tables for one variable count."""

    def __init__(self, n: int):
        size = 1 << n
        space = 1 << size
        self.n = n
        self.perms = sorted(permutations(range(n))) if n else [()]
        t = np.arange(space, dtype=np.uint32 if size <= 16 else np.uint64)
        canon = None
        tidx = None
        full = np.uint32(space - 1)
        k = 0
        for perm in self.perms:
            for mask in range(1 << n):
                # bit m of the transformed table comes from bit src(m) of t
                srcpos = np.zeros(size, dtype=np.int64)
                for m in range(size):
                    s = 0
                    for j in range(n):
                        s |= (((m >> perm[j]) & 1) ^ ((mask >> j) & 1)) << j
                    srcpos[m] = s
                trans = np.zeros(space, dtype=t.dtype)
                for m in range(size):
                    trans |= ((t >> np.uint32(srcpos[m])) & 1).astype(t.dtype) << np.uint32(m)
                for out in (0, 1):
                    cand = trans ^ (full if out else 0)
                    if canon is None:
                        canon = cand.copy()
                        tidx = np.full(space, k * 2 + out, dtype=np.int32)
                    else:
                        better = cand < canon
                        canon[better] = cand[better]
                        tidx[better] = k * 2 + out
                k += 1
        self.canon = canon
        self.tidx = tidx

    def decode(self, idx: int):
        n = self.n
        out = idx & 1
        k = idx >> 1
        nmasks = 1 << n
        perm = self.perms[k // nmasks]
        mask = k % nmasks
        return perm, mask, bool(out)


_tables: dict[int, _NpnTables] = {}


def _get_tables(n: int) -> _NpnTables:
    tab = _tables.get(n)
    if tab is None:
        tab = _NpnTables(n)
        _tables[n] = tab
    return tab


def npn_canonicalize(tt: int, n: int) -> NpnClass:
    """Canonical NPN representative of an n-input function, n <= 4."""
    if n > 4 or n < 0:
        raise AigError(f"npn canonicalization supports up to 4 inputs, got {n}")
    size = 1 << n
    if tt >> size:
        raise AigError("truth table has bits beyond 2^n")
    tab = _get_tables(n)
    canon = int(tab.canon[tt])
    perm, mask, out = tab.decode(int(tab.tidx[tt]))
    # invert: canonical(y) = out ^ f(z), z_j = y_{perm[j]} ^ mask_j
    invp = [0] * n
    invm = 0
    for j in range(n):
        invp[perm[j]] = j
    invp = tuple(invp)
    for i in range(n):
        invm |= ((mask >> invp[i]) & 1) << i
    return NpnClass(canonical_tt=canon, var_count=n, perm=invp, input_mask=invm, output_compl=out)


def npn_canonical_tt(tt: int, n: int) -> int:
    """Just the canonical table (cheap lookup)."""
    return int(_get_tables(n).canon[tt])


def pad_truth_table(tt: int, n: int, to_n: int) -> int:
    """Replicate a table so it reads as a function of to_n vars ignoring the new ones."""
    size = 1 << n
    for _ in range(to_n - n):
        tt |= tt << size
        size <<= 1
    return tt
