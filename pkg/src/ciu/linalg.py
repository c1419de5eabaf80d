"""Sparse row echelon forms over F_p.

Rows are dicts ``{column: residue}``; columns may be any mutually
comparable keys.  The pivot of a row is its smallest column.
"""

from __future__ import annotations

import random


class SparseEchelon:
    """Incrementally maintained echelon basis of a row space."""

    def __init__(self, p: int):
        self.p = p
        self.pivots = {}

    def __len__(self):
        return len(self.pivots)

    def reduce(self, row: dict) -> dict:
        """Reduce ``row`` against the stored pivots; returns a new dict."""
        p = self.p
        row = {k: v % p for k, v in row.items() if v % p}
        pivots = self.pivots
        done = {}
        while row:
            col = min(row)
            c = row.pop(col)
            piv = pivots.get(col)
            if piv is None:
                done[col] = c
                continue
            for k, v in piv.items():
                if k == col:
                    continue
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return done

    def add(self, row: dict) -> bool:
        """Insert ``row``; return True iff it was independent of the stored rows."""
        r = self.reduce(row)
        if not r:
            return False
        col = min(r)
        inv = pow(r[col], -1, self.p)
        self.pivots[col] = {k: v * inv % self.p for k, v in r.items()}
        return True


def nullspace(rows: list, ncols: int, p: int) -> list:
    """Basis of ``{x : row . x = 0 for every row}`` with columns ``0..ncols-1``.

    Each returned vector is a list of ``ncols`` residues.
    """
    # fully reduced row echelon form
    pivots = {}
    for row in rows:
        r = {k: v % p for k, v in row.items() if v % p}
        for col in sorted(pivots):
            if col in r:
                c = r[col]
                for k, v in pivots[col].items():
                    nv = (r.get(k, 0) - c * v) % p
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        if not r:
            continue
        col = min(r)
        inv = pow(r[col], -1, p)
        r = {k: v * inv % p for k, v in r.items()}
        for other in pivots.values():
            if col in other:
                c = other[col]
                for k, v in r.items():
                    nv = (other.get(k, 0) - c * v) % p
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivots[col] = r
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for col, r in pivots.items():
            v = r.get(f, 0)
            if v:
                vec[col] = (-v) % p
        basis.append(vec)
    return basis


def random_combination(basis: list, p: int, rng: random.Random) -> list:
    if not basis:
        return []
    n = len(basis[0])
    out = [0] * n
    for vec in basis:
        c = rng.randrange(1, p)
        for i, v in enumerate(vec):
            if v:
                out[i] = (out[i] + c * v) % p
    return out
