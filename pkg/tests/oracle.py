"""Macaulay-matrix oracle, independent of the Groebner engine.

The degree-t piece of a homogeneous ideal is spanned by the products
m * g with m a monomial of degree t - deg g; its dimension is the rank of
that coefficient matrix.  Elimination here is plain row reduction mod p.

When the generators are homogeneous for a finer grading (every weight
vector w with w . (a - b) = 0 for any two exponents a, b of one generator)
the matrix splits into blocks by weight, which keeps large rings usable.
"""

from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb, lcm


def monomials(nvars, d):
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def count_monomials(nvars, d):
    return comb(nvars + d - 1, d) if d >= 0 else 0


def _nullspace_integer(rows, n):
    """Integer basis of {w : r . w = 0 for all r}, by Fraction elimination."""
    M = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        w = [Fraction(0)] * n
        w[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            w[pc] = -M[i][fc]
        den = lcm(*[v.denominator for v in w])
        basis.append(tuple(int(v * den) for v in w))
    return basis


class Grading:
    """Finest weight grading making all given polynomials homogeneous."""

    def __init__(self, polys, nvars):
        diffs = []
        for f in polys:
            exps = list(f.terms)
            for e in exps[1:]:
                diffs.append([a - b for a, b in zip(e, exps[0])])
        self.weights = _nullspace_integer(diffs, nvars) if diffs else [
            tuple(int(i == j) for j in range(nvars)) for i in range(nvars)
        ]

    def key(self, e):
        return tuple(sum(w * x for w, x in zip(ws, e)) for ws in self.weights)


class RowSpace:
    """Echelon form of a set of sparse rows over F_p."""

    def __init__(self, p):
        self.p = p
        self.pivots = {}

    def reduce(self, row):
        p = self.pivots
        row = {k: v % self.p for k, v in row.items() if v % self.p}
        while row:
            lead = max(row)
            if lead not in p:
                return row
            piv = p[lead]
            c = row[lead]
            for k, v in piv.items():
                nv = (row.get(k, 0) - c * v) % self.p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        lead = max(row)
        inv = pow(row[lead], -1, self.p)
        self.pivots[lead] = {k: v * inv % self.p for k, v in row.items()}
        return True

    @property
    def rank(self):
        return len(self.pivots)


class Macaulay:
    """Degree pieces of the ideal generated by homogeneous ``gens``."""

    def __init__(self, gens, ring):
        self.gens = [g for g in gens if g]
        self.ring = ring
        self.grading = Grading(self.gens, ring.nvars)
        self._cache = {}

    def _blocks(self, t):
        if t in self._cache:
            return self._cache[t]
        n, p = self.ring.nvars, self.ring.p
        key = self.grading.key
        blocks = {}
        for g in self.gens:
            k = t - g.degree()
            if k < 0:
                continue
            gk = key(next(iter(g.terms)))
            for m in monomials(n, k):
                row = {tuple(a + b for a, b in zip(m, e)): c for e, c in g.terms.items()}
                bk = tuple(a + b for a, b in zip(gk, key(m)))
                space = blocks.get(bk)
                if space is None:
                    space = blocks[bk] = RowSpace(p)
                space.add(row)
        self._cache[t] = blocks
        return blocks

    def hf(self, t) -> int:
        """dim_k (R/I)_t by Macaulay-matrix corank."""
        if t < 0:
            return 0
        return count_monomials(self.ring.nvars, t) - sum(s.rank for s in self._blocks(t).values())

    def member(self, f) -> bool:
        if not f:
            return True
        if not f.is_homogeneous():
            raise ValueError("oracle membership needs a homogeneous form")
        blocks = self._blocks(f.degree())
        parts = {}
        for e, c in f.terms.items():
            parts.setdefault(self.grading.key(e), {})[e] = c
        for bk, part in parts.items():
            space = blocks.get(bk)
            if space is None or space.reduce(part):
                return False
        return True


def hf(gens, ring, t) -> int:
    return Macaulay(gens, ring).hf(t)


def member(f, gens, ring) -> bool:
    """Membership of a homogeneous form f in the ideal of homogeneous gens."""
    return Macaulay(gens, ring).member(f)
