"""Polynomial matrices, determinants and pfaffians.

Indices are 1-based throughout this module, following the usual deletion
notation: ``M.delete({1}, {2})`` removes row 1 and column 2, and
``M.principal(i, j)`` removes rows and columns ``i`` and ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import CIUError, PfaffianError, RingMismatch
from .ring import Poly, Ring, exact_divide

COFACTOR_MAX = 8
# dense arrays are used when the Kronecker index range stays below this
DENSE_MAX_LENGTH = 1 << 15


class PolyMatrix:
    """Rectangular matrix of polynomials over one ring."""

    def __init__(self, ring: Ring, rows):
        rows = [[ring.const(e) if isinstance(e, int) else e for e in row] for row in rows]
        if rows and len({len(r) for r in rows}) != 1:
            raise CIUError("matrix rows must have equal length")
        for row in rows:
            for e in row:
                if e.ring != ring:
                    raise RingMismatch("matrix entries must share one ring")
        self.ring = ring
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = len(rows[0]) if rows else 0

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __eq__(self, other):
        return isinstance(other, PolyMatrix) and self.rows == other.rows

    def __repr__(self):
        return f"PolyMatrix({[[str(e) for e in r] for r in self.rows]})"

    def is_square(self):
        return self.nrows == self.ncols

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(self.ring, [list(col) for col in zip(*self.rows)]) if self.rows else self

    def delete(self, rows=(), cols=()) -> "PolyMatrix":
        """Submatrix without the given (1-based) rows and columns."""
        rows, cols = set(rows), set(cols)
        for i in rows:
            if not 1 <= i <= self.nrows:
                raise IndexError(f"row {i} out of range 1..{self.nrows}")
        for j in cols:
            if not 1 <= j <= self.ncols:
                raise IndexError(f"column {j} out of range 1..{self.ncols}")
        keep_c = [j for j in range(self.ncols) if j + 1 not in cols]
        out = [[row[j] for j in keep_c] for i, row in enumerate(self.rows) if i + 1 not in rows]
        if not out and keep_c:
            out = []
        return PolyMatrix(self.ring, out)

    def principal(self, *idx) -> "PolyMatrix":
        return self.delete(idx, idx)

    def mul(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise CIUError("shape mismatch in matrix product")
        zero = self.ring.zero
        out = []
        for row in self.rows:
            new = []
            for j in range(other.ncols):
                acc = zero
                for k, a in enumerate(row):
                    b = other.rows[k][j]
                    if a and b:
                        acc = acc + a * b
                new.append(acc)
            out.append(new)
        return PolyMatrix(self.ring, out)

    def apply(self, vec) -> list:
        """Matrix times column vector."""
        zero = self.ring.zero
        out = []
        for row in self.rows:
            acc = zero
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def is_alternating(self) -> bool:
        if not self.is_square():
            return False
        n = self.nrows
        for i in range(n):
            if self.rows[i][i]:
                return False
            for j in range(i + 1, n):
                if self.rows[j][i] != -self.rows[i][j]:
                    return False
        return True


class AlternatingMatrix(PolyMatrix):
    """Square matrix with zero diagonal and ``A^T = -A``."""

    def __init__(self, ring, rows):
        super().__init__(ring, rows)
        if not self.is_alternating():
            raise PfaffianError("matrix is not alternating")

    @classmethod
    def from_upper(cls, ring, n, upper: dict) -> "AlternatingMatrix":
        """Build from ``{(i, j): entry}`` with 1-based ``i < j``."""
        rows = [[ring.zero] * n for _ in range(n)]
        for (i, j), e in upper.items():
            if not 1 <= i < j <= n:
                raise IndexError(f"bad upper index {(i, j)}")
            rows[i - 1][j - 1] = e
            rows[j - 1][i - 1] = -e
        return cls(ring, rows)

    def check_degrees(self, pi, s) -> bool:
        """Every nonzero entry (i, j) has degree ``s - pi_i - pi_j``."""
        n = self.nrows
        for i in range(n):
            for j in range(n):
                e = self.rows[i][j]
                if e and not (e.is_homogeneous() and e.degree() == s - pi[i] - pi[j]):
                    return False
        return True


def delete(M: PolyMatrix, rows=(), cols=()) -> PolyMatrix:
    return M.delete(rows, cols)


def sgn(seq) -> int:
    """Sign of the permutation sorting ``seq``."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        raise ValueError(f"sgn needs distinct entries, got {seq}")
    inversions = sum(1 for a in range(len(seq)) for b in range(a + 1, len(seq)) if seq[a] > seq[b])
    return -1 if inversions % 2 else 1


def _sgn0(seq):
    return 0 if len(set(seq)) != len(seq) else sgn(seq)


class _Dense:
    """Kronecker-indexed dense coefficient arrays for one computation.

    Exponent vector ``e`` maps to ``sum e_i B^i`` with ``B`` above every
    degree that can occur, so products never wrap around.
    """

    def __init__(self, ring, bound):
        self.ring = ring
        self.B = bound + 1
        self.length = self.B ** ring.nvars
        self.powers = [self.B ** i for i in range(ring.nvars)]

    @classmethod
    def for_rows(cls, rows, ring, slack=0):
        bound = slack + sum(max((e.degree() for e in row if e), default=0) for row in rows)
        if (bound + 1) ** ring.nvars > DENSE_MAX_LENGTH:
            return None
        return cls(ring, bound)

    def sparse(self, f):
        return [(sum(a * b for a, b in zip(e, self.powers)), c) for e, c in f.terms.items()]

    def dense(self, f):
        arr = np.zeros(self.length, dtype=np.int64)
        for k, c in self.sparse(f):
            arr[k] = c
        return arr

    def mul_add(self, acc, entry, arr, sign):
        """``acc += sign * entry * arr`` (entry as sparse pairs), reduced mod p."""
        p = self.ring.p
        n = self.length
        for k, c in entry:
            if sign < 0:
                c = p - c
            acc[k:] += c * arr[: n - k]
        np.remainder(acc, p, out=acc)

    def to_poly(self, arr):
        terms = {}
        B, nv = self.B, self.ring.nvars
        for k in np.flatnonzero(arr).tolist():
            e = []
            x = k
            for _ in range(nv):
                e.append(x % B)
                x //= B
            terms[tuple(e)] = int(arr[k])
        return Poly(self.ring, terms)


def _det_dense(rows, ring, D):
    n = len(rows)
    sp = [[D.sparse(e) if e else None for e in row] for row in rows]

    @lru_cache(maxsize=None)
    def minor(mask):
        cols = [j for j in range(n) if mask >> j & 1]
        r = n - len(cols)
        if len(cols) == 1:
            e = rows[r][cols[0]]
            return D.dense(e) if e else None
        acc = None
        sign = 1
        for j in cols:
            a = sp[r][j]
            if a:
                sub = minor(mask & ~(1 << j))
                if sub is not None:
                    if acc is None:
                        acc = np.zeros(D.length, dtype=np.int64)
                    D.mul_add(acc, a, sub, sign)
            sign = -sign
        if acc is None or not acc.any():
            return None
        return acc

    out = minor((1 << n) - 1)
    return ring.zero if out is None else D.to_poly(out)


def _det_cofactor(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one
    D = _Dense.for_rows(rows, ring)
    if D is not None:
        return _det_dense(rows, ring, D)
    return _det_sparse(rows, ring)


def _det_sparse(rows, ring):
    n = len(rows)
    zero = ring.zero

    @lru_cache(maxsize=None)
    def minor(mask):
        # rows r.. n-1 against the columns in mask, r = n - popcount(mask)
        cols = [j for j in range(n) if mask >> j & 1]
        r = n - len(cols)
        if len(cols) == 1:
            return rows[r][cols[0]]
        acc = zero
        sign = 1
        for j in cols:
            a = rows[r][j]
            if a:
                sub = minor(mask & ~(1 << j))
                if sub:
                    term = a * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return minor((1 << n) - 1)


def _det_bareiss(rows, ring):
    n = len(rows)
    if n == 0:
        return ring.one
    M = [list(r) for r in rows]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        if not M[k][k]:
            swap = next((i for i in range(k + 1, n) if M[i][k]), None)
            if swap is None:
                return ring.zero
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[k][k] * M[i][j] - M[i][k] * M[k][j]
                q = exact_divide(num, prev)
                if q is None:
                    raise CIUError("fraction-free elimination produced a non-exact division")
                M[i][j] = q
            M[i][k] = ring.zero
        prev = M[k][k]
    det = M[n - 1][n - 1]
    return det if sign > 0 else -det


def determinant(M: PolyMatrix, method: str = "auto") -> Poly:
    """Exact determinant: memoized cofactor expansion up to size 8, Bareiss above.

    Cofactor expansion runs on dense arrays when the ring is small enough;
    ``method="sparse"`` forces the dictionary implementation.
    """
    if not M.is_square():
        raise CIUError("determinant of a non-square matrix")
    if method == "auto":
        method = "cofactor" if M.nrows <= COFACTOR_MAX else "bareiss"
    if method == "cofactor":
        return _det_cofactor(M.rows, M.ring)
    if method == "sparse":
        return _det_sparse(M.rows, M.ring) if M.nrows else M.ring.one
    if method == "bareiss":
        return _det_bareiss(M.rows, M.ring)
    raise ValueError(f"unknown determinant method {method!r}")


def pfaffian(A: PolyMatrix) -> Poly:
    """Pfaffian by first-row expansion; ``pf [[0, a], [-a, 0]] = a``."""
    if not A.is_square():
        raise PfaffianError("pfaffian of a non-square matrix")
    if A.nrows % 2:
        raise PfaffianError("pfaffian needs an even-size matrix")
    if not A.is_alternating():
        raise PfaffianError("pfaffian needs an alternating matrix")
    return _pf_rows(A.rows, A.ring)


def _pf_rows(rows, ring):
    D = _Dense.for_rows(rows, ring) if rows else None
    if D is not None:
        return _pf_dense(rows, ring, D)
    return _pf_sparse(rows, ring)


def _pf_dense(rows, ring, D):
    n = len(rows)
    sp = [[D.sparse(e) if e else None for e in row] for row in rows]
    one = D.dense(ring.one)

    @lru_cache(maxsize=None)
    def pf(mask):
        if not mask:
            return one
        idx = [j for j in range(n) if mask >> j & 1]
        first = idx[0]
        acc = None
        sign = 1
        for j in idx[1:]:
            a = sp[first][j]
            if a:
                sub = pf(mask & ~(1 << first) & ~(1 << j))
                if sub is not None:
                    if acc is None:
                        acc = np.zeros(D.length, dtype=np.int64)
                    D.mul_add(acc, a, sub, sign)
            sign = -sign
        if acc is None or not acc.any():
            return None
        return acc

    out = pf((1 << n) - 1)
    return ring.zero if out is None else D.to_poly(out)


def _pf_sparse(rows, ring):
    n = len(rows)
    zero = ring.zero

    @lru_cache(maxsize=None)
    def pf(mask):
        if not mask:
            return ring.one
        idx = [j for j in range(n) if mask >> j & 1]
        first = idx[0]
        acc = zero
        sign = 1
        for j in idx[1:]:
            a = rows[first][j]
            if a:
                sub = pf(mask & ~(1 << first) & ~(1 << j))
                if sub:
                    term = a * sub
                    acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return pf((1 << n) - 1)


def _pf_deleted(A: PolyMatrix, idx, cache=None) -> Poly:
    """pf of A with rows/cols ``idx`` removed (0 when an index repeats)."""
    if len(set(idx)) != len(idx):
        return A.ring.zero
    if cache is not None:
        return cache.pf_deleted(idx)
    return pfaffian(A.principal(*idx))


class MinorCache:
    """Shared memo for the minors and principal pfaffians of one matrix.

    Minors are expanded along the first remaining row and keyed by
    ``(row mask, column mask)``, so all the deletions of one matrix reuse
    each other's subproblems. Values live in trimmed dense arrays when the
    ring is small enough, as sparse polynomials otherwise.
    """

    def __init__(self, M: PolyMatrix, dense: bool = True, slack: int = 0):
        # slack: extra degree room for bordering the matrix later
        self.M = M
        self.ring = M.ring
        self.n = M.nrows
        self.slack = slack
        self.D = _Dense.for_rows(M.rows, M.ring, slack) if dense and M.rows else None
        if self.D is not None:
            self._entries = [[self.D.sparse(e) if e else None for e in row] for row in M.rows]
            self._one = np.ones(1, dtype=np.int64)
        self._det = {}
        self._pf = {}
        self._polys = {}

    # dense arrays are trimmed after their last nonzero; None stands for 0
    def _combine(self, terms):
        p = self.ring.p
        size = max(len(arr) + entry[-1][0] for entry, arr, _ in terms)
        acc = np.zeros(size, dtype=np.int64)
        for entry, arr, sign in terms:
            m = len(arr)
            for k, c in entry:
                if sign < 0:
                    c = p - c
                acc[k:k + m] += c * arr
        np.remainder(acc, p, out=acc)
        nz = np.flatnonzero(acc)
        if not len(nz):
            return None
        return acc[: nz[-1] + 1]

    def _det_raw(self, rowmask, colmask):
        key = (rowmask, colmask)
        if key in self._det:
            return self._det[key]
        if not rowmask:
            out = self._one if self.D is not None else self.ring.one
        else:
            r = (rowmask & -rowmask).bit_length() - 1
            rest = rowmask & ~(1 << r)
            out = self._expand(r, rest, colmask, 0, self._det_raw)
        self._det[key] = out
        return out

    def _pf_raw(self, mask):
        if mask in self._pf:
            return self._pf[mask]
        if not mask:
            out = self._one if self.D is not None else self.ring.one
        else:
            first = (mask & -mask).bit_length() - 1
            rest = mask & ~(1 << first)
            out = self._expand(first, rest, rest, first + 1, None)
        self._pf[mask] = out
        return out

    def _expand(self, r, rest, colmask, start, det):
        """Expand along row r over the columns in colmask (from ``start``)."""
        sign = 1
        if self.D is not None:
            terms = []
            for j in range(start, self.M.ncols):
                if not colmask >> j & 1:
                    continue
                a = self._entries[r][j]
                if a:
                    rem = colmask & ~(1 << j)
                    sub = det(rest, rem) if det else self._pf_raw(rem)
                    if sub is not None:
                        terms.append((a, sub, sign))
                sign = -sign
            return self._combine(terms) if terms else None
        out = self.ring.zero
        for j in range(start, self.M.ncols):
            if not colmask >> j & 1:
                continue
            a = self.M.rows[r][j]
            if a:
                rem = colmask & ~(1 << j)
                sub = det(rest, rem) if det else self._pf_raw(rem)
                if sub:
                    t = a * sub
                    out = out + t if sign > 0 else out - t
            sign = -sign
        return out

    def bordered_det(self, a, b) -> Poly:
        """``det [[0, a^T], [b, M]] = -a^T adj(M) b`` on the dense arrays."""
        n = self.n
        full = (1 << n) - 1
        D = self.D
        outer = []
        for j in range(n):
            if not b[j]:
                continue
            terms = []
            for i in range(n):
                if a[i]:
                    sub = self._det_raw(full & ~(1 << j), full & ~(1 << i))
                    if sub is not None:
                        terms.append((D.sparse(a[i]), sub, 1 if (i + j) % 2 else -1))
            u = self._combine(terms) if terms else None
            if u is not None:
                outer.append((D.sparse(b[j]), u, 1))
        out = self._combine(outer) if outer else None
        return self.ring.zero if out is None else D.to_poly(out)

    def _poly(self, kind, key, raw):
        if self.D is None:
            return raw
        hit = self._polys.get((kind, key))
        if hit is None:
            hit = self.ring.zero if raw is None else self.D.to_poly(raw)
            self._polys[(kind, key)] = hit
        return hit

    def det(self, rowmask: int, colmask: int) -> Poly:
        return self._poly("det", (rowmask, colmask), self._det_raw(rowmask, colmask))

    def pf(self, mask: int) -> Poly:
        return self._poly("pf", mask, self._pf_raw(mask))

    def det_deleted(self, rows=(), cols=()) -> Poly:
        full_r = (1 << self.M.nrows) - 1
        full_c = (1 << self.M.ncols) - 1
        rm = full_r & ~sum(1 << (i - 1) for i in set(rows))
        cm = full_c & ~sum(1 << (j - 1) for j in set(cols))
        if bin(rm).count("1") != bin(cm).count("1"):
            raise CIUError("minor of a non-square submatrix")
        return self.det(rm, cm)

    def pf_product(self, i: int, j: int) -> Poly:
        """``pf M_(i) * pf M_(j)``, memoized (symmetric in i, j)."""
        key = ("prod", min(i, j), max(i, j))
        hit = self._polys.get(key)
        if hit is None:
            hit = self.pf_deleted((i,)) * self.pf_deleted((j,))
            self._polys[key] = hit
        return hit

    def pf_deleted(self, idx) -> Poly:
        if len(set(idx)) != len(idx):
            return self.ring.zero
        mask = ((1 << self.n) - 1) & ~sum(1 << (i - 1) for i in idx)
        if bin(mask).count("1") % 2:
            raise PfaffianError("pfaffian of an odd-size principal submatrix")
        return self.pf(mask)


@dataclass(frozen=True)
class SubPfaffians:
    """Signed submaximal pfaffians ``p_i = (-1)^i pf A_(i)`` and their degrees."""

    p: tuple
    degrees: tuple | None

    def __len__(self):
        return len(self.p)


def sub_pfaffians(A: PolyMatrix) -> SubPfaffians:
    if not A.is_square() or A.nrows % 2 == 0:
        raise PfaffianError("sub-pfaffians need an odd-size alternating matrix")
    n = A.nrows
    p = []
    for i in range(1, n + 1):
        v = pfaffian(A.principal(i))
        p.append(v if i % 2 == 0 else -v)
    degrees = None
    if all(x.is_homogeneous() for x in p):
        degrees = tuple(x.degree() for x in p)
    return SubPfaffians(tuple(p), degrees)


def check_cayley(A: PolyMatrix, i: int, j: int, cache: MinorCache | None = None) -> bool:
    """``det A_[i;j] == pf A_(i) * pf A_(j)`` for odd-size alternating A."""
    if cache is None:
        lhs = determinant(A.delete({i}, {j}))
        rhs = pfaffian(A.principal(i)) * pfaffian(A.principal(j))
    else:
        lhs = cache.det_deleted({i}, {j})
        rhs = cache.pf_product(i, j)
    return lhs == rhs


def heymans_sides(A: PolyMatrix, i, j, h, k, cache: MinorCache | None = None):
    """``det A_[i,j;h,k]`` and the two pfaffian expansions of it."""
    if cache is None:
        lhs = determinant(A.delete({i, j}, {h, k}))
    else:
        lhs = cache.det_deleted({i, j}, {h, k})
    pf = lambda idx: _pf_deleted(A, idx, cache)
    pre = sgn((i, j)) * sgn((h, k))
    first = (
        (pf((i, j, h)) * pf((k,))).scale(_sgn0((i, j, h)))
        - (pf((i, j, k)) * pf((h,))).scale(_sgn0((i, j, k)))
    ).scale(pre)
    second = (
        (pf((h, k, j)) * pf((i,))).scale(_sgn0((h, k, j)))
        - (pf((h, k, i)) * pf((j,))).scale(_sgn0((h, k, i)))
    ).scale(pre)
    return lhs, first, second


def check_heymans(A: PolyMatrix, i, j, h, k, cache: MinorCache | None = None) -> bool:
    """Both expansions of ``det A_[i,j;h,k]`` hold exactly."""
    if i == j or h == k:
        raise ValueError("check_heymans needs i != j and h != k")
    lhs, first, second = heymans_sides(A, i, j, h, k, cache)
    return lhs == first and lhs == second


def bordered(A: PolyMatrix, a, b) -> PolyMatrix:
    """``[[0, a^T], [b, A]]``."""
    ring = A.ring
    rows = [[ring.zero] + list(a)]
    for bi, row in zip(b, A.rows):
        rows.append([bi] + list(row))
    return PolyMatrix(ring, rows)


def bordered_sides(A: PolyMatrix, a, b, cache: MinorCache | None = None):
    """``det [[0, a^T], [b, A]]`` and ``(sum a_i p_i)(sum b_j p_j)``."""
    n = A.nrows
    if len(a) != n or len(b) != n:
        raise CIUError("border vectors must match the matrix size")
    if cache is None:
        p = sub_pfaffians(A).p
    else:
        p = [v if i % 2 == 0 else -v for i, v in ((i, cache.pf_deleted((i,))) for i in range(1, n + 1))]
    zero = A.ring.zero
    sa = sum((x * y for x, y in zip(a, p)), zero)
    sb = sum((x * y for x, y in zip(b, p)), zero)
    if cache is None:
        return determinant(bordered(A, a, b)), sa * sb
    if cache.D is not None and max((f.degree() for f in list(a) + list(b) if f), default=0) * 2 <= cache.slack:
        return cache.bordered_det(a, b), sa * sb
    # expand along the border row and column: det = -a^T adj(A) b
    det = zero
    for j in range(1, n + 1):
        if not b[j - 1]:
            continue
        u = zero
        for i in range(1, n + 1):
            if a[i - 1]:
                t = a[i - 1] * cache.det_deleted({j}, {i})
                u = u + t if (i + j) % 2 else u - t
        det = det + u * b[j - 1]
    return det, sa * sb


def check_bordered(A: PolyMatrix, a, b, cache: MinorCache | None = None) -> bool:
    """``det [[0, a^T], [b, A]] == -(sum a_i p_i)(sum b_j p_j)``.

    The minus sign is forced: for n = 1 the left side is ``-a_1 b_1`` while
    the product is ``a_1 b_1``, whatever sign convention the pfaffian uses.
    """
    det, prod = bordered_sides(A, a, b, cache)
    return det == -prod


# -- randomized identity suite ---------------------------------------------------------


def random_entry(ring: Ring, max_degree: int, rng) -> Poly:
    from .ring import random_form

    return random_form(ring, rng.randint(0, max_degree), rng)


def random_alternating(ring: Ring, n: int, max_degree: int, rng) -> AlternatingMatrix:
    upper = {(i, j): random_entry(ring, max_degree, rng) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return AlternatingMatrix.from_upper(ring, n, upper)


@dataclass
class IdentitySuiteResult:
    size: int
    trials: int
    seed: int
    cayley: list
    heymans: list
    bordered: list
    # the bordered identity with a plus sign, counted over nonzero products
    bordered_plus_holds: int = 0
    bordered_plus_total: int = 0

    def all_passed(self) -> bool:
        return all(c[0] == c[1] for c in (self.cayley, self.heymans, self.bordered))


def identity_suite(size: int, trials: int, seed: int, ring: Ring | None = None, max_degree: int = 2,
                   heymans_per_matrix: int = 20, borders_per_matrix: int = 5) -> IdentitySuiteResult:
    """Check the Cayley, Heymans and bordered identities on random alternating matrices."""
    import random

    if size % 2 == 0:
        raise PfaffianError("identity suite needs an odd size")
    ring = ring or Ring(("x", "y", "z"))
    rng = random.Random(seed)
    res = IdentitySuiteResult(size, trials, seed, [0, 0], [0, 0], [0, 0])
    idx = range(1, size + 1)
    for _ in range(trials):
        A = random_alternating(ring, size, max_degree, rng)
        cache = MinorCache(A, slack=2 * max_degree)
        for i in idx:
            for j in idx:
                res.cayley[1] += 1
                res.cayley[0] += check_cayley(A, i, j, cache)
        for _ in range(heymans_per_matrix):
            i, j = rng.sample(idx, 2)
            h, k = rng.sample(idx, 2)
            res.heymans[1] += 1
            res.heymans[0] += check_heymans(A, i, j, h, k, cache)
        for _ in range(borders_per_matrix):
            a = [random_entry(ring, max_degree, rng) for _ in idx]
            b = [random_entry(ring, max_degree, rng) for _ in idx]
            det, prod = bordered_sides(A, a, b, cache)
            res.bordered[1] += 1
            res.bordered[0] += det == -prod
            if prod:
                res.bordered_plus_total += 1
                res.bordered_plus_holds += det == prod
    return res
