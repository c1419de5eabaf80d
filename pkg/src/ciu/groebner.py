"""Buchberger's algorithm and the ideal arithmetic built on it.

Inside the engine a monomial is one packed integer.  The high fields hold
the weight-row values of the monomial order, the low fields hold the
exponents, and every field reserves a guard bit.  With that encoding the
order is integer comparison, multiplication is integer addition and
``a | b`` is ``(b - a) & guard == 0``.
"""

from __future__ import annotations

import heapq
import os
import threading
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import CIUError, ResourceLimitExceeded, RingMismatch, UnitIdealError, ZeroPolynomialError
from .hilbert import hf_from_numerator, hilbert_numerator, zpoly_divide_one_minus_z
from .ring import GREVLEX, MonomialOrder, Poly, Ring, elimination_order, exact_divide

FIELD_BITS = 16


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


@dataclass
class Limits:
    """Resource caps for a single Groebner basis computation."""

    max_pairs: int = field(default_factory=lambda: _env_int("CIU_MAX_PAIRS", 200_000))
    max_basis: int = field(default_factory=lambda: _env_int("CIU_MAX_BASIS", 20_000))


DEFAULT_LIMITS = Limits()


def set_default_limits(max_pairs=None, max_basis=None):
    if max_pairs is not None:
        DEFAULT_LIMITS.max_pairs = max_pairs
    if max_basis is not None:
        DEFAULT_LIMITS.max_basis = max_basis


class Encoding:
    """Packed-integer monomials for one (variable count, order) pair."""

    def __init__(self, nvars: int, order: MonomialOrder):
        self.nvars = nvars
        self.order = order
        rows = order.rows(nvars)
        nfields = len(rows) + nvars
        W = FIELD_BITS
        self.mask = (1 << W) - 1
        self.guard = sum(1 << (W * j + W - 1) for j in range(nfields))
        units = []
        for i in range(nvars):
            fields = [row[i] for row in rows] + [int(j == i) for j in range(nvars)]
            v = 0
            for f in fields:
                v = (v << W) | f
            units.append(v)
        self.units = units
        self._exps = {}

    def encode(self, exps) -> int:
        m = 0
        for u, e in zip(self.units, exps):
            if e:
                m += u * e
        return m

    def exps(self, m: int) -> tuple:
        e = self._exps.get(m)
        if e is None:
            W, mask, n = FIELD_BITS, self.mask, self.nvars
            e = tuple((m >> (W * (n - 1 - i))) & mask for i in range(n))
            self._exps[m] = e
        return e

    def divides(self, a: int, b: int) -> bool:
        return not ((b - a) & self.guard)

    def lcm(self, a: int, b: int) -> int:
        return self.encode(tuple(map(max, self.exps(a), self.exps(b))))

    def coprime(self, a: int, b: int) -> bool:
        return not any(x and y for x, y in zip(self.exps(a), self.exps(b)))

    def to_internal(self, f: Poly) -> list:
        enc = self.encode
        return sorted(((enc(e), c) for e, c in f.terms.items()), reverse=True)

    def to_poly(self, ring: Ring, terms) -> Poly:
        items = terms.items() if isinstance(terms, dict) else terms
        return Poly(ring, {self.exps(m): c for m, c in items})


def _weights_degree(enc, weights, m):
    return sum(w * e for w, e in zip(weights, enc.exps(m)))


def _rep_axpy(target: list, rep: list, q: int, c: int, p: int):
    """``target -= c * x^q * rep`` componentwise (dict polynomials)."""
    for t, r in zip(target, rep):
        for m, v in r.items():
            mm = m + q
            nv = (t.get(mm, 0) - c * v) % p
            if nv:
                t[mm] = nv
            else:
                t.pop(mm, None)


class _Buchberger:
    """Resumable Buchberger run with normal (sugar) selection and the
    Gebauer-Moeller criteria.  Optionally tracks each basis element as a
    combination of the input generators."""

    def __init__(self, enc: Encoding, p: int, gens: list, weights, track: bool, limits: Limits):
        self.enc = enc
        self.p = p
        self.weights = weights
        self.track = track
        self.limits = limits
        self.ngens = len(gens)
        self.polys = []
        self.sugar = []
        self.reps = []
        self.active = []
        self.pairs = []
        self.pairs_done = 0
        self.pending = []
        for i, g in enumerate(gens):
            if g:
                self.pending.append((self._poly_sugar(g), i, g))
        self.pending.sort(key=lambda t: (t[0], t[1]))
        self.done_bound = -1
        self.complete = not self.pending
        self._reduced_cache = {}

    def _poly_sugar(self, terms):
        w = self.weights
        return max(_weights_degree(self.enc, w, m) for m, _ in terms)

    # -- reduction ------------------------------------------------------------

    def reduce(self, terms, basis_idx, want_quot=False):
        """Full reduction of ``terms`` (list of (m, c)) by basis elements."""
        basis = [self.polys[i] for i in basis_idx]
        rem, quot = _divide(terms, basis, self.p, self.enc.guard, want_quot)
        if want_quot:
            quot = {basis_idx[k]: q for k, q in quot.items()}
        return rem, quot

    # -- main loop --------------------------------------------------------------

    def _insert(self, h, sugar, rep):
        enc = self.enc
        p = self.p
        lc = h[0][1]
        if lc != 1:
            inv = pow(lc, -1, p)
            h = [(m, c * inv % p) for m, c in h]
            if rep is not None:
                rep = [{k: v * inv % p for k, v in r.items()} for r in rep]
        idx = len(self.polys)
        if idx >= self.limits.max_basis:
            raise ResourceLimitExceeded("basis size", self.limits.max_basis)
        self.polys.append(h)
        self.sugar.append(sugar)
        self.reps.append(rep)
        self._update(idx)

    def _update(self, h):
        enc = self.enc
        polys = self.polys
        lm_h = polys[h][0][0]
        lcm_of = {g: enc.lcm(polys[g][0][0], lm_h) for g in self.active}
        C = list(self.active)
        D = []
        while C:
            g1 = C.pop()
            l1 = lcm_of[g1]
            if enc.coprime(polys[g1][0][0], lm_h):
                D.append(g1)
                continue
            divisible = False
            for g2 in C:
                if enc.divides(lcm_of[g2], l1):
                    divisible = True
                    break
            if not divisible:
                for g2 in D:
                    if enc.divides(lcm_of[g2], l1):
                        divisible = True
                        break
            if not divisible:
                D.append(g1)
        E = [g for g in D if not enc.coprime(polys[g][0][0], lm_h)]
        new_pairs = []
        for pair in self.pairs:
            _, lcm12, g1, g2 = pair
            if not enc.divides(lm_h, lcm12):
                new_pairs.append(pair)
                continue
            for g in (g1, g2):
                if g not in lcm_of:
                    lcm_of[g] = enc.lcm(polys[g][0][0], lm_h)
            if lcm_of[g1] == lcm12 or lcm_of[g2] == lcm12:
                new_pairs.append(pair)
        w = self.weights
        sugar_h = self.sugar[h]
        for g in E:
            l = lcm_of[g]
            dl = _weights_degree(enc, w, l)
            s = max(
                self.sugar[g] + dl - _weights_degree(enc, w, polys[g][0][0]),
                sugar_h + dl - _weights_degree(enc, w, lm_h),
            )
            new_pairs.append((s, l, g, h))
        self.pairs = new_pairs
        self.active = [g for g in self.active if not enc.divides(lm_h, polys[g][0][0])] + [h]

    def _spoly(self, i, j, lcm):
        p = self.p
        a, b = self.polys[i], self.polys[j]
        qa = lcm - a[0][0]
        qb = lcm - b[0][0]
        terms = [(m + qa, c) for m, c in a[1:]] + [(m + qb, (-c) % p) for m, c in b[1:]]
        rep = None
        if self.track:
            rep = [dict() for _ in range(self.ngens)]
            _rep_axpy(rep, self.reps[i], qa, p - 1, p)
            _rep_axpy(rep, self.reps[j], qb, 1, p)
        return terms, rep

    def run(self, bound=None):
        """Process every pending generator and pair of sugar <= bound."""
        if self.complete or (bound is not None and bound <= self.done_bound):
            return
        p = self.p
        while True:
            best_pair = min(self.pairs, key=lambda t: (t[0], t[1], t[2], t[3])) if self.pairs else None
            best_gen = self.pending[0] if self.pending else None
            if best_pair is None and best_gen is None:
                self.complete = True
                break
            take_gen = best_gen is not None and (best_pair is None or best_gen[0] <= best_pair[0])
            s = best_gen[0] if take_gen else best_pair[0]
            if bound is not None and s > bound:
                break
            if take_gen:
                self.pending.pop(0)
                _, gi, terms = best_gen
                rep = None
                if self.track:
                    rep = [dict() for _ in range(self.ngens)]
                    rep[gi] = {0: 1}
            else:
                self.pairs.remove(best_pair)
                self.pairs_done += 1
                if self.pairs_done > self.limits.max_pairs:
                    raise ResourceLimitExceeded("S-pairs", self.limits.max_pairs)
                _, lcm, i, j = best_pair
                terms, rep = self._spoly(i, j, lcm)
            h, quot = self.reduce(terms, self.active, want_quot=self.track)
            if not h:
                continue
            if self.track:
                for k, qk in quot.items():
                    for q, c in qk.items():
                        _rep_axpy(rep, self.reps[k], q, c, p)
            self._insert(h, s, rep)
        if bound is not None:
            self.done_bound = max(self.done_bound, bound)
        self._reduced_cache.clear()

    def reduced(self, bound=None):
        """Interreduced copies of the active basis: (polys, reps)."""
        key = None if self.complete else bound
        hit = self._reduced_cache.get(key)
        if hit is not None:
            return hit
        p = self.p
        enc = self.enc
        idx = sorted(self.active, key=lambda i: self.polys[i][0][0])
        out, reps = [], []
        for i in idx:
            g = self.polys[i]
            others = [k for k in idx if k != i]
            tail, quot = self.reduce(g[1:], others, want_quot=self.track)
            out.append([g[0]] + tail)
            if self.track:
                rep = [dict(r) for r in self.reps[i]]
                for k, qk in quot.items():
                    for q, c in qk.items():
                        _rep_axpy(rep, self.reps[k], q, c, p)
                reps.append(rep)
        result = (out, reps if self.track else None)
        self._reduced_cache[key] = result
        return result


class GroebnerBasis:
    """Reduced Groebner basis of an ideal for one monomial order.

    ``transform[k][i]`` is the coefficient of generator ``i`` in
    ``elements[k]`` (None unless requested).  When ``degree_bound`` is set
    the basis is only guaranteed to be complete up to that degree.
    """

    def __init__(self, ideal, order, enc, elements_internal, reps, degree_bound, complete):
        self.ideal = ideal
        self.ring = ideal.ring
        self.order = order
        self.enc = enc
        self._internal = elements_internal
        self.elements = [enc.to_poly(self.ring, g) for g in elements_internal]
        self.transform = None
        if reps is not None:
            self.transform = [[enc.to_poly(self.ring, r) for r in rep] for rep in reps]
        self.degree_bound = None if complete else degree_bound

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def leading_monomials(self) -> list:
        return [self.enc.exps(g[0][0]) for g in self._internal]

    def reduce(self, f: Poly):
        """Division by the basis: returns ``(remainder, quotients)``.

        ``f == sum(q * g for q, g in zip(quotients, elements)) + remainder``.
        """
        if f.ring != self.ring:
            raise RingMismatch(f"{f.ring!r} vs {self.ring!r}")
        return reduce_by(self.enc, self.ring, self._internal, f)

    def normal_form(self, f: Poly) -> Poly:
        return self.reduce(f)[0]

    def is_unit(self) -> bool:
        return any(all(e == 0 for e in lm) for lm in self.leading_monomials())


def _divide(terms, basis, p, guard, want_quot=False):
    """Reduce ``terms`` by internal polynomials; remainder is a descending list.

    Quotients come back as ``{basis position: {monomial: coeff}}``.
    """
    reducers = [(g[0][0], i) for i, g in enumerate(basis)]
    acc = {}
    for m, c in terms:
        acc[m] = (acc.get(m, 0) + c) % p
    acc = {m: c for m, c in acc.items() if c}
    heap = [-m for m in acc]
    heapq.heapify(heap)
    rem = []
    quot = {} if want_quot else None
    while heap:
        m = -heapq.heappop(heap)
        c = acc.pop(m, 0)
        if not c:
            continue
        for lm, i in reducers:
            if not ((m - lm) & guard):
                break
        else:
            rem.append((m, c))
            continue
        q = m - lm
        if want_quot:
            qi = quot.setdefault(i, {})
            qi[q] = (qi.get(q, 0) + c) % p
        g = basis[i]
        for k in range(1, len(g)):
            gm, gc = g[k]
            mm = gm + q
            old = acc.get(mm)
            if old is None:
                acc[mm] = (-c * gc) % p
                heapq.heappush(heap, -mm)
            else:
                acc[mm] = (old - c * gc) % p
    return rem, quot


def reduce_by(enc, ring, internal_basis, f):
    rem, quot = _divide(enc.to_internal(f), internal_basis, ring.p, enc.guard, True)
    quotients = [enc.to_poly(ring, quot.get(i, {})) for i in range(len(internal_basis))]
    return enc.to_poly(ring, rem), quotients


def _mul_into(target: dict, a: dict, b: dict, p: int, sign: int = 1):
    """``target += sign * a * b`` on dict polynomials."""
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            v = (target.get(m, 0) + sign * ca * cb) % p
            if v:
                target[m] = v
            else:
                target.pop(m, None)


class Ideal:
    """Finitely generated ideal with cached Groebner bases.

    Zero generators are dropped; ``generators`` lists the remaining ones and
    every witness vector is expressed against that list.
    """

    def __init__(self, ring: Ring, generators, limits: Limits | None = None, weights=None):
        gens = []
        for g in generators:
            if isinstance(g, int):
                g = ring.const(g)
            if g.ring != ring:
                raise RingMismatch(f"{g.ring!r} vs {ring!r}")
            if g:
                gens.append(g)
        self.ring = ring
        self.generators = gens
        self.limits = limits
        self.weights = tuple(weights) if weights else (1,) * ring.nvars
        self.graded = all(g.is_homogeneous() for g in gens) and all(w == 1 for w in self.weights)
        self._states = {}
        self._lock = threading.Lock()
        self._numerator = None

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def __len__(self):
        return len(self.generators)

    # -- Groebner bases ---------------------------------------------------------

    def _state(self, order, track):
        key = (order, track)
        st = self._states.get(key)
        if st is None:
            enc = Encoding(self.ring.nvars, order)
            gens = [enc.to_internal(g) for g in self.generators]
            st = _Buchberger(enc, self.ring.p, gens, self.weights, track, self.limits or DEFAULT_LIMITS)
            self._states[key] = st
        return st

    def groebner(self, order: MonomialOrder | None = None, degree_bound=None, transform=False) -> GroebnerBasis:
        order = order or self.ring.order
        if degree_bound is not None and not self._weighted_homogeneous():
            degree_bound = None
        with self._lock:
            st = self._state(order, transform)
            st.run(degree_bound)
            internal, reps = st.reduced(degree_bound)
            complete = st.complete
        return GroebnerBasis(self, order, st.enc, internal, reps, degree_bound, complete)

    def _weighted_homogeneous(self):
        w = self.weights
        for g in self.generators:
            if len({sum(a * b for a, b in zip(w, e)) for e in g.terms}) > 1:
                return False
        return True

    def _bound_for(self, f):
        return f.degree() if self.graded and f.is_homogeneous() else None

    # -- membership -------------------------------------------------------------

    def normal_form(self, f: Poly) -> Poly:
        return self.groebner(degree_bound=self._bound_for(f)).normal_form(f)

    def contains(self, f: Poly) -> bool:
        if not f:
            return True
        return not self.normal_form(f)

    __contains__ = contains

    def witness(self, f: Poly):
        """Coefficients ``c`` with ``f == sum(c_i * generators[i])``, or None."""
        if not self.generators:
            return [] if not f else None
        if not f:
            return [self.ring.zero for _ in self.generators]
        gb = self.groebner(degree_bound=self._bound_for(f), transform=True)
        rem, quot = gb.reduce(f)
        if rem:
            return None
        out = [self.ring.zero] * len(self.generators)
        for q, row in zip(quot, gb.transform):
            if q:
                for i, t in enumerate(row):
                    if t:
                        out[i] = out[i] + q * t
        return out

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        return self.groebner().is_unit()

    # -- dimension and Hilbert functions ------------------------------------------

    def leading_monomials(self) -> list:
        return self.groebner().leading_monomials()

    def dimension(self) -> int:
        gb = self.groebner()
        if gb.is_unit():
            raise UnitIdealError("the unit ideal has no dimension")
        n = self.ring.nvars
        supports = {sum(1 << i for i, e in enumerate(lm) if e) for lm in gb.leading_monomials()}
        for size in range(n, -1, -1):
            for subset in combinations(range(n), size):
                mask = sum(1 << i for i in subset)
                if not any(s & ~mask == 0 for s in supports):
                    return size
        return 0

    def codimension(self) -> int:
        return self.ring.nvars - self.dimension()

    def hilbert_numerator(self) -> list:
        if not self.graded:
            raise CIUError("Hilbert functions need a homogeneous ideal")
        if self._numerator is None:
            self._numerator = hilbert_numerator(self.leading_monomials(), self.ring.nvars)
        return self._numerator

    def hilbert_function(self, t: int) -> int:
        """dim_k (R/I)_t."""
        return hf_from_numerator(self.hilbert_numerator(), self.ring.nvars, t)

    def artinian_hf(self, dim: int | None = None, slack: int = 4) -> list:
        """Iterated differences of the Hilbert function down to its support."""
        if dim is None:
            dim = self.dimension()
        num = self.hilbert_numerator()
        top = len(num) + slack + dim
        H = [self.hilbert_function(t) for t in range(top + 1)]
        table = H
        for _ in range(dim):
            table = [table[t] - (table[t - 1] if t else 0) for t in range(len(table))]
        from .errors import ArtinianReductionError

        last = len(num) - 1
        if any(v != 0 for v in table[last + 1:]) or any(v < 0 for v in table):
            raise ArtinianReductionError(
                f"difference table does not reach 0 by degree {last + 1} (non-CM input or wrong dimension)"
            )
        while table and table[-1] == 0:
            table.pop()
        return table

    def degree(self, dim: int | None = None) -> int:
        return sum(self.artinian_hf(dim))

    # -- generators and syzygies ------------------------------------------------------

    def minimal_generators(self) -> list:
        return minimal_generators(self.generators, self.ring, self.limits)


def member(f: Poly, I: Ideal) -> bool:
    return I.contains(f)


def member_with_witness(f: Poly, I: Ideal):
    """``(True, coefficients)`` when ``f`` is in ``I``, else ``(False, None)``."""
    w = I.witness(f)
    return w is not None, w


def buchberger(I: Ideal, order: MonomialOrder | None = None, degree_bound=None, transform=False) -> GroebnerBasis:
    return I.groebner(order, degree_bound=degree_bound, transform=transform)


def reduce(f: Poly, G: GroebnerBasis):
    return G.reduce(f)


def minimal_generators(gens, ring: Ring, limits=None) -> list:
    """A minimal generating subset, ascending by degree (input order within a degree)."""
    gens = [g for g in gens if g]
    if not all(g.is_homogeneous() for g in gens):
        raise CIUError("minimal generators need homogeneous generators")
    ordered = sorted(range(len(gens)), key=lambda i: (gens[i].degree(), i))
    survivors = []
    by_degree = {}
    for i in ordered:
        by_degree.setdefault(gens[i].degree(), []).append(gens[i])
    from .linalg import SparseEchelon

    for d in sorted(by_degree):
        gb = Ideal(ring, survivors, limits).groebner(degree_bound=d) if survivors else None
        ech = SparseEchelon(ring.p)
        for g in by_degree[d]:
            nf = gb.normal_form(g) if gb is not None else g
            if nf and ech.add(dict(nf.terms)):
                survivors.append(g)
    return survivors


@dataclass
class SyzygyMatrix:
    """Rows ``s`` with ``sum(s[i] * generators[i]) == 0``.

    ``degrees[k]`` is the graded degree of row ``k`` (None for
    inhomogeneous input).
    """

    ring: Ring
    generators: list
    rows: list
    degrees: list

    def __len__(self):
        return len(self.rows)

    def evaluate(self, row) -> Poly:
        total = self.ring.zero
        for c, g in zip(row, self.generators):
            if c:
                total = total + c * g
        return total

    def check(self) -> bool:
        return all(not self.evaluate(r) for r in self.rows)

    def degree_multiset(self) -> list:
        return sorted(d for d in self.degrees if d is not None)


def _row_degree(row, gens):
    for c, g in zip(row, gens):
        if c:
            return c.degree() + g.degree()
    return None


def syzygies(gens, degree_bound=None, limits=None) -> SyzygyMatrix:
    """Generators of the syzygy module of ``gens`` by Schreyer's construction.

    Every S-pair of the tracked reduced basis gives a syzygy among basis
    elements, and the transform pulls it back to ``gens``; the rows
    ``e_l - U_l T`` account for the change of generators.  With
    ``degree_bound`` (graded input) only rows up to that degree are built;
    together they generate the module in degrees <= bound.
    """
    gens = list(gens)
    if not gens:
        raise CIUError("syzygies of an empty generator list")
    if any(not g for g in gens):
        raise ZeroPolynomialError("syzygies need nonzero generators")
    ring = gens[0].ring
    I = Ideal(ring, gens, limits)
    if degree_bound is not None and not I.graded:
        degree_bound = None
    with I._lock:
        st = I._state(ring.order, True)
        st.run(degree_bound)
        basis, reps = st.reduced(degree_bound)
    enc, p, n = st.enc, ring.p, len(gens)

    def pull_back(coeffs):
        out = [dict() for _ in range(n)]
        for k, ck in coeffs.items():
            if ck:
                for i in range(n):
                    if reps[k][i]:
                        _mul_into(out[i], ck, reps[k][i], p)
        return out

    raw = []
    for a, b in combinations(range(len(basis)), 2):
        la, lb = basis[a][0][0], basis[b][0][0]
        l = enc.lcm(la, lb)
        if degree_bound is not None and sum(enc.exps(l)) > degree_bound:
            continue
        qa, qb = l - la, l - lb
        terms = [(m + qa, c) for m, c in basis[a][1:]]
        terms += [(m + qb, (-c) % p) for m, c in basis[b][1:]]
        rem, quot = _divide(terms, basis, p, enc.guard, True)
        if rem:
            raise CIUError("S-pair did not reduce to zero (internal error)")
        coeffs = {k: {m: (-c) % p for m, c in qk.items()} for k, qk in quot.items()}
        for k, q, sign in ((a, qa, 1), (b, qb, p - 1)):
            ck = coeffs.setdefault(k, {})
            v = (ck.get(q, 0) + sign) % p
            if v:
                ck[q] = v
            else:
                ck.pop(q, None)
        raw.append(pull_back(coeffs))
    for l, f in enumerate(gens):
        rem, quot = _divide(enc.to_internal(f), basis, p, enc.guard, True)
        if rem:
            raise CIUError("generator not reduced to zero by its own basis (internal error)")
        row = pull_back(quot)
        row = [{m: (-c) % p for m, c in r.items()} for r in row]
        row[l][0] = (row[l].get(0, 0) + 1) % p
        if not row[l][0]:
            del row[l][0]
        raw.append(row)
    rows = []
    seen = set()
    for r in raw:
        polys = [enc.to_poly(ring, d) for d in r]
        if not any(polys):
            continue
        key = tuple(polys)
        if key in seen:
            continue
        seen.add(key)
        rows.append(polys)
    degrees = [_row_degree(r, gens) if I.graded else None for r in rows]
    return SyzygyMatrix(ring, gens, rows, degrees)


def minimal_syzygies(S: SyzygyMatrix, max_degree=None) -> SyzygyMatrix:
    """Graded minimalization: keep a row only if it is not in the span of the
    monomial multiples of lower-degree survivors and earlier rows of its degree."""
    from .linalg import SparseEchelon

    if any(d is None for d in S.degrees):
        raise CIUError("minimal syzygies need graded rows")
    ring = S.ring
    order = sorted(range(len(S.rows)), key=lambda k: (S.degrees[k], k))
    survivors = []
    for d in sorted(set(S.degrees)):
        if max_degree is not None and d > max_degree:
            break
        ech = SparseEchelon(ring.p)
        for r, e in survivors:
            for mono in ring.monomials_of_degree(d - e):
                ech.add(_row_vector([c.mul_monomial(mono) for c in r]))
        for k in order:
            if S.degrees[k] == d and ech.add(_row_vector(S.rows[k])):
                survivors.append((S.rows[k], d))
    rows = [r for r, _ in survivors]
    return SyzygyMatrix(ring, S.generators, rows, [d for _, d in survivors])


def _row_vector(row) -> dict:
    vec = {}
    for i, c in enumerate(row):
        for e, v in c.terms.items():
            vec[(i, e)] = v
    return vec


# -- ideal operations -------------------------------------------------------------


def _extended_ring(ring: Ring, k: int = 1) -> Ring:
    names = []
    i = 0
    while len(names) < k:
        cand = f"_t{i}"
        if cand not in ring.variables:
            names.append(cand)
        i += 1
    return Ring(tuple(names) + ring.variables, ring.p, elimination_order(k))


def _lift(f: Poly, big: Ring, k: int) -> Poly:
    pad = (0,) * k
    return Poly(big, {pad + e: c for e, c in f.terms.items()})


def _drop(f: Poly, ring: Ring, k: int) -> Poly:
    return Poly(ring, {e[k:]: c for e, c in f.terms.items()})


def eliminate(I: Ideal, k: int, weights=None) -> Ideal:
    """Generators of ``I`` intersected with the subring free of the first ``k`` variables.

    The result lives in the same ring as ``I``.
    """
    if k == 0:
        return Ideal(I.ring, I.generators, I.limits)
    J = Ideal(I.ring.with_order(elimination_order(k)), [Poly(I.ring.with_order(elimination_order(k)), g.terms) for g in I.generators], I.limits, weights)
    gb = J.groebner()
    keep = [g for g in gb.elements if all(not any(e[:k]) for e in g.terms)]
    return Ideal(I.ring, [Poly(I.ring, g.terms) for g in keep], I.limits)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` meet ``J`` by eliminating t from ``t*I + (1-t)*J``."""
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring!r} vs {J.ring!r}")
    ring = I.ring
    if not I.generators or not J.generators:
        return Ideal(ring, [], I.limits)
    big = _extended_ring(ring, 1)
    t = big.var(0)
    one_minus_t = big.one - t
    gens = [t * _lift(f, big, 1) for f in I.generators]
    gens += [one_minus_t * _lift(g, big, 1) for g in J.generators]
    # t gets weight 0 so homogeneous inputs stay homogeneous for the sugar strategy
    weights = (0,) + (1,) * ring.nvars
    K = Ideal(big, gens, I.limits or J.limits, weights)
    gb = K.groebner()
    keep = [_drop(g, ring, 1) for g in gb.elements if all(e[0] == 0 for e in g.terms)]
    result = Ideal(ring, keep, I.limits)
    if I.graded and J.graded:
        result = Ideal(ring, minimal_generators(keep, ring, I.limits), I.limits)
    return result


def colon_principal(I: Ideal, f: Poly) -> Ideal:
    ring = I.ring
    if not f:
        return Ideal(ring, [ring.one], I.limits)
    if I.contains(f):
        return Ideal(ring, [ring.one], I.limits)
    K = intersect(I, Ideal(ring, [f], I.limits))
    quotients = []
    for h in K.generators:
        q = exact_divide(h, f)
        if q is None:
            raise CIUError("intersection generator not divisible by f (internal error)")
        quotients.append(q)
    return Ideal(ring, quotients, I.limits)


def colon(I: Ideal, J: Ideal) -> Ideal:
    """``I : J`` as the intersection of the principal colons ``I : f``."""
    if I.ring != J.ring:
        raise RingMismatch(f"{I.ring!r} vs {J.ring!r}")
    if not J.generators:
        raise CIUError("colon by the zero ideal")
    result = None
    for f in J.generators:
        K = colon_principal(I, f)
        if K.is_unit():
            continue
        result = K if result is None else intersect(result, K)
    if result is None:
        return Ideal(I.ring, [I.ring.one], I.limits)
    if result.graded:
        result = Ideal(I.ring, minimal_generators(result.generators, I.ring, I.limits), I.limits)
    return result


def dimension(I: Ideal) -> int:
    return I.dimension()


def codimension(I: Ideal) -> int:
    return I.codimension()


def is_regular_sequence(fs) -> bool:
    """For nonzero homogeneous forms: regular iff the codimension equals their number."""
    fs = list(fs)
    if not fs:
        return True
    if any(not f or not f.is_homogeneous() for f in fs):
        raise CIUError("regular sequence test needs nonzero homogeneous forms")
    I = Ideal(fs[0].ring, fs)
    if I.is_unit():
        return False
    return I.codimension() == len(fs)


def hilbert_function(I: Ideal, t: int) -> int:
    return I.hilbert_function(t)


def artinian_hf(I: Ideal, dim=None) -> list:
    return I.artinian_hf(dim)


def degree_of(I: Ideal, dim=None) -> int:
    return I.degree(dim)
