"""Exact multivariate polynomials over a prime field.

Scalars are plain Python ints kept as least nonnegative residues modulo the
ring's prime.  Monomials are exponent tuples (dense, one entry per variable).
A :class:`Poly` is an immutable mapping from exponent tuples to nonzero
residues; the term order only matters when terms are listed or a leading
term is requested, so it is applied lazily.
"""

from __future__ import annotations

import operator
from functools import lru_cache

from .errors import CIUError, RingMismatch, ZeroPolynomialError

PACK_BITS = 24
PACK_MASK = (1 << PACK_BITS) - 1
DEFAULT_PRIME = 32003


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def inverse_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError("zero has no inverse modulo p")
    return pow(a, -1, p)


class MonomialOrder:
    """A monomial order given by a matrix of nonnegative weight rows.

    ``kind`` is ``"lex"``, ``"grevlex"`` or ``"elim"``; ``"elim"`` with
    parameter ``k`` first compares the total degree in the first ``k``
    variables and breaks ties by grevlex on all variables, so any monomial
    involving one of those variables beats every monomial free of them.
    """

    __slots__ = ("kind", "k")

    def __init__(self, kind: str = "grevlex", k: int = 0):
        if kind not in ("lex", "grevlex", "elim"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "elim" and k < 0:
            raise ValueError("elimination block size must be nonnegative")
        self.kind = kind
        self.k = k if kind == "elim" else 0

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.k) == (other.kind, other.k)

    def __hash__(self):
        return hash((self.kind, self.k))

    def __repr__(self):
        if self.kind == "elim":
            return f"MonomialOrder('elim', {self.k})"
        return f"MonomialOrder({self.kind!r})"

    def rows(self, nvars: int) -> tuple:
        """Weight rows; comparing row values lexicographically gives the order."""
        return _order_rows(self.kind, self.k, nvars)

    def key(self, exps: tuple) -> tuple:
        """Sort key: ``key(a) < key(b)`` iff ``a < b`` in this order."""
        if self.kind == "lex":
            return exps
        return tuple(sum(w * e for w, e in zip(row, exps) if w) for row in self.rows(len(exps)))


@lru_cache(maxsize=None)
def _order_rows(kind, k, n):
    if kind == "lex":
        return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    grevlex = tuple(tuple(int(j < n - i) for j in range(n)) for i in range(n))
    if kind == "grevlex":
        return grevlex
    block = tuple(int(j < k) for j in range(n))
    return (block,) + grevlex


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def elimination_order(k: int) -> MonomialOrder:
    return MonomialOrder("elim", k)


class Ring:
    """Polynomial ring k[x_0, ..., x_r] over F_p with an active monomial order."""

    def __init__(self, variables, p: int = DEFAULT_PRIME, order: MonomialOrder | str = GREVLEX):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise CIUError("variable names must be unique")
        if len(variables) < 3:
            raise CIUError("at least three variables are required")
        if not is_prime(p):
            raise CIUError(f"{p} is not prime")
        if p == 2:
            raise CIUError("characteristic 2 is not supported")
        if isinstance(order, str):
            order = MonomialOrder(order)
        self.variables = variables
        self.p = p
        self.order = order
        self.nvars = len(variables)
        self._index = {v: i for i, v in enumerate(variables)}
        self._unpack_cache = {}

    def _pack(self, e) -> int:
        m = 0
        for x in reversed(e):
            m = (m << PACK_BITS) | x
        return m

    def _unpack(self, m: int) -> tuple:
        hit = self._unpack_cache.get(m)
        if hit is None:
            out = []
            x = m
            for _ in range(self.nvars):
                out.append(x & PACK_MASK)
                x >>= PACK_BITS
            hit = tuple(out)
            if len(self._unpack_cache) < 1 << 20:
                self._unpack_cache[m] = hit
        return hit

    def __eq__(self, other):
        return (
            isinstance(other, Ring)
            and self.variables == other.variables
            and self.p == other.p
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.p, self.order))

    def __repr__(self):
        return f"Ring({list(self.variables)}, p={self.p}, order={self.order.kind})"

    # -- constructors -------------------------------------------------------

    @property
    def zero(self) -> "Poly":
        return Poly(self, {})

    @property
    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c: int) -> "Poly":
        c %= self.p
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name) -> "Poly":
        i = name if isinstance(name, int) else self._index[name]
        exps = tuple(int(j == i) for j in range(self.nvars))
        return Poly(self, {exps: 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff: int = 1) -> "Poly":
        exps = tuple(exps)
        if len(exps) != self.nvars or min(exps, default=0) < 0:
            raise CIUError(f"bad exponent vector {exps}")
        coeff %= self.p
        return Poly(self, {exps: coeff} if coeff else {})

    def from_terms(self, terms) -> "Poly":
        """Build a polynomial from ``(coeff, exps)`` pairs, combining duplicates."""
        acc = {}
        p = self.p
        for c, e in terms:
            e = tuple(e)
            acc[e] = (acc.get(e, 0) + c) % p
        return Poly(self, {e: c for e, c in acc.items() if c})

    def parse(self, text: str) -> "Poly":
        from .io.parser import parse_expression

        return parse_expression(text, self)

    def with_order(self, order) -> "Ring":
        return Ring(self.variables, self.p, order)

    def monomials_of_degree(self, d: int) -> list:
        return list(_monomials(self.nvars, d))

    def index(self, name: str) -> int:
        return self._index[name]


def random_form(ring: Ring, d: int, rng, density: float = 1.0) -> Poly:
    """Random homogeneous form of degree ``d``; each monomial kept with probability ``density``."""
    if d < 0:
        return ring.zero
    terms = {}
    for e in _monomials(ring.nvars, d):
        if density >= 1.0 or rng.random() < density:
            c = rng.randrange(ring.p)
            if c:
                terms[e] = c
    return Poly(ring, terms)


@lru_cache(maxsize=256)
def _monomials(n, d):
    if d < 0:
        return ()
    if n == 1:
        return ((d,),)
    out = []
    for a in range(d, -1, -1):
        for rest in _monomials(n - 1, d - a):
            out.append((a,) + rest)
    return tuple(out)


def _add_exps(a, b):
    return tuple(map(operator.add, a, b))


class Poly:
    """Immutable polynomial; ``terms`` maps exponent tuples to residues."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # -- basic predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.ring.nvars, 0)

    # -- ordering -------------------------------------------------------------

    def sorted_terms(self, order: MonomialOrder | None = None) -> list:
        """``(coeff, exps)`` pairs in strictly descending order."""
        order = order or self.ring.order
        key = order.key
        return [(self.terms[e], e) for e in sorted(self.terms, key=key, reverse=True)]

    def leading_term(self, order: MonomialOrder | None = None) -> tuple:
        if not self.terms:
            raise ZeroPolynomialError("zero polynomial has no leading term")
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return self.terms[e], e

    def leading_monomial(self, order=None) -> tuple:
        return self.leading_term(order)[1]

    def leading_coefficient(self, order=None) -> int:
        return self.leading_term(order)[0]

    def monic(self, order=None) -> "Poly":
        if not self.terms:
            return self
        return self.scale(inverse_mod(self.leading_coefficient(order), self.ring.p))

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other):
        if isinstance(other, int):
            return self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = (out.get(e, 0) + c) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Poly(self.ring, {e: p - c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        if not self.terms or not other.terms:
            return self.ring.zero
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        ring = self.ring
        p = ring.p
        if len(b) == 1:
            (eb, cb), = b.items()
            return Poly(ring, {tuple(map(operator.add, ea, eb)): ca * cb % p for ea, ca in a.items()})
        # exponent vectors packed into ints: multiplication becomes addition
        pack = ring._pack
        pa = [(pack(e), c) for e, c in a.items()]
        out = {}
        get = out.get
        for eb, cb in b.items():
            mb = pack(eb)
            for ma, ca in pa:
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        unpack = ring._unpack
        terms = {}
        for m, c in out.items():
            c %= p
            if c:
                terms[unpack(m)] = c
        return Poly(ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero
        return Poly(self.ring, {e: v * c % p for e, v in self.terms.items()})

    def mul_monomial(self, exps, c: int = 1) -> "Poly":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero
        return Poly(self.ring, {_add_exps(e, exps): v * c % p for e, v in self.terms.items()})

    def homogeneous_component(self, d: int) -> "Poly":
        return Poly(self.ring, {e: c for e, c in self.terms.items() if sum(e) == d})

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def format_poly(f: Poly, order: MonomialOrder | None = None) -> str:
    """Canonical text: descending terms, coefficients as least nonnegative residues."""
    if not f.terms:
        return "0"
    names = f.ring.variables
    parts = []
    for c, e in f.sorted_terms(order):
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts)


def exact_divide(f: Poly, g: Poly) -> Poly | None:
    """Return ``q`` with ``f == q * g``, or ``None`` when ``g`` does not divide ``f``."""
    if f.ring != g.ring:
        raise RingMismatch(f"{f.ring!r} vs {g.ring!r}")
    if not g.terms:
        raise ZeroPolynomialError("division by the zero polynomial")
    ring = f.ring
    p = ring.p
    key = ring.order.key
    g_sorted = g.sorted_terms()
    lc, lm = g_sorted[0]
    inv = inverse_mod(lc, p)
    tail = g_sorted[1:]
    rem = dict(f.terms)
    quot = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        qe = tuple(a - b for a, b in zip(e, lm))
        if min(qe) < 0:
            return None
        qc = c * inv % p
        quot[qe] = qc
        del rem[e]
        for tc, te in tail:
            m = _add_exps(te, qe)
            v = (rem.get(m, 0) - qc * tc) % p
            if v:
                rem[m] = v
            else:
                rem.pop(m, None)
    return Poly(ring, quot)


def poly_add(f: Poly, g: Poly) -> Poly:
    return f + g


def poly_mul(f: Poly, g: Poly) -> Poly:
    return f * g


def leading_term(f: Poly, order: MonomialOrder | None = None) -> tuple:
    return f.leading_term(order)
