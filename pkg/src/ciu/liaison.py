"""Union of two codimension-2 complete intersections through Gorenstein linkage.

Forward direction: from ``X1 = (f1, g1)`` and ``X2 = (f2, g2)`` build
``I_Q = I_X1 + I_X2``, the complete intersection ``I_Z = (f1, g1, f2)``, the
Gorenstein ideal ``I_G = I_Z : I_Q``, an alternating matrix ``A`` whose
signed submaximal pfaffians ``p_i`` generate ``I_G``, the coefficient vectors
``alpha, beta, gamma`` with ``f1 = sum alpha_i p_i`` (and so on), the bordered
matrices ``Abar`` and ``M``, and check that the maximal minors of ``M``
generate ``I_X1 meet I_X2``.

Inverse direction: from ``(A, alpha, beta, gamma)`` rebuild the two pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import (
    ArtinianReductionError,
    CIUError,
    GateError,
    HypothesisError,
    LinkageError,
    PresentationError,
)
from .groebner import (
    Ideal,
    colon,
    intersect,
    is_regular_sequence,
    minimal_generators,
    minimal_syzygies,
    syzygies,
)
from .linalg import nullspace, random_combination
from .pfaffian import (
    AlternatingMatrix,
    PolyMatrix,
    SubPfaffians,
    determinant,
    pfaffian,
    sub_pfaffians,
)
from .ring import Poly, random_form

DEFAULT_REPAIR_TRIALS = 16
DEFAULT_PRESENTATION_BUDGET = 8


@dataclass(frozen=True)
class CIPair:
    """Generators of a codimension-2 complete intersection, ``deg f = d``, ``deg g = e``."""

    f: Poly
    g: Poly

    @property
    def ring(self):
        return self.f.ring

    @property
    def d(self) -> int:
        return self.f.degree()

    @property
    def e(self) -> int:
        return self.g.degree()

    def ideal(self) -> Ideal:
        return Ideal(self.ring, [self.f, self.g])

    def validate(self):
        if not self.f or not self.g:
            raise HypothesisError("complete intersection generators must be nonzero")
        if self.f.ring != self.g.ring:
            raise HypothesisError("complete intersection generators live in different rings")
        if not (self.f.is_homogeneous() and self.g.is_homogeneous()):
            raise HypothesisError("complete intersection generators must be homogeneous")
        if not is_regular_sequence([self.f, self.g]):
            raise HypothesisError(f"({self.f}, {self.g}) is not a codimension 2 complete intersection")
        return self


@dataclass
class NormalizedInput:
    """The four forms after relabeling: ``e2`` is the minimal degree and
    ``(f1, g1, f2)`` is a regular sequence."""

    f1: Poly
    g1: Poly
    f2: Poly
    g2: Poly
    hypothesis_ok: bool
    swapped_pairs: bool = False
    repair_lambda: int | None = None
    notes: list = field(default_factory=list)

    @property
    def X1(self) -> CIPair:
        return CIPair(self.f1, self.g1)

    @property
    def X2(self) -> CIPair:
        return CIPair(self.f2, self.g2)

    @property
    def degrees(self):
        return self.f1.degree(), self.g1.degree(), self.f2.degree(), self.g2.degree()


def _candidates(X1: CIPair, X2: CIPair, mindeg: int):
    for swapped, (P, Q) in ((False, (X1, X2)), (True, (X2, X1))):
        f1, g1 = (P.f, P.g) if P.d >= P.e else (P.g, P.f)
        pair = [Q.f, Q.g]
        # later-listed form of minimal degree first
        for k in (1, 0):
            if pair[k].degree() == mindeg:
                yield swapped, f1, g1, pair[1 - k], pair[k]


def normalize_input(X1: CIPair, X2: CIPair, seed: int = 0, trials: int = DEFAULT_REPAIR_TRIALS) -> NormalizedInput:
    X1.validate()
    X2.validate()
    if X1.ring != X2.ring:
        raise HypothesisError("the two complete intersections live in different rings")
    ring = X1.ring
    IQ = Ideal(ring, [X1.f, X1.g, X2.f, X2.g])
    if IQ.is_unit() or IQ.codimension() != 3:
        codim = "unit ideal" if IQ.is_unit() else IQ.codimension()
        raise HypothesisError(f"codim(I_X1 + I_X2) is {codim}, expected 3")
    mindeg = min(X1.d, X1.e, X2.d, X2.e)
    rng = random.Random(seed)
    fallback = None
    for swapped, f1, g1, f2, g2 in _candidates(X1, X2, mindeg):
        hyp = min(f1.degree(), g1.degree()) > g2.degree()
        if fallback is not None and not hyp:
            continue
        lam = None
        ok = is_regular_sequence([f1, g1, f2])
        if not ok and f2.degree() == g2.degree():
            for _ in range(trials):
                c = rng.randrange(1, ring.p)
                cand = f2 + g2.scale(c)
                if cand and is_regular_sequence([f1, g1, cand]):
                    f2, lam, ok = cand, c, True
                    break
        if not ok:
            continue
        found = NormalizedInput(f1, g1, f2, g2, hyp, swapped, lam)
        if lam is not None:
            found.notes.append(f"f2 replaced by f2 + {lam}*g2 to get a regular triple")
        if swapped:
            found.notes.append("roles of X1 and X2 exchanged so that g2 has minimal degree")
        if hyp:
            return found
        if fallback is None:
            fallback = found
    if fallback is None:
        raise HypothesisError("no regular triple (f1, g1, f2) found within the trial budget")
    fallback.notes.append("min{d1,e1} > min{d2,e2} fails: output describes X1 union X2'")
    return fallback


# -- linkage ---------------------------------------------------------------------------


def link_to_gorenstein(IZ: Ideal, IQ: Ideal) -> Ideal:
    """``I_G = I_Z : I_Q`` on minimal generators sorted by degree, with the
    structural checks: codimension 3, odd generator count, ``I_Z : I_G = I_Q``."""
    IG = colon(IZ, IQ)
    if IG.is_unit():
        raise LinkageError("I_Z : I_Q is the unit ideal (I_Q equals I_Z?)")
    if IG.codimension() != 3:
        raise LinkageError(f"linked ideal has codimension {IG.codimension()}, expected 3")
    gens = minimal_generators(IG.generators, IG.ring)
    if len(gens) % 2 == 0:
        raise LinkageError(f"linked ideal has {len(gens)} minimal generators; a Gorenstein ideal needs an odd count")
    IG = Ideal(IG.ring, gens)
    if not colon(IZ, IG).equals(IQ):
        raise LinkageError("double link I_Z : (I_Z : I_Q) differs from I_Q")
    return IG


def alternating_presentation(IG: Ideal, seed: int = 0, budget: int = DEFAULT_PRESENTATION_BUDGET) -> AlternatingMatrix:
    """Alternating ``A`` with ``Pf_{n-1}(A) = I_G``.

    For n = 3 the generators are placed directly.  Otherwise ``A = S * psi``
    where the columns of ``S`` are minimal syzygies of the generators; the
    conditions making ``S * psi`` alternating are linear in the coefficients
    of ``psi``.  Random solutions are tried until one has a constant nonzero
    determinant and reproduces ``I_G``.
    """
    ring = IG.ring
    q = sorted(IG.generators, key=lambda g: g.degree())
    n = len(q)
    if n < 3 or n % 2 == 0:
        raise PresentationError(f"need an odd number >= 3 of generators, got {n}")
    if n == 3:
        return AlternatingMatrix.from_upper(ring, 3, {(2, 3): -q[0], (1, 3): q[1], (1, 2): -q[2]})
    pi = [g.degree() for g in q]
    if (2 * sum(pi)) % (n - 1):
        raise PresentationError(f"generator degrees {pi} do not fit an alternating presentation")
    s = 2 * sum(pi) // (n - 1)
    top = s - pi[0]
    S = minimal_syzygies(syzygies(q, degree_bound=top), max_degree=top)
    if len(S) != n:
        raise PresentationError(f"expected {n} minimal syzygies up to degree {top}, found {len(S)}")
    cols = sorted(range(n), key=lambda k: S.degrees[k])
    delta = [S.degrees[k] for k in cols]
    if delta != sorted(s - x for x in pi):
        raise PresentationError(f"syzygy degrees {delta} do not match {sorted(s - x for x in pi)}")
    Smat = [[S.rows[k][i] for k in cols] for i in range(n)]

    unknowns = []
    for k in range(n):
        for j in range(n):
            for mono in ring.monomials_of_degree(s - pi[j] - delta[k]):
                unknowns.append((k, j, mono))
    conditions = {}
    for v, (k, j, mono) in enumerate(unknowns):
        for i in range(n):
            c = Smat[i][k]
            if not c:
                continue
            key = (min(i, j), max(i, j))
            for e, val in c.mul_monomial(mono).terms.items():
                row = conditions.setdefault(key + (e,), {})
                row[v] = (row.get(v, 0) + val) % ring.p
    basis = nullspace(list(conditions.values()), len(unknowns), ring.p)
    if not basis:
        raise PresentationError("no alternating combination of the syzygies exists")
    rng = random.Random(seed)
    for _ in range(budget):
        vec = random_combination(basis, ring.p, rng)
        psi = [[ring.zero] * n for _ in range(n)]
        for v, (k, j, mono) in enumerate(unknowns):
            if vec[v]:
                psi[k][j] = psi[k][j] + ring.monomial(mono, vec[v])
        det = determinant(PolyMatrix(ring, psi))
        if not det or not det.is_constant():
            continue
        A = PolyMatrix(ring, Smat).mul(PolyMatrix(ring, psi))
        if not A.is_alternating():
            continue
        A = AlternatingMatrix(ring, A.rows)
        sp = sub_pfaffians(A)
        if any(not x for x in sp.p):
            continue
        if Ideal(ring, list(sp.p)).equals(IG):
            return A
    raise PresentationError(f"no invertible alternating presentation after {budget} random solutions")


def express_in_gorenstein(f: Poly, sp: SubPfaffians) -> list:
    """Homogeneous ``c`` with ``f = sum c_i p_i``."""
    ring = f.ring
    if not f:
        return [ring.zero] * len(sp.p)
    w = Ideal(ring, list(sp.p)).witness(f)
    if w is None:
        raise HypothesisError(f"{f} is not in the ideal of the sub-pfaffians")
    return w


def combine(vec, sp: SubPfaffians) -> Poly:
    ring = sp.p[0].ring
    total = ring.zero
    for c, p in zip(vec, sp.p):
        if c:
            total = total + c * p
    return total


def perturb_witness(vec, sp: SubPfaffians, degree: int, rng) -> list:
    """Add a random Koszul syzygy ``c (p_j e_i - p_i e_j)`` of matching degree."""
    ring = sp.p[0].ring
    vec = list(vec)
    n = len(vec)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rng.shuffle(pairs)
    for i, j in pairs:
        dd = degree - sp.p[i].degree() - sp.p[j].degree()
        if dd < 0:
            continue
        c = random_form(ring, dd, rng)
        if c:
            vec[i] = vec[i] + c * sp.p[j]
            vec[j] = vec[j] - c * sp.p[i]
            return vec
    return vec


# -- the bordered matrices -------------------------------------------------------------


def _check_sizes(A, *vectors):
    n = A.nrows
    for v in vectors:
        if len(v) != n:
            raise CIUError(f"vector of length {len(v)} does not match matrix size {n}")


def build_abar(A: PolyMatrix, alpha, beta, gamma) -> AlternatingMatrix:
    """The (n+3)-square alternating matrix with zero-bordered rows gamma, beta, alpha."""
    _check_sizes(A, alpha, beta, gamma)
    ring = A.ring
    z = ring.zero
    rows = []
    for vec in (gamma, beta, alpha):
        rows.append([z, z, z] + list(vec))
    for i, row in enumerate(A.rows):
        rows.append([-gamma[i], -beta[i], -alpha[i]] + list(row))
    return AlternatingMatrix(ring, rows)


def build_M(A: PolyMatrix, alpha, beta, gamma) -> PolyMatrix:
    """The (n+2) x (n+1) matrix with rows (0, beta), (0, alpha) over (gamma | A)."""
    _check_sizes(A, alpha, beta, gamma)
    ring = A.ring
    rows = [[ring.zero] + list(beta), [ring.zero] + list(alpha)]
    for i, row in enumerate(A.rows):
        rows.append([gamma[i]] + list(row))
    return PolyMatrix(ring, rows)


def maximal_minors(M: PolyMatrix) -> list:
    """``det M_[t;-]`` for t = 1..nrows."""
    if M.nrows != M.ncols + 1:
        raise CIUError(f"expected an (m+1) x m matrix, got {M.shape}")
    return [determinant(M.delete({t}, ())) for t in range(1, M.nrows + 1)]


def maximal_minors_ideal(M: PolyMatrix):
    """Ideal of the maximal minors and the list of their degrees."""
    minors = maximal_minors(M)
    degrees = [m.degree() if m else None for m in minors]
    return Ideal(M.ring, minors), degrees


@dataclass
class UnionPresentation:
    A: AlternatingMatrix
    sp: SubPfaffians
    alpha: list
    beta: list
    gamma: list
    abar: AlternatingMatrix
    M: PolyMatrix
    g2_reconstructed: Poly
    minors: list

    @property
    def n(self) -> int:
        return self.A.nrows

    @property
    def pi(self):
        return list(self.sp.degrees)

    @property
    def h(self) -> list:
        return self.minors[2:]


def assemble(A, alpha, beta, gamma) -> UnionPresentation:
    sp = sub_pfaffians(A)
    abar = build_abar(A, alpha, beta, gamma)
    M = build_M(A, alpha, beta, gamma)
    return UnionPresentation(A, sp, list(alpha), list(beta), list(gamma), abar, M, pfaffian(abar), maximal_minors(M))


# -- verification ----------------------------------------------------------------------


@dataclass
class UnionVerdicts:
    minors_in_intersection: bool
    ideal_equality: bool
    degree_matches: bool
    degree: int | None
    expected_degree: int
    x2_reconstructed: bool
    # filled when the min-degree hypothesis fails
    equality_vs_reconstructed: bool | None = None
    sums_agree: bool | None = None

    def all_true(self) -> bool:
        return self.minors_in_intersection and self.ideal_equality and self.degree_matches and self.x2_reconstructed


def _degree_or_none(I):
    try:
        return I.degree()
    except ArtinianReductionError:
        return None


def verify_union(P: UnionPresentation, X1: CIPair, X2: CIPair, hypothesis_ok: bool = True) -> UnionVerdicts:
    ring = X1.ring
    K = intersect(X1.ideal(), X2.ideal())
    IM = Ideal(ring, P.minors)
    a = all(K.contains(m) for m in P.minors)
    b = IM.equals(K)
    deg = _degree_or_none(IM)
    expected = X1.d * X1.e + X2.d * X2.e
    d = Ideal(ring, [X2.f, X2.g]).equals(Ideal(ring, [X2.f, P.g2_reconstructed]))
    v = UnionVerdicts(a, b, deg == expected, deg, expected, d)
    if not hypothesis_ok:
        X2p = Ideal(ring, [X2.f, P.g2_reconstructed])
        v.equality_vs_reconstructed = IM.equals(intersect(X1.ideal(), X2p))
        v.sums_agree = Ideal(ring, [X1.f, X1.g, X2.f, X2.g]).equals(Ideal(ring, [X1.f, X1.g, X2.f, P.g2_reconstructed]))
    return v


def g2_relation(P: UnionPresentation, X2: CIPair) -> dict:
    """How ``pf Abar`` relates to ``g2``: a unit multiple, the same ideal with f2, or neither."""
    g2, h = X2.g, P.g2_reconstructed
    case = "e2<d2" if X2.e < X2.d else "e2=d2"
    unit = False
    if h and g2 and h.degree() == g2.degree():
        lc, lm = g2.leading_term()
        c = h.terms.get(lm, 0)
        unit = bool(c) and g2.scale(c * pow(lc, -1, g2.ring.p)) == h
    if unit:
        relation = "unit multiple"
    elif Ideal(g2.ring, [X2.f, g2]).equals(Ideal(g2.ring, [X2.f, h])):
        relation = "same ideal with f2"
    else:
        relation = "different"
    return {"case": case, "relation": relation}


def trivial_syzygy_check(P: UnionPresentation):
    """Residual of the syzygy carried by the first column of M, and its degree.

    The column ``(0, 0, gamma)`` annihilates the signed maximal minors, so the
    residual is ``sum (-1)^i gamma_i h_i`` with ``h_i = det M_[i+2;-]``.  It
    vanishes identically (Laplace expansion of M with its first column
    repeated).
    """
    ring = P.A.ring
    total = ring.zero
    degree = None
    for i, (g, h) in enumerate(zip(P.gamma, P.h), start=1):
        if g and h:
            total = total + (g * h if i % 2 == 0 else -(g * h))
            if degree is None:
                degree = g.degree() + h.degree()
    return total, degree


def unsigned_syzygy_residual(P: UnionPresentation) -> Poly:
    """``sum gamma_i h_i`` without the alternating signs; not zero in general."""
    total = P.A.ring.zero
    for g, h in zip(P.gamma, P.h):
        if g and h:
            total = total + g * h
    return total


def minor_identities(P: UnionPresentation, f1, g1, f2) -> tuple:
    """``det M_[1;-] == -f1 f2`` and ``det M_[2;-] == -g1 f2`` (sign-corrected bordered identity)."""
    return P.minors[0] == -(f1 * f2), P.minors[1] == -(g1 * f2)


def degree_identity(pi, d1, e1, d2, e2) -> tuple:
    n = len(pi)
    return 2 * sum(pi), (n - 1) * (d1 + e1 + d2 - e2)


# -- the forward pipeline --------------------------------------------------------------


@dataclass
class PipelineReport:
    normalized: NormalizedInput
    IQ: Ideal
    IZ: Ideal
    IG: Ideal
    presentation: UnionPresentation | None
    verdicts: UnionVerdicts | None
    g2: dict | None
    syzygy_residual: Poly | None
    minor_checks: tuple | None
    degree_identity: tuple
    flags: dict
    hard_failures: list = field(default_factory=list)
    skipped: str | None = None

    @property
    def degrees(self):
        return self.normalized.degrees

    @property
    def pi(self) -> list:
        return sorted(g.degree() for g in self.IG.generators)

    @property
    def n(self) -> int:
        return len(self.IG.generators)

    def intersection(self) -> Ideal:
        return intersect(self.normalized.X1.ideal(), self.normalized.X2.ideal())


def run_pipeline(X1: CIPair, X2: CIPair, seed: int = 0, budget: int = DEFAULT_PRESENTATION_BUDGET) -> PipelineReport:
    N = normalize_input(X1, X2, seed=seed)
    ring = N.f1.ring
    f1, g1, f2, g2 = N.f1, N.g1, N.f2, N.g2
    d1, e1, d2, e2 = N.degrees
    IQ = Ideal(ring, [f1, g1, f2, g2])
    IZ = Ideal(ring, [f1, g1, f2])
    IG = link_to_gorenstein(IZ, IQ)
    pi = sorted(g.degree() for g in IG.generators)
    flags = {
        "min_degree_hypothesis": N.hypothesis_ok,
        "codim_sum_is_3": True,
    }
    failures = []
    ident = degree_identity(pi, d1, e1, d2, e2)
    if ident[0] != ident[1]:
        failures.append(f"2*sum(pi) = {ident[0]} but (n-1)(d1+e1+d2-e2) = {ident[1]}")
    try:
        A = alternating_presentation(IG, seed=seed, budget=budget)
    except PresentationError as exc:
        return PipelineReport(N, IQ, IZ, IG, None, None, None, None, None, ident, flags, failures, skipped=str(exc))
    sp = sub_pfaffians(A)
    alpha = express_in_gorenstein(f1, sp)
    beta = express_in_gorenstein(g1, sp)
    gamma = express_in_gorenstein(f2, sp)
    P = assemble(A, alpha, beta, gamma)
    for name, vec, target in (("alpha", alpha, f1), ("beta", beta, g1), ("gamma", gamma, f2)):
        if combine(vec, sp) != target:
            failures.append(f"witness {name} does not reproduce its form")
    V = verify_union(P, N.X1, N.X2, N.hypothesis_ok)
    minor_ok = minor_identities(P, f1, g1, f2)
    residual, _ = trivial_syzygy_check(P)
    deg_K = _degree_or_none(intersect(N.X1.ideal(), N.X2.ideal()))
    flags["degree_additivity"] = deg_K == d1 * e1 + d2 * e2
    flags["acm_certified"] = V.ideal_equality if N.hypothesis_ok else bool(V.equality_vs_reconstructed)
    if N.hypothesis_ok and not V.all_true():
        failures.append("union verdicts failed although the hypotheses hold")
    if not N.hypothesis_ok and not (V.equality_vs_reconstructed and V.sums_agree):
        failures.append("reconstructed X2' does not account for the output ideal")
    if not all(minor_ok):
        failures.append("first two maximal minors differ from -f1*f2, -g1*f2")
    if residual:
        failures.append("(0, 0, gamma) is not a syzygy of the maximal minors")
    return PipelineReport(N, IQ, IZ, IG, P, V, g2_relation(P, N.X2), residual, minor_ok, ident, flags, failures)


# -- the inverse construction ----------------------------------------------------------


@dataclass
class InverseResult:
    X1: CIPair
    X2: CIPair
    presentation: UnionPresentation
    verdicts: UnionVerdicts


def inverse_construction(A: PolyMatrix, alpha, beta, gamma) -> InverseResult:
    """Rebuild ``X1 = (f1, g1)``, ``X2 = (f2, pf Abar)`` and verify the union.

    Gate failures raise ``GateError`` with ``gate`` one of ``pfaffian_height``,
    ``degrees``, ``regular_sequence``, ``coprimality``.
    """
    if not isinstance(A, AlternatingMatrix):
        A = AlternatingMatrix(A.ring, A.rows)
    ring = A.ring
    _check_sizes(A, alpha, beta, gamma)
    sp = sub_pfaffians(A)
    IG = Ideal(ring, list(sp.p))
    if IG.is_unit() or not IG.generators or IG.codimension() != 3:
        h = "unit" if IG.generators and IG.is_unit() else (IG.codimension() if IG.generators else 0)
        raise GateError("pfaffian_height", f"Pf_(n-1)(A) has height {h}, expected 3")
    f1, g1, f2 = combine(alpha, sp), combine(beta, sp), combine(gamma, sp)
    if not (f1 and g1 and f2):
        raise GateError("regular_sequence", "one of f1, g1, f2 is zero")
    if not all(x.is_homogeneous() for x in (f1, g1, f2)):
        raise GateError("degrees", "coefficient vectors give inhomogeneous forms")
    if not is_regular_sequence([f1, g1, f2]):
        raise GateError("regular_sequence", "(f1, g1, f2) is not a regular sequence")
    P = assemble(A, alpha, beta, gamma)
    g2 = P.g2_reconstructed
    if not g2 or not g2.is_homogeneous() or g2.is_constant() or not is_regular_sequence([f2, g2]):
        raise GateError("coprimality", "f2 and pf Abar are not coprime")
    X1, X2 = CIPair(f1, g1), CIPair(f2, g2)
    return InverseResult(X1, X2, P, verify_union(P, X1, X2))
