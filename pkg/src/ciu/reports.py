"""Hilbert functions and graded Betti numbers of a union of two codimension-2
complete intersections, read off from the degree data ``(d1, e1, d2, e2)``
and the generator degrees ``pi`` of the linked Gorenstein ideal.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .errors import HypothesisError, TheoremContradiction
from .groebner import Ideal, intersect, is_regular_sequence, minimal_generators, minimal_syzygies, syzygies
from .linalg import SparseEchelon
from .pfaffian import PolyMatrix, determinant
from .ring import Poly


def _plus(a: int) -> int:
    return a if a > 0 else 0


def hf_closed_form(d1, e1, d2, e2, pi, t) -> int:
    """Hilbert function of the Artinian reduction at degree ``t``."""
    h = _plus(t + 1)
    h -= sum(_plus(t + 1 - e2 - p) for p in pi)
    h -= _plus(t + 1 - d1 - d2) + _plus(t + 1 - e1 - d2)
    h += sum(_plus(t + 1 - d1 - e1 - d2 + p) for p in pi)
    h += _plus(t + 1 - d2 - e2)
    return h


@dataclass(frozen=True)
class HFTable:
    values: tuple

    @property
    def socle(self) -> int:
        """Largest t with H(t) > 0 (-1 for the zero table)."""
        for t in range(len(self.values) - 1, -1, -1):
            if self.values[t] > 0:
                return t
        return -1

    def __getitem__(self, t) -> int:
        return self.values[t] if 0 <= t < len(self.values) else 0

    def total(self) -> int:
        return sum(self.values)

    def rows(self):
        return [(t, v) for t, v in enumerate(self.values)]


def table(values) -> HFTable:
    values = list(values)
    while values and values[-1] == 0:
        values.pop()
    if any(v < 0 for v in values):
        raise ValueError(f"negative Hilbert function value in {values}")
    return HFTable(tuple(values))


def hf_closed_form_table(d1, e1, d2, e2, pi) -> HFTable:
    top = d1 + e1 + d2 + 1
    return table(hf_closed_form(d1, e1, d2, e2, pi, t) for t in range(top + 1))


def generator_degree_facts(d1, e1, d2, e2, pi):
    """Degrees of the two lowest generators, with the inequalities behind them."""
    if d1 < e1:
        raise HypothesisError("convention d1 >= e1 violated")
    pi = sorted(pi)
    first, second = e2 + pi[0], e2 + pi[1]
    if not (first <= e1 + d2 <= d1 + d2):
        raise HypothesisError(f"guard e2+pi1 <= e1+d2 <= d1+d2 fails for pi={pi}")
    if not second <= e1 + d2:
        raise HypothesisError(f"guard e2+pi2 <= e1+d2 fails for pi={pi}")
    return first, second


@dataclass(frozen=True)
class SocleBound:
    bound: int
    case: str
    sharp: bool
    # third case only: the two arguments of the max tie
    tie: bool = False


def socle_degree_bound(d1, e1, d2, e2, pi) -> SocleBound:
    pi = sorted(pi)
    if d1 < e1:
        raise HypothesisError("convention d1 >= e1 violated")
    if e1 < pi[0]:
        raise HypothesisError("e1 < pi1 is impossible when I_Z is contained in I_G")
    if e1 > pi[0]:
        return SocleBound(e1 + d1 + d2 - pi[0] - 2, "e1>pi1", True)
    if d1 > pi[1]:
        return SocleBound(e1 + d1 + d2 - pi[1] - 2, "e1=pi1,d1>pi2", True)
    a = e1 + d1 + d2 - pi[2] - 2
    b = d2 + e2 - 2
    return SocleBound(max(a, b), "e1=pi1,d1=pi2", a > b, a == b)


@dataclass(frozen=True)
class ResolutionData:
    generators: tuple
    syzygies: tuple

    def __post_init__(self):
        if len(self.syzygies) != len(self.generators) - 1:
            raise ValueError("a codimension-2 resolution has one syzygy fewer than generators")

    def render(self) -> str:
        return f"gens: {twists(self.generators)} / syz: {twists(self.syzygies)}"


def twists(degrees) -> str:
    c = Counter(degrees)
    return " ".join(f"{d}^{c[d]}" if c[d] > 1 else f"{d}" for d in sorted(c))


def resolution_degrees(d1, e1, d2, e2, pi) -> ResolutionData:
    gens = [d1 + d2, e1 + d2] + [e2 + p for p in pi]
    syz = [d2 + e2] + [d1 + e1 + d2 - p for p in pi]
    return ResolutionData(tuple(sorted(gens)), tuple(sorted(syz)))


def regularity_bound(rd: ResolutionData) -> int:
    return max(max(rd.generators), max(rd.syzygies) - 1)


def initial_degree(rd: ResolutionData) -> int:
    return min(rd.generators)


def degree_from_resolution(rd: ResolutionData) -> int:
    """Degree of a codimension-2 aCM scheme from its twists: (sum syz^2 - sum gen^2) / 2."""
    twice = sum(s * s for s in rd.syzygies) - sum(g * g for g in rd.generators)
    if twice % 2:
        raise ValueError("odd sum of squares: inconsistent twists")
    return twice // 2


def degree_equation(d1, e1, d2, e2, pi):
    """Both sides of the sum-of-squares identity: (sum of squares, 2(d1e1 + d2e2))."""
    rd = resolution_degrees(d1, e1, d2, e2, pi)
    return 2 * degree_from_resolution(rd), 2 * (d1 * e1 + d2 * e2)


# -- Betti numbers -----------------------------------------------------------------


@dataclass
class BettiData:
    generators: tuple
    syzygies: tuple


def minimal_betti(I: Ideal, syzygy_bound=None) -> BettiData:
    """Degrees of minimal generators and of minimal first syzygies of ``I``."""
    gens = minimal_generators(I.generators, I.ring)
    S = minimal_syzygies(syzygies(gens, degree_bound=syzygy_bound), max_degree=syzygy_bound)
    return BettiData(tuple(sorted(g.degree() for g in gens)), tuple(sorted(S.degrees)))


def betti_numerator(b: BettiData) -> list:
    """Hilbert series numerator ``1 - sum z^gen + sum z^syz`` of a length-1 resolution."""
    top = max(b.generators + b.syzygies + (0,))
    num = [0] * (top + 1)
    num[0] = 1
    for g in b.generators:
        num[g] -= 1
    for s in b.syzygies:
        num[s] += 1
    while num and num[-1] == 0:
        num.pop()
    return num


@dataclass
class CancellationReport:
    predicted: ResolutionData
    actual: BettiData
    cancellations: list
    permitted: list
    ok: bool
    problems: list = field(default_factory=list)


def _multiset_minus(a, b):
    c = Counter(a)
    c.subtract(Counter(b))
    return sorted(c.elements()), sorted((-c).elements())


def cancellation_analysis(rd: ResolutionData, I: Ideal, d1, e1, d2, e2, strict: bool = True) -> CancellationReport:
    """Compare the predicted twists with the actual minimal Betti degrees.

    Every discrepancy must be a generator and a syzygy of the same degree
    cancelling, in one of the degrees d1+d2, e1+d2, e2+d2, at most three times.
    With ``strict`` a violation raises ``TheoremContradiction``.
    """
    actual = minimal_betti(I, syzygy_bound=max(rd.syzygies))
    lost_gens, extra_gens = _multiset_minus(rd.generators, actual.generators)
    lost_syz, extra_syz = _multiset_minus(rd.syzygies, actual.syzygies)
    permitted = sorted([d1 + d2, e1 + d2, e2 + d2])
    problems = []
    if extra_gens or extra_syz:
        problems.append(f"actual Betti degrees outside the prediction: gens {extra_gens}, syz {extra_syz}")
    if lost_gens != lost_syz:
        problems.append(f"unmatched cancellations: gens {lost_gens} vs syz {lost_syz}")
    over = Counter(lost_gens) - Counter(permitted)
    if over:
        problems.append(f"cancellations in degrees {sorted(over.elements())} are not permitted")
    if betti_numerator(actual) != I.hilbert_numerator():
        problems.append("actual Betti degrees disagree with the Hilbert series of I")
    if len(lost_gens) > 3:
        problems.append(f"{len(lost_gens)} cancellations, at most 3 allowed")
    report = CancellationReport(rd, actual, lost_gens, permitted, not problems, problems)
    if problems and strict:
        raise TheoremContradiction("; ".join(problems))
    return report


@dataclass
class ProductReport:
    minimal: dict
    chosen: tuple
    ok: bool


def _lower_part(I: Ideal, d: int):
    gens = [g for g in minimal_generators(I.generators, I.ring) if g.degree() < d]
    return Ideal(I.ring, gens) if gens else None


def _independent_mod(polys, J, d, p) -> bool:
    ech = SparseEchelon(p)
    gb = J.groebner(degree_bound=d) if J is not None else None
    for f in polys:
        nf = gb.normal_form(f) if gb is not None else f
        if not nf or not ech.add(dict(nf.terms)):
            return False
    return True


def product_generator_check(f1, g1, f2, g2, I: Ideal, strict: bool = True) -> ProductReport:
    """Which of f1f2, f1g2, g1f2, g1g2 can be minimal generators of ``I``.

    A form of degree d in ``I`` belongs to some minimal generating set iff it
    is not in the ideal generated by the part of ``I`` below degree d.  The
    pair tried first follows the replacements f1f2 -> g1g2, g1f2 -> f1g2; the
    reported pair must be jointly part of one minimal generating set, which
    needs independence modulo the lower part when the degrees agree.
    """
    p = I.ring.p
    products = {"f1f2": f1 * f2, "f1g2": f1 * g2, "g1f2": g1 * f2, "g1g2": g1 * g2}
    minimal = {}
    for name, P in products.items():
        if not I.contains(P):
            raise TheoremContradiction(f"{name} is not in the intersection ideal")
        minimal[name] = _independent_mod([P], _lower_part(I, P.degree()), P.degree(), p)
    first = "f1f2" if minimal["f1f2"] else "g1g2"
    second = "g1f2" if minimal["g1f2"] else "f1g2"
    names = list(products)
    order = [(first, second)] + [(a, b) for i, a in enumerate(names) for b in names[i + 1:]]
    chosen, ok = None, False
    for a, b in order:
        if not (minimal[a] and minimal[b]):
            continue
        Pa, Pb = products[a], products[b]
        if Pa.degree() != Pb.degree() or _independent_mod([Pa, Pb], _lower_part(I, Pa.degree()), Pa.degree(), p):
            chosen, ok = (a, b), True
            break
    if strict and not ok:
        raise TheoremContradiction(f"no two products are jointly minimal generators: {minimal}")
    return ProductReport(minimal, chosen, ok)


# -- the Hilbert-Burch special case ------------------------------------------------------


@dataclass
class HilbertBurchData:
    witness: tuple
    matrix: PolyMatrix
    generators: tuple
    minors: tuple
    resolution: ResolutionData
    hf: HFTable
    hf_X1: HFTable
    hf_X2: HFTable
    additivity: bool
    equals_intersection: bool
    minors_match: bool


def _artinian_table(I: Ideal) -> HFTable:
    return table(I.artinian_hf())


def prop_gen_pipeline(f1, g1, f2, g2):
    """Hilbert-Burch data when ``f2`` lies in ``(f1, g1, g2)``; None otherwise."""
    ring = f1.ring
    w = Ideal(ring, [f1, g1, g2]).witness(f2)
    if w is None:
        return None
    a1, b1, b2 = w
    z = ring.zero
    M = PolyMatrix(ring, [[-g2, z], [b1, f1], [a1, -g1]])
    gens = (f2 - b2 * g2, g1 * g2, f1 * g2)
    minors = tuple(determinant(M.delete({t}, ())) for t in (1, 2, 3))
    minors_match = all(m == g or m == -g for m, g in zip(minors, gens))
    IY = Ideal(ring, list(minors))
    if IY.is_unit() or IY.codimension() != 2:
        raise TheoremContradiction("the Hilbert-Burch minors do not generate a height 2 ideal")
    X1, X2 = Ideal(ring, [f1, g1]), Ideal(ring, [f2, g2])
    K = intersect(X1, X2)
    equal = Ideal(ring, list(gens)).equals(K)
    d1, e1, d2, e2 = f1.degree(), g1.degree(), f2.degree(), g2.degree()
    rd = ResolutionData(tuple(sorted([d2, e1 + e2, d1 + e2])), tuple(sorted([d2 + e2, e1 + e2 + d1])))
    H, H1, H2 = _artinian_table(K), _artinian_table(X1), _artinian_table(X2)
    top = H.socle + 2
    additive = all(H[t] == H1[t - e2] + H2[t] for t in range(top + 1))
    return HilbertBurchData((a1, b1, b2), M, gens, minors, rd, H, H1, H2, additive, equal, minors_match)


def decreasing_type(H) -> bool:
    """After the first strict decrease the values strictly decrease down to 0."""
    values = list(H.values if isinstance(H, HFTable) else H)
    while values and values[-1] == 0:
        values.pop()
    k = next((t for t in range(1, len(values)) if values[t] < values[t - 1]), None)
    if k is None:
        return True
    return all(values[t] < values[t - 1] for t in range(k, len(values)))


def flat_segments(H: HFTable) -> list:
    """Degrees t > peak with H(t) == H(t-1) > 0 after the values have started to fall."""
    v = H.values
    k = next((t for t in range(1, len(v)) if v[t] < v[t - 1]), None)
    if k is None:
        return []
    return [t for t in range(k, len(v)) if v[t] >= v[t - 1]]


@dataclass
class CorollaryReport:
    gate: bool
    reason: str
    member: bool | None = None
    data: HilbertBurchData | None = None
    decreasing: bool | None = None
    flats: list = field(default_factory=list)


def corollary_check(f1, g1, f2, g2) -> CorollaryReport:
    d1, e1, d2, e2 = f1.degree(), g1.degree(), f2.degree(), g2.degree()
    if d2 < d1 + e1 + e2 - 2:
        return CorollaryReport(False, "gate not met: d2 < d1+e1+e2-2")
    if not is_regular_sequence([f1, g1, g2]):
        return CorollaryReport(False, "gate not met: (f1, g1, g2) is not a regular sequence")
    data = prop_gen_pipeline(f1, g1, f2, g2)
    if data is None:
        raise TheoremContradiction("degree gate holds but f2 is not in (f1, g1, g2)")
    rep = CorollaryReport(True, "gate met", True, data, decreasing_type(data.hf), flat_segments(data.hf))
    if d2 > d1 + e1 + e2 and rep.decreasing:
        raise TheoremContradiction("d2 > d1+e1+e2 but H_A is of decreasing type")
    return rep
