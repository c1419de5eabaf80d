"""Hilbert series of monomial ideals and helpers for z-polynomials.

A z-polynomial is a list of ints ``[a_0, a_1, ...]`` standing for
``sum a_k z^k``.  The numerator ``N`` of a monomial ideal ``M`` in ``n``
variables is defined by ``HS(R/M) = N(z) / (1 - z)^n``.
"""

from __future__ import annotations

from math import comb


def zpoly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def zpoly_add(a, b):
    n = max(len(a), len(b))
    return zpoly_trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def zpoly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return zpoly_trim(out)


def zpoly_shift(a, k):
    return [0] * k + list(a) if a else []


def zpoly_divide_one_minus_z(a):
    """Return ``a / (1 - z)`` if exact, else None."""
    a = zpoly_trim(a)
    if not a:
        return []
    if sum(a) != 0:
        return None
    out = []
    acc = 0
    for x in a[:-1]:
        acc += x
        out.append(acc)
    return zpoly_trim(out)


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(h, g)) for h in out):
            out.append(g)
    return out


def _is_base_case(gens):
    used = set()
    for g in gens:
        support = {i for i, e in enumerate(g) if e}
        if used & support:
            return False
        used |= support
    return True


def hilbert_numerator(gens, nvars: int):
    """Numerator of the Hilbert series of ``R/M`` for monomial generators ``gens``."""
    gens = [tuple(g) for g in gens]
    if any(sum(g) == 0 for g in gens):
        return []
    return _numerator(_minimalize(gens), nvars)


def _numerator(gens, n):
    if not gens:
        return [1]
    if _is_base_case(gens):
        out = [1]
        for g in gens:
            d = sum(g)
            out = zpoly_mul(out, [1] + [0] * (d - 1) + [-1])
        return out
    # pivot on the variable occurring in the most generators
    counts = [0] * n
    for g in gens:
        for i, e in enumerate(g):
            if e:
                counts[i] += 1
    var = max(range(n), key=lambda i: (counts[i], -i))
    exps = sorted(g[var] for g in gens if g[var])
    e = exps[(len(exps) - 1) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = _minimalize(gens + [pivot])
    colon = _minimalize(
        [tuple(max(0, a - e) if i == var else a for i, a in enumerate(g)) for g in gens]
    )
    return zpoly_add(_numerator(plus, n), zpoly_shift(_numerator(colon, n), e))


def hf_from_numerator(num, nvars: int, t: int) -> int:
    """Coefficient of ``z^t`` in ``num / (1 - z)^nvars``."""
    if t < 0:
        return 0
    total = 0
    for k, a in enumerate(num):
        if a and k <= t:
            total += a * comb(t - k + nvars - 1, nvars - 1)
    return total
