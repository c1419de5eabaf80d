"""Input data shared by the module tests and the acceptance run."""

import random

from ciu.liaison import CIPair
from ciu.ring import Ring, random_form

R3 = Ring(("x", "y", "z"))
RT = Ring(("x", "y", "t"))
R4 = Ring(("x", "y", "z", "w"))
R9 = Ring(tuple(f"x{i}" for i in range(9)))


def small():
    x, y, z = R3.gens()
    return CIPair(x * x, y * y), CIPair(z, x + y)


def example():
    X = R9.gens()
    f1 = X[0] ** 3 * X[1] ** 3 * X[7]
    g1 = X[2] ** 3 * X[5] ** 3 * X[6]
    f2 = (X[0] ** 3 + X[2] ** 3 + X[4] ** 3) * X[3] ** 3 * X[8] + (X[0] ** 3 * X[7] - X[5] ** 3 * X[8]) * X[1] ** 3
    g2 = (X[0] ** 3 + X[2] ** 3 + X[4] ** 3) * X[6] * X[7] * X[8]
    return CIPair(f1, g1), CIPair(f2, g2)


def remark():
    x, y, t = RT.gens()
    return CIPair(x * x, y * y), CIPair(t * t, (x + y + t) ** 2)


def remark_reconstructed():
    x, y, t = RT.gens()
    return CIPair(t * t, x * y + x * t + y * t)


def propgen():
    x, y, z, w = R4.gens()
    return x * x, y * y, x * x + y * y + z * z, z


def corollary(d2=5, seed=1):
    """(x, y) and (F, z) with F = x*a + y*b + z*c for random forms a, b, c."""
    x, y, z, w = R4.gens()
    rng = random.Random(seed)
    F = x * random_form(R4, d2 - 1, rng) + y * random_form(R4, d2 - 1, rng) + z * random_form(R4, d2 - 1, rng)
    return x, y, F, z


def third_socle_case(seed=0):
    """Pairs with e1 = pi1 and d1 = pi2, built backwards from a 3x3 matrix of quadrics.

    f1 and g1 are two of the sub-pfaffians, f2 a linear combination; the
    inverse construction supplies g2 = pf Abar.
    """
    from ciu.liaison import inverse_construction
    from ciu.pfaffian import AlternatingMatrix

    rng = random.Random(seed)
    A = AlternatingMatrix.from_upper(R3, 3, {(i, j): random_form(R3, 2, rng) for i in range(1, 4) for j in range(i + 1, 4)})
    O, one = R3.zero, R3.one
    res = inverse_construction(A, [O, one, O], [one, O, O], [random_form(R3, 1, rng) for _ in range(3)])
    return res.X1, res.X2
