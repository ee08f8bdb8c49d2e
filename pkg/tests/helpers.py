"""Shared generators and independent oracles for the test suite."""

import itertools
from fractions import Fraction

from barl1.barcomplex import Chain, Cochain, boundary, coboundary
from barl1.linalg import solve_square


def random_chain(G, degree, rng, terms=3, lo=-3, hi=3):
    coeffs = {}
    for _ in range(terms):
        tup = tuple(G.sample(rng) for _ in range(degree))
        coeffs[tup] = coeffs.get(tup, 0) + rng.randrange(lo, hi + 1)
    return Chain(G, degree, coeffs)


def random_boundary(G, degree, rng, terms=2):
    z = boundary(random_chain(G, degree + 1, rng, terms=terms))
    return z


def random_table_cochain(G, degree, rng, lo=-2, hi=2):
    tab = {}
    for t in itertools.product(G.elements(), repeat=degree):
        tab[t] = Fraction(rng.randrange(lo, hi + 1))
    return Cochain(G, degree, table=tab)


def random_cocycle(G, degree, rng):
    """Coboundaries are cocycles; degree 0 cochains are all cocycles."""
    if degree == 0:
        return Cochain(G, 0, table={(): Fraction(rng.randrange(-3, 4))})
    return coboundary(random_table_cochain(G, degree - 1, rng))


def brute_lp_min(rows, rhs, objective):
    """Minimum of c.x over {Ax = b, x >= 0} by enumerating basic
    solutions; None when infeasible.  Only for toy sizes."""
    m, n = len(rows), len(objective)
    best = None
    for cols in itertools.combinations(range(n), m):
        sq = [[rows[i][j] for j in cols] for i in range(m)]
        x = solve_square(sq, list(rhs))
        if x is None or any(v < 0 for v in x):
            continue
        val = sum(objective[j] * x[k] for k, j in enumerate(cols))
        if best is None or val < best:
            best = val
    return best


def cochain_equal(f, g, G, degree):
    for t in itertools.product(G.elements(), repeat=degree):
        if f.value(t) != g.value(t):
            return False
    return True
