"""Shared generators for lattice round-trip and fibration grids."""

import random
from fractions import Fraction as F
from itertools import product

from lagfib.affine import IntAffine2, conjugate
from lagfib.lattice import LatticeNF

GRID_VALUES = (F(1, 2), F(1), F(2))


def unimodular(rng, bound=5):
    while True:
        M = ((rng.randint(-bound, bound), rng.randint(-bound, bound)),
             (rng.randint(-bound, bound), rng.randint(-bound, bound)))
        if M[0][0] * M[1][1] - M[0][1] * M[1][0] in (1, -1):
            return M


def random_element(rng, bound=5):
    t = tuple(F(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(2))
    return IntAffine2(unimodular(rng, bound), t)


def series_grid(values=GRID_VALUES, m_range=range(5)):
    """Normal forms of every series over a small parameter grid."""
    out = [LatticeNF("R2")]
    for u in values:
        out.append(LatticeNF("C2uv", u=u, v=0))
    for n, y in product(range(1, 5), values):
        out.append(LatticeNF("C2ny", n=n, y=y))
    for d, x in product((0, 1), values):
        out.append(LatticeNF("M2", delta=d, x=x))
    for d1, k in product(values, (1, 2, 3)):
        out.append(LatticeNF("T2uvwz", u=d1, v=0, w=0, z=d1 * k))
    for n, y, x in product(range(1, 5), values, values):
        out.append(LatticeNF("T2nyx", n=n, y=y, x=x))
    for m, d, x, y in product(m_range, (0, 1), values, values):
        if d == 1 and m % 2:
            continue
        out.append(LatticeNF("K2", m=m, y=y, delta=d, x=x))
    return out


def disguise(nf, rng):
    """Generators of ``nf`` after a random generator substitution and conjugation."""
    g = list(nf.generators().values())
    if nf.series == "K2":
        a, b = g
        k = rng.randint(-3, 3)
        g = [a ** rng.choice((1, -1)), a ** k * b ** rng.choice((1, -1))]
        if rng.random() < 0.5:
            g.reverse()
    elif len(g) == 2:
        C = unimodular(rng, 3)
        g = [g[0] ** C[0][0] * g[1] ** C[0][1], g[0] ** C[1][0] * g[1] ** C[1][1]]
    elif g:
        g = [g[0] ** rng.choice((1, -1))]
    f = random_element(rng)
    return [conjugate(f, x) for x in g]


def rng(seed=0):
    return random.Random(seed)
