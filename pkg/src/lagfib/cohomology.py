"""Obstruction groups and twisting moduli of fibrations over compact bases.

The obstruction group is ``Z^2`` modulo the subgroup ``B`` of coboundaries
coming from changes of section on the one-skeleton of the standard cell
structure.  Cosets are reduced with a Hermite basis of ``B``; the
canonical representative of a coset is its lexicographically least vector
with nonnegative coordinates (in the finite directions).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonCompactBase, TrivialAmbient, UnrealizableForm
from .exact import ext_gcd, fmt_rat, rat, rational_gcd, snf
from .lattice import LatticeNF


def coboundary_image(nf):
    """Generators of the coboundary subgroup ``B`` of ``Z^2``."""
    s = nf.series
    if not nf.compact:
        raise NonCompactBase(f"{s} has a non-compact base; its obstruction group is trivial")
    if s == "T2nyx":
        return [(0, nf["n"])]
    if s == "T2uvwz":
        return []
    m, d = nf["m"], nf["delta"]
    return [(2, d - m), (0, -m)]


def _hermite(gens):
    """Basis ``(a, b), (0, c)`` of the span of ``gens``; ``a, c >= 0``, ``0 <= b < c`` if ``c > 0``."""
    a, b = 0, 0
    rest = []
    for p, q in gens:
        g, s, t = ext_gcd(a, p)
        if g == 0:
            rest.append(q)
            continue
        # (a,b) and (p,q) -> (g, s b + t q) and the first-coordinate-free remainder
        nb = s * b + t * q
        rest.append((a // g) * q - (p // g) * b)
        a, b = g, nb
    c = 0
    for q in rest:
        c = gcd(c, q)
    if c:
        b %= c
    return a, b, c


@dataclass(frozen=True)
class ObstructionGroup:
    rank: int
    torsion: tuple
    invariant_factors: tuple
    generators: tuple
    hermite: tuple
    trivial: bool = False

    @property
    def finite(self):
        return self.rank == 0

    @property
    def order(self):
        if not self.finite:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def reduce(self, v):
        """Canonical representative of the coset of ``v``."""
        if self.trivial:
            return (0, 0)
        m0, n0 = int(v[0]), int(v[1])
        a, b, c = self.hermite
        if a:
            i = m0 % a
            k = (m0 - i) // a
            m0, n0 = i, n0 - k * b
        if c:
            n0 %= c
        return (m0, n0)

    def congruent(self, v, w):
        return self.reduce(v) == self.reduce(w)

    def representatives(self):
        """All canonical representatives, sorted, when the group is finite."""
        if self.trivial:
            return [(0, 0)]
        if not self.finite:
            raise ValueError("infinite group; use representatives_pattern")
        a, _, c = self.hermite
        return [(i, j) for i in range(a) for j in range(c)]

    def representatives_pattern(self):
        a, _, c = self.hermite
        first = f"{{0..{a - 1}}}" if a else "Z"
        second = f"{{0..{c - 1}}}" if c else "Z"
        return f"{first} x {second}"

    def describe(self):
        parts = ["Z"] * self.rank + [f"Z{d}" for d in self.torsion]
        return " + ".join(parts) or "0"

    def to_json(self):
        out = {"rank": self.rank, "torsion": list(self.torsion),
               "invariant_factors": list(self.invariant_factors),
               "coboundary_generators": [list(g) for g in self.generators],
               "structure": self.describe()}
        if self.finite:
            out["order"] = self.order
            out["representatives"] = [list(r) for r in self.representatives()]
        else:
            out["representatives_pattern"] = self.representatives_pattern()
        return out


def group_from_generators(gens, trivial=False):
    gens = tuple(tuple(int(x) for x in g) for g in gens)
    if trivial:
        return ObstructionGroup(0, (), (), (), (1, 0, 1), trivial=True)
    if gens:
        cols = tuple(zip(*gens))  # 2 x k, generators as columns
        diag = [d for d in snf(cols).diagonal if d]
    else:
        diag = []
    rank = 2 - len(diag)
    factors = tuple(d for d in diag if d > 1)
    a, b, c = _hermite(gens)
    if b == 0:
        # split presentation: B is a direct sum along the coordinate axes
        torsion = tuple(d for d in (a, c) if d > 1)
    else:
        torsion = factors
    return ObstructionGroup(rank, torsion, factors, gens, (a, b, c))


def h2(nf):
    """Obstruction group of a normal-form lattice."""
    if not nf.compact:
        return group_from_generators((), trivial=True)
    return group_from_generators(coboundary_image(nf))


# ----------------------------------------------------------------------------
# twistings


@dataclass(frozen=True)
class TwistingModuli:
    """``ambient`` is ``"real-line"`` (torus bases) or ``"trivial"``.

    ``area`` turns a constant twisting coefficient into its total integral
    over the fundamental domain; ``generator`` spans the integrals of exact
    latticed twistings.
    """
    ambient: str
    generator: Fraction = None
    area: Fraction = None

    def to_json(self):
        if self.ambient == "trivial":
            return {"ambient": "trivial"}
        return {"ambient": self.ambient, "generator": fmt_rat(self.generator),
                "area": fmt_rat(self.area), "moduli": f"R / ({fmt_rat(self.generator)})Z"}


def twisting_moduli(nf):
    s = nf.series
    if s == "T2nyx":
        return TwistingModuli("real-line", rational_gcd([nf["x"], nf["y"]]), nf["x"] * nf["y"])
    if s == "T2uvwz":
        u, v, w, z = (nf[k] for k in "uvwz")
        return TwistingModuli("real-line", rational_gcd([u, v, w, z]), abs(u * z - v * w))
    return TwistingModuli("trivial")


def twisting_canonical(total_integral, moduli):
    """Representative of ``total_integral`` modulo ``generator`` in ``[0, generator)``."""
    if moduli.ambient == "trivial":
        raise TrivialAmbient("twisting moduli are trivial; the canonical value is 0")
    t = rat(total_integral)
    g = moduli.generator
    return t - g * (t // g)


def shift_integral(k, l, p, q, nf):
    """Total integral ``p u + q v + k w + l z`` of the differential of a latticed form."""
    k, l, p, q = (int(x) for x in (k, l, p, q))
    if nf.series == "T2nyx":
        if k != 0:
            raise UnrealizableForm(f"k = {k}: only k = 0 is realizable over this torus series")
        u, v, w, z = nf["x"], Fraction(0), Fraction(0), nf["y"]
    elif nf.series == "T2uvwz":
        u, v, w, z = (nf[c] for c in "uvwz")
    else:
        raise UnrealizableForm(f"shift integrals are defined for torus series, not {nf.series}")
    return p * u + q * v + k * w + l * z


__all__ = ["coboundary_image", "ObstructionGroup", "group_from_generators", "h2",
           "TwistingModuli", "twisting_moduli", "twisting_canonical", "shift_integral",
           "LatticeNF"]
