"""The integral affine group GL2(Z) x| Q^2 acting on the plane.

Elements are pairs ``(A, b)`` acting by ``p -> A p + b``; products compose
as maps, so ``(g * h)(p) == g(h(p))``.
"""

import operator
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import (NoUnitEigenvalue, NotPrimitive, ParseError, PreconditionError,
                     ShapeMismatch)
from .exact import (det, ext_gcd, fmt_rat, mat_from_json, mat_inv, mat_mul, mat_vec,
                    mat_to_json, matrix, rat)

E2 = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))


class Orientation(str, Enum):
    PRESERVING = "preserving"
    REVERSING = "reversing"


class Affine2:
    """Invertible affine map of Q^2 with rational linear part.

    This is the general witness type; :class:`IntAffine2` adds the
    requirement that the linear part lies in GL2(Z).
    """

    __slots__ = ("linear", "translation")

    def __init__(self, linear, translation=(0, 0)):
        lin = matrix(linear)
        tr = tuple(Fraction(x) for x in translation)
        if len(lin) != 2 or any(len(r) != 2 for r in lin) or len(tr) != 2:
            raise ShapeMismatch("plane affine maps need a 2x2 linear part and 2 translation entries")
        if det(lin) == 0:
            raise ShapeMismatch("linear part is singular")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "translation", tr)

    def __setattr__(self, name, value):
        raise AttributeError("affine elements are immutable")

    @classmethod
    def _trusted(cls, lin, tr):
        # products and inverses of valid elements need no re-validation
        out = object.__new__(cls)
        object.__setattr__(out, "linear", lin)
        object.__setattr__(out, "translation", tr)
        return out

    @classmethod
    def identity(cls):
        lin = ((1, 0), (0, 1)) if issubclass(cls, IntAffine2) else E2
        return cls._trusted(lin, (Fraction(0), Fraction(0)))

    @classmethod
    def translation_by(cls, v):
        return cls(E2, v)

    @property
    def det(self):
        return det(self.linear)

    @property
    def is_integral(self):
        return (all(x.denominator == 1 for r in self.linear for x in r)
                and self.det in (1, -1))

    def is_identity(self):
        return self.linear == E2 and not any(self.translation)

    def is_translation(self):
        return self.linear == E2

    def __call__(self, p):
        return tuple(a + b for a, b in zip(mat_vec(self.linear, p), self.translation))

    def __mul__(self, other):
        (a, b), (c, d) = self.linear
        (e, f), (g, h) = other.linear
        s, t = other.translation
        lin = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        u, v = self.translation
        if isinstance(self, IntAffine2) and isinstance(other, IntAffine2):
            return IntAffine2._trusted(lin, (_int_comb(a, s, b, t, u), _int_comb(c, s, d, t, v)))
        return Affine2._trusted(lin, (a * s + b * t + u, c * s + d * t + v))

    def inverse(self):
        (a, b), (c, d) = self.linear
        D = a * d - b * c
        if isinstance(self, IntAffine2):
            # D = +-1, so the adjugate divided by D stays integral
            inv = ((d * D, -b * D), (-c * D, a * D))
        else:
            inv = ((d / D, -b / D), (-c / D, a / D))
        s, t = self.translation
        tr = (-(inv[0][0] * s + inv[0][1] * t), -(inv[1][0] * s + inv[1][1] * t))
        return type(self)._trusted(inv, tr)

    def __pow__(self, k):
        if k == 1:
            return self
        base = self if k >= 0 else self.inverse()
        result = None
        k = abs(k)
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return type(self).identity() if result is None else result

    def __eq__(self, other):
        if not isinstance(other, Affine2):
            return NotImplemented
        return self.linear == other.linear and self.translation == other.translation

    def __hash__(self):
        return hash((self.linear, self.translation))

    def __repr__(self):
        lin = ";".join(",".join(fmt_rat(x) for x in r) for r in self.linear)
        return f"{type(self).__name__}(({lin}),({fmt_rat(self.translation[0])},{fmt_rat(self.translation[1])}))"

    def to_json(self):
        return {"linear": mat_to_json(self.linear),
                "translation": [fmt_rat(x) for x in self.translation]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "linear" not in data or "translation" not in data:
            raise ParseError("affine element needs 'linear' and 'translation'")
        tr = data["translation"]
        if not isinstance(tr, list) or len(tr) != 2:
            raise ParseError("translation must be a list of two rationals")
        return cls(mat_from_json(data["linear"]), tuple(rat(x) for x in tr))


class IntAffine2(Affine2):
    """Element of GL2(Z) x| Q^2."""

    __slots__ = ()

    def __init__(self, linear, translation=(0, 0)):
        super().__init__(linear, translation)
        if not self.is_integral:
            raise ShapeMismatch(f"linear part {self.linear} is not in GL2(Z)")
        # plain ints keep products cheap; they compare and hash like Fractions
        object.__setattr__(self, "linear", tuple(tuple(int(x) for x in r) for r in self.linear))


def affine(a, b, c, d, x=0, y=0):
    """Shorthand: ``affine(a, b, c, d, x, y)`` is ``((a, b; c, d), (x, y))``."""
    return IntAffine2(((a, b), (c, d)), (rat(x), rat(y)))


def compose(g1, g2):
    return g1 * g2


def conjugate(f, e):
    """``f e f^-1``."""
    return f * e * f.inverse()


def conjugate_upper_triangular(f, e):
    """Closed form for ``f e f^-1`` with both linear parts upper triangular.

    ``f = ((s1, lam; 0, s2), (z1, z2))`` with ``s1, s2 = +-1`` and
    ``e = ((1, m; 0, s), (x, y))``.  Used as an independent check of
    :func:`conjugate` and by the Klein-bottle automorphism family.
    """
    (s1, lam), (f21, s2) = f.linear
    (e11, m), (e21, s) = e.linear
    if f21 or e21 or e11 != 1 or s1 not in (1, -1) or s2 not in (1, -1) or s not in (1, -1):
        raise ShapeMismatch("closed form needs upper-triangular (+-1) linear parts with e11 = 1")
    z1, z2 = f.translation
    x, y = e.translation
    upper = (s - 1) * s2 * lam + s1 * s2 * m
    vx = s1 * x + lam * y + (1 - s) * s2 * lam * z2 - s1 * s2 * m * z2
    vy = (1 - s) * z2 + s2 * y
    return type(e)(((1, upper), (0, s)), (vx, vy))


def _int_comb(a, s, b, t, u):
    """``a*s + b*t + u`` for integers a, b, normalised once instead of per operation."""
    sd, td, ud = s.denominator, t.denominator, u.denominator
    if sd == td == ud:
        return Fraction(a * s.numerator + b * t.numerator + u.numerator, sd)
    den = sd * td * ud
    return Fraction(a * s.numerator * td * ud + b * t.numerator * sd * ud + u.numerator * sd * td, den)


def klein_shape(a, b):
    """Check the two-generator shape used by :func:`klein_word`.

    Returns ``(n, t1, xhat, delta, yhat)`` where
    ``a = ((1, n; 0, 1), (t1, xhat))`` and ``b = ((1, delta; 0, -1), (yhat, 0))``.
    """
    (a11, n), (a21, a22) = a.linear
    (b11, delta), (b21, b22) = b.linear
    if (a11, a21, a22) != (1, 0, 1) or n.denominator != 1:
        raise ShapeMismatch(f"{a!r} is not of the form ((1,n;0,1),(t,x))")
    if (b11, b21, b22) != (1, 0, -1) or delta.denominator != 1 or b.translation[1] != 0:
        raise ShapeMismatch(f"{b!r} is not of the form ((1,d;0,-1),(y,0))")
    t1, xhat = a.translation
    return int(n), t1, xhat, int(delta), b.translation[0]


def klein_word(a, b, k, l):
    """``a^k b^l`` by the closed form, for ``a``, ``b`` in :func:`klein_shape`."""
    n, t1, xhat, delta, yhat = klein_shape(a, b)
    k, l = operator.index(k), operator.index(l)
    sign = -1 if l % 2 else 1
    upper = (delta if l % 2 else 0) + sign * k * n
    # k(k-1)/2 is an integer, so only the translation inputs carry denominators
    vx = _int_comb(k, t1, (k * (k - 1) // 2) * n, xhat, Fraction(l * yhat))
    vy = Fraction(k * xhat.numerator, xhat.denominator)
    if isinstance(a, IntAffine2) and isinstance(b, IntAffine2):
        return IntAffine2._trusted(((1, upper), (0, sign)), (vx, vy))
    return Affine2(((1, upper), (0, sign)), (vx, vy))


def has_fixed_point(g):
    """Whether ``A p + b = p`` has a rational solution.  The identity counts."""
    (a, b), (c, d) = g.linear
    n11, n12, n21, n22 = a - 1, b, c, d - 1
    rhs = tuple(-x for x in g.translation)
    if n11 * n22 - n12 * n21 != 0:
        return True
    if not (n11 or n12 or n21 or n22):
        return not any(rhs)
    # rank one: rhs must be parallel to the nonzero column
    col = (n11, n21) if (n11 or n21) else (n12, n22)
    return col[0] * rhs[1] - col[1] * rhs[0] == 0


def orientation(g):
    return Orientation.PRESERVING if g.det > 0 else Orientation.REVERSING


def primitive_extend(v):
    """Unimodular integer matrix whose first column is ``v``."""
    v1, v2 = (int(Fraction(x)) if Fraction(x).denominator == 1 else None for x in v)
    if v1 is None or v2 is None or gcd(v1, v2) != 1:
        raise NotPrimitive(f"{tuple(v)} is not a primitive integer vector")
    _, s, t = ext_gcd(v1, v2)
    return ((v1, -t), (v2, s))


def _unit_eigenvector(A):
    """Primitive integer vector spanning ker(A - E), first nonzero entry > 0."""
    n = ((A[0][0] - 1, A[0][1]), (A[1][0], A[1][1] - 1))
    if det(n) != 0:
        raise NoUnitEigenvalue(f"linear part {A} has no eigenvalue 1")
    row = n[0] if any(n[0]) else n[1]
    if not any(row):
        raise PreconditionError("linear part is the identity; every vector is an eigenvector")
    v = (-row[1], row[0])
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    v = tuple(int(x * den) for x in v)
    g = gcd(*v)
    v = tuple(x // g for x in v)
    if v[0] < 0 or (v[0] == 0 and v[1] < 0):
        v = (-v[0], -v[1])
    return v


@dataclass(frozen=True)
class EigenNormalization:
    """Result of :func:`eigen_normalize`.

    ``basis`` holds the new integral basis as columns; ``conjugator`` is the
    integral affine change of coordinates ``p -> basis^-1 p - origin`` and
    ``element == conjugator * g * conjugator^-1``.  ``invariant`` is the
    upper-right entry ``n > 0`` (orientation preserving) or ``delta`` in
    ``{0, 1}`` (reversing).
    """
    basis: tuple
    linear: tuple
    origin: tuple
    conjugator: IntAffine2
    element: IntAffine2
    invariant: int
    orientation: Orientation


def eigen_normalize(g):
    """Integral affine coordinates putting a non-translation in normal position."""
    if g.is_translation():
        raise PreconditionError("eigen_normalize needs an element that is not a translation")
    A = g.linear
    P = primitive_extend(_unit_eigenvector(A))
    Pi = mat_inv(P)
    (_, m), (_, s) = mat_mul(mat_mul(Pi, A), P)
    if s == 1:
        if m < 0:
            P = mat_mul(P, ((-1, 0), (0, 1)))
    else:
        k = (m // 2)
        P = mat_mul(P, ((1, -k), (0, 1)))
    Pi = mat_inv(P)
    lin = mat_mul(mat_mul(Pi, A), P)
    z1, z2 = mat_vec(Pi, g.translation)
    n = lin[0][1]
    if s == 1:
        origin = (Fraction(0), -z1 / n)
    else:
        origin = (Fraction(0), z2 / 2)
    f = IntAffine2(Pi, tuple(-x for x in origin))
    elem = conjugate(f, g)
    return EigenNormalization(matrix(P), lin, origin, f, elem, int(n),
                              orientation(g))
