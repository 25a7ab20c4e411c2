"""Exact rational scalars, small matrices and Smith normal forms.

Scalars are :class:`fractions.Fraction`; matrices are tuples of row tuples.
Nothing in this module ever touches floating point.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from .errors import EmptyOrAllZero, IrrationalInput, ParseError, SingularInput

Rat = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")
_DEC_RE = re.compile(r"^\s*[+-]?(\d+\.\d*|\.\d+)\s*$")
_SYMBOLIC_RE = re.compile(r"sqrt|pi|\be\b|\^|\*\*|log|exp|sin|cos", re.IGNORECASE)


def rat(value):
    """Parse ``value`` into an exact rational.

    Accepts ints, Fractions, and strings ``"p/q"``, ``"p"`` or a finite decimal
    such as ``"0.25"``.  Binary floats are refused: they are not the number the
    caller typed.
    """
    if isinstance(value, bool):
        raise ParseError(f"boolean is not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise IrrationalInput(
            f"floating-point value {value!r} is not exact; pass the string 'p/q' instead")
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if m:
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise ParseError(f"zero denominator in {value!r}")
            return Fraction(int(m.group(1)), den)
        if _DEC_RE.match(value):
            return Fraction(value.strip())
        if _SYMBOLIC_RE.search(value):
            raise IrrationalInput(f"only rational parameters are supported, got {value!r}")
        raise ParseError(f"cannot parse {value!r} as a rational number")
    raise ParseError(f"cannot parse {type(value).__name__} as a rational number")


def fmt_rat(q):
    """Serialize a rational as ``"p/q"``, omitting ``/1``."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_int(q, what="value"):
    q = Fraction(q) if not isinstance(q, int) else q
    if isinstance(q, Fraction):
        if q.denominator != 1:
            raise ParseError(f"{what} must be an integer, got {fmt_rat(q)}")
        return q.numerator
    return q


# ----------------------------------------------------------------------------
# matrices as tuples of tuples

def matrix(rows, conv=Fraction):
    return tuple(tuple(conv(x) for x in row) for row in rows)


def identity(n, one=1):
    return tuple(tuple(one if i == j else 0 * one for j in range(n)) for i in range(n))


def shape(a):
    return len(a), (len(a[0]) if a else 0)


def mat_mul(a, b):
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a):
    return tuple(zip(*a))


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a):
    return tuple(tuple(c * x for x in row) for row in a)


def det(a):
    n = len(a)
    if n == 1:
        return a[0][0]
    if n == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    m = [[Fraction(x) for x in row] for row in a]
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return result


def mat_inv(a):
    """Exact inverse by Gauss-Jordan elimination over Q."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise SingularInput("matrix is singular")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        if piv != 1:
            m[c] = [x / piv if x else x for x in m[c]]
        for r in range(n):
            f = m[r][c]
            if r != c and f != 0:
                m[r] = [x - f * y if y else x for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def int_matrix(a):
    """Coerce to an integer matrix, failing on non-integral entries."""
    return tuple(tuple(as_int(x, "matrix entry") for x in row) for row in a)


def is_unimodular(a):
    return all(Fraction(x).denominator == 1 for row in a for x in row) and det(a) in (1, -1)


# ----------------------------------------------------------------------------
# Smith normal form

@dataclass(frozen=True)
class SNFResult:
    """``M == U @ S @ V`` with ``U``, ``V`` unimodular and ``S`` diagonal."""
    U: tuple
    S: tuple
    V: tuple

    @property
    def diagonal(self):
        m, n = shape(self.S)
        return tuple(self.S[i][i] for i in range(min(m, n)))


def snf(M):
    """Smith normal form of an integer matrix of any (small) shape.

    Returns ``U, S, V`` with ``U S V = M``.  Diagonal entries are nonnegative
    and each divides the next; sign corrections are applied on the column
    side, so they end up in ``V``.
    """
    A = [list(row) for row in int_matrix(M)]
    m, n = len(A), (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    # Each helper applies an elementary operation to A and the inverse
    # operation to U or V so that M == U A V holds throughout.
    def row_add(i, j, c):  # row_i += c * row_j
        A[i] = [x + c * y for x, y in zip(A[i], A[j])]
        for r in U:
            r[j] -= c * r[i]

    def row_swap(i, j):
        A[i], A[j] = A[j], A[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def col_add(i, j, c):  # col_i += c * col_j
        for r in A:
            r[i] += c * r[j]
        V[j] = [x - c * y for x, y in zip(V[j], V[i])]

    def col_swap(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]

    def col_neg(i):
        for r in A:
            r[i] = -r[i]
        V[i] = [-x for x in V[i]]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    row_add(i, t, -q)
                dirty |= A[i][t] != 0
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    col_add(j, t, -q)
                dirty |= A[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], 1)
        if A[t][t] < 0:
            col_neg(t)

    return SNFResult(tuple(map(tuple, U)), tuple(map(tuple, A)), tuple(map(tuple, V)))


def int_inverse(u):
    """Inverse of a unimodular integer matrix, as integers."""
    inv = mat_inv(u)
    return int_matrix(inv)


def rational_snf(M):
    """Canonical double-coset representative of an invertible rational matrix.

    Returns ``(C, (d1, d2), D)`` with ``C M D = diag(d1, d2)``, ``C`` and
    ``D`` unimodular, ``d1 > 0`` and ``d2 / d1`` a positive integer.
    """
    M = matrix(M)
    if det(M) == 0:
        raise SingularInput("rational_snf needs an invertible matrix")
    q = reduce(lcm, (x.denominator for row in M for x in row), 1)
    res = snf(mat_scale(q, M))
    C, D = int_inverse(res.U), int_inverse(res.V)
    diag = tuple(Fraction(d, q) for d in res.diagonal)
    return C, diag, D


def rational_gcd(values):
    """Positive generator of the subgroup of (Q, +) spanned by ``values``."""
    nonzero = [Fraction(v) for v in values if Fraction(v) != 0]
    if not nonzero:
        raise EmptyOrAllZero("subgroup generated by the inputs is trivial")
    den = reduce(lcm, (v.denominator for v in nonzero), 1)
    num = reduce(gcd, (abs(v.numerator) * (den // v.denominator) for v in nonzero), 0)
    return Fraction(num, den)


def ext_gcd(a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mat_to_json(a):
    return [[fmt_rat(x) for x in row] for row in a]


def mat_from_json(rows):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a nested list")
    return tuple(tuple(rat(x) for x in row) for row in rows)
