"""Differential forms with affine coefficients, and affine maps acting on them.

A form of degree ``k`` on ``n`` named variables is a map from strictly
increasing index tuples ``I`` to an affine coefficient ``f_I``; it stands for
``sum_I f_I dx_I``.  Affine coefficients are closed under pullback by affine
maps, which is all the gluing data in this package ever needs.
"""

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations

from .errors import DimensionMismatch, ParseError, SingularInput
from .exact import det, fmt_rat, identity, matrix, rat


@lru_cache(maxsize=None)
def _eye(n):
    return identity(n)


@lru_cache(maxsize=None)
def _zeros(n):
    return (Fraction(0),) * n


@dataclass(frozen=True)
class AffineFunction:
    """``const + sum_j coeffs[j] * x_j``."""
    const: Fraction
    coeffs: tuple

    @classmethod
    def constant(cls, c, n):
        # a shared zero tuple lets equality short-circuit on identity
        return cls(Fraction(c), _zeros(n))

    def is_zero(self):
        return self.const == 0 and not any(self.coeffs)

    def is_constant(self):
        return not any(self.coeffs)

    def __add__(self, other):
        return AffineFunction(self.const + other.const,
                              tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AffineFunction(-self.const, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return AffineFunction(c * self.const, tuple(c * a for a in self.coeffs))

    def __call__(self, point):
        return self.const + sum(a * x for a, x in zip(self.coeffs, point))

    def compose(self, linear, translation):
        """Coefficient of ``f(J u + c)`` as a function of ``u``."""
        n = len(self.coeffs)
        const = self.const + sum(a * c for a, c in zip(self.coeffs, translation))
        coeffs = tuple(sum(self.coeffs[i] * linear[i][j] for i in range(n)) for j in range(n))
        return AffineFunction(const, coeffs)

    def render(self, variables):
        parts = []
        if self.const:
            parts.append(fmt_rat(self.const))
        for a, v in zip(self.coeffs, variables):
            if a == 1:
                parts.append(v)
            elif a == -1:
                parts.append(f"-{v}")
            elif a:
                parts.append(f"{fmt_rat(a)}*{v}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _sort_sign(idx):
    """Sort an index tuple; return (sign, sorted) or (0, None) on a repeat."""
    if len(set(idx)) < len(idx):
        return 0, None
    idx = list(idx)
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


class PolyForm:
    """Exterior form with affine coefficients on an ordered list of variables."""

    __slots__ = ("variables", "degree", "terms")

    def __init__(self, variables, degree, terms=None):
        self.variables = tuple(variables)
        self.degree = degree
        n = len(self.variables)
        clean = {}
        for idx, coef in (terms or {}).items():
            if len(idx) != degree or any(not 0 <= i < n for i in idx):
                raise DimensionMismatch(f"bad wedge index {idx} for a {degree}-form in {n} variables")
            sign, key = _sort_sign(idx)
            if not sign:
                continue
            coef = coef.scale(sign)
            clean[key] = clean[key] + coef if key in clean else coef
        self.terms = {k: v for k, v in sorted(clean.items()) if not v.is_zero()}

    @classmethod
    def build(cls, variables, spec):
        """Build from ``{("alpha", "x"): coef, ...}``.

        ``coef`` is a rational (constant coefficient) or a mapping
        ``{"": const, "x": a, ...}`` for an affine one.
        """
        variables = tuple(variables)
        pos = {v: i for i, v in enumerate(variables)}
        n = len(variables)
        terms = {}
        degree = None
        for names, coef in spec.items():
            try:
                idx = tuple(pos[v] for v in names)
            except KeyError as exc:
                raise DimensionMismatch(f"unknown variable {exc.args[0]!r}") from None
            if degree is None:
                degree = len(idx)
            elif degree != len(idx):
                raise DimensionMismatch("mixed form degrees")
            terms[idx] = _affine_from(coef, pos, n)
        if degree is None:
            raise ParseError("empty form needs an explicit degree; use PolyForm(vars, k)")
        return cls(variables, degree, terms)

    def _check(self, other):
        if self.variables != other.variables or self.degree != other.degree:
            raise DimensionMismatch("forms live on different spaces or have different degrees")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return PolyForm(self.variables, self.degree, terms)

    def __neg__(self):
        return PolyForm(self.variables, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return PolyForm(self.variables, self.degree, {k: v.scale(Fraction(c)) for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, PolyForm):
            return NotImplemented
        return (self.variables, self.degree, self.terms) == (other.variables, other.degree, other.terms)

    def __hash__(self):
        return hash((self.variables, self.degree, tuple(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def has_constant_coefficients(self):
        return all(c.is_constant() for c in self.terms.values())

    def __repr__(self):
        return f"PolyForm({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for idx, coef in self.terms.items():
            wedge = "^".join("d" + self.variables[i] for i in idx)
            text = coef.render(self.variables)
            if text == "1":
                out.append(wedge)
            elif text == "-1":
                out.append("-" + wedge)
            elif coef.is_constant() or len(text.split(" ")) == 1:
                out.append(f"{text} {wedge}")
            else:
                out.append(f"({text}) {wedge}")
        return " + ".join(out).replace("+ -", "- ")

    def to_json(self):
        return {
            "variables": list(self.variables),
            "degree": self.degree,
            "terms": [
                {"wedge": [self.variables[i] for i in idx],
                 "const": fmt_rat(c.const),
                 "linear": {self.variables[j]: fmt_rat(a) for j, a in enumerate(c.coeffs) if a}}
                for idx, c in self.terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            variables = tuple(data["variables"])
            spec = {}
            for t in data["terms"]:
                coef = {"": t.get("const", "0")}
                coef.update(t.get("linear", {}))
                spec[tuple(t["wedge"])] = coef
            if not spec:
                return cls(variables, int(data["degree"]))
            return cls.build(variables, spec)
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed form record: {exc}") from None


def _affine_from(coef, pos, n):
    if isinstance(coef, AffineFunction):
        return coef
    if isinstance(coef, dict):
        coeffs = [Fraction(0)] * n
        const = Fraction(0)
        for name, value in coef.items():
            if name in ("", "1"):
                const += rat(value)
            else:
                if name not in pos:
                    raise DimensionMismatch(f"unknown variable {name!r}")
                coeffs[pos[name]] += rat(value)
        return AffineFunction(const, tuple(coeffs))
    return AffineFunction.constant(rat(coef), n)


def exterior_derivative(form):
    """Exact ``d`` of a form with affine coefficients (result is constant)."""
    n = len(form.variables)
    terms = {}
    for idx, coef in form.terms.items():
        for j, a in enumerate(coef.coeffs):
            if a:
                terms[(j,) + idx] = AffineFunction.constant(a, n)
    # PolyForm's constructor sorts indices, applies signs and merges.
    merged = PolyForm(form.variables, form.degree + 1)
    for key, coef in terms.items():
        merged = merged + PolyForm(form.variables, form.degree + 1, {key: coef})
    return merged


def _num(q):
    # integral values are kept as ints: int arithmetic is far cheaper than Fraction
    t = type(q)
    if t is int:
        return q
    if t is not Fraction:
        q = Fraction(q)
    return q.numerator if q.denominator == 1 else q


def _mm(a, b):
    bt = tuple(zip(*b))
    out = []
    for row in a:
        r = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s += x * y
            r.append(_num(s))
        out.append(tuple(r))
    return tuple(out)


def _mv(a, v):
    out = []
    for row in a:
        s = 0
        for x, y in zip(row, v):
            if x and y:
                s += x * y
        out.append(s)
    return out


def _inverse(a):
    # Gauss-Jordan that stays in ints while pivots are units
    n = len(a)
    m = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            raise SingularInput("matrix is singular")
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        if piv == -1:
            m[c] = [-x for x in m[c]]
        elif piv != 1:
            m[c] = [Fraction(x) / piv for x in m[c]]
        for r in range(n):
            f = m[r][c]
            if r != c and f:
                m[r] = [x - f * y if y else x for x, y in zip(m[r], m[c])]
    return tuple(tuple(_num(x) for x in row[n:]) for row in m)


class AffineMap:
    """``u -> J u + c`` on R^n with rational ``J`` (invertible) and ``c``."""

    __slots__ = ("linear", "translation")

    def __init__(self, linear, translation):
        self.linear = matrix(linear, _num)
        self.translation = tuple(_num(x) for x in translation)
        n = len(self.linear)
        if any(len(r) != n for r in self.linear) or len(self.translation) != n:
            raise DimensionMismatch("affine map needs a square linear part matching its translation")

    def _make(self, linear, translation):
        out = object.__new__(AffineMap)
        out.linear, out.translation = linear, translation
        return out

    @classmethod
    def identity(cls, n):
        return cls(identity(n), (0,) * n)

    @property
    def dim(self):
        return len(self.translation)

    def __call__(self, point):
        return tuple(Fraction(a + b) for a, b in zip(_mv(self.linear, point), self.translation))

    def __matmul__(self, other):
        """Composition ``self o other``."""
        if self.dim != other.dim:
            raise DimensionMismatch("cannot compose maps of different dimension")
        tr = tuple(_num(a + b) for a, b in zip(_mv(self.linear, other.translation), self.translation))
        return self._make(_mm(self.linear, other.linear), tr)

    def inverse(self):
        inv = _inverse(self.linear)
        return self._make(inv, tuple(_num(-x) for x in _mv(inv, self.translation)))

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return (self.linear, self.translation) == (other.linear, other.translation)

    def __hash__(self):
        return hash((self.linear, self.translation))

    def __repr__(self):
        return f"AffineMap({self.linear}, {self.translation})"


def _minor(J, rows, cols):
    return det(tuple(tuple(J[r][c] for c in cols) for r in rows))


def pullback(form, T):
    """Exact pullback ``T* form`` by the affine map ``x = T(u)``.

    The result lives on the same variable names.  Contravariant:
    ``pullback(f, T1 @ T2) == pullback(pullback(f, T1), T2)``.
    """
    n = len(form.variables)
    if T.dim != n:
        raise DimensionMismatch(f"map acts on R^{T.dim} but the form has {n} variables")
    J, c = T.linear, T.translation
    k = form.degree
    out = {}
    cols_all = list(combinations(range(n), k))
    if all(coef.is_constant() for coef in form.terms.values()):
        if J == _eye(n):
            # a translation: constant coefficients are untouched
            return form
        # constant coefficients: only the Jacobian minors matter
        acc = {}
        for idx, coef in form.terms.items():
            c0 = _num(coef.const)
            if k == 2:
                r0, r1 = J[idx[0]], J[idx[1]]
                minors = [r0[i] * r1[j] - r0[j] * r1[i] for i, j in cols_all]
            else:
                minors = [_minor(J, idx, cols) if k else 1 for cols in cols_all]
            for cols, m in zip(cols_all, minors):
                if m:
                    acc[cols] = acc.get(cols, 0) + m * c0
        # keys come out of combinations() already sorted, so no sign bookkeeping is needed
        out = object.__new__(PolyForm)
        out.variables, out.degree = form.variables, k
        out.terms = {cols: AffineFunction.constant(v, n) for cols, v in sorted(acc.items()) if v}
        return out
    for idx, coef in form.terms.items():
        f = coef if coef.is_constant() else coef.compose(J, c)
        for cols in cols_all:
            m = _minor(J, idx, cols) if k else 1
            if m:
                g = f if m == 1 else f.scale(m)
                out[cols] = out[cols] + g if cols in out else g
    return PolyForm(form.variables, k, out)


def wedge(a, b):
    """Wedge product; at least one factor must have constant coefficients."""
    if a.variables != b.variables:
        raise DimensionMismatch("forms on different variables")
    out = PolyForm(a.variables, a.degree + b.degree)
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            if ca.is_constant():
                coef = cb.scale(ca.const)
            elif cb.is_constant():
                coef = ca.scale(cb.const)
            else:
                raise DimensionMismatch("product of two non-constant coefficients is not affine")
            out = out + PolyForm(a.variables, out.degree, {ia + ib: coef})
    return out


__all__ = ["AffineFunction", "PolyForm", "AffineMap", "exterior_derivative", "pullback", "wedge"]
