"""Complete rank-2 lattices on surfaces: normal forms and isomorphism.

A complete lattice is the quotient of the plane (with its standard integer
lattice) by a group of integral affine maps acting freely.  The groups have
at most two generators here, and each is reduced to one of seven normal-form
series:

========  ===========  ==========================================
tag       base         generators (``a`` preserves orientation,
                       ``b`` reverses it, ``t*`` are translations)
========  ===========  ==========================================
R2        plane        none
C2uv      cylinder     t1 = (E, (u, v))
C2ny      cylinder     h = ((1, n; 0, 1), (0, y))
M2        Moebius      g = ((1, delta; 0, -1), (x, 0))
T2uvwz    torus        t1 = (E, (u, v)), t2 = (E, (w, z))
T2nyx     torus        h = ((1, n; 0, 1), (0, y)), t1 = (E, (x, 0))
K2        Klein        a = ((1, m; 0, 1), ((m - delta) y / 2, y)),
                       b = ((1, delta; 0, -1), (x, 0))
========  ===========  ==========================================

For the Klein bottle, ``a`` and ``b`` are standard generators:
``a b a b^-1 = e``.
"""

import re
from functools import lru_cache
from dataclasses import dataclass, field
from fractions import Fraction

from .affine import (Affine2, IntAffine2, Orientation, conjugate, eigen_normalize,
                     has_fixed_point, orientation, primitive_extend,
                     _unit_eigenvector)
from .errors import (ConstraintViolation, InvalidParameters, NotFreeAction, ParseError,
                     SingularLattice, UnsupportedPresentation)
from .exact import (as_int, det, ext_gcd, fmt_rat, int_inverse, mat_inv, mat_mul, mat_to_json,
                    mat_vec, matrix, rat, rational_gcd, rational_snf)

# ----------------------------------------------------------------------------
# pi_1 of the Klein bottle as Z x| Z


@dataclass(frozen=True, order=True)
class KleinWord:
    """The element ``a^k b^l``; multiplication ``(k,l)(m,n) = (k + (-1)^l m, l + n)``."""
    k: int = 0
    l: int = 0

    def __mul__(self, other):
        sign = -1 if self.l % 2 else 1
        return KleinWord(self.k + sign * other.k, self.l + other.l)

    def inverse(self):
        sign = -1 if self.l % 2 else 1
        return KleinWord(-sign * self.k, -self.l)

    def __pow__(self, e):
        out = KleinWord()
        base = self if e >= 0 else self.inverse()
        for _ in range(abs(e)):
            out = out * base
        return out

    def __str__(self):
        return f"a^{self.k} b^{self.l}"


_LETTER = {"a": KleinWord(1, 0), "b": KleinWord(0, 1)}
_TOKEN_RE = re.compile(r"([abAB])(\^-1|\^\{-1\}|⁻¹|\^1)?")


def parse_klein_word(word):
    """Letters ``a``, ``b`` with optional ``^-1`` / ``⁻¹``; uppercase means inverse.

    A list of letters or ``(letter, exponent)`` pairs is accepted too.
    """
    if isinstance(word, str):
        text = word.replace(" ", "").replace("·", "").replace("*", "")
        pos = 0
        out = []
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ParseError(f"bad Klein word {word!r} at position {pos}")
            letter, suffix = m.group(1), m.group(2)
            e = -1 if letter.isupper() else 1
            if suffix and suffix != "^1":
                e = -e
            out.append((letter.lower(), e))
            pos = m.end()
        return out
    out = []
    for item in word:
        if isinstance(item, str):
            out.extend(parse_klein_word(item))
        else:
            letter, e = item
            out.append((letter, int(e)))
    return out


def klein_normal_form(word):
    """Fold a word in ``a``, ``b`` to its normal form ``a^k b^l``."""
    acc = KleinWord()
    for letter, e in parse_klein_word(word):
        if letter not in _LETTER:
            raise ParseError(f"unknown generator {letter!r}")
        acc = acc * _LETTER[letter] ** e
    return acc


def is_standard_pair(a1, b1):
    """``(a1, b1)`` are standard generators iff ``a1 = a^(+-1)``, ``b1 = a^k b^(+-1)``."""
    return a1.l == 0 and abs(a1.k) == 1 and abs(b1.l) == 1


# ----------------------------------------------------------------------------
# normal forms

SERIES = ("R2", "C2uv", "C2ny", "M2", "T2uvwz", "T2nyx", "K2")
BASE = {"R2": "plane", "C2uv": "cylinder", "C2ny": "cylinder", "M2": "mobius",
        "T2uvwz": "torus", "T2nyx": "torus", "K2": "klein"}
PARAMS = {"R2": (), "C2uv": ("u", "v"), "C2ny": ("n", "y"), "M2": ("delta", "x"),
          "T2uvwz": ("u", "v", "w", "z"), "T2nyx": ("n", "y", "x"),
          "K2": ("m", "y", "delta", "x")}
INTEGER_PARAMS = {"n", "m", "delta"}
SERIES_ALIASES = {"R2": "R2", "C2UV": "C2uv", "C2NY": "C2ny", "M2": "M2", "T2UVWZ": "T2uvwz",
                  "T2NYX": "T2nyx", "K2": "K2", "T2": None, "C2": None}


def _series_tag(tag, params=()):
    t = str(tag).replace("_", "").replace(";", "").replace(",", "").upper()
    if t not in SERIES_ALIASES:
        raise ParseError(f"unknown series {tag!r}; expected one of {', '.join(SERIES)}")
    resolved = SERIES_ALIASES[t]
    if resolved is None:  # bare T2 / C2: decide by parameter names
        keys = set(params)
        if t == "T2":
            resolved = "T2nyx" if "n" in keys else "T2uvwz"
        else:
            resolved = "C2ny" if "n" in keys else "C2uv"
    return resolved


@dataclass(frozen=True)
class LatticeNF:
    """A lattice given by its series tag and normal-form parameters."""
    series: str
    params: tuple = field(default=())

    def __init__(self, series, params=None, **kw):
        params = dict(params or {}, **kw)
        tag = _series_tag(series, params)
        names = PARAMS[tag]
        missing = [p for p in names if p not in params]
        extra = [p for p in params if p not in names]
        if missing or extra:
            raise ParseError(f"series {tag} takes parameters {names}; "
                             f"missing {missing}, unexpected {extra}")
        values = []
        for p in names:
            v = rat(params[p]) if not isinstance(params[p], Fraction) else params[p]
            if p in INTEGER_PARAMS:
                v = as_int(v, p)
            values.append((p, v))
        object.__setattr__(self, "series", tag)
        object.__setattr__(self, "params", tuple(values))
        self._validate()

    def __getitem__(self, name):
        return dict(self.params)[name]

    @property
    def p(self):
        return dict(self.params)

    @property
    def base(self):
        return BASE[self.series]

    @property
    def compact(self):
        return self.base in ("torus", "klein")

    def _validate(self):
        p = self.p
        s = self.series

        def positive(*names):
            for n in names:
                if p[n] <= 0:
                    raise InvalidParameters(f"{s}: parameter {n} must be > 0, got {fmt_rat(p[n])}")

        if s == "C2uv" and p["u"] == 0 and p["v"] == 0:
            raise InvalidParameters("C2uv: translation vector must be nonzero")
        if s in ("C2ny", "T2nyx"):
            if p["n"] < 1:
                raise InvalidParameters(f"{s}: n must be a positive integer")
            positive(*[k for k in ("x", "y") if k in p])
        if s in ("M2", "K2"):
            if p["delta"] not in (0, 1):
                raise InvalidParameters(f"{s}: delta must be 0 or 1")
            positive(*[k for k in ("x", "y") if k in p])
        if s == "K2":
            if p["m"] < 0:
                raise InvalidParameters("K2: m must be >= 0")
            if p["delta"] == 1 and p["m"] % 2:
                raise InvalidParameters("K2: m must be even when delta = 1")
        if s == "T2uvwz" and p["u"] * p["z"] - p["v"] * p["w"] == 0:
            raise SingularLattice("T2uvwz: translation vectors must be independent")

    def generators(self):
        """Normal-form generators as an ordered ``{name: IntAffine2}`` dict."""
        return dict(_generators(self))

    def _build_generators(self):
        p = self.p
        s = self.series
        if s == "R2":
            return {}
        if s == "C2uv":
            return {"t1": IntAffine2.translation_by((p["u"], p["v"]))}
        if s == "C2ny":
            return {"h": IntAffine2(((1, p["n"]), (0, 1)), (0, p["y"]))}
        if s == "M2":
            return {"g": IntAffine2(((1, p["delta"]), (0, -1)), (p["x"], 0))}
        if s == "T2uvwz":
            return {"t1": IntAffine2.translation_by((p["u"], p["v"])),
                    "t2": IntAffine2.translation_by((p["w"], p["z"]))}
        if s == "T2nyx":
            return {"h": IntAffine2(((1, p["n"]), (0, 1)), (0, p["y"])),
                    "t1": IntAffine2.translation_by((p["x"], 0))}
        m, d, x, y = p["m"], p["delta"], p["x"], p["y"]
        return {"a": IntAffine2(((1, m), (0, 1)), (Fraction(m - d, 2) * y, y)),
                "b": IntAffine2(((1, d), (0, -1)), (x, 0))}

    def to_json(self):
        return {"series": self.series,
                "params": {k: (v if isinstance(v, int) else fmt_rat(v)) for k, v in self.params}}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "series" not in data:
            raise ParseError("lattice record needs a 'series' field")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise ParseError("'params' must be an object")
        return cls(data["series"], params)

    def __str__(self):
        inner = ",".join(f"{k}={v if isinstance(v, int) else fmt_rat(v)}" for k, v in self.params)
        return f"{self.series}[{inner}]"


# ----------------------------------------------------------------------------
# words in the normal-form generators

def fmt_word(word):
    return " ".join(f"{g}^{e}" for g, e in word) or "e"


def parse_word(text):
    out = []
    for tok in str(text).split():
        if tok == "e":
            continue
        m = re.fullmatch(r"([A-Za-z]\w*)\^(-?\d+)", tok)
        if not m:
            raise ParseError(f"bad word token {tok!r}")
        out.append((m.group(1), int(m.group(2))))
    return out


@lru_cache(maxsize=1024)
def _generators(nf):
    # elements are immutable, so sharing them between callers is safe
    return nf._build_generators()


def evaluate_word(gens, word):
    acc = IntAffine2.identity()
    for name, e in word:
        acc = acc * gens[name] ** e
    return acc


def _int_or_none(q):
    return int(q) if Fraction(q).denominator == 1 else None


def express(nf, element):
    """Write ``element`` as a word in the normal-form generators, or ``None``.

    The candidate exponents are solved from the translation part and the
    answer is confirmed by recomposition, so a returned word is exact.
    """
    gens = nf.generators()
    s = nf.series
    p = nf.p
    word = None
    vx, vy = element.translation
    if s == "R2":
        word = []
    elif s == "C2uv":
        u, v = p["u"], p["v"]
        k = vx / u if u else vy / v
        k = _int_or_none(k)
        word = None if k is None else [("t1", k)]
    elif s == "C2ny":
        k = _int_or_none(vy / p["y"])
        word = None if k is None else [("h", k)]
    elif s == "M2":
        k = _int_or_none(vx / p["x"])
        word = None if k is None else [("g", k)]
    elif s == "T2uvwz":
        if element.is_translation():
            M = ((p["u"], p["w"]), (p["v"], p["z"]))
            c = mat_vec(mat_inv(M), (vx, vy))
            k1, k2 = (_int_or_none(x) for x in c)
            if k1 is not None and k2 is not None:
                word = [("t1", k1), ("t2", k2)]
    elif s == "T2nyx":
        k1 = _int_or_none(vy / p["y"])
        if k1 is not None:
            rest = gens["h"] ** (-k1) * element
            k2 = _int_or_none(rest.translation[0] / p["x"])
            if k2 is not None:
                word = [("h", k1), ("t1", k2)]
    elif s == "K2":
        k = _int_or_none(vy / p["y"])
        if k is not None:
            rest = gens["a"] ** (-k) * element
            l = _int_or_none(rest.translation[0] / p["x"])
            if l is not None:
                word = [("a", k), ("b", l)]
    if word is None or evaluate_word(gens, word) != element:
        return None
    return word


# ----------------------------------------------------------------------------
# freeness

@dataclass(frozen=True)
class FreenessReport:
    """``status`` is ``"certified free"``, ``"free up to length L"`` or ``"not free"``."""
    status: str
    witness: object = None

    @property
    def free(self):
        return self.status != "not free"


def _reduced_words(names, max_length):
    letters = [(n, 1) for n in names] + [(n, -1) for n in names]
    frontier = [()]
    for _ in range(max_length):
        nxt = []
        for w in frontier:
            for let in letters:
                if w and w[-1][0] == let[0] and w[-1][1] == -let[1]:
                    continue
                nxt.append(w + (let,))
        yield from nxt
        frontier = nxt


def bounded_free_check(gens, max_length=6):
    """Search reduced words up to ``max_length`` for an element with a fixed point."""
    gens = list(gens)
    names = [f"g{i}" for i in range(len(gens))]
    table = dict(zip(names, gens))
    for w in _reduced_words(names, max_length):
        e = evaluate_word(table, w)
        if not e.is_identity() and has_fixed_point(e):
            return FreenessReport("not free", fmt_word(w))
    return FreenessReport(f"free up to length {max_length}")


def normal_form_is_free(nf):
    """Exact freeness of a normal-form group using closed forms for every element.

    Returns ``None`` when free, otherwise a word with a fixed point.
    """
    p = nf.p
    s = nf.series
    # Every element has one of the shapes below; the conditions are the
    # solvability of (A - E) q = -v worked out for each shape.
    if s == "C2uv" or s == "T2uvwz" or s == "R2":
        return None  # nonzero translations never fix a point
    if s in ("C2ny", "T2nyx"):
        return None if p["y"] != 0 else [("h", 1)]
    if s == "M2":
        return None if p["x"] != 0 else [("g", 1)]
    # K2: a^k b^l.  Even l: fixed point iff k y = 0 and l x = 0.  Odd l: fixed
    # point iff k (t1 - (m - delta) y / 2) + l x = 0, and t1 = (m - delta) y / 2.
    if p["y"] == 0 or p["x"] == 0:
        return [("a", 1)] if p["y"] == 0 else [("b", 1)]
    return None


def freeness(gens, max_length=6):
    """Certified for normal forms reached by :func:`normalize`, bounded otherwise."""
    try:
        cert = normalize(gens)
    except NotFreeAction as exc:
        return FreenessReport("not free", str(exc))
    except UnsupportedPresentation:
        return bounded_free_check(gens, max_length)
    if normal_form_is_free(cert.lattice) is None:
        return FreenessReport("certified free")
    return FreenessReport("not free", fmt_word(normal_form_is_free(cert.lattice)))


# ----------------------------------------------------------------------------
# base surface detection


def _commute(g, h):
    return g * h == h * g


def _klein_roles(g1, g2):
    """Return ``(a, b, order)`` when exactly one generator reverses orientation."""
    o1, o2 = orientation(g1), orientation(g2)
    if o1 == o2:
        return None
    if o1 == Orientation.PRESERVING:
        return g1, g2, (0, 1)
    return g2, g1, (1, 0)


def base_surface(gens):
    """Which surface the quotient of the plane by ``<gens>`` is."""
    gens = list(gens)
    if len(gens) > 2:
        raise UnsupportedPresentation("at most two generators are supported")
    if any(g.is_identity() for g in gens):
        raise UnsupportedPresentation("identity generator")
    if not gens:
        return "plane"
    if len(gens) == 1:
        g = gens[0]
        if has_fixed_point(g):
            raise NotFreeAction(f"{g!r} has a fixed point")
        return "cylinder" if orientation(g) == Orientation.PRESERVING else "mobius"
    roles = _klein_roles(*gens)
    if roles is None:
        if orientation(gens[0]) == Orientation.REVERSING:
            raise UnsupportedPresentation("both generators reverse orientation")
        if not _commute(*gens):
            raise UnsupportedPresentation("orientation-preserving generators do not commute")
    else:
        a, b, _ = roles
        if not (b * a * b.inverse() * a).is_identity():
            raise UnsupportedPresentation("generators satisfy neither b a b^-1 a = e nor commutation")
    return normalize(gens).lattice.base


# ----------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class NormalizationCertificate:
    """``conjugator * inputs[i] * conjugator^-1 == word_i(lattice generators)``."""
    conjugator: Affine2
    words: tuple
    lattice: LatticeNF
    inputs: tuple

    def verify(self):
        gens = self.lattice.generators()
        f = self.conjugator
        return all(conjugate(f, g) == evaluate_word(gens, w) for g, w in zip(self.inputs, self.words))

    def to_json(self):
        out = {"lattice": self.lattice.to_json(),
               "conjugator": self.conjugator.to_json(),
               "words": [fmt_word(w) for w in self.words],
               "verified": self.verify(),
               "freeness": "certified free"}
        out.update(self.lattice.to_json())
        return out


class _Frame:
    """Running coordinate change ``f`` plus the current generator elements."""

    def __init__(self, gens):
        self.f = IntAffine2.identity()
        self.gens = list(gens)

    def conj(self, h):
        self.f = h * self.f
        self.gens = [conjugate(h, g) for g in self.gens]

    def basis(self, P):
        """Switch to the integral basis whose columns are ``P``."""
        self.conj(IntAffine2(mat_inv(matrix(P)), (0, 0)))

    def shift_origin(self, o):
        self.conj(IntAffine2.translation_by(tuple(-x for x in o)))


def _need_free(g, what):
    if has_fixed_point(g):
        raise NotFreeAction(f"{what} {g!r} has a fixed point")


def _normalize_one(g):
    fr = _Frame([g])
    if g.is_translation():
        q = rational_gcd(g.translation)
        prim = tuple(int(x / q) for x in g.translation)
        fr.basis(primitive_extend(prim))
        return fr, LatticeNF("C2uv", u=q, v=0)
    en = eigen_normalize(g)
    fr.conj(en.conjugator)
    if en.orientation == Orientation.PRESERVING:
        y = fr.gens[0].translation[1]
        if y < 0:
            fr.conj(IntAffine2(((-1, 0), (0, -1))))
        return fr, LatticeNF("C2ny", n=en.invariant, y=abs(y))
    x = fr.gens[0].translation[0]
    return fr, LatticeNF("M2", delta=en.invariant, x=abs(x))


def _normalize_torus(g1, g2):
    fr = _Frame([g1, g2])
    if g1.is_translation() and g2.is_translation():
        M = ((g1.translation[0], g2.translation[0]), (g1.translation[1], g2.translation[1]))
        if det(M) == 0:
            raise UnsupportedPresentation("translation vectors are dependent; quotient is not a torus")
        C, (d1, d2), _ = rational_snf(M)
        fr.conj(IntAffine2(C, (0, 0)))
        return fr, LatticeNF("T2uvwz", u=d1, v=0, w=0, z=d2)
    h0 = g1 if not g1.is_translation() else g2
    en = eigen_normalize(h0)
    fr.conj(en.conjugator)
    a, b = fr.gens
    for g in (a, b):
        (g11, _), (g21, g22) = g.linear
        if (g11, g21, g22) != (1, 0, 1):
            raise UnsupportedPresentation("commuting generators are not simultaneously unipotent")
    n1, n2 = int(a.linear[0][1]), int(b.linear[0][1])
    n, s, t = ext_gcd(n1, n2)
    h = a ** s * b ** t
    tr = a ** (-n2 // n) * b ** (n1 // n)
    if not tr.is_translation() or tr.translation[0] == 0:
        raise UnsupportedPresentation("generators do not span a rank-2 group")
    # put h back in normal position (origin shift only)
    z1, z2 = h.translation
    fr.gens = [h, tr]
    fr.shift_origin((0, -z1 / n))
    h, tr = fr.gens
    if h.translation[1] == 0:
        raise NotFreeAction("an element of the group has a fixed point")
    if h.translation[1] < 0:
        fr.conj(IntAffine2(((-1, 0), (0, -1))))
        h, tr = fr.gens
    return fr, LatticeNF("T2nyx", n=n, y=h.translation[1], x=abs(tr.translation[0]))


def _normalize_klein(a, b):
    if not (b * a * b.inverse() * a).is_identity():
        raise UnsupportedPresentation("generators do not satisfy b a b^-1 a = e")
    _need_free(a, "generator")
    _need_free(b, "generator")
    fr = _Frame([a, b])
    if not a.is_translation():
        e1 = _unit_eigenvector(a.linear)
    else:
        e1 = _unit_eigenvector(b.linear)
    fr.basis(primitive_extend(e1))
    a, b = fr.gens
    if b.linear[1][0] != 0:
        # trace argument: then a*b has no unit eigenvalue.
        raise NotFreeAction(f"{(a * b)!r} has a fixed point")
    if b.linear[0][0] != 1:
        raise UnsupportedPresentation("orientation-reversing generator does not fix the common eigenvector")
    n, m = int(a.linear[0][1]), int(b.linear[0][1])
    if n % 2 and m % 2:
        fr.gens = [a, b * a.inverse()]
        b = fr.gens[1]
        _need_free(b, "element")
        m = int(b.linear[0][1])
    if n < 0:
        fr.basis(((-1, 0), (0, 1)))
    m = int(fr.gens[1].linear[0][1])
    k = m // 2
    fr.basis(((1, -k), (0, 1)))
    fr.shift_origin((0, fr.gens[1].translation[1] / 2))
    a, b = fr.gens
    x1, x2 = a.translation
    if x2 == 0:
        raise UnsupportedPresentation("translation parts are degenerate; quotient is not a Klein bottle")
    if x2 < 0:
        fr.conj(IntAffine2(((-1, 0), (0, -1))))
    a, b = fr.gens
    if b.translation[0] < 0:
        fr.gens = [a, b.inverse()]
    a, b = fr.gens
    n, delta = int(a.linear[0][1]), int(b.linear[0][1])
    if a.translation[0] != Fraction(n - delta, 2) * a.translation[1]:
        raise UnsupportedPresentation("relation does not pin the translation of a")
    return fr, LatticeNF("K2", m=n, y=a.translation[1], delta=delta, x=b.translation[0])


def normalize(gens):
    """Reduce a presentation to its normal form with a checkable certificate."""
    gens = tuple(gens)
    if len(gens) > 2:
        raise UnsupportedPresentation("at most two generators are supported")
    if any(g.is_identity() for g in gens):
        raise UnsupportedPresentation("identity generator")
    for g in gens:
        if not isinstance(g, IntAffine2):
            raise UnsupportedPresentation(f"{g!r} is not in GL2(Z) x| Q^2")
        _need_free(g, "generator")
    if not gens:
        fr, nf = _Frame([]), LatticeNF("R2")
    elif len(gens) == 1:
        fr, nf = _normalize_one(gens[0])
    else:
        roles = _klein_roles(*gens)
        if roles is not None:
            a, b, order = roles
            fr, nf = _normalize_klein(a, b)
        elif orientation(gens[0]) == Orientation.REVERSING:
            raise UnsupportedPresentation("both generators reverse orientation")
        else:
            if not _commute(*gens):
                raise UnsupportedPresentation("orientation-preserving generators do not commute")
            fr, nf = _normalize_torus(*gens)
    words = []
    for g in gens:
        w = express(nf, conjugate(fr.f, g))
        if w is None:
            raise UnsupportedPresentation(f"{g!r} is not in the reduced group")
        words.append(tuple(w))
    _check_generating(nf, words)
    cert = NormalizationCertificate(fr.f, tuple(words), nf, gens)
    bad = normal_form_is_free(nf)
    if bad is not None:
        raise NotFreeAction(f"element {fmt_word(bad)} has a fixed point")
    return cert


def _check_generating(nf, words):
    """The input words must generate the whole normal-form group."""
    s = nf.series
    if s in ("C2uv", "C2ny", "M2"):
        ok = abs(words[0][0][1]) == 1
    elif s == "K2":
        # words are ordered as the inputs; find the preserving one
        ws = [KleinWord(dict(w)["a"], dict(w)["b"]) for w in words]
        a1 = next(w for w in ws if w.l % 2 == 0)
        b1 = next(w for w in ws if w.l % 2)
        ok = is_standard_pair(a1, b1)
    elif s in ("T2uvwz", "T2nyx"):
        (_, p), (_, q) = words[0]
        (_, r), (_, t) = words[1]
        ok = abs(p * t - q * r) == 1
    else:
        ok = True
    if not ok:
        raise UnsupportedPresentation("inputs generate a proper subgroup of the normal-form group")


# ----------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class IsomorphismResult:
    isomorphic: bool
    witness: dict = None

    def to_json(self):
        w = None
        if self.witness is not None:
            w = {k: (v.to_json() if isinstance(v, Affine2) else mat_to_json(v))
                 for k, v in self.witness.items()}
        return {"isomorphic": self.isomorphic, "witness": w}


def _column_matrix(nf):
    p = nf.p
    return ((p["u"], p["w"]), (p["v"], p["z"]))


def is_isomorphic(nf1, nf2):
    """Decide isomorphism of two normal-form lattices, with a witness when true."""
    if nf1.series != nf2.series:
        return IsomorphismResult(False)
    s = nf1.series
    if s == "T2uvwz":
        M1, M2 = _column_matrix(nf1), _column_matrix(nf2)
        C1, d1, D1 = rational_snf(M1)
        C2, d2, D2 = rational_snf(M2)
        if d1 != d2:
            return IsomorphismResult(False)
        C = mat_mul(int_inverse(C2), C1)
        D = mat_mul(D1, int_inverse(D2))
        return IsomorphismResult(True, {"C": matrix(C), "D": matrix(D)})
    if s == "C2uv":
        v1 = (nf1["u"], nf1["v"])
        v2 = (nf2["u"], nf2["v"])
        g1, g2 = rational_gcd(v1), rational_gcd(v2)
        if g1 != g2:
            return IsomorphismResult(False)
        P1 = primitive_extend(tuple(x / g1 for x in v1))
        P2 = primitive_extend(tuple(x / g2 for x in v2))
        return IsomorphismResult(True, {"C": matrix(mat_mul(P2, int_inverse(P1)))})
    if nf1.params == nf2.params:
        return IsomorphismResult(True, {"f": IntAffine2.identity()})
    return IsomorphismResult(False)


def verify_isomorphism_witness(nf1, nf2, result):
    if not result.isomorphic:
        return True
    w = result.witness
    if nf1.series == "T2uvwz":
        C, D = w["C"], w["D"]
        return (det(C) in (1, -1) and det(D) in (1, -1)
                and matrix(mat_mul(mat_mul(C, _column_matrix(nf1)), D)) == matrix(_column_matrix(nf2)))
    if nf1.series == "C2uv":
        C = w["C"]
        v2 = mat_vec(C, (nf1["u"], nf1["v"]))
        return det(C) in (1, -1) and (v2 == (nf2["u"], nf2["v"]) or v2 == (-nf2["u"], -nf2["v"]))
    f = w["f"]
    g1, g2 = nf1.generators(), nf2.generators()
    return all(conjugate(f, g1[k]) == g2[k] for k in g1)


# ----------------------------------------------------------------------------
# automorphisms of a Klein-bottle lattice


@dataclass(frozen=True)
class KleinAutomorphismFamily:
    """All integral affine ``f`` with ``f a f^-1 = a^e1`` and ``f b f^-1 = a^k b^e2``.

    ``f = ((e2, mu; 0, e1), (z1, k y / 2))`` with
    ``mu = (-e1 delta + e1 k m + e2 delta) / 2`` an integer, ``z1`` free,
    and: ``m != 0`` forces ``e2 = 1``; ``m`` odd forces ``k`` even.
    """
    lattice: LatticeNF

    def describe(self):
        p = self.lattice.p
        return {
            "form": "f = ((e2, mu; 0, e1), (z1, k*y/2))",
            "mu": "(-e1*delta + e1*k*m + e2*delta)/2, must be an integer",
            "constraints": [
                "1: mu is an integer",
                "2: m != 0 implies e2 = 1",
                "3: m odd implies k even",
                "4 (not required): delta != 0 with e1 != e2 still yields automorphisms",
            ],
            "m": p["m"], "delta": p["delta"], "y": fmt_rat(p["y"]),
        }

    def sample(self, e1, e2, k, z1=0, strict_item4=False):
        p = self.lattice.p
        m, d, y = p["m"], p["delta"], p["y"]
        if e1 not in (1, -1) or e2 not in (1, -1):
            raise ConstraintViolation(1, "e1 and e2 must be +1 or -1")
        if m != 0 and e2 != 1:
            raise ConstraintViolation(2, "m != 0 requires e2 = 1")
        if m % 2 and k % 2:
            raise ConstraintViolation(3, "m odd requires k even")
        if strict_item4 and d != 0 and e1 != e2:
            raise ConstraintViolation(4, "delta != 0 requires e1 = e2 (strict mode)")
        mu = Fraction(-e1 * d + e1 * k * m + e2 * d, 2)
        if mu.denominator != 1:
            raise ConstraintViolation(1, f"mu = {fmt_rat(mu)} is not an integer")
        return IntAffine2(((e2, mu), (0, e1)), (rat(z1), k * y / 2))


def klein_automorphism_family(nf):
    if nf.series != "K2":
        raise InvalidParameters("automorphism family is defined for Klein-bottle lattices")
    return KleinAutomorphismFamily(nf)


__all__ = [
    "KleinWord", "parse_klein_word", "klein_normal_form", "is_standard_pair",
    "LatticeNF", "SERIES", "express", "evaluate_word", "fmt_word", "parse_word",
    "FreenessReport", "bounded_free_check", "normal_form_is_free", "freeness",
    "base_surface", "NormalizationCertificate", "normalize",
    "IsomorphismResult", "is_isomorphic", "verify_isomorphism_witness",
    "KleinAutomorphismFamily", "klein_automorphism_family",
]
