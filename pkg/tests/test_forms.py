"""Forms: derivative, pullback and their algebraic laws.

The pullback of a 2-form is cross-checked against the matrix rule
``Omega'(u) = J^T Omega(T u) J`` on antisymmetric coefficient matrices.
"""

from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from lagfib.errors import DimensionMismatch
from lagfib.exact import det, mat_mul, transpose
from lagfib.fibration import t3_form, t3_maps
from lagfib.forms import AffineFunction, AffineMap, PolyForm, exterior_derivative, pullback, wedge

V4 = ("x", "y", "alpha", "beta")
OMEGA0 = PolyForm.build(V4, {("alpha", "x"): 1, ("beta", "y"): 1})

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
relaxed = dict(deadline=None, suppress_health_check=[HealthCheck.large_base_example, HealthCheck.too_slow])


def affine_forms(n, degree):
    from itertools import combinations
    keys = list(combinations(range(n), degree))

    @st.composite
    def build(draw):
        terms = {}
        for k in keys:
            if draw(st.booleans()):
                terms[k] = AffineFunction(draw(small), tuple(draw(small) for _ in range(n)))
        return PolyForm(V4[:n] if n <= 4 else tuple(f"v{i}" for i in range(n)), degree, terms)
    return build()


@st.composite
def affine_maps(draw, n=4):
    while True:
        J = tuple(tuple(draw(st.integers(-2, 2)) for _ in range(n)) for _ in range(n))
        if det(J) != 0:
            break
    return AffineMap(J, tuple(draw(small) for _ in range(n)))


def coefficient_matrix(form, point):
    n = len(form.variables)
    M = [[F(0)] * n for _ in range(n)]
    for (i, j), c in form.terms.items():
        M[i][j] += c(point)
        M[j][i] -= c(point)
    return M


class TestDerivative:
    def test_constant_form_closed(self):
        assert exterior_derivative(OMEGA0).is_zero()

    def test_single_term(self):
        f = PolyForm.build(("x", "y", "z"), {("y", "z"): {"x": 1}})
        assert str(exterior_derivative(f)) == "dx^dy^dz"

    def test_twisting_form(self):
        phi = PolyForm.build(("x", "y", "z"), {("y", "z"): {"x": 2}, ("z", "x"): {"y": 2}, ("x", "y"): {"z": 2}})
        d = exterior_derivative(phi)
        assert list(d.terms) == [(0, 1, 2)] and d.terms[(0, 1, 2)].const == 6

    @settings(max_examples=100, deadline=None)
    @given(affine_forms(4, 1))
    def test_dd_zero(self, f):
        assert exterior_derivative(exterior_derivative(f)).is_zero()

    @settings(max_examples=100, deadline=None)
    @given(affine_forms(4, 2))
    def test_derivative_constant(self, f):
        assert exterior_derivative(f).has_constant_coefficients()

    def test_antisymmetry_normalisation(self):
        a = PolyForm.build(V4, {("x", "alpha"): 1})
        b = PolyForm.build(V4, {("alpha", "x"): -1})
        assert a == b and list(a.terms) == [(0, 2)]
        assert PolyForm.build(V4, {("x", "x"): 5}).is_zero()


class TestPullback:
    def test_identity(self):
        assert pullback(OMEGA0, AffineMap.identity(4)) == OMEGA0

    def test_shear_map(self):
        # (x + y, y + 1, alpha - x, beta - alpha + x)
        h = AffineMap(((1, 1, 0, 0), (0, 1, 0, 0), (-1, 0, 1, 0), (1, 0, -1, 1)), (0, 1, 0, 0))
        assert pullback(OMEGA0, h) == OMEGA0

    def test_t3_f1(self):
        _, (f1, _, _) = t3_maps()
        eta = t3_form()
        assert pullback(eta, f1) == eta

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            pullback(OMEGA0, AffineMap.identity(3))

    @settings(max_examples=100, **relaxed)
    @given(affine_forms(4, 2), affine_maps(), affine_maps())
    def test_contravariant(self, f, T1, T2):
        assert pullback(f, T1 @ T2) == pullback(pullback(f, T1), T2)

    @settings(max_examples=100, **relaxed)
    @given(affine_forms(4, 2), affine_maps(), st.tuples(*[small] * 4))
    def test_matrix_rule(self, f, T, u):
        J = T.linear
        lhs = coefficient_matrix(pullback(f, T), u)
        rhs = mat_mul(mat_mul(transpose(J), coefficient_matrix(f, T(u))), J)
        assert tuple(map(tuple, lhs)) == rhs

    @settings(max_examples=60, **relaxed)
    @given(affine_forms(4, 1), affine_maps())
    def test_commutes_with_d(self, f, T):
        assert exterior_derivative(pullback(f, T)) == pullback(exterior_derivative(f), T)


def test_wedge_of_ones():
    dx = PolyForm.build(V4, {("x",): 1})
    dy = PolyForm.build(V4, {("y",): 1})
    assert wedge(dx, dy) == PolyForm.build(V4, {("x", "y"): 1})
    assert wedge(dy, dx) == PolyForm.build(V4, {("x", "y"): -1})


def test_json_round_trip():
    f = PolyForm.build(V4, {("x", "y"): {"": F(1, 3), "alpha": 2}, ("alpha", "x"): 1})
    assert PolyForm.from_json(f.to_json()) == f
