from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from siegel_domains.fields import (
    FieldDegreeError,
    PolyVectorField,
    euler_field,
    lie_bracket,
    minus_half_field,
    minus_one_field,
)
from siegel_domains.hermitian import HermitianTuple
from siegel_domains.linalg import I, GaussianRational, Matrix

K, M = 2, 1
VARS = sympy.symbols("z1 z2 w1")


def to_sympy(f: PolyVectorField):
    out = []
    for comp in f.components:
        expr = sympy.Integer(0)
        for e, c in comp:
            coef = sympy.Rational(c.re.numerator, c.re.denominator) + sympy.I * sympy.Rational(
                c.im.numerator, c.im.denominator)
            expr += coef * sympy.Mul(*[v ** p for v, p in zip(VARS, e)])
        out.append(sympy.expand(expr))
    return out


def sympy_bracket(x, y):
    return [sympy.expand(sum(x[v] * sympy.diff(y[i], VARS[v]) - y[v] * sympy.diff(x[i], VARS[v])
                             for v in range(len(VARS)))) for i in range(len(VARS))]


monomials = [(a, b, c) for a in range(3) for b in range(3) for c in range(3) if a + b + c <= 2]
coef = st.builds(GaussianRational, st.integers(-3, 3), st.integers(-3, 3))
poly = st.dictionaries(st.sampled_from(monomials), coef, max_size=3)
fields = st.lists(poly, min_size=3, max_size=3).map(lambda ps: PolyVectorField.from_polys(K, M, ps))


@settings(max_examples=60, deadline=None)
@given(fields, fields)
def test_bracket_matches_sympy(x, y):
    ours = to_sympy(lie_bracket(x, y, max_degree=None))
    oracle = sympy_bracket(to_sympy(x), to_sympy(y))
    assert all(sympy.expand(a - b) == 0 for a, b in zip(ours, oracle))


@settings(max_examples=40, deadline=None)
@given(fields, fields, fields)
def test_jacobi_identity(x, y, z):
    def br(a, b):
        return lie_bracket(a, b, max_degree=None)
    total = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
    assert total.is_zero()


@given(fields)
def test_antisymmetry(x):
    assert lie_bracket(x, x, max_degree=None).is_zero()


def test_euler_eigenvalues():
    e = euler_field(K, M)
    x = minus_one_field([1, 0], M)
    assert lie_bracket(e, x) == x.scale(-1)
    assert lie_bracket(e, e).is_zero()


def test_constant_fields_commute():
    assert lie_bracket(minus_one_field([1, 2], M), minus_one_field([3, -1], M)).is_zero()


def test_minus_half_bracket_lands_in_minus_one():
    h = HermitianTuple.of([Matrix.identity(1), Matrix.identity(1)])
    b, b2 = [GaussianRational(1)], [I]
    z = lie_bracket(minus_half_field(b, h), minus_half_field(b2, h))
    # 2i (H(b2, b) - H(b, b2)) on each z coordinate, H anti-linear in the first slot
    val = (I * 2) * (h.value(b2, b)[0] - h.value(b, b2)[0])
    assert z == minus_one_field([val, val], M)
    assert val == GaussianRational(4)


def test_degree_guard():
    q = PolyVectorField.from_polys(1, 0, [{(2,): GaussianRational(1)}])
    with pytest.raises(FieldDegreeError):
        lie_bracket(q, q.scale(Fraction(1, 2)) + PolyVectorField.from_polys(1, 0, [{(3,): GaussianRational(1)}]))


def test_weights():
    e = euler_field(K, M)
    assert e.weights() == {Fraction(0)}
    assert minus_one_field([1, 0], M).weights() == {Fraction(-1)}
