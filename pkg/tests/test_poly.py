from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from stoned_billiards.poly import LaurentPolynomial

N = 3
coef = st.fractions(min_value=-5, max_value=5, max_denominator=4)
expo = st.tuples(*[st.integers(-2, 3)] * N)
polys = st.dictionaries(expo, coef, max_size=5).map(lambda d: LaurentPolynomial(d, N))
points = st.tuples(*[st.fractions(min_value=Fraction(1, 3), max_value=3, max_denominator=5)] * N)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f + g == g + f
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert (f - f).is_zero()


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(f, g, x):
    assert (f * g).evaluate(x) == f.evaluate(x) * g.evaluate(x)
    assert (f + g).evaluate(x) == f.evaluate(x) + g.evaluate(x)


@given(polys)
def test_swap_is_an_involution(f):
    assert f.swap(1, 2).swap(1, 2) == f
    assert f.invert_variable(1).invert_variable(1) == f


def test_variable_and_constant():
    x1 = LaurentPolynomial.variable(1, 2)
    assert (x1 * x1).coefficient((2, 0)) == 1
    assert LaurentPolynomial.constant(3, 2).evaluate((5, 7)) == 3
