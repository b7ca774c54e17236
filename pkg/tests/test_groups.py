from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from stoned_billiards.groups import (
    AffinePermutation, all_perms, apply_sbar, chamber_of, compose, compositions, demazure_product,
    from_word, inverse, longest_element, reduced_word, signed_compositions,
)


def words(n, max_len=10):
    return st.lists(st.integers(0, n - 1), max_size=max_len)


@st.composite
def affine(draw, n=None):
    n = n or draw(st.integers(2, 5))
    u = AffinePermutation.identity(n)
    for i in draw(words(n)):
        u = u.left_mul(i)
    return u


@given(affine())
def test_inverse_roundtrip(u):
    assert u * u.inverse() == AffinePermutation.identity(u.n)
    assert u.inverse().inverse() == u


@given(affine())
def test_reduced_word_has_length_letters(u):
    w = reduced_word(u)
    assert len(w) == u.length
    assert from_word(w, u.n) == u


@given(affine(), st.integers(0, 4))
def test_left_mul_changes_length_by_one(u, i):
    i %= u.n
    v = u.left_mul(i)
    assert v.left_mul(i) == u
    assert abs(v.length - u.length) == 1
    assert (v.length > u.length) == u.ascends_left(i)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(st.just(n), words(n))))
def test_demazure_product_is_idempotent_on_repeats(nw):
    n, w = nw
    doubled = [x for i in w for x in (i, i)]
    assert demazure_product(doubled, n) == demazure_product(w, n)


@given(affine(), st.integers(0, 4))
def test_grassmannian_iff_increasing_window(u, i):
    w = u.window
    assert u.is_grassmannian() == all(w[k] < w[k + 1] for k in range(u.n - 1))


def test_translation_parts():
    u = AffinePermutation.from_parts((2, 3, 1), (1, 0, -1))
    assert u.finite_part() == (2, 3, 1)
    assert u.translation_part() == (1, 0, -1)


def test_finite_group_basics():
    for n in (2, 3, 4):
        w0 = longest_element(n)
        assert compose(w0, w0) == tuple(range(1, n + 1))
        for w in all_perms(n):
            assert compose(w, inverse(w)) == tuple(range(1, n + 1))


def test_chamber_of_identity_region():
    assert chamber_of([Fraction(2), Fraction(0), Fraction(-2)]) == (1, 2, 3)
    assert chamber_of([-1, 0, 1]) == (3, 2, 1)


def test_state_spaces():
    assert len(compositions((0, 1, 2))) == 6
    assert len(compositions((1, 1, 2))) == 3
    assert len(signed_compositions((1, 2))) == 8
    assert len(signed_compositions((0, 1))) == 4


@given(st.permutations([1, 2, 3, 4]), st.integers(0, 3))
def test_sbar_is_an_involution(mu, i):
    mu = tuple(mu)
    assert apply_sbar(i, apply_sbar(i, mu)) == mu
