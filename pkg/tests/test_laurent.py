import pytest
from hypothesis import given, strategies as st

from gelfand_graph.laurent import (
    INT64_MAX, CoefficientOverflow, LaurentPoly, add, bar, coeff, is_one_plus_even_positive,
    is_strictly_negative_support, mul, negate, scale,
)

v = LaurentPoly.v()
vi = LaurentPoly.monomial(-1)
one = LaurentPoly.one()


def test_ring_examples():
    assert add(v - vi, vi) == v
    assert mul(v, vi) == one
    assert mul(v - vi, v - vi) == LaurentPoly({2: 1, 0: -2, -2: 1})


def test_bar_examples():
    assert bar(v) == vi
    assert bar(one) == one
    assert bar(v - vi) == negate(v - vi)


def test_coeff_examples():
    assert coeff(v - vi, -1) == -1
    assert coeff(LaurentPoly.zero(), 5) == 0
    assert coeff(LaurentPoly({-1: 3, -3: 1}), -1) == 3


def test_predicates():
    assert is_strictly_negative_support(vi)
    assert not is_strictly_negative_support(one)
    assert is_one_plus_even_positive(LaurentPoly({0: 1, 2: 1}))
    assert not is_one_plus_even_positive(LaurentPoly({0: 1, 1: 1}))


def test_no_zero_terms_stored():
    p = LaurentPoly({3: 0, 1: 2})
    assert p.terms == {1: 2}
    assert (v - v).is_zero()


def test_overflow_is_raised():
    big = LaurentPoly.const(INT64_MAX)
    with pytest.raises(CoefficientOverflow):
        add(big, one)
    with pytest.raises(CoefficientOverflow):
        scale(big, 2)
    with pytest.raises(CoefficientOverflow):
        mul(big, LaurentPoly.const(3))


@pytest.mark.parametrize("text", ["0", "1", "v^-1", "v^2 - 2 + v^-2", "3v^-1 + v^-3", "-v"])
def test_render_parse_round_trip(text):
    p = LaurentPoly.parse(text)
    assert LaurentPoly.parse(str(p)) == p


polys = st.dictionaries(st.integers(-20, 20), st.integers(-50, 50), max_size=8).map(LaurentPoly)


def dense(p):
    # naive oracle: coefficient array over exponents -40..40
    arr = [0] * 81
    for e, c in p.terms.items():
        arr[e + 40] += c
    return arr


def dense_mul(a, b):
    out = [0] * 81
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if x and y:
                out[i + j - 40] += x * y
    return out


@given(polys, polys, polys)
def test_ring_laws(p, q, r):
    assert add(p, q) == add(q, p)
    assert mul(p, q) == mul(q, p)
    assert mul(p, add(q, r)) == add(mul(p, q), mul(p, r))
    assert mul(mul(p, q), r) == mul(p, mul(q, r))
    assert add(p, negate(p)).is_zero()


@given(polys, polys)
def test_bar_is_ring_involution(p, q):
    assert bar(bar(p)) == p
    assert bar(mul(p, q)) == mul(bar(p), bar(q))
    assert bar(add(p, q)) == add(bar(p), bar(q))


@given(polys, polys)
def test_against_dense_oracle(p, q):
    assert dense(add(p, q)) == [a + b for a, b in zip(dense(p), dense(q))]
    assert dense(mul(p, q)) == dense_mul(dense(p), dense(q))


@given(polys, st.integers(-30, 30))
def test_shift_and_coeff(p, k):
    assert coeff(p.shift(k), 0) == coeff(p, -k)
