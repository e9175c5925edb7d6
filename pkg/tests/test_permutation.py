from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from gelfand_graph.permutation import (
    FpfInvolution, Permutation, Reflection, compose, conj_reflection, conj_simple,
    double_factorial, enumerate_fpf, height, identity, inverse, length, longest_element,
    minimal_fpf, simple,
)
from gelfand_graph.structure import theta

from conftest import fpf


def P(text):
    return Permutation.parse(text)


def brute_fpf(n):
    """All FPF involutions of S_n by filtering every permutation."""
    out = []
    for w in permutations(range(1, n + 1)):
        if all(w[i] != i + 1 and w[w[i] - 1] == i + 1 for i in range(n)):
            out.append(FpfInvolution(w))
    return out


def test_compose_examples():
    assert compose(identity(4), P("3412")) == P("3412")
    assert compose(P("2143"), P("2143")) == identity(4)
    s2 = P("1324")
    assert compose(s2, compose(P("2143"), s2)) == P("3412")


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        compose(identity(3), identity(4))


def test_length_examples():
    assert length(identity(4)) == 0
    assert length(P("4321")) == 6
    assert length(P("3412")) == 4


def test_height_examples():
    assert height(fpf("2143")) == 1
    assert height(fpf("4321")) == 3
    # ht = l/2 and l(214365) = 3; see the decisions ledger on the 3 vs 3/2 example
    assert height(fpf("214365")) == Fraction(3, 2)


def test_conj_simple_examples():
    assert conj_simple(fpf("2143"), 2) == fpf("3412")
    assert conj_simple(fpf("2143"), 1) == fpf("2143")
    assert conj_simple(fpf("3412"), 2) == fpf("2143")
    with pytest.raises(ValueError):
        conj_simple(fpf("2143"), 4)


def test_conj_reflection_examples():
    assert conj_reflection(fpf("2143"), Reflection(1, 2)) == fpf("2143")
    assert conj_reflection(fpf("2143"), Reflection(1, 3)) == fpf("4321")


def test_enumeration_examples():
    assert enumerate_fpf(2) == [fpf("21")]
    F4 = enumerate_fpf(4)
    assert F4 == [fpf("2143"), fpf("3412"), fpf("4321")]
    assert [height(z) for z in F4] == [1, 2, 3]
    assert len(enumerate_fpf(8)) == 105 == double_factorial(7)
    for bad in (0, 3, 5):
        with pytest.raises(ValueError):
            enumerate_fpf(bad)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_enumeration_matches_brute_force(n):
    assert set(enumerate_fpf(n)) == set(brute_fpf(n))
    # canonical order: (height, one-line)
    F = enumerate_fpf(n)
    assert F == sorted(F, key=lambda z: (length(z), z.image))


def test_special_elements():
    assert longest_element(4) == P("4321")
    assert minimal_fpf(6) == fpf("214365")
    for n in (2, 4, 6, 8):
        F = enumerate_fpf(n)
        assert min(F, key=length) == minimal_fpf(n)
        assert sum(1 for z in F if length(z) == length(minimal_fpf(n))) == 1


def test_invalid_involutions():
    with pytest.raises(ValueError):
        FpfInvolution((1, 2))
    with pytest.raises(ValueError):
        FpfInvolution((2, 3, 1))
    with pytest.raises(ValueError):
        Reflection(3, 3)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_scaled_set_and_theta(n):
    for z in enumerate_fpf(n):
        assert length(z) % 2 == (n // 2) % 2
        assert height(theta(n, z)) == height(z)
        for i in range(1, n):
            w = conj_simple(z, i)
            assert abs(height(w) - height(z)) in (0, 1)
            assert conj_simple(w, i) == z


perms = st.integers(2, 7).flatmap(lambda n: st.permutations(list(range(1, n + 1))))


@given(perms)
def test_inverse_and_length(w):
    w = Permutation(tuple(w))
    assert compose(w, inverse(w)) == identity(w.n)
    assert length(inverse(w)) == length(w)


@given(st.integers(1, 4).flatmap(lambda h: st.sampled_from(enumerate_fpf(2 * h))),
       st.data())
def test_reflection_conjugation_is_involutive(z, data):
    i = data.draw(st.integers(1, z.n - 1))
    j = data.draw(st.integers(i + 1, z.n))
    r = Reflection(i, j)
    assert conj_reflection(conj_reflection(z, r), r) == z
    rp = r.as_permutation(z.n)
    assert conj_reflection(z, r) == compose(rp, compose(z, rp))


def test_simple_is_adjacent_transposition():
    assert simple(2, 4) == P("1324")
