import numpy as np
import pytest

from gelfand_graph.bruhat import (
    UnknownElement, build_poset, covers, leq, verify_bruhat_lifting, verify_partial_order,
    verify_qp1, verify_qp2, verify_reflection_lemma,
)
from gelfand_graph.permutation import FpfInvolution, longest_element, minimal_fpf

from conftest import fpf


def rank_matrix(w):
    n = len(w)
    return np.array([[sum(1 for a in range(i + 1) if w[a] >= j + 1) for j in range(n)]
                     for i in range(n)])


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_order_is_restriction_of_symmetric_group_bruhat(n):
    # independent oracle: the rank-matrix criterion for Bruhat order on S_n
    P = build_poset(n)
    R = [rank_matrix(z.image) for z in P.elements]
    expect = np.array([[bool((R[a] <= R[b]).all()) for b in range(P.size)] for a in range(P.size)])
    assert (P.leq_matrix() == expect).all()


def test_small_examples():
    P4 = build_poset(4)
    a, b, c = fpf("2143"), fpf("3412"), fpf("4321")
    assert leq(P4, a, b) and leq(P4, b, c) and leq(P4, a, c)
    assert not leq(P4, c, a)
    assert leq(P4, a, a)
    assert covers(P4, a) == [b]
    P2 = build_poset(2)
    assert P2.size == 1 and leq(P2, fpf("21"), fpf("21"))
    with pytest.raises(UnknownElement):
        P4.idx(fpf("21"))


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_extremes(n):
    P = build_poset(n)
    M = P.leq_matrix()
    lo = P.idx(minimal_fpf(n))
    hi = P.idx(FpfInvolution(longest_element(n).image))
    assert M[lo].all() and M[:, hi].all()
    assert P.minimum() == minimal_fpf(n)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_axioms(n):
    P = build_poset(n)
    for rep in (verify_qp1(n, P), verify_qp2(n, P), verify_bruhat_lifting(n, P),
                verify_partial_order(n, P)):
        assert rep.ok, rep.to_text()
    if n <= 6:
        assert verify_reflection_lemma(n, P).ok


@pytest.mark.parametrize("n", [4, 6, 8])
def test_grading(n):
    P = build_poset(n)
    L = P.lengths
    for i in range(P.size):
        for j in P.covers_idx(i):
            assert L[j] - L[i] >= 2
    M = P.leq_matrix()
    strict = M & ~np.eye(P.size, dtype=bool)
    ii, jj = np.nonzero(strict)
    assert (L[ii] < L[jj]).all()


@pytest.mark.parametrize("backend", ["python", "cython"])
def test_backends_agree(backend):
    from gelfand_graph import _kernels
    if backend not in _kernels.available():
        pytest.skip("compiled kernels not built")
    for n in (4, 6, 8):
        assert (build_poset(n, backend).leq_matrix() == build_poset(n, "python").leq_matrix()).all()
