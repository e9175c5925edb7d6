import pytest

from gelfand_graph.permutation import (
    FpfInvolution, conj_simple, double_factorial, enumerate_fpf, height, longest_element,
    minimal_fpf,
)
from gelfand_graph.structure import (
    build_d1, coordinates, lam, middle_element, named_molecule, nu, nu_inverse, phi,
    recursive_labels, rho, rho_inverse, staircase_column, staircase_vertical, theta,
    verify_cell_theorem, verify_ck_structure, verify_d1, verify_middle_element,
    verify_molecule_theorems, verify_partitions, verify_recursion_invariants, verify_staircase,
    verify_worked_example, y_decomposition, y_index, z_blocks,
)

from conftest import fpf

# literal statements with known counterexamples (see the decisions ledger)
KNOWN_FALSE = {"vert-stair", "hori-stair", "hori-stair-figure", "nu-2-thm", "ploy-lem",
               "mum-lem-zero", "mum-lem-5-1"}


def w0(n):
    return FpfInvolution(longest_element(n).image)


def test_theta_examples():
    assert theta(4, fpf("2143")) == fpf("2143")
    for n in (2, 4, 6):
        assert theta(n, w0(n)) == w0(n)
        for z in enumerate_fpf(n):
            assert theta(n, theta(n, z)) == z


def test_rho_examples():
    assert rho(4, fpf("21")) == fpf("2143")
    for z in enumerate_fpf(6):
        r = rho(8, z)
        assert r(1) == 2
        assert rho_inverse(8, r) == z


def test_nu_examples():
    assert nu(4, 2, fpf("2143")) == fpf("3412")
    x1 = minimal_fpf(6)
    assert nu(6, 1, x1) == x1
    assert [height(nu(6, j, x1)) - height(x1) for j in range(1, 6)] == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        nu(4, 2, fpf("3412"))
    for j in range(1, 7):
        for z in enumerate_fpf(6):
            y = rho(8, z)
            assert nu_inverse(8, j, nu(8, j, y)) == y


def test_y_decomposition():
    Y = y_decomposition(4)
    assert [set(Y.block(j)) for j in (1, 2, 3)] == [{fpf("2143")}, {fpf("3412")}, {fpf("4321")}]
    for n in (4, 6, 8):
        Y = y_decomposition(n)
        assert sum(len(b) for b in Y.blocks) == double_factorial(n - 1)
        for j in range(1, n):
            assert all(z(1) == j + 1 and y_index(z) == j for z in Y.block(j))


def test_phi_lambda():
    assert phi(6, fpf("21")) == minimal_fpf(6)
    for n in (6, 8, 10):
        img = [phi(n, y) for y in enumerate_fpf(n - 4)]
        assert all(lam(n, 1, x) == x for x in img)
    parts = [{lam(8, j, phi(8, y)) for y in enumerate_fpf(4)} for j in range(1, 6)]
    assert [len(p) for p in parts] == [3] * 5
    assert set().union(*parts) == {z for z in enumerate_fpf(8) if z(1) == 2}
    blocks = z_blocks(8)
    assert [len(b) for b in blocks] == [1, 1, 1]


def test_coordinates_round_trip():
    for n in (6, 8, 10):
        for x in (z for z in enumerate_fpf(n) if z(1) == 2):
            j, i, y = coordinates(n, x)
            assert lam(n, j, phi(n, y)) == x and y(1) == i + 1


def test_staircase_examples():
    x = phi(8, fpf("2143"))
    assert staircase_vertical(8, 3, x)
    assert staircase_column(8, 1, 1) == 3
    assert staircase_column(8, 5, 1) == 7


def test_recursive_labels():
    L = recursive_labels(4)
    assert [L.x(k) for k in (1, 2, 3)] == [fpf("2143"), fpf("3412"), fpf("4321")]
    for n in (2, 4, 6, 8):
        L = recursive_labels(n)
        N = double_factorial(n - 1)
        assert L.x(1) == minimal_fpf(n) and L.x(N) == w0(n)
        assert sorted(L.label(z) for z in enumerate_fpf(n)) == list(range(1, N + 1))


def test_middle_element_examples(tower):
    assert middle_element(2, tower)[0] == fpf("21")
    assert middle_element(4, tower)[0] == fpf("3412")
    assert middle_element(6, tower)[0] == nu(6, 3, rho(6, fpf("3412")))


def test_d1_examples(tower):
    assert build_d1(2) == {fpf("21")}
    assert build_d1(4) == {fpf("2143"), fpf("3412")}
    assert build_d1(6) == set(tower.molecule_of(6, minimal_fpf(6)))
    with pytest.raises(ValueError):
        build_d1(5)


def test_named_molecules(tower):
    assert named_molecule(4, 1, tower) == {fpf("2143"), fpf("3412")}
    assert named_molecule(4, 2, tower) == {fpf("4321")}
    assert len(named_molecule(8, 1, tower)) == 14
    with pytest.raises(ValueError):
        named_molecule(6, 4, tower)


SUITES = [verify_staircase, verify_molecule_theorems, verify_partitions, verify_d1,
          verify_middle_element, verify_ck_structure, verify_cell_theorem,
          verify_recursion_invariants, verify_worked_example]


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_suites(tower, n):
    for suite in SUITES:
        for rep in suite(n, tower):
            if rep.theorem_id in KNOWN_FALSE:
                continue
            assert rep.ok, rep.to_text()


@pytest.mark.parametrize("theorem_id, n, count", [
    ("vert-stair", 6, 3), ("hori-stair", 6, 3), ("hori-stair-figure", 8, 8),
    ("nu-2-thm", 8, 3), ("ploy-lem", 4, 2), ("mum-lem-zero", 4, 1), ("mum-lem-5-1", 6, 3),
])
def test_known_counterexamples_are_reported(tower, theorem_id, n, count):
    reps = {r.theorem_id: r for s in SUITES for r in s(n, tower)}
    assert reps[theorem_id].status == "fail"
    assert len(reps[theorem_id].violations) == count


def test_nu2_counterexample_detail(tower):
    x, y = fpf("21437856"), fpf("21573846")
    assert y == conj_simple(x, 4)
    assert tower.bidirected(8, x, y)
    assert not tower.bidirected(8, nu(8, 2, x), nu(8, 2, y))
    assert tower.same_molecule(8, nu(8, 2, x), nu(8, 2, y))


def test_reports_never_abort(tower):
    reps = verify_cell_theorem(6, tower)
    assert all(r.to_dict()["status"] in ("pass", "fail", "vacuous") for r in reps)
    assert {r.status for r in reps} == {"pass", "fail"}
