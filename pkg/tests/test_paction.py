import pytest
from hypothesis import given

import oracles
from phk.errors import PreconditionError
from phk.fixtures import C2, e1, e2, e3, e3_perturbed, kc2
from phk.linalg import QQ, Matrix, Subspace
from phk.paction import (GroupPartialActionData, PartialAction, PartialCoaction, check_pa, check_pca, check_symmetric,
                         coinvariants, from_group_partial_action, induced_coaction, invariants, product_of_fields)
from strategies import cyclic_actions

FIXTURES = [e1, e2, e3]


def trivial_action(A, H):
    return PartialAction.from_basis_actions(H, A, [H.eps(H.basis(j)) * Matrix.identity(QQ, A.dim)
                                                  for j in range(H.dim)])


@pytest.mark.parametrize("make", FIXTURES)
def test_fixtures_are_symmetric_partial_actions(make):
    pa = make()
    assert check_pa(pa).ok
    assert check_symmetric(pa).ok


def test_check_pa_sweeps_every_triple():
    rep = check_pa(e1())
    # PA1 on (h, a, b), PA2 on a, PA3 on (h, k, a) with dim H = dim A = 2
    assert rep.checked == 8 + 2 + 8


def test_trivial_action_is_global():
    pa = trivial_action(product_of_fields(3), kc2())
    assert check_pa(pa).ok and check_symmetric(pa).ok
    assert pa.is_global()
    assert invariants(pa) == Subspace.full(QQ, 3)


def test_e2_versus_global_action_on_k():
    glob = trivial_action(product_of_fields(1), kc2())
    assert glob.is_global() and not e2().is_global()
    assert induced_coaction(glob).rho_one == [1, 1]
    assert induced_coaction(e2()).rho_one == [1, 0]


def test_e3_acts_by_projection():
    pa = e3()
    g = pa.H.basis(1)
    assert pa.act(g, [3, 5]) == [3, 0]
    assert pa.act(g, pa.act(g, [3, 5])) == [3, 0]


def test_perturbed_e3_breaks_symmetry_at_a_located_triple():
    pa = e3_perturbed()
    rep = check_symmetric(pa)
    assert not rep.ok
    first = rep.failures[0]
    assert first["axiom"] == "PA4"
    assert first["witness"] == [1, 1, 0]
    with pytest.raises(PreconditionError) as info:
        pa.require(symmetric=True)
    assert info.value.report.failing("PA4")


@pytest.mark.parametrize("make,basis", [
    (e1, [[1, 1]]),
    (e2, [[1]]),
    (e3, [[1, 0], [0, 1]]),
])
def test_invariants(make, basis):
    pa = make()
    expected = Subspace(QQ, pa.A.dim, basis)
    assert invariants(pa, "left") == expected
    assert invariants(pa, "right") == expected
    assert Subspace(QQ, pa.A.dim, oracles.invariant_basis(pa)) == expected


def test_rho_examples():
    pc = induced_coaction(e2())
    assert pc.rho_one == [1, 0]
    pc = induced_coaction(e1())
    # u -> u (x) p_e + v (x) p_g
    assert pc([1, 0]) == [1, 0, 0, 1]
    assert pc.rho_one == [1, 1, 1, 1]
    assert induced_coaction(e3()).rho_one == [1, 1, 1, 0]


@pytest.mark.parametrize("make", FIXTURES)
def test_induced_coactions_are_symmetric(make):
    pa = make()
    pc = induced_coaction(pa)
    rep = check_pca(pc)
    assert rep.ok, rep.failures
    for a in range(pa.A.dim):
        assert pc(pa.A.basis(a)) == oracles.rho(pa, pa.A.basis(a))


def test_zero_coaction_fails_counit():
    pa = e1()
    pc = induced_coaction(pa)
    zero = PartialCoaction(pa.A, pc.K, Matrix.zeros(QQ, 4, 2))
    assert check_pca(zero).failing("PCA3")


def test_global_coaction_of_trivial_action():
    pa = trivial_action(product_of_fields(2), kc2())
    pc = induced_coaction(pa)
    assert check_pca(pc).ok
    assert pc.rho_one == [1, 1, 1, 1]


@pytest.mark.parametrize("make", FIXTURES)
def test_coinvariants_equal_invariants(make):
    pa = make()
    pc = induced_coaction(pa)
    assert coinvariants(pc, "left") == invariants(pa, "left")
    assert coinvariants(pc, "right") == invariants(pa, "right")


def test_invalid_group_data_is_a_precondition_error():
    A = product_of_fields(2)
    # (2, 0) is not idempotent in k x k
    data = GroupPartialActionData(C2, A, [[1, 1], [2, 0]], [Matrix.identity(QQ, 2)] * 2)
    with pytest.raises(PreconditionError) as info:
        from_group_partial_action(data)
    assert info.value.report.failing("idempotent")


def test_unit_idempotent_must_be_one():
    A = product_of_fields(2)
    data = GroupPartialActionData(C2, A, [[1, 0], [1, 1]], [Matrix.identity(QQ, 2)] * 2)
    with pytest.raises(PreconditionError):
        from_group_partial_action(data)


@given(cyclic_actions())
def test_group_actions_are_symmetric(pa):
    assert check_pa(pa).ok
    assert check_symmetric(pa).ok


@given(cyclic_actions())
def test_invariants_sides_and_coinvariants(pa):
    left, right = invariants(pa, "left"), invariants(pa, "right")
    assert left <= right
    assert left == right
    assert pa.A.one in left
    pc = induced_coaction(pa)
    assert check_pca(pc).ok
    assert coinvariants(pc) == left


@given(cyclic_actions())
def test_action_recovered_from_coaction(pa):
    pc = induced_coaction(pa)
    nA, nH = pa.A.dim, pa.H.dim
    for a in range(nA):
        r = pc(pa.A.basis(a))
        for j in range(nH):
            assert [r[i * nH + j] for i in range(nA)] == pa.act(pa.H.basis(j), pa.A.basis(a))
