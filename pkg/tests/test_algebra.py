import pytest
from hypothesis import given

import oracles
from phk.algebra import (FinDimAlgebra, algebra_tensor_over, check_algebra, corner, hom_over_subalgebra, opposite,
                         right_module_endomorphisms, tensor_algebra, tensor_over)
from phk.errors import DimensionMismatch, FieldMismatch, PreconditionError
from phk.fixtures import e1, e2, e3, kc2
from phk.linalg import GF, QQ, Matrix, Subspace, unit_vector
from phk.paction import invariants, product_of_fields
from phk.smash import smash
from strategies import cyclic_actions


def upper_triangular():
    # E11, E12, E22
    z = [0, 0, 0]
    t = [[[1, 0, 0], [0, 1, 0], z],
         [z, z, [0, 1, 0]],
         [z, z, [0, 0, 1]]]
    return FinDimAlgebra(QQ, t, [1, 0, 1], name="T2")


def test_product_of_fields_passes():
    assert check_algebra(product_of_fields(2)).ok


def test_missing_unit_reported_on_second_basis_vector():
    table = [[[1, 0], [0, 0]], [[0, 0], [0, 0]]]
    rep = check_algebra(FinDimAlgebra(QQ, table, [1, 0]))
    assert not rep.ok
    assert {"axiom": "left unit", "witness": [1]} in rep.failures


def test_group_algebra_passes():
    assert check_algebra(kc2().algebra).ok


def test_slab_dimension_mismatch_is_named():
    with pytest.raises(DimensionMismatch, match="slab"):
        FinDimAlgebra(QQ, [[[1, 0], [0, 1]], [[0, 1]]], [1, 0])


def test_associativity_failure_is_located():
    # unit e2; e0 e0 = e1 and e1 e0 = e0, so (e0 e0) e0 = e0 but e0 (e0 e0) = e0 e1 = 0
    z = [0, 0, 0]
    table = [[[0, 1, 0], z, [1, 0, 0]],
             [[1, 0, 0], z, [0, 1, 0]],
             [[1, 0, 0], [0, 1, 0], [0, 0, 1]]]
    rep = check_algebra(FinDimAlgebra(QQ, table, [0, 0, 1]))
    assert {"axiom": "associativity", "witness": [0, 0, 0]} in rep.failures
    assert not rep.failing("left unit") and not rep.failing("right unit")


def test_tensor_with_group_algebra():
    T = tensor_algebra(product_of_fields(2), kc2().algebra)
    assert T.dim == 4
    assert T.one == [1, 0, 1, 0]
    assert check_algebra(T).ok


def test_tensor_with_ground_field_is_reindexing():
    B = upper_triangular()
    assert tensor_algebra(product_of_fields(1), B).table == B.table


def test_tensor_both_orders_valid():
    A, B = product_of_fields(2), upper_triangular()
    ab, ba = tensor_algebra(A, B), tensor_algebra(B, A)
    assert ab.dim == ba.dim == 6
    assert check_algebra(ab).ok and check_algebra(ba).ok


def test_tensor_field_mismatch():
    with pytest.raises(FieldMismatch):
        tensor_algebra(product_of_fields(2), product_of_fields(2, GF(3)))


def test_opposite():
    A = product_of_fields(3)
    assert opposite(A).table == A.table
    T = upper_triangular()
    assert opposite(T).table != T.table
    assert opposite(opposite(T)).table == T.table
    assert check_algebra(opposite(T)).ok


def test_corner_at_unit_is_everything():
    T = upper_triangular()
    c = corner(T, T.one)
    assert c.dim == 3
    assert check_algebra(c.algebra).ok


@pytest.mark.parametrize("fixture,dim", [(e1, 4), (e2, 1), (e3, 3)])
def test_corner_of_smash_at_one_sharp_one(fixture, dim):
    S = smash(fixture())
    c = corner(S.algebra, S.p)
    assert c.dim == dim == oracles.NaiveSmash(fixture()).corner_dim()
    assert check_algebra(c.algebra).ok
    assert c.algebra.one == c.from_parent(S.p)


def test_corner_preconditions():
    T = upper_triangular()
    with pytest.raises(PreconditionError, match="idempotent"):
        corner(T, [2, 0, 0])
    with pytest.raises(PreconditionError, match="left identity"):
        corner(T, [1, 0, 0])


def test_hom_over_whole_algebra_is_commutant():
    A = product_of_fields(2)
    acts = [(A.rmul(A.basis(i)), A.rmul(A.basis(i))) for i in range(2)]
    assert hom_over_subalgebra(QQ, 2, 2, acts).dim == 2


def test_hom_over_scalars_is_everything():
    A = product_of_fields(3)
    assert hom_over_subalgebra(QQ, 3, 3, [(A.rmul(A.one), A.rmul(A.one))]).dim == 9


def test_end_over_invariants_e1():
    pa = e1()
    assert right_module_endomorphisms(pa.A, invariants(pa)).dim == 4


def test_tensor_over_scalars_is_full():
    A = product_of_fields(3)
    assert tensor_over(QQ, 3, 3, [(A.rmul(A.one), A.lmul(A.one))]).dim == 9


def test_tensor_over_algebra_itself():
    pa = e3()
    rt = algebra_tensor_over(pa.A, invariants(pa))
    assert rt.dim == 2 == oracles.tensor_over_invariants_dim(pa)


def test_tensor_over_invariants_e1_from_oracle():
    # A^H is k.1 here, so nothing is identified beyond the scalars
    pa = e1()
    rt = algebra_tensor_over(pa.A, invariants(pa))
    assert rt.dim == oracles.tensor_over_invariants_dim(pa) == 4


def test_relative_tensor_projection():
    pa = e3()
    rt = algebra_tensor_over(pa.A, invariants(pa))
    P = rt.projection_matrix()
    for r in rt.relations.basis:
        assert not any(P.apply(r))
    for q in range(rt.dim):
        v = unit_vector(QQ, rt.dim, q)
        assert rt.project(rt.section(v)) == v


def test_induced_map_must_kill_relations():
    pa = e3()
    rt = algebra_tensor_over(pa.A, invariants(pa))
    with pytest.raises(PreconditionError):
        rt.induced_map(Matrix.identity(QQ, 4))


@given(cyclic_actions())
def test_derived_algebras_stay_valid(pa):
    A = pa.A
    assert check_algebra(tensor_algebra(A, pa.H.algebra)).ok
    assert check_algebra(opposite(A)).ok
    S = smash(pa)
    assert check_algebra(corner(S.algebra, S.p).algebra).ok


@given(cyclic_actions())
def test_hom_space_elements_commute(pa):
    inv = invariants(pa)
    end = right_module_endomorphisms(pa.A, inv)
    for f in end.basis:
        for x in inv.basis:
            R = pa.A.rmul(x)
            assert f @ R == R @ f


@given(cyclic_actions())
def test_relative_tensor_dimension_matches_oracle(pa):
    rt = algebra_tensor_over(pa.A, invariants(pa))
    assert rt.dim == oracles.tensor_over_invariants_dim(pa)


@given(cyclic_actions())
def test_subspace_closed_under_product(pa):
    inv = invariants(pa)
    assert pa.A.is_subalgebra(inv)
    assert inv == Subspace(QQ, pa.A.dim, oracles.invariant_basis(pa))
