import pytest
from hypothesis import given

import oracles
from phk.algebra import check_algebra, tensor_algebra
from phk.errors import PreconditionError
from phk.fixtures import e1, e2, e3, e3_perturbed, kc2
from phk.hopf import normalized_pair
from phk.linalg import QQ, Matrix, Subspace
from phk.paction import PartialAction, product_of_fields
from phk.smash import (SmashContext, alpha_beta, alpha_matrix, fixed_part, frobenius_system, partial_smash, smash,
                       verify_frobenius)
from strategies import cyclic_actions

FIXTURES = [e1, e2, e3]
# index of a_i # h_j is 2 i + j for these fixtures: u#e, u#g, v#e, v#g


def trivial_action(A, H):
    return PartialAction.from_basis_actions(H, A, [H.eps(H.basis(j)) * Matrix.identity(QQ, A.dim)
                                                  for j in range(H.dim)])


def test_trivial_action_gives_tensor_algebra():
    A, H = product_of_fields(2), kc2()
    S = smash(trivial_action(A, H))
    assert S.algebra.table == tensor_algebra(A, H.algebra).table


def test_smash_product_matches_naive_formula():
    for make in FIXTURES:
        pa = make()
        S, naive = smash(pa), oracles.NaiveSmash(pa)
        for s in range(S.dim):
            for t in range(S.dim):
                assert S.algebra.mul(S.algebra.basis(s), S.algebra.basis(t)) == naive.mul(naive.e(s), naive.e(t))


def test_e1_unit_is_two_sided():
    S = smash(e1())
    assert check_algebra(S.algebra).ok


def test_e3_unit_is_only_a_left_identity():
    S = smash(e3())
    one_g = [0, 1, 0, 1]
    assert S.algebra.mul(one_g, S.p) == [0, 1, 0, 0]   # u # g
    assert S.algebra.mul(S.p, one_g) == one_g


@pytest.mark.parametrize("make,dim", [(e1, 4), (e2, 1), (e3, 3)])
def test_partial_smash_dimension(make, dim):
    ps = partial_smash(make())
    assert ps.dim == dim
    assert ps.check_iota().ok


def test_partial_smash_bases():
    assert Subspace(QQ, 2, partial_smash(e2()).ambient_basis()) == Subspace(QQ, 2, [[1, 0]])
    u_e, v_e, u_g = [1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0]
    assert Subspace(QQ, 4, partial_smash(e3()).ambient_basis()) == Subspace(QQ, 4, [u_e, v_e, u_g])


def test_fixed_part_e1():
    ps = partial_smash(e1())
    fp = fixed_part(e1())
    ambient = Subspace(QQ, 4, [ps.to_ambient(x) for x in fp.subspace.basis])
    assert ambient == Subspace(QQ, 4, [[1, 0, 0, 1], [0, 1, 1, 0]])


@pytest.mark.parametrize("make,dim,ambient_dim", [(e1, 2, 2), (e2, 1, 2), (e3, 2, 3)])
def test_fixed_part_dimensions(make, dim, ambient_dim):
    fp = fixed_part(make())
    assert fp.dim == dim == oracles.NaiveSmash(make()).fixed_part_dim(make())
    assert fp.subspace == fp.integral_span
    assert fp.ambient.dim == ambient_dim


def test_fixed_part_needs_symmetry():
    with pytest.raises(PreconditionError):
        fixed_part(e3_perturbed())


def test_casimir_element_for_c2():
    ctx = SmashContext(e1())
    fs = frobenius_system(ctx)
    ps = ctx.ps
    one_e = ps.underline([1, 1], [1, 0])
    one_g = ps.underline([1, 1], [0, 1])
    assert [(c, x, y) for c, x, y in fs.terms] == [(1, one_e, one_e), (1, one_g, one_g)]


@pytest.mark.parametrize("make", [e2, e3])
def test_phi_values(make):
    ctx = SmashContext(make())
    fs = frobenius_system(ctx)
    ps = ctx.ps
    assert fs.Phi.apply(ps.underline(ctx.A.one, [1, 0])) == ctx.A.one
    assert not any(fs.Phi.apply(ps.underline(ctx.A.one, [0, 1])))


@pytest.mark.parametrize("make", FIXTURES)
def test_frobenius_system_verifies(make):
    rep = verify_frobenius(frobenius_system(make()))
    assert rep.ok, rep.failures


def test_frobenius_refuses_asymmetric_action():
    with pytest.raises(PreconditionError):
        frobenius_system(e3_perturbed())


def test_symmetry_is_needed_for_the_frobenius_system():
    pa = e3_perturbed()
    ctx = SmashContext(pa, check=False)
    assert not check_algebra(ctx.ps.smash.algebra).ok
    rep = verify_frobenius(frobenius_system(ctx))
    assert rep.failing("e s = s e")


def test_trivial_action_frobenius_reduces_to_hopf_example():
    A, H = product_of_fields(1), kc2()
    ctx = SmashContext(trivial_action(A, H))
    fs = frobenius_system(ctx)
    assert verify_frobenius(fs).ok
    pair = normalized_pair(H)
    assert [fs.Phi.apply(ctx.ps.underline([1], H.basis(j)))[0] for j in range(2)] == pair.T


@pytest.mark.parametrize("make", FIXTURES)
def test_alpha_beta(make):
    assert alpha_beta(make()).ok


def test_alpha_of_u_in_e1():
    ctx = SmashContext(e1())
    alpha = alpha_matrix(ctx)
    assert ctx.ps.to_ambient(alpha.apply([1, 0])) == [1, 0, 0, 1]
    assert ctx.Phi.apply(alpha.apply([1, 0])) == [1, 0]


@given(cyclic_actions())
def test_frobenius_on_random_actions(pa):
    ctx = SmashContext(pa)
    assert verify_frobenius(frobenius_system(ctx)).ok
    fp = fixed_part(ctx)
    assert fp.subspace == fp.integral_span
    assert alpha_beta(ctx).ok


@given(cyclic_actions())
def test_dimensions_match_oracle(pa):
    naive = oracles.NaiveSmash(pa)
    ctx = SmashContext(pa)
    assert ctx.ps.dim == naive.corner_dim()
    assert fixed_part(ctx).dim == naive.fixed_part_dim(pa)


@given(cyclic_actions())
def test_iota_is_a_unital_monomorphism(pa):
    assert partial_smash(pa).check_iota().ok


@given(cyclic_actions())
def test_global_actions_have_full_partial_smash(pa):
    if pa.is_global():
        ctx = SmashContext(pa)
        assert ctx.ps.dim == ctx.ps.smash.dim
        fp = fixed_part(ctx)
        assert fp.dim == fp.ambient.dim
