import pytest
from hypothesis import given, settings

import oracles
from phk.errors import PreconditionError
from phk.fixtures import e1, e2, e3, e3_perturbed, grading
from phk.galois import (GaloisContext, bracket_map, canonical_map, galois_report, generator_check, integral_condition,
                        module_family, mu_condition, mu_M_check, phi_iso, pi_end_check, reduced_tensor,
                        verify_integral_witness)
from phk.linalg import GF, QQ, Subspace
from phk.paction import from_group_partial_action, invariants, restricted_cyclic_action
from strategies import cyclic_actions

FIXTURES = [e1, e2, e3]
# A (x) H* index i * 2 + j: u p_e, u p_g, v p_e, v p_g


def test_reduced_tensor_e2():
    assert reduced_tensor(e2()) == Subspace(QQ, 2, [[1, 0]])


def test_reduced_tensor_e1_is_everything():
    assert reduced_tensor(e1()) == Subspace.full(QQ, 4)


def test_reduced_tensor_e3():
    # (a, b) p_e + (c, d) p_g -> (a, b) p_e + (c, 0) p_g
    assert reduced_tensor(e3()) == Subspace(QQ, 4, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0]])


@pytest.mark.parametrize("make", FIXTURES + [grading])
def test_reduced_tensor_matches_oracle(make):
    assert reduced_tensor(make()).dim == oracles.reduced_tensor_dim(make())


def test_phi_on_e2():
    ctx = GaloisContext(e2())
    phi = phi_iso(ctx)
    assert phi.apply([1]) == ctx.ps.underline([1], [1, 0])


@pytest.mark.parametrize("make,dim", [(e1, 4), (e2, 1), (e3, 3)])
def test_phi_is_bijective(make, dim):
    phi = phi_iso(make())
    assert phi.shape == (dim, dim) and phi.rank() == dim


@pytest.mark.parametrize("make,domain,target,surjective", [
    (e1, 4, 4, True),
    (e2, 1, 1, True),
    (e3, 2, 3, False),
])
def test_canonical_map(make, domain, target, surjective):
    can = canonical_map(make())
    assert can.matrix.shape == (target, domain)
    assert can.surjective is surjective
    assert can.injective is surjective or domain == can.matrix.rank()


def test_canonical_map_e2_sends_one_to_rho_one():
    ctx = GaloisContext(e2())
    assert canonical_map(ctx).matrix.apply([1]) == reduced_tensor(ctx).coordinates(ctx.coaction.rho_one)


@pytest.mark.parametrize("make", FIXTURES)
def test_bracket_factors_through_canonical_map(make):
    ctx = GaloisContext(make())
    br = bracket_map(ctx)
    assert br.matrix == phi_iso(ctx) @ canonical_map(ctx).matrix
    assert br.surjective is canonical_map(ctx).surjective


def test_bracket_e3_rank_too_small():
    br = bracket_map(e3())
    assert br.matrix.rank() <= 2 and not br.surjective
    assert br.decomposition == []


@pytest.mark.parametrize("make", [e1, e2])
def test_generator_decomposition(make):
    ctx = GaloisContext(make())
    br = bracket_map(ctx)
    ps = ctx.ps
    total = [QQ.zero] * ps.dim
    for b, c in br.decomposition:
        total = [x + y for x, y in zip(total, ps.mul(ps.iota(b), ctx.one_t, ps.iota(c)))]
    assert total == ps.one


def test_integral_witness_e1_by_substitution():
    u, v = [1, 0], [0, 1]
    assert verify_integral_witness(e1(), [(u, u), (v, v)])
    assert not verify_integral_witness(e1(), [(u, u)])


def test_integral_witness_e2_by_substitution():
    assert verify_integral_witness(e2(), [([1], [1])])


def test_integral_system_e3_is_inconsistent():
    pa = e3()
    assert integral_condition(pa) is None
    ctx = GaloisContext(pa)
    assert not oracles.integral_system_solvable(pa, ctx.pair.T)


@pytest.mark.parametrize("make", [e1, e2])
def test_integral_condition_solutions_verify(make):
    terms = integral_condition(make())
    assert terms is not None and verify_integral_witness(make(), terms)


@pytest.mark.parametrize("make,verdict,end_dim", [(e1, True, 4), (e2, True, 1), (e3, False, 2)])
def test_pi_end_check(make, verdict, end_dim):
    end = pi_end_check(make())
    assert end.verdict is verdict
    assert end.end_space.dim == end_dim
    assert end.opposite_iso
    assert end.projective


@pytest.mark.parametrize("make", FIXTURES)
def test_dual_basis_witnesses(make):
    pa = make()
    end = pi_end_check(pa)
    inv = invariants(pa)
    for j in range(pa.A.dim):
        b = pa.A.basis(j)
        total = pa.A.zero()
        for a, f in end.dual_basis:
            assert f.apply(b) in inv
            total = [x + y for x, y in zip(total, pa.A.mul(a, f.apply(b)))]
        assert total == b


@pytest.mark.parametrize("make,verdict", [(e1, True), (e2, True), (e3, False)])
def test_generator_check(make, verdict):
    assert generator_check(make())[0] is verdict


@pytest.mark.parametrize("make,verdict,domain,rank", [(e1, True, 4, 4), (e2, True, 1, 1), (e3, False, 2, 2)])
def test_mu_condition(make, verdict, domain, rank):
    assert mu_condition(make()) == (verdict, domain, rank)


@pytest.mark.parametrize("make", [e1, e2])
def test_mu_M_bijective_with_inverse(make):
    ctx = GaloisContext(make())
    for M in module_family(ctx):
        res = mu_M_check(ctx, M)
        assert res.bijective and res.inverse_checked, (M.name, res.report.failures)


def test_fixed_vectors_of_A_are_the_invariants():
    ctx = GaloisContext(e1())
    A_module = module_family(ctx)[0]
    assert mu_M_check(ctx, A_module).fixed_dim == invariants(ctx.pa).dim


def test_mu_M_fails_on_regular_module_of_e3():
    ctx = GaloisContext(e3())
    regular = module_family(ctx)[1]
    assert not mu_M_check(ctx, regular).bijective


@pytest.mark.parametrize("make,galois", [(e1, True), (e2, True), (e3, False), (grading, True)])
def test_galois_report(make, galois):
    rep = galois_report(make())
    assert rep.agreement
    assert set(rep.verdicts.values()) == {galois}
    assert rep.galois is galois
    assert not rep.findings


def test_galois_report_dimensions_e1():
    d = galois_report(e1()).dimensions
    assert (d["partial_smash"], d["tensor_over_invariants"], d["reduced_tensor"], d["fixed_part"], d["end"]) == \
        (4, 4, 4, 2, 4)


def test_galois_report_requires_symmetry():
    with pytest.raises(PreconditionError):
        galois_report(e3_perturbed())


def test_global_action_on_orbit_is_galois():
    # C4 acting on one free orbit, restricted to all of its points
    pa = from_group_partial_action(restricted_cyclic_action(4, [4], [0, 1, 2, 3]))
    assert pa.is_global()
    assert galois_report(pa).galois


@given(cyclic_actions())
def test_conditions_agree(pa):
    ctx = GaloisContext(pa)
    rep = galois_report(ctx)
    assert rep.agreement, rep.verdicts
    assert reduced_tensor(ctx).dim == oracles.reduced_tensor_dim(pa)
    assert ctx.tensor_over_invariants.dim == oracles.tensor_over_invariants_dim(pa)
    assert rep.verdicts["c3"] == oracles.integral_system_solvable(pa, ctx.pair.T)


@given(cyclic_actions())
def test_bijective_when_surjective(pa):
    can = canonical_map(pa)
    if can.surjective:
        assert can.injective


@settings(max_examples=20)
@given(cyclic_actions(field=GF(2)))
def test_conditions_agree_in_characteristic_two(pa):
    assert galois_report(pa).agreement


@settings(max_examples=20)
@given(cyclic_actions(field=GF(3)))
def test_conditions_agree_in_characteristic_three(pa):
    assert galois_report(pa).agreement
