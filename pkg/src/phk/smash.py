"""Smash products, the partial smash A #_ H, its fixed part, and the Frobenius system.

A # H lives on A (x) H with a_i # h_j at index ``i * n_H + j``.  The partial
smash is the corner (A # H)(1 # 1); ``x#_h`` below always means the projected
element (x # h)(1 # 1), given in corner coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .algebra import CornerAlgebra, FinDimAlgebra, RelativeTensor, check_algebra, corner, tensor_over
from .errors import PreconditionError, StructuralInconsistency, TheoremViolation
from .hopf import IntegralPair, normalized_pair
from .linalg import Matrix, Subspace, kernel_basis, kron, unit_vector, vscale
from .paction import PartialAction, invariants
from .report import Report


class SmashAlgebra:
    def __init__(self, pa: PartialAction, algebra: FinDimAlgebra):
        self.pa = pa
        self.algebra = algebra
        self.nA = pa.A.dim
        self.nH = pa.H.dim

    @property
    def dim(self):
        return self.algebra.dim

    def elem(self, a, h) -> list:
        """Coordinates of a # h."""
        return kron(a, h)

    @property
    def p(self) -> list:
        return kron(self.pa.A.one, self.pa.H.one)


def smash(pa: PartialAction, check: bool = True) -> SmashAlgebra:
    """A # H with (a # h)(b # g) = a (h_1 . b) # h_2 g."""
    if check:
        pa.require()
    H, A = pa.H, pa.A
    nA, nH = A.dim, H.dim
    acts = pa.basis_actions
    table = []
    for i in range(nA):
        for j in range(nH):
            terms = H.delta_terms(H.basis(j))
            row = []
            for k in range(nA):
                for l in range(nH):
                    v = [pa.field.zero] * (nA * nH)
                    for p, q, c in terms:
                        a = A.mul(A.basis(i), acts[p].col(k))
                        if not any(a):
                            continue
                        h = H.mul(H.basis(q), H.basis(l))
                        v = [x + c * y for x, y in zip(v, kron(a, h))]
                    row.append(v)
            table.append(row)
    unit = kron(A.one, H.one)
    alg = FinDimAlgebra(pa.field, table, unit, name="A#H")
    S = SmashAlgebra(pa, alg)
    if check:
        rep = check_algebra_associativity(alg)
        if not rep.ok:
            raise StructuralInconsistency(f"smash product is not associative: {rep.failures[:3]}")
        for i in range(alg.dim):
            e = alg.basis(i)
            if alg.mul(S.p, e) != e:
                raise StructuralInconsistency(f"1#1 is not a left identity (fails on basis {i})")
    return S


def check_algebra_associativity(alg: FinDimAlgebra) -> Report:
    rep = check_algebra(alg)
    # the smash is usually not unital with respect to 1#1 on the right
    rep.failures = [f for f in rep.failures if f["axiom"] == "associativity"]
    return rep


class PartialSmash:
    def __init__(self, S: SmashAlgebra):
        self.smash = S
        self.pa = S.pa
        self.corner: CornerAlgebra = corner(S.algebra, S.p)
        self.algebra = self.corner.algebra
        A = self.pa.A
        self.iota_matrix = Matrix.from_columns(
            self.pa.field, [self.corner.from_parent(S.elem(A.basis(i), self.pa.H.one)) for i in range(A.dim)],
            self.dim)

    @property
    def dim(self):
        return self.corner.dim

    @property
    def one(self):
        return self.algebra.one

    def underline(self, a, h) -> list:
        """Corner coordinates of (a # h)(1 # 1)."""
        return self.corner.project(self.smash.elem(a, h))

    def iota(self, a) -> list:
        return self.iota_matrix.apply(a)

    def mul(self, *xs):
        return self.algebra.product(*xs)

    def to_ambient(self, x) -> list:
        return self.corner.to_parent(x)

    def ambient_basis(self) -> list:
        return self.corner.subspace.vectors()

    def check_iota(self) -> Report:
        rep = Report("iota")
        A = self.pa.A
        rep.check(self.iota(A.one) == self.one, "iota unital")
        for i in range(A.dim):
            for j in range(A.dim):
                a, b = A.basis(i), A.basis(j)
                rep.check(self.mul(self.iota(a), self.iota(b)) == self.iota(A.mul(a, b)), "iota multiplicative", i, j)
        rep.check(self.iota_matrix.rank() == A.dim, "iota injective")
        return rep


def partial_smash(pa: PartialAction) -> PartialSmash:
    ps = PartialSmash(smash(pa))
    rep = ps.check_iota()
    if not rep.ok:
        raise StructuralInconsistency(f"a -> a#1 is not a unital algebra monomorphism: {rep.failures[:3]}")
    return ps


class SmashContext:
    """Everything built from one partial action and one integral pair, computed lazily."""

    def __init__(self, pa: PartialAction, pair: IntegralPair | None = None, check: bool = True):
        self.pa = pa
        self.H = pa.H
        self.A = pa.A
        self.field = pa.field
        self.pair = pair if pair is not None else normalized_pair(pa.H)
        # check=False skips the axiom checks, for perturbation experiments on invalid actions
        self.check = check

    @cached_property
    def ps(self) -> PartialSmash:
        if not self.check:
            return PartialSmash(smash(self.pa, check=False))
        return partial_smash(self.pa)

    @cached_property
    def invariants(self) -> Subspace:
        return invariants(self.pa, "left")

    @cached_property
    def one_t(self) -> list:
        """1 #_ t in corner coordinates."""
        return self.ps.underline(self.A.one, self.pair.t)

    def Phi_ambient(self, v) -> list:
        """a # h -> a T(h) on the full smash."""
        nH = self.H.dim
        out = self.A.zero()
        T = self.pair.T
        for idx, c in enumerate(v):
            if c:
                i, j = divmod(idx, nH)
                if T[j]:
                    out[i] += c * T[j]
        return out

    @cached_property
    def Phi(self) -> Matrix:
        """Phi on corner coordinates, with values in A."""
        return Matrix.from_columns(self.field, [self.Phi_ambient(v) for v in self.ps.ambient_basis()], self.A.dim)

    @cached_property
    def corner_over_A(self) -> RelativeTensor:
        """(A #_ H) (x)_A (A #_ H) with A acting through iota."""
        ps = self.ps
        acts = []
        for i in range(self.A.dim):
            x = ps.iota(self.A.basis(i))
            acts.append((ps.algebra.rmul(x), ps.algebra.lmul(x)))
        return tensor_over(self.field, ps.dim, ps.dim, acts)


def as_context(pa, pair=None) -> SmashContext:
    if isinstance(pa, SmashContext):
        return pa
    return SmashContext(pa, pair)


# -- fixed part --------------------------------------------------------------

@dataclass
class FixedPart:
    subspace: Subspace          # inside A #_ H, corner coordinates
    integral_span: Subspace     # (1 #_ t)(A #_ 1), corner coordinates
    ambient: Subspace           # same conditions read inside the full A # H

    @property
    def dim(self):
        return self.subspace.dim


def fixed_part(pa, pair=None) -> FixedPart:
    """{x in A #_ H : (1 #_ h) x = ((h . 1) #_ 1) x for all h}, checked against (1 #_ t)(A #_ 1)."""
    ctx = as_context(pa, pair)
    ctx.pa.require(symmetric=True)
    ps = ctx.ps
    H, A = ctx.H, ctx.A
    blocks = []
    amb = []
    S = ps.smash.algebra
    for j in range(H.dim):
        h = H.basis(j)
        blocks.append(ps.algebra.lmul(ps.underline(A.one, h)) - ps.algebra.lmul(ps.iota(ctx.pa.h_dot_one(h))))
        amb.append(S.lmul(kron(A.one, h)) - S.lmul(kron(ctx.pa.h_dot_one(h), H.one)))
    sub = kernel_basis(Matrix.vstack(blocks))
    span = Subspace(ctx.field, ps.dim, [ps.mul(ctx.one_t, ps.iota(A.basis(i))) for i in range(A.dim)])
    if sub != span:
        raise TheoremViolation(f"fixed part (dim {sub.dim}) differs from (1#t)(A#1) (dim {span.dim})")
    return FixedPart(sub, span, kernel_basis(Matrix.vstack(amb)))


# -- Frobenius ---------------------------------------------------------------

@dataclass
class FrobeniusSystem:
    ctx: SmashContext
    Phi: Matrix                 # corner coordinates -> A
    terms: list                 # [(coeff, x, y)] with e = sum coeff x (x) y, corner coordinates
    tensor: RelativeTensor

    @property
    def e(self) -> list:
        """Representative of e in the full tensor (A #_ H) (x) (A #_ H)."""
        n = self.ctx.ps.dim
        v = [self.ctx.field.zero] * (n * n)
        for c, x, y in self.terms:
            v = [a + c * b for a, b in zip(v, kron(x, y))]
        return v

    @property
    def e_class(self) -> list:
        return self.tensor.project(self.e)


def frobenius_system(pa, pair=None) -> FrobeniusSystem:
    """Phi(a #_ h) = a T(h) and e = (1 #_ t_2) (x)_A (1 #_ S^-1(t_1))."""
    ctx = as_context(pa, pair)
    if ctx.check:
        ctx.pa.require(symmetric=True)
    H, A, ps = ctx.H, ctx.A, ctx.ps
    terms = []
    for p, q, c in H.delta_terms(ctx.pair.t):
        terms.append((c, ps.underline(A.one, H.basis(q)), ps.underline(A.one, H.S_inv(H.basis(p)))))
    return FrobeniusSystem(ctx, ctx.Phi, terms, ctx.corner_over_A)


def verify_frobenius(fs: FrobeniusSystem) -> Report:
    rep = Report("Frobenius system")
    ctx = fs.ctx
    ps, A = ctx.ps, ctx.A
    n = ps.dim
    rt = fs.tensor
    f = ctx.field

    def tensor_sum(pairs):
        v = [f.zero] * (n * n)
        for c, x, y in pairs:
            v = [a + c * b for a, b in zip(v, kron(x, y))]
        return v

    for r in range(n):
        s = unit_vector(f, n, r)
        es = tensor_sum((c, x, ps.mul(y, s)) for c, x, y in fs.terms)
        se = tensor_sum((c, ps.mul(s, x), y) for c, x, y in fs.terms)
        rep.check(rt.equal(es, se), "e s = s e", r)
    Phi = fs.Phi
    for i in range(A.dim):
        b = A.basis(i)
        ib = ps.iota(b)
        for r in range(n):
            s = unit_vector(f, n, r)
            rep.check(Phi.apply(ps.mul(ib, s)) == A.mul(b, Phi.apply(s)), "Phi left A-linear", i, r)
            rep.check(Phi.apply(ps.mul(s, ib)) == A.mul(Phi.apply(s), b), "Phi right A-linear", i, r)
    # (Phi (x)_A id) and (id (x)_A Phi) must be well defined on the quotient
    left_map = Matrix.from_columns(f, [ps.mul(ps.iota(Phi.col(k // n)), unit_vector(f, n, k % n))
                                       for k in range(n * n)], n)
    right_map = Matrix.from_columns(f, [ps.mul(unit_vector(f, n, k // n), ps.iota(Phi.col(k % n)))
                                        for k in range(n * n)], n)
    for name, m in (("Phi (x)_A id well defined", left_map), ("id (x)_A Phi well defined", right_map)):
        rep.check(all(not any(m.apply(rel)) for rel in rt.relations.basis), name)
    e = fs.e
    rep.check(left_map.apply(e) == ps.one, "Phi(x_i) y_i = 1")
    rep.check(right_map.apply(e) == ps.one, "x_i Phi(y_i) = 1")
    if not ctx.pair.T_is_left:
        rep.note("T is a right integral of H* but not a left one; Phi right-linearity relies on h1T(h2) = T(h)1")
    return rep


# -- alpha / beta --------------------------------------------------------------

def alpha_matrix(ctx: SmashContext) -> Matrix:
    """a -> (1 #_ t)(a #_ 1), into corner coordinates."""
    ps, A = ctx.ps, ctx.A
    return Matrix.from_columns(ctx.field, [ps.mul(ctx.one_t, ps.iota(A.basis(i))) for i in range(A.dim)], ps.dim)


def alpha_beta(pa, pair=None) -> Report:
    ctx = as_context(pa, pair)
    ctx.pa.require(symmetric=True)
    rep = Report("alpha/beta")
    fp = fixed_part(ctx)
    A, ps = ctx.A, ctx.ps
    alpha = alpha_matrix(ctx)
    for i in range(A.dim):
        a = A.basis(i)
        img = alpha.apply(a)
        rep.check(img in fp.subspace, "alpha lands in fixed part", i)
        rep.check(ctx.Phi.apply(img) == a, "beta alpha = id", i)
    for k, x in enumerate(fp.subspace.basis):
        rep.check(alpha.apply(ctx.Phi.apply(x)) == x, "alpha beta = id", k)
    for k, x in enumerate(ctx.invariants.basis):
        for i in range(A.dim):
            a = A.basis(i)
            rep.check(alpha.apply(A.mul(x, a)) == ps.mul(ps.iota(x), alpha.apply(a)), "alpha left A^H-linear", k, i)
    rep.check(alpha.rank() == A.dim == fp.dim, "alpha bijective")
    return rep
