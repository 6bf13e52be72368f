"""Partial actions H (x) A -> A, induced partial coactions, and group builders.

The action is stored as an n_A x (n_H * n_A) matrix; column ``j * n_A + i``
holds h_j . a_i.  Axioms are multilinear, so every quantifier is discharged
on basis elements.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import FinDimAlgebra, tensor_algebra
from .errors import DimensionMismatch, FieldMismatch, PreconditionError, StructuralInconsistency, TheoremViolation
from .hopf import HopfAlgebra, dual_hopf, group_algebra, group_identity, validate_group_table
from .linalg import QQ, Field, Matrix, Subspace, kernel_basis, kron, unit_vector, vscale
from .report import Report


class PartialAction:
    def __init__(self, H: HopfAlgebra, A: FinDimAlgebra, matrix: Matrix, name: str | None = None):
        if H.field != A.field or matrix.field != A.field:
            raise FieldMismatch("Hopf algebra, algebra and action matrix must share one field")
        if matrix.shape != (A.dim, H.dim * A.dim):
            raise DimensionMismatch(
                f"action matrix must be {A.dim}x{H.dim * A.dim}, got {matrix.shape[0]}x{matrix.shape[1]}")
        self.H = H
        self.A = A
        self.field = A.field
        self.matrix = matrix
        self.name = name
        nA = A.dim
        self.basis_actions = [
            Matrix.from_columns(A.field, [matrix.col(j * nA + i) for i in range(nA)], nA) for j in range(H.dim)
        ]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<PartialAction{label} H dim={self.H.dim} on A dim={self.A.dim}>"

    @classmethod
    def from_basis_actions(cls, H, A, mats: Sequence[Matrix], name=None):
        """Build from the matrices of a -> h_j . a."""
        cols = []
        for m in mats:
            cols.extend(m.columns())
        return cls(H, A, Matrix.from_columns(A.field, cols, A.dim), name=name)

    def action_matrix(self, h) -> Matrix:
        """Matrix of a -> h . a for an arbitrary h in H."""
        out = Matrix.zeros(self.field, self.A.dim, self.A.dim)
        for c, m in zip(h, self.basis_actions):
            if c:
                out = out + c * m
        return out

    def act(self, h, a) -> list:
        return self.action_matrix(h).apply(a)

    @cached_property
    def one_images(self) -> list:
        """h_j . 1_A for each basis h_j."""
        return [m.apply(self.A.one) for m in self.basis_actions]

    def h_dot_one(self, h) -> list:
        return self.act(h, self.A.one)

    @cached_property
    def pa_report(self) -> Report:
        return check_pa(self)

    @cached_property
    def symmetric_report(self) -> Report:
        return check_symmetric(self)

    @property
    def is_partial_action(self) -> bool:
        return self.pa_report.ok

    @property
    def is_symmetric(self) -> bool:
        return self.pa_report.ok and self.symmetric_report.ok

    def is_global(self) -> bool:
        """h . 1_A = eps(h) 1_A for every basis h."""
        return all(img == vscale(self.H.eps(self.H.basis(j)), self.A.one) for j, img in enumerate(self.one_images))

    def require(self, symmetric: bool = False):
        broken = []
        if not self.is_partial_action:
            broken.append("not a partial action (PA1-PA3 fail)")
        if symmetric and not self.symmetric_report.ok:
            broken.append("not symmetric (PA4 fails)")
        if broken:
            rep = Report("preconditions")
            rep.extend(self.pa_report)
            if symmetric:
                rep.extend(self.symmetric_report)
            raise PreconditionError("; ".join(broken), rep)


class _ActionCache:
    def __init__(self, pa: PartialAction):
        self.pa = pa
        self._m = {}

    def __call__(self, h) -> Matrix:
        key = tuple(h)
        m = self._m.get(key)
        if m is None:
            m = self._m[key] = self.pa.action_matrix(h)
        return m


def check_pa(pa: PartialAction) -> Report:
    rep = Report("partial action")
    H, A = pa.H, pa.A
    nH, nA = H.dim, A.dim
    acts = pa.basis_actions
    act = _ActionCache(pa)
    ones = pa.one_images
    zero = A.zero()
    for l in range(nH):
        terms = H.delta_terms(H.basis(l))
        for i, j in itertools.product(range(nA), repeat=2):
            lhs = acts[l].apply(A.mul(A.basis(i), A.basis(j)))
            rhs = zero
            for p, q, c in terms:
                rhs = _add(rhs, vscale(c, A.mul(acts[p].col(i), acts[q].col(j))))
            rep.check(lhs == rhs, "PA1", l, i, j)
    one_act = act(H.one)
    for i in range(nA):
        rep.check(one_act.col(i) == A.basis(i), "PA2", i)
    for l in range(nH):
        terms = H.delta_terms(H.basis(l))
        for k in range(nH):
            hk = [(p, c, act(H.mul(H.basis(q), H.basis(k)))) for p, q, c in terms]
            for i in range(nA):
                lhs = acts[l].apply(acts[k].col(i))
                rhs = zero
                for p, c, m in hk:
                    rhs = _add(rhs, vscale(c, A.mul(ones[p], m.col(i))))
                rep.check(lhs == rhs, "PA3", l, k, i)
    return rep


def check_symmetric(pa: PartialAction) -> Report:
    rep = Report("symmetric partial action")
    H, A = pa.H, pa.A
    acts = pa.basis_actions
    act = _ActionCache(pa)
    ones = pa.one_images
    for l in range(H.dim):
        terms = H.delta_terms(H.basis(l))
        for k in range(H.dim):
            hk = [(q, c, act(H.mul(H.basis(p), H.basis(k)))) for p, q, c in terms]
            for i in range(A.dim):
                lhs = acts[l].apply(acts[k].col(i))
                rhs = A.zero()
                for q, c, m in hk:
                    rhs = _add(rhs, vscale(c, A.mul(m.col(i), ones[q])))
                rep.check(lhs == rhs, "PA4", l, k, i)
    return rep


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def _invariant_space(pa: PartialAction, side: str) -> Subspace:
    A = pa.A
    blocks = []
    for m, one in zip(pa.basis_actions, pa.one_images):
        mult = A.rmul(one) if side == "left" else A.lmul(one)
        blocks.append(m - mult)
    return kernel_basis(Matrix.vstack(blocks))


def invariants(pa: PartialAction, side: str = "left") -> Subspace:
    """Left invariants {a : h.a = a(h.1)} or right invariants {a : h.a = (h.1)a}."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    pa.require()
    space = _invariant_space(pa, side)
    if not pa.A.is_subalgebra(space):
        raise TheoremViolation(f"{side} invariants are not a subalgebra")
    if pa.symmetric_report.ok:
        other = _invariant_space(pa, "right" if side == "left" else "left")
        if other != space:
            raise TheoremViolation("symmetric action with bijective antipode but left and right invariants differ")
    return space


class PartialCoaction:
    """rho: A -> A (x) K, stored as an (n_A n_K) x n_A matrix."""

    def __init__(self, A: FinDimAlgebra, K: HopfAlgebra, rho: Matrix):
        if rho.shape != (A.dim * K.dim, A.dim):
            raise DimensionMismatch(f"coaction must be {A.dim * K.dim}x{A.dim}")
        self.A = A
        self.K = K
        self.rho = rho
        self.field = A.field

    @cached_property
    def AK(self) -> FinDimAlgebra:
        return tensor_algebra(self.A, self.K.algebra)

    @cached_property
    def AKK(self) -> FinDimAlgebra:
        return tensor_algebra(self.AK, self.K.algebra)

    def __call__(self, a) -> list:
        return self.rho.apply(a)

    @cached_property
    def rho_one(self) -> list:
        return self.rho.apply(self.A.one)

    def rho_tensor_id(self, v) -> list:
        """(rho (x) id) on A (x) K."""
        nK = self.K.dim
        out = [self.field.zero] * (self.A.dim * nK * nK)
        for idx, c in enumerate(v):
            if c:
                i, p = divmod(idx, nK)
                out = _add(out, vscale(c, kron(self.rho.col(i), self.K.basis(p))))
        return out

    def id_tensor_delta(self, v) -> list:
        nK = self.K.dim
        out = [self.field.zero] * (self.A.dim * nK * nK)
        for idx, c in enumerate(v):
            if c:
                i, p = divmod(idx, nK)
                out = _add(out, vscale(c, kron(self.A.basis(i), self.K.comul(self.K.basis(p)))))
        return out

    def id_tensor_eps(self, v) -> list:
        nK = self.K.dim
        out = [self.field.zero] * self.A.dim
        for idx, c in enumerate(v):
            if c:
                i, p = divmod(idx, nK)
                out[i] += c * self.K.counit[p]
        return out


def check_pca(pc: PartialCoaction) -> Report:
    """PCA1 multiplicativity, PCA2 partial coassociativity, PCA3 counit, PCA4 symmetric variant."""
    rep = Report("partial coaction")
    A, K = pc.A, pc.K
    AK, AKK = pc.AK, pc.AKK
    one_K = K.one
    r1 = kron(pc.rho_one, one_K)
    for i, j in itertools.product(range(A.dim), repeat=2):
        lhs = pc(A.mul(A.basis(i), A.basis(j)))
        rep.check(lhs == AK.mul(pc(A.basis(i)), pc(A.basis(j))), "PCA1", i, j)
    for i in range(A.dim):
        a = A.basis(i)
        ra = pc(a)
        lhs = pc.rho_tensor_id(ra)
        d = pc.id_tensor_delta(ra)
        rep.check(lhs == AKK.mul(d, r1), "PCA2", i)
        rep.check(pc.id_tensor_eps(ra) == a, "PCA3", i)
        rep.check(lhs == AKK.mul(r1, d), "PCA4", i)
    return rep


def is_partial_coaction(rep: Report) -> bool:
    return not any(f["axiom"] in ("PCA1", "PCA2", "PCA3") for f in rep.failures)


def induced_coaction(pa: PartialAction) -> PartialCoaction:
    """a -> sum_j (h_j . a) (x) h*_j, with values in A (x) H*."""
    pa.require()
    H, A = pa.H, pa.A
    nH, nA = H.dim, A.dim
    K = dual_hopf(H)
    cols = []
    for a in range(nA):
        v = [pa.field.zero] * (nA * nH)
        for j, m in enumerate(pa.basis_actions):
            for i, x in enumerate(m.col(a)):
                if x:
                    v[i * nH + j] = x
        cols.append(v)
    pc = PartialCoaction(A, K, Matrix.from_columns(pa.field, cols, nA * nH))
    # compatibility h . a = a^0 a^1(h)
    for l in range(nH):
        for a in range(nA):
            r = pc.rho.col(a)
            evaluated = [r[i * nH + l] for i in range(nA)]
            if evaluated != pa.basis_actions[l].col(a):
                raise StructuralInconsistency(f"h.a = a^0 a^1(h) fails at h_{l}, a_{a}")
    rep = check_pca(pc)
    if not is_partial_coaction(rep):
        raise TheoremViolation(f"induced coaction fails PCA1-PCA3: {rep.failures[:3]}")
    if pa.symmetric_report.ok and rep.failing("PCA4"):
        raise TheoremViolation("induced coaction of a symmetric action fails PCA4")
    return pc


def coinvariants(pc: PartialCoaction, side: str = "left") -> Subspace:
    """Left {a : rho(a) = a rho(1)} or right {a : rho(a) = rho(1) a} coinvariants."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    A, K, AK = pc.A, pc.K, pc.AK
    r1 = pc.rho_one
    cols = []
    for i in range(A.dim):
        ai = kron(A.basis(i), K.one)
        shifted = AK.mul(ai, r1) if side == "left" else AK.mul(r1, ai)
        cols.append([x - y for x, y in zip(pc(A.basis(i)), shifted)])
    return kernel_basis(Matrix.from_columns(pc.field, cols, A.dim * K.dim))


# -- partial group actions ---------------------------------------------------

@dataclass
class GroupPartialActionData:
    """Partial action of a finite group on A by ideals A 1_g with isomorphisms.

    ``isomorphisms[g]`` is a matrix on A whose restriction to A 1_{g^-1} is the
    algebra isomorphism alpha_g onto A 1_g.
    """

    table: list
    algebra: FinDimAlgebra
    idempotents: list
    isomorphisms: list
    meta: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.table)

    def inverse(self, g) -> int:
        e = group_identity(self.table)
        return next(h for h in range(self.order) if self.table[g][h] == e)

    def ideal(self, idem) -> Subspace:
        return Subspace(self.algebra.field, self.algebra.dim, self.algebra.rmul(idem).columns())


def validate_group_data(data: GroupPartialActionData) -> Report:
    rep = Report("group partial action data")
    A = data.algebra
    f = A.field
    try:
        e = validate_group_table(data.table)
    except ValueError as exc:
        rep.check(False, "group table", detail=str(exc))
        return rep
    n = data.order
    if len(data.idempotents) != n or len(data.isomorphisms) != n:
        rep.check(False, "data shape", detail="need one idempotent and one isomorphism per group element")
        return rep
    one = [f(x) for x in data.idempotents[e]]
    rep.check(one == A.one, "1_e = 1_A")
    idem = [[f(x) for x in v] for v in data.idempotents]
    for g in range(n):
        u = idem[g]
        rep.check(A.mul(u, u) == u, "idempotent", g)
        rep.check(all(A.mul(u, A.basis(i)) == A.mul(A.basis(i), u) for i in range(A.dim)), "central", g)
    rep.check(all(data.isomorphisms[e].apply(A.basis(i)) == A.basis(i) for i in range(A.dim)), "alpha_e = id")
    inv = [data.inverse(g) for g in range(n)]
    for g in range(n):
        al = data.isomorphisms[g]
        dom = data.ideal(idem[inv[g]])
        cod = data.ideal(idem[g])
        imgs = [al.apply(v) for v in dom.basis]
        rep.check(all(v in cod for v in imgs) and Subspace(f, A.dim, imgs) == cod, "alpha_g bijective onto A1_g", g)
        rep.check(al.apply(idem[inv[g]]) == idem[g], "alpha_g unital", g)
        rep.check(all(al.apply(A.mul(x, y)) == A.mul(al.apply(x), al.apply(y)) for x in dom.basis for y in dom.basis),
                  "alpha_g multiplicative", g)
    for g, h in itertools.product(range(n), repeat=2):
        gh = data.table[g][h]
        al_g = data.isomorphisms[g]
        # alpha_g(D_{g^-1} cap D_h) = D_g cap D_gh
        rep.check(al_g.apply(A.mul(idem[inv[g]], idem[h])) == A.mul(idem[g], idem[gh]), "alpha_g(D_g^-1 D_h) = D_g D_gh", g, h)
        # alpha_g alpha_h = alpha_gh on D_h^-1 cap D_(gh)^-1
        dom = data.ideal(A.mul(idem[inv[h]], idem[inv[gh]]))
        rep.check(all(al_g.apply(data.isomorphisms[h].apply(x)) == data.isomorphisms[gh].apply(x) for x in dom.basis),
                  "alpha_g alpha_h = alpha_gh", g, h)
    return rep


def from_group_partial_action(data: GroupPartialActionData, name=None) -> PartialAction:
    """The induced partial action of kG: g . a = alpha_g(a 1_{g^-1})."""
    rep = validate_group_data(data)
    if not rep.ok:
        raise PreconditionError(f"invalid partial group action data: {rep.failures[0]}", rep)
    A = data.algebra
    f = A.field
    H = group_algebra(data.table, f)
    mats = []
    for g in range(data.order):
        cut = A.rmul([f(x) for x in data.idempotents[data.inverse(g)]])
        mats.append(data.isomorphisms[g] @ cut)
    return PartialAction.from_basis_actions(H, A, mats, name=name)


def product_of_fields(m: int, field: Field = QQ, name=None) -> FinDimAlgebra:
    """k x ... x k (m copies) with orthogonal idempotent basis."""
    one, zero = field.one, field.zero
    table = [[[one if (i == j == k) else zero for k in range(m)] for j in range(m)] for i in range(m)]
    return FinDimAlgebra(field, table, [one] * m, name=name)


def restricted_cyclic_action(n: int, orbits: Sequence[int], subset: Sequence[int], field: Field = QQ,
                             name=None) -> GroupPartialActionData:
    """Restriction of a global C_n-set to a subset of its points.

    ``orbits`` lists orbit sizes d (each dividing n; C_n acts on Z/d by
    translation); points are numbered orbit by orbit.  Restricting to
    ``subset`` gives a globalizable partial action on k^subset.
    """
    points = []
    for o, d in enumerate(orbits):
        if n % d:
            raise ValueError(f"orbit size {d} does not divide {n}")
        points.extend((o, r) for r in range(d))
    subset = sorted(set(subset))
    if not subset or any(not 0 <= s < len(points) for s in subset):
        raise ValueError("subset must be a nonempty set of point indices")
    Y = [points[s] for s in subset]
    pos = {y: i for i, y in enumerate(Y)}
    m = len(Y)
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    one, zero = field.one, field.zero

    def move(g, y):
        o, r = y
        return (o, (r + g) % orbits[o])

    idems, isos = [], []
    for g in range(n):
        ginv = (-g) % n
        # D_g = Y cap gY = {y : g^-1 y in Y}
        idems.append([one if move(ginv, y) in pos else zero for y in Y])
        cols = []
        for y in Y:
            col = [zero] * m
            z = move(g, y)
            if z in pos:
                col[pos[z]] = one
            cols.append(col)
        isos.append(Matrix.from_columns(field, cols, m))
    A = product_of_fields(m, field)
    meta = {"group": f"C{n}", "orbits": list(orbits), "subset": list(subset)}
    return GroupPartialActionData(table, A, idems, isos, meta=meta)


def random_cyclic_parameters(n: int, rng: random.Random, max_points: int = 4):
    """Orbit sizes and a subset of at most max_points points, for restricted_cyclic_action."""
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    orbits = [rng.choice(divisors) for _ in range(rng.randint(1, 3))]
    total = sum(orbits)
    size = rng.randint(1, min(max_points, total))
    return orbits, sorted(rng.sample(range(total), size))


def random_cyclic_instance(n: int, rng: random.Random, max_points: int = 4, field: Field = QQ):
    """Random globalizable partial C_n action on a product of at most max_points copies of k."""
    orbits, subset = random_cyclic_parameters(n, rng, max_points)
    return restricted_cyclic_action(n, orbits, subset, field)
