"""Finite-dimensional Hopf algebras: axioms, duals, integrals and theta.

Comultiplication is an n^2 x n matrix whose column j holds the coordinates of
Delta(h_j) in H (x) H (index p * n + q for h_p (x) h_q).  The dual H* is always
taken on the dual basis h*_0 .. h*_{n-1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import FinDimAlgebra, check_algebra, tensor_algebra
from .errors import DimensionMismatch, SingularMatrix, StructuralInconsistency
from .linalg import QQ, Field, Matrix, Subspace, inverse, kernel_basis, kron, vscale
from .report import Report


class HopfAlgebra:
    def __init__(self, algebra: FinDimAlgebra, coproduct: Matrix, counit: Sequence, antipode: Matrix,
                 name: str | None = None):
        n = algebra.dim
        f = algebra.field
        if coproduct.shape != (n * n, n):
            raise DimensionMismatch(f"coproduct must be {n * n}x{n}, got {coproduct.shape[0]}x{coproduct.shape[1]}")
        if len(counit) != n:
            raise DimensionMismatch(f"counit must have {n} entries, got {len(counit)}")
        if antipode.shape != (n, n):
            raise DimensionMismatch(f"antipode must be {n}x{n}, got {antipode.shape[0]}x{antipode.shape[1]}")
        self.algebra = algebra
        self.field = f
        self.dim = n
        self.coproduct = coproduct
        self.counit = [f(x) for x in counit]
        self.antipode = antipode
        self.name = name or algebra.name
        self._delta = []
        for j in range(n):
            col = coproduct.col(j)
            self._delta.append([(k // n, k % n, c) for k, c in enumerate(col) if c])

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<HopfAlgebra{label} dim={self.dim} over {self.field!r}>"

    def __eq__(self, other):
        if not isinstance(other, HopfAlgebra):
            return NotImplemented
        return (self.algebra == other.algebra and self.coproduct == other.coproduct
                and self.counit == other.counit and self.antipode == other.antipode)

    __hash__ = None

    @property
    def one(self):
        return self.algebra.one

    def basis(self, i):
        return self.algebra.basis(i)

    def mul(self, x, y):
        return self.algebra.mul(x, y)

    def delta_terms(self, h) -> list:
        """Sparse Sweedler expansion: list of (p, q, coeff) with Delta(h) = sum coeff h_p (x) h_q."""
        acc = {}
        for j, a in enumerate(h):
            if a:
                for p, q, c in self._delta[j]:
                    acc[(p, q)] = acc.get((p, q), self.field.zero) + a * c
        return [(p, q, c) for (p, q), c in sorted(acc.items()) if c]

    def comul(self, h) -> list:
        return self.coproduct.apply(h)

    def eps(self, h):
        s = self.field.zero
        for a, e in zip(h, self.counit):
            if a and e:
                s += a * e
        return s

    def S(self, h) -> list:
        return self.antipode.apply(h)

    @cached_property
    def antipode_inverse(self) -> Matrix:
        try:
            return inverse(self.antipode)
        except SingularMatrix:
            raise StructuralInconsistency("antipode is not bijective") from None

    def S_inv(self, h) -> list:
        return self.antipode_inverse.apply(h)

    @cached_property
    def tensor_square(self) -> FinDimAlgebra:
        return tensor_algebra(self.algebra, self.algebra)


def check_hopf(H: HopfAlgebra) -> Report:
    rep = Report("hopf")
    rep.extend(check_algebra(H.algebra))
    n = H.dim
    f = H.field
    one = H.one
    HH = H.tensor_square
    for j in range(n):
        h = H.basis(j)
        left = [f.zero] * n ** 3
        right = [f.zero] * n ** 3
        for p, q, c in H.delta_terms(h):
            hp, hq = H.basis(p), H.basis(q)
            left = _add(left, vscale(c, kron(H.comul(hp), hq)))
            right = _add(right, vscale(c, kron(hp, H.comul(hq))))
        rep.check(left == right, "coassociativity", j)
        lc = [f.zero] * n
        rc = [f.zero] * n
        for p, q, c in H.delta_terms(h):
            lc = _add(lc, vscale(c * H.eps(H.basis(p)), H.basis(q)))
            rc = _add(rc, vscale(c * H.eps(H.basis(q)), H.basis(p)))
        rep.check(lc == h, "left counit", j)
        rep.check(rc == h, "right counit", j)
        sl = [f.zero] * n
        sr = [f.zero] * n
        for p, q, c in H.delta_terms(h):
            sl = _add(sl, vscale(c, H.mul(H.S(H.basis(p)), H.basis(q))))
            sr = _add(sr, vscale(c, H.mul(H.basis(p), H.S(H.basis(q)))))
        target = vscale(H.eps(h), one)
        rep.check(sl == target, "antipode S*id", j)
        rep.check(sr == target, "antipode id*S", j)
    for i, j in itertools.product(range(n), repeat=2):
        hi, hj = H.basis(i), H.basis(j)
        rep.check(H.comul(H.mul(hi, hj)) == HH.mul(H.comul(hi), H.comul(hj)), "comultiplication multiplicative", i, j)
        rep.check(H.eps(H.mul(hi, hj)) == H.eps(hi) * H.eps(hj), "counit multiplicative", i, j)
    rep.check(H.comul(one) == kron(one, one), "comultiplication unital")
    rep.check(H.eps(one) == f.one, "counit unital")
    try:
        H.antipode_inverse
        rep.check(True, "antipode bijective")
    except StructuralInconsistency:
        rep.check(False, "antipode bijective")
    return rep


def _add(u, v):
    return [a + b for a, b in zip(u, v)]


def dual_hopf(H: HopfAlgebra) -> HopfAlgebra:
    """H* on the dual basis: convolution product, unit counit, coproduct dual to the product."""
    n = H.dim
    f = H.field
    D = H.coproduct
    table = [[[D[i * n + j, k] for k in range(n)] for j in range(n)] for i in range(n)]
    alg = FinDimAlgebra(f, table, H.counit, name=f"({H.name})*" if H.name else None)
    c = H.algebra.table
    cop = Matrix.from_rows(f, [[c[i][j][k] for k in range(n)] for i in range(n) for j in range(n)], n)
    return HopfAlgebra(alg, cop, H.one, H.antipode.T, name=alg.name)


def group_algebra(table: Sequence[Sequence[int]], field: Field = QQ, name: str | None = None) -> HopfAlgebra:
    """kG for the group with multiplication table ``table[g][h] = gh`` (indices 0..|G|-1)."""
    n = len(table)
    validate_group_table(table)
    e = group_identity(table)
    inv = [next(h for h in range(n) if table[g][h] == e) for g in range(n)]
    one, zero = field.one, field.zero
    mult = [[[one if k == table[g][h] else zero for k in range(n)] for h in range(n)] for g in range(n)]
    unit = [one if k == e else zero for k in range(n)]
    alg = FinDimAlgebra(field, mult, unit, name=name)
    cop = Matrix.from_columns(field, [[one if k == g * n + g else zero for k in range(n * n)] for g in range(n)], n * n)
    S = Matrix.from_columns(field, [[one if k == inv[g] else zero for k in range(n)] for g in range(n)], n)
    return HopfAlgebra(alg, cop, [one] * n, S, name=name)


def group_identity(table) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][g] == g and table[g][e] == g for g in range(n)):
            return e
    raise ValueError("group table has no identity")


def validate_group_table(table):
    n = len(table)
    if n == 0:
        raise ValueError("empty group table")
    for g, row in enumerate(table):
        if len(row) != n:
            raise ValueError(f"group table row {g} has {len(row)} entries, expected {n}")
        if sorted(row) != list(range(n)):
            raise ValueError(f"group table row {g} is not a permutation of 0..{n - 1}")
    for g in range(n):
        if sorted(table[h][g] for h in range(n)) != list(range(n)):
            raise ValueError(f"group table column {g} is not a permutation")
    e = group_identity(table)
    for a, b, c in itertools.product(range(n), repeat=3):
        if table[table[a][b]][c] != table[a][table[b][c]]:
            raise ValueError(f"group table is not associative at ({a}, {b}, {c})")
    return e


def cyclic_table(n: int) -> list:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def symmetric_table(m: int = 3) -> list:
    """Multiplication table of S_m on permutations in lexicographic order; (st)(i) = s(t(i))."""
    perms = list(itertools.permutations(range(m)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[tuple(s[t[i]] for i in range(m))] for t in perms] for s in perms]


def sweedler_hopf(field: Field = QQ) -> HopfAlgebra:
    """Sweedler's 4-dimensional algebra on the basis 1, g, x, gx.

    g^2 = 1, x^2 = 0, xg = -gx, Delta(g) = g (x) g, Delta(x) = x (x) 1 + g (x) x.
    Not unimodular, so left and right integrals differ.
    """
    one, zero = field.one, field.zero
    idx = {(a, b): 2 * b + a for a in (0, 1) for b in (0, 1)}  # g^a x^b

    def prod(u, v):
        (a, b), (c, d) = u, v
        out = [zero] * 4
        if b + d < 2:
            out[idx[((a + c) % 2, b + d)]] = -one if (b * c) % 2 else one
        return out

    keys = sorted(idx, key=idx.get)
    table = [[prod(u, v) for v in keys] for u in keys]
    alg = FinDimAlgebra(field, table, [one, zero, zero, zero], name="H4")
    HH = tensor_algebra(alg, alg)
    g = alg.basis(1)
    x = alg.basis(2)
    dg = kron(g, g)
    dx = _add(kron(x, alg.one), kron(g, x))
    d1 = kron(alg.one, alg.one)
    cols = [d1, dg, dx, HH.mul(dg, dx)]
    cop = Matrix.from_columns(field, cols, 16)
    counit = [one, one, zero, zero]
    S = Matrix.from_columns(field, [alg.one, g, vscale(-one, alg.basis(3)), x], 4)
    return HopfAlgebra(alg, cop, counit, S, name="H4")


# -- integrals -------------------------------------------------------------

def _integral_conditions(H: HopfAlgebra, side: str) -> Matrix:
    n = H.dim
    f = H.field
    blocks = []
    for i in range(n):
        h = H.basis(i)
        mult = H.algebra.lmul(h) if side == "left" else H.algebra.rmul(h)
        blocks.append(mult - H.eps(h) * Matrix.identity(f, n))
    return Matrix.vstack(blocks)


def integral_space(H: HopfAlgebra, side: str = "left") -> Subspace:
    """Left integrals {t : h t = eps(h) t} or right integrals {t : t h = eps(h) t}."""
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    space = kernel_basis(_integral_conditions(H, side))
    if space.dim != 1:
        raise StructuralInconsistency(f"space of {side} integrals has dimension {space.dim}, expected 1")
    return space


def is_integral(H: HopfAlgebra, t, side: str) -> bool:
    return not any(_integral_conditions(H, side).apply(t))


@dataclass
class IntegralPair:
    """t a left integral of H, T a right integral of H* with T(t) = 1."""

    t: list
    T: list
    t_is_right: bool
    T_is_left: bool

    def T_of(self, h):
        s = self.T[0] - self.T[0]
        for a, b in zip(self.T, h):
            if a and b:
                s += a * b
        return s


def normalized_pair(H: HopfAlgebra, t=None) -> IntegralPair:
    """Integrals t in H (left) and T in H* (right) rescaled so that T(t) = 1.

    If ``t`` is given it is kept and only T is rescaled.
    """
    f = H.field
    left = integral_space(H, "left")
    if t is None:
        t = left.basis[0]
    else:
        t = [f(x) for x in t]
        if not any(t) or t not in left:
            raise ValueError("given t is not a nonzero left integral")
    Hd = dual_hopf(H)
    T = integral_space(Hd, "right").basis[0]
    c = f.zero
    for a, b in zip(T, t):
        if a and b:
            c += a * b
    if not c:
        raise StructuralInconsistency("T(t) = 0 for nonzero integrals t, T")
    T = vscale(f.one / c, T)
    return IntegralPair(
        t=list(t), T=T,
        t_is_right=is_integral(H, t, "right"),
        T_is_left=is_integral(Hd, T, "left"),
    )


def check_integral_identities(H: HopfAlgebra, pair: IntegralPair) -> Report:
    """Sweep the integral identities over every basis element h.

    The identity h_1 T(h_2) = T(h) 1 is only required when T is also a left
    integral of H*; otherwise its outcome is recorded as a note.
    """
    rep = Report("integral identities")
    f = H.field
    n = H.dim
    one = H.one
    T = pair.T_of
    tt = H.delta_terms(pair.t)
    rep.check(T(pair.t) == f.one, "T(t) = 1")
    left_fails = []
    for k in range(n):
        h = H.basis(k)
        Th1 = vscale(T(h), one)
        a = [f.zero] * n
        b = [f.zero] * n
        for p, q, c in H.delta_terms(h):
            a = _add(a, vscale(c * T(H.basis(p)), H.basis(q)))
            b = _add(b, vscale(c * T(H.basis(q)), H.basis(p)))
        rep.check(a == Th1, "T(h1)h2 = T(h)1", k)
        if pair.T_is_left:
            rep.check(b == Th1, "h1T(h2) = T(h)1", k)
        elif b != Th1:
            left_fails.append(k)
        Sh = H.S(h)
        r = [f.zero] * n
        lhs4 = [f.zero] * n * n
        rhs4 = [f.zero] * n * n
        lhs5 = [f.zero] * n * n
        rhs5 = [f.zero] * n * n
        for p, q, c in tt:
            tp, tq = H.basis(p), H.basis(q)
            r = _add(r, vscale(c * T(H.mul(Sh, tp)), tq))
            lhs4 = _add(lhs4, vscale(c, kron(tp, H.mul(h, tq))))
            rhs4 = _add(rhs4, vscale(c, kron(H.mul(Sh, tp), tq)))
            sp = H.S_inv(tp)
            lhs5 = _add(lhs5, vscale(c, kron(sp, H.mul(h, tq))))
            rhs5 = _add(rhs5, vscale(c, kron(H.mul(sp, h), tq)))
        rep.check(r == h, "T(S(h)t1)t2 = h", k)
        rep.check(lhs4 == rhs4, "t1 (x) h t2 = S(h)t1 (x) t2", k)
        rep.check(lhs5 == rhs5, "S^-1(t1) (x) h t2 = S^-1(t1)h (x) t2", k)
    if not pair.T_is_left:
        if left_fails:
            rep.note(f"T is not a left integral of H*; h1T(h2) = T(h)1 fails on basis {left_fails}")
        else:
            rep.note("T is not a left integral of H*, yet h1T(h2) = T(h)1 holds on every basis element")
    return rep


def theta(H: HopfAlgebra, pair: IntegralPair) -> Matrix:
    """Matrix of H* -> H, f -> f(t1) t2, on the dual basis."""
    n = H.dim
    f = H.field
    cols = [[f.zero] * n for _ in range(n)]
    for p, q, c in H.delta_terms(pair.t):
        cols[p][q] += c
    m = Matrix.from_columns(f, cols, n)
    if m.rank() != n:
        raise StructuralInconsistency("theta: H* -> H is not bijective")
    return m


def check_frobenius_example(H: HopfAlgebra, pair: IntegralPair) -> Report:
    """H/k is Frobenius with Phi = T and e = t2 (x) S^-1(t1)."""
    rep = Report("H/k Frobenius")
    n = H.dim
    f = H.field
    HH = H.tensor_square
    e = [f.zero] * n * n
    terms = []
    for p, q, c in H.delta_terms(pair.t):
        x, y = H.basis(q), H.S_inv(H.basis(p))
        terms.append((c, x, y))
        e = _add(e, vscale(c, kron(x, y)))
    for k in range(n):
        h = H.basis(k)
        rep.check(HH.mul(e, kron(H.one, h)) == HH.mul(kron(h, H.one), e), "e h = h e", k)
    left = [f.zero] * n
    right = [f.zero] * n
    for c, x, y in terms:
        left = _add(left, vscale(c * pair.T_of(x), y))
        right = _add(right, vscale(c * pair.T_of(y), x))
    rep.check(left == H.one, "Phi(x_i) y_i = 1")
    rep.check(right == H.one, "x_i Phi(y_i) = 1")
    return rep
