"""Finite-dimensional unital associative algebras given by structure constants.

Basis elements are e_0 .. e_{n-1}; ``table[i][j]`` holds the coordinates of
e_i e_j.  Elements are coordinate lists.  A tensor product V (x) W is indexed
with the left factor major: e_i (x) f_j sits at position ``i * dim W + j``.
"""

from __future__ import annotations

from typing import Sequence

from .errors import DimensionMismatch, FieldMismatch, PreconditionError
from .linalg import (
    Field,
    Matrix,
    Subspace,
    kron,
    kernel_basis,
    unit_vector,
    vsub,
)
from .report import Report


class FinDimAlgebra:
    def __init__(self, field: Field, table: Sequence, unit: Sequence, name: str | None = None):
        n = len(table)
        if len(unit) != n:
            raise DimensionMismatch(f"unit has {len(unit)} coordinates, algebra has dimension {n}")
        rows = []
        for i, row in enumerate(table):
            if len(row) != n:
                raise DimensionMismatch(f"structure constants: slab {i} has {len(row)} rows, expected {n}")
            r = []
            for j, prod in enumerate(row):
                if len(prod) != n:
                    raise DimensionMismatch(f"structure constants: e_{i} e_{j} has {len(prod)} coordinates, expected {n}")
                r.append([field(x) for x in prod])
            rows.append(r)
        self.field = field
        self.dim = n
        self.table = rows
        self.unit = [field(x) for x in unit]
        self.name = name
        self._sparse = [[[(k, c) for k, c in enumerate(p) if c] for p in r] for r in rows]

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FinDimAlgebra{label} dim={self.dim} over {self.field!r}>"

    def __eq__(self, other):
        if not isinstance(other, FinDimAlgebra):
            return NotImplemented
        return (self.field == other.field and self.dim == other.dim
                and self.table == other.table and self.unit == other.unit)

    __hash__ = None

    @property
    def one(self) -> list:
        return list(self.unit)

    def zero(self) -> list:
        return [self.field.zero] * self.dim

    def basis(self, i: int) -> list:
        return unit_vector(self.field, self.dim, i)

    def structure_constants(self) -> list:
        return [[list(p) for p in r] for r in self.table]

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = [self.field.zero] * self.dim
        sp = self._sparse
        ynz = [(j, b) for j, b in enumerate(y) if b]
        for i, a in enumerate(x):
            if not a:
                continue
            row = sp[i]
            for j, b in ynz:
                ab = a * b
                for k, c in row[j]:
                    out[k] += ab * c
        return out

    def product(self, *xs) -> list:
        out = list(xs[0])
        for x in xs[1:]:
            out = self.mul(out, x)
        return out

    def lmul(self, x) -> Matrix:
        """Matrix of y -> x y."""
        return Matrix.from_columns(self.field, [self.mul(x, self.basis(j)) for j in range(self.dim)], self.dim)

    def rmul(self, x) -> Matrix:
        """Matrix of y -> y x."""
        return Matrix.from_columns(self.field, [self.mul(self.basis(j), x) for j in range(self.dim)], self.dim)

    def element(self, coords) -> "AlgebraElement":
        return AlgebraElement(self, [self.field(c) for c in coords])

    def is_subalgebra(self, sub: Subspace) -> bool:
        if self.one not in sub:
            return False
        b = sub.basis
        return all(self.mul(x, y) in sub for x in b for y in b)

    def restrict(self, sub: Subspace, name=None) -> "FinDimAlgebra":
        """The subalgebra carried by ``sub``, in the coordinates of its RREF basis."""
        b = sub.basis
        table = [[sub.coordinates(self.mul(x, y)) for y in b] for x in b]
        return FinDimAlgebra(self.field, table, sub.coordinates(self.one), name=name)


class AlgebraElement:
    __slots__ = ("parent", "coords")

    def __init__(self, parent: FinDimAlgebra, coords: list):
        if len(coords) != parent.dim:
            raise DimensionMismatch(f"{len(coords)} coordinates for an algebra of dimension {parent.dim}")
        self.parent = parent
        self.coords = coords

    def _same(self, other):
        if other.parent is not self.parent and other.parent != self.parent:
            raise FieldMismatch("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.parent, vsub(self.coords, other.coords))

    def __neg__(self):
        return AlgebraElement(self.parent, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.parent, self.parent.mul(self.coords, other.coords))
        c = self.parent.field(other)
        return AlgebraElement(self.parent, [c * a for a in self.coords])

    def __rmul__(self, c):
        c = self.parent.field(c)
        return AlgebraElement(self.parent, [c * a for a in self.coords])

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.coords == other.coords and self.parent == other.parent
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"AlgebraElement({[str(c) for c in self.coords]})"


def check_algebra(alg: FinDimAlgebra) -> Report:
    rep = Report("algebra")
    n = alg.dim
    sp = alg._sparse
    zero = alg.field.zero
    for i in range(n):
        for j in range(n):
            for k in range(n):
                left = [zero] * n
                for l, c in sp[i][j]:
                    for m, d in sp[l][k]:
                        left[m] += c * d
                right = [zero] * n
                for l, c in sp[j][k]:
                    for m, d in sp[i][l]:
                        right[m] += c * d
                rep.check(left == right, "associativity", i, j, k)
    u = alg.unit
    for i in range(n):
        e = alg.basis(i)
        rep.check(alg.mul(u, e) == e, "left unit", i)
        rep.check(alg.mul(e, u) == e, "right unit", i)
    return rep


def tensor_algebra(A: FinDimAlgebra, B: FinDimAlgebra, name=None) -> FinDimAlgebra:
    if A.field != B.field:
        raise FieldMismatch(f"{A.field!r} vs {B.field!r}")
    table = []
    for i in range(A.dim):
        for j in range(B.dim):
            table.append([kron(A.table[i][k], B.table[j][l]) for k in range(A.dim) for l in range(B.dim)])
    return FinDimAlgebra(A.field, table, kron(A.unit, B.unit), name=name)


def opposite(alg: FinDimAlgebra) -> FinDimAlgebra:
    n = alg.dim
    table = [[alg.table[j][i] for j in range(n)] for i in range(n)]
    name = f"{alg.name}^op" if alg.name else None
    return FinDimAlgebra(alg.field, table, alg.unit, name=name)


class CornerAlgebra:
    """The subalgebra parent * p for an idempotent left identity p.

    ``algebra`` works in the coordinates of the RREF basis of parent * p;
    ``inclusion`` maps those coordinates into the parent, ``projection`` sends
    x to the coordinates of x p.
    """

    def __init__(self, parent: FinDimAlgebra, p: Sequence):
        self.parent = parent
        self.p = list(p)
        rp = parent.rmul(self.p)
        self.subspace = Subspace(parent.field, parent.dim, rp.columns())
        sub = self.subspace
        self.algebra = parent.restrict(sub)
        self.inclusion = sub.embedding()
        self.projection = Matrix.from_columns(
            parent.field, [sub.coordinates(c) for c in rp.columns()], sub.dim)

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def to_parent(self, coords) -> list:
        return self.subspace.from_coordinates(coords)

    def from_parent(self, v) -> list:
        """Coordinates of v, which must already lie in parent * p."""
        return self.subspace.coordinates(v)

    def project(self, v) -> list:
        """Coordinates of v p."""
        return self.projection.apply(v)


def corner(alg: FinDimAlgebra, p) -> CornerAlgebra:
    if isinstance(p, AlgebraElement):
        p = p.coords
    p = [alg.field(x) for x in p]
    if alg.mul(p, p) != p:
        raise PreconditionError("corner: p is not idempotent")
    for i in range(alg.dim):
        e = alg.basis(i)
        if alg.mul(p, e) != e:
            raise PreconditionError(f"corner: p is not a left identity (fails on e_{i})")
    return CornerAlgebra(alg, p)


class HomSpace:
    """All linear maps source -> target commuting with a family of actions."""

    def __init__(self, field, source_dim, target_dim, maps: list):
        self.field = field
        self.source_dim = source_dim
        self.target_dim = target_dim
        self.basis = maps
        self.subspace = Subspace(field, source_dim * target_dim, [flatten(f) for f in maps])

    @property
    def dim(self):
        return len(self.basis)

    def __contains__(self, f: Matrix) -> bool:
        return flatten(f) in self.subspace

    def __repr__(self):
        return f"HomSpace({self.source_dim} -> {self.target_dim}, dim={self.dim})"


def flatten(f: Matrix) -> list:
    return [x for r in f.rows() for x in r]


def unflatten(field, v, nrows, ncols) -> Matrix:
    return Matrix.from_rows(field, [v[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)


def hom_over_subalgebra(field, source_dim: int, target_dim: int,
                        actions: Sequence[tuple[Matrix, Matrix]]) -> HomSpace:
    """Basis of {f : f o src_x = tgt_x o f for every (src_x, tgt_x) in actions}.

    For right R-modules pass, for each basis element x of R, the matrices of
    m -> m x on source and target.  Unknowns are the entries of f, row-major.
    """
    m, n = source_dim, target_dim
    rows = []
    for src, tgt in actions:
        if src.shape != (m, m) or tgt.shape != (n, n):
            raise DimensionMismatch("action matrices do not match the module dimensions")
        for i in range(n):
            for j in range(m):
                row = [field.zero] * (n * m)
                # (f src)[i][j] = sum_k f[i][k] src[k][j]
                for k in range(m):
                    c = src[k, j]
                    if c:
                        row[i * m + k] += c
                # (tgt f)[i][j] = sum_k tgt[i][k] f[k][j]
                for k in range(n):
                    c = tgt[i, k]
                    if c:
                        row[k * m + j] -= c
                if any(row):
                    rows.append(row)
    if rows:
        ker = kernel_basis(Matrix.from_rows(field, rows, n * m))
    else:
        ker = Subspace.full(field, n * m)
    return HomSpace(field, m, n, [unflatten(field, v, n, m) for v in ker.basis])


class RelativeTensor:
    """M (x)_R N as the quotient of M (x) N by span{m x (x) n - m (x) x n}.

    Representatives are taken in the span of the coordinate vectors at the
    non-pivot columns of the relation RREF, so ``project`` and ``section``
    are deterministic.
    """

    def __init__(self, field, left_dim, right_dim, relations: Subspace):
        self.field = field
        self.left_dim = left_dim
        self.right_dim = right_dim
        self.relations = relations
        piv = set(relations.pivots)
        self.free = [c for c in range(left_dim * right_dim) if c not in piv]

    @property
    def dim(self) -> int:
        return len(self.free)

    @property
    def ambient(self) -> int:
        return self.left_dim * self.right_dim

    def project(self, v) -> list:
        r = self.relations.reduce(v)
        return [r[c] for c in self.free]

    def section(self, q) -> list:
        out = [self.field.zero] * self.ambient
        for c, x in zip(self.free, q):
            out[c] = x
        return out

    def equal(self, v, w) -> bool:
        return vsub(v, w) in self.relations

    def is_zero(self, v) -> bool:
        return v in self.relations

    def projection_matrix(self) -> Matrix:
        n = self.ambient
        return Matrix.from_columns(self.field, [self.project(unit_vector(self.field, n, k)) for k in range(n)], self.dim)

    def induced_map(self, f: Matrix) -> Matrix:
        """Matrix on quotient coordinates of a map defined on the full tensor.

        f must vanish on the relations; this is checked.
        """
        if f.ncols != self.ambient:
            raise DimensionMismatch("map does not start at the full tensor space")
        for r in self.relations.basis:
            if any(f.apply(r)):
                raise PreconditionError("map does not vanish on the tensor relations")
        return Matrix.from_columns(self.field, [f.apply(self.section(unit_vector(self.field, self.dim, q)))
                                                for q in range(self.dim)], f.nrows)

    def __repr__(self):
        return f"RelativeTensor({self.left_dim} x {self.right_dim} -> dim {self.dim})"


def tensor_over(field, left_dim: int, right_dim: int,
                actions: Sequence[tuple[Matrix, Matrix]]) -> RelativeTensor:
    """M (x)_R N, given for each basis x of R the pair (m -> m x, n -> x n)."""
    m, n = left_dim, right_dim
    rels = []
    for rx, lx in actions:
        rcols = [[(k, c) for k, c in enumerate(rx.col(a)) if c] for a in range(m)]
        lcols = [[(k, c) for k, c in enumerate(lx.col(b)) if c] for b in range(n)]
        for a in range(m):
            for b in range(n):
                v = {}
                for k, c in rcols[a]:
                    v[k * n + b] = v.get(k * n + b, field.zero) + c
                for k, c in lcols[b]:
                    v[a * n + k] = v.get(a * n + k, field.zero) - c
                v = {k: c for k, c in v.items() if c}
                if v:
                    rels.append(v)
    return RelativeTensor(field, m, n, Subspace(field, m * n, rels))


def subalgebra_actions(alg: FinDimAlgebra, sub: Subspace) -> list:
    """Pairs (right multiplication, left multiplication) by each basis element of sub."""
    return [(alg.rmul(x), alg.lmul(x)) for x in sub.basis]


def algebra_tensor_over(alg: FinDimAlgebra, sub: Subspace) -> RelativeTensor:
    """alg (x)_sub alg for a subalgebra sub acting by multiplication."""
    return tensor_over(alg.field, alg.dim, alg.dim, subalgebra_actions(alg, sub))


def right_module_endomorphisms(alg: FinDimAlgebra, sub: Subspace) -> HomSpace:
    """End(alg_sub): linear maps f with f(a x) = f(a) x for x in sub."""
    acts = [(alg.rmul(x), alg.rmul(x)) for x in sub.basis]
    return hom_over_subalgebra(alg.field, alg.dim, alg.dim, acts)
