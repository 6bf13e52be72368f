"""Exact scalars, dense matrices and row reduction.

Two fields are supported: the rationals (``QQ``, backed by ``fractions.Fraction``)
and prime fields (``GF(p)``, backed by :class:`Residue`).  Vectors are plain lists
of field elements; linear maps are :class:`Matrix` objects acting on column
vectors, so the image of the j-th basis vector is column j.

Elimination works on sparse rows internally: the matrices produced by relative
tensor products are large but have very few nonzero entries per row.
"""

from __future__ import annotations

import numbers
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DimensionMismatch, FieldMismatch, SingularMatrix


class Residue:
    """An element of Z/pZ.  Arithmetic with a different modulus raises."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        self.value = value % modulus
        self.modulus = modulus

    def _other(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise FieldMismatch(f"F_{self.modulus} vs F_{other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, numbers.Number):
            raise FieldMismatch(f"cannot combine F_{self.modulus} element with {type(other).__name__}")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        return o if o is NotImplemented else Residue(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        o %= self.modulus
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.modulus)
        return Residue(self.value * pow(o, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if self.value == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.modulus)
        return Residue(o * pow(self.value, -1, self.modulus), self.modulus)

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


class Field:
    zero: object
    one: object
    descriptor: str

    def __call__(self, x):
        raise NotImplementedError

    def __repr__(self):
        return self.descriptor


class Rationals(Field):
    descriptor = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x):
        if type(x) is Fraction:
            return x
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            s = x.strip().replace("−", "-")
            try:
                return Fraction(s)
            except (ValueError, ZeroDivisionError) as exc:
                raise ValueError(f"malformed rational {x!r}") from exc
        if isinstance(x, Residue):
            raise FieldMismatch(f"F_{x.modulus} element given where Q expected")
        raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __reduce__(self):
        return (Rationals, ())


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class PrimeField(Field):
    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise ValueError(f"modulus {p!r} is not prime")
        self.p = p
        self.descriptor = f"Fp:{p}"
        self.zero = Residue(0, p)
        self.one = Residue(1, p)

    def __call__(self, x):
        if isinstance(x, Residue):
            if x.modulus != self.p:
                raise FieldMismatch(f"F_{x.modulus} element given where F_{self.p} expected")
            return x
        if isinstance(x, bool) or isinstance(x, int):
            return Residue(int(x), self.p)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in F_{self.p}")
            return Residue(x.numerator * pow(x.denominator, -1, self.p), self.p)
        if isinstance(x, str):
            s = x.strip().replace("−", "-")
            try:
                return self(Fraction(s)) if "/" in s else Residue(int(s), self.p)
            except ValueError as exc:
                raise ValueError(f"malformed F_{self.p} element {x!r}") from exc
        raise TypeError(f"cannot convert {type(x).__name__} to F_{self.p}")

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __reduce__(self):
        return (GF, (self.p,))


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(descriptor: str) -> Field:
    """``"Q"`` or ``"Fp:p"``."""
    d = descriptor.strip()
    if d in ("Q", "QQ"):
        return QQ
    if d.startswith("Fp:"):
        try:
            p = int(d[3:])
        except ValueError:
            raise ValueError(f"unknown field descriptor {descriptor!r}") from None
        return GF(p)
    raise ValueError(f"unknown field descriptor {descriptor!r}")


def scalar_to_json(x):
    if isinstance(x, Residue):
        return x.value
    if isinstance(x, Fraction):
        return str(x)
    return x


# -- vectors ---------------------------------------------------------------

def zeros(field: Field, n: int) -> list:
    return [field.zero] * n


def unit_vector(field: Field, n: int, i: int) -> list:
    v = [field.zero] * n
    v[i] = field.one
    return v


def vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def vscale(c, v):
    return [c * a for a in v]


def is_zero(v) -> bool:
    return not any(v)


def kron(u, v) -> list:
    """Coordinates of u (x) v with the left factor major."""
    zero = (u[0] - u[0]) if u else None
    out = []
    for a in u:
        if a:
            out.extend(a * b for b in v)
        else:
            out.extend([zero] * len(v))
    return out


# -- matrices --------------------------------------------------------------

class Matrix:
    """Dense matrix of exact field elements; treat as immutable."""

    __slots__ = ("field", "nrows", "ncols", "_rows")

    def __init__(self, field: Field, rows: Sequence[Sequence], ncols: int | None = None):
        rows = [[field(x) for x in r] for r in rows]
        if ncols is None:
            if not rows:
                raise DimensionMismatch("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"ragged matrix: row {i} has {len(r)} entries, expected {ncols}")
        self.field = field
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = rows

    @classmethod
    def _wrap(cls, field, rows, ncols):
        m = cls.__new__(cls)
        m.field = field
        m.nrows = len(rows)
        m.ncols = ncols
        m._rows = rows
        return m

    @classmethod
    def zeros(cls, field, nrows, ncols):
        return cls._wrap(field, [[field.zero] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        return cls._wrap(field, [unit_vector(field, n, i) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field, columns, nrows):
        columns = [list(c) for c in columns]
        for j, c in enumerate(columns):
            if len(c) != nrows:
                raise DimensionMismatch(f"column {j} has length {len(c)}, expected {nrows}")
        rows = [[c[i] for c in columns] for i in range(nrows)]
        return cls._wrap(field, rows, len(columns))

    @classmethod
    def from_rows(cls, field, rows, ncols):
        rows = [list(r) for r in rows]
        for i, r in enumerate(rows):
            if len(r) != ncols:
                raise DimensionMismatch(f"row {i} has length {len(r)}, expected {ncols}")
        return cls._wrap(field, rows, ncols)

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def row(self, i) -> list:
        return list(self._rows[i])

    def col(self, j) -> list:
        return [r[j] for r in self._rows]

    def rows(self) -> list:
        return [list(r) for r in self._rows]

    def columns(self) -> list:
        return [self.col(j) for j in range(self.ncols)]

    def tolist(self):
        return self.rows()

    @property
    def T(self) -> "Matrix":
        return Matrix._wrap(self.field, [self.col(j) for j in range(self.ncols)], self.nrows)

    def _check(self, other):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        return Matrix._wrap(self.field, [vadd(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        return Matrix._wrap(self.field, [vsub(a, b) for a, b in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self):
        return Matrix._wrap(self.field, [[-x for x in r] for r in self._rows], self.ncols)

    def __rmul__(self, c):
        c = self.field(c)
        return Matrix._wrap(self.field, [vscale(c, r) for r in self._rows], self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            zero = self.field.zero
            orows = other._rows
            out = []
            for r in self._rows:
                acc = [zero] * other.ncols
                for k, a in enumerate(r):
                    if a:
                        for j, b in enumerate(orows[k]):
                            if b:
                                acc[j] += a * b
                out.append(acc)
            return Matrix._wrap(self.field, out, other.ncols)
        return self.apply(other)

    def apply(self, v) -> list:
        if len(v) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.shape} matrix")
        zero = self.field.zero
        nz = [(k, a) for k, a in enumerate(v) if a]
        out = []
        for r in self._rows:
            s = zero
            for k, a in nz:
                b = r[k]
                if b:
                    s += a * b
            out.append(s)
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(r) for r in self._rows)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}: [{body}])"

    def rank(self) -> int:
        return len(_echelon(self.field, self._rows, self.ncols))

    @staticmethod
    def hstack(blocks):
        f = blocks[0].field
        n = blocks[0].nrows
        for b in blocks:
            if b.field != f:
                raise FieldMismatch("hstack over different fields")
            if b.nrows != n:
                raise DimensionMismatch("hstack with differing row counts")
        rows = [sum((b._rows[i] for b in blocks), []) for i in range(n)]
        return Matrix._wrap(f, rows, sum(b.ncols for b in blocks))

    @staticmethod
    def vstack(blocks):
        f = blocks[0].field
        n = blocks[0].ncols
        rows = []
        for b in blocks:
            if b.field != f:
                raise FieldMismatch("vstack over different fields")
            if b.ncols != n:
                raise DimensionMismatch("vstack with differing column counts")
            rows.extend(list(r) for r in b._rows)
        return Matrix._wrap(f, rows, n)


def _check_entries(field, rows):
    """Raise FieldMismatch when some entry is not an element of ``field``."""
    cls = Residue if isinstance(field, PrimeField) else Fraction
    for r in rows:
        for x in r:
            if type(x) is not cls or (cls is Residue and x.modulus != field.p):
                field(x)


# -- elimination -----------------------------------------------------------

def _axpy(target: dict, c, src: dict):
    """target -= c * src, dropping exact zeros."""
    for k, v in src.items():
        old = target.get(k)
        if old is None:
            target[k] = -(c * v)
        else:
            nv = old - c * v
            if nv:
                target[k] = nv
            else:
                del target[k]


class _Echelon:
    """Incrementally maintained fully reduced row basis, keyed by pivot column."""

    def __init__(self, field, ncols):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        for c in [c for c in row if c in self.rows]:
            v = row.get(c)
            if v:
                _axpy(row, v, self.rows[c])
        return row

    def insert(self, row: dict) -> bool:
        row = self.reduce(row)
        if not row:
            return False
        p = min(row)
        inv = self.field.one / row[p]
        if inv != self.field.one:
            row = {k: v * inv for k, v in row.items()}
        for other in self.rows.values():
            v = other.get(p)
            if v:
                _axpy(other, v, row)
        self.rows[p] = row
        return True

    def dense_rows(self) -> list:
        zero = self.field.zero
        out = []
        for p in sorted(self.rows):
            r = [zero] * self.ncols
            for k, v in self.rows[p].items():
                r[k] = v
            out.append(r)
        return out


def _sparse(row):
    return {k: v for k, v in enumerate(row) if v}


def _echelon(field, rows: Iterable, ncols: int) -> _Echelon:
    e = _Echelon(field, ncols)
    for r in rows:
        if len(e.rows) == ncols:
            break
        e.insert(_sparse(r))
    return e


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form (same shape, zero rows last) and rank."""
    _check_entries(m.field, m._rows)
    e = _echelon(m.field, m._rows, m.ncols)
    rows = e.dense_rows()
    rank = len(rows)
    rows.extend([m.field.zero] * m.ncols for _ in range(m.nrows - rank))
    return Matrix._wrap(m.field, rows, m.ncols), rank


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> "Subspace":
    """The subspace {v : m v = 0}."""
    _check_entries(m.field, m._rows)
    f = m.field
    e = _echelon(f, m._rows, m.ncols)
    pivots = sorted(e.rows)
    free = [c for c in range(m.ncols) if c not in e.rows]
    vecs = []
    for c in free:
        v = [f.zero] * m.ncols
        v[c] = f.one
        for p in pivots:
            x = e.rows[p].get(c)
            if x:
                v[p] = -x
        vecs.append(v)
    return Subspace(f, m.ncols, vecs)


def solve(m: Matrix, b: Sequence) -> list | None:
    """Some x with m x = b, or None when the system is inconsistent."""
    if len(b) != m.nrows:
        raise DimensionMismatch(f"right-hand side of length {len(b)} for {m.nrows} equations")
    f = m.field
    b = [f(x) for x in b]
    _check_entries(f, m._rows)
    n = m.ncols
    e = _Echelon(f, n + 1)
    for r, bi in zip(m._rows, b):
        row = _sparse(r)
        if bi:
            row[n] = bi
        e.insert(row)
    if n in e.rows:
        return None
    x = [f.zero] * n
    for p, row in e.rows.items():
        v = row.get(n)
        if v:
            x[p] = v
    return x


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise DimensionMismatch(f"cannot invert a {m.shape} matrix")
    n = m.nrows
    f = m.field
    e = _Echelon(f, 2 * n)
    for i, r in enumerate(m._rows):
        row = _sparse(r)
        row[n + i] = f.one
        e.insert(row)
    if any(p >= n for p in e.rows) or len(e.rows) < n:
        raise SingularMatrix("matrix is singular")
    out = []
    for p in range(n):
        row = e.rows[p]
        out.append([row.get(n + j, f.zero) for j in range(n)])
    return Matrix._wrap(f, out, n)


def image(m: Matrix) -> "Subspace":
    """Column space of m."""
    return Subspace(m.field, m.nrows, m.columns())


# -- subspaces -------------------------------------------------------------

class Subspace:
    """A subspace of field^ambient, stored by its unique RREF basis.

    Two subspaces are equal exactly when their RREF bases are equal.
    """

    __slots__ = ("field", "ambient", "basis", "pivots", "_ech")

    def __init__(self, field: Field, ambient: int, vectors: Iterable = ()):
        e = _Echelon(field, ambient)
        for v in vectors:
            if len(e.rows) == ambient:
                break
            if isinstance(v, dict):
                # sparse row {column: nonzero value}
                e.insert(dict(v))
                continue
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient}")
            e.insert(_sparse(v))
        self.field = field
        self.ambient = ambient
        self._ech = e
        self.pivots = sorted(e.rows)
        self.basis = e.dense_rows()

    @classmethod
    def full(cls, field, n):
        return cls(field, n, [unit_vector(field, n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self):
        return self.dim

    def vectors(self) -> list:
        return [list(v) for v in self.basis]

    def basis_matrix(self) -> Matrix:
        """dim x ambient, rows are basis vectors."""
        return Matrix._wrap(self.field, self.vectors(), self.ambient)

    def embedding(self) -> Matrix:
        """ambient x dim, columns are basis vectors."""
        return Matrix.from_columns(self.field, self.basis, self.ambient)

    def reduce(self, v) -> list:
        """Remainder of v after reduction by the basis (zero iff v is in the span)."""
        row = self._ech.reduce(_sparse(v))
        out = [self.field.zero] * self.ambient
        for k, x in row.items():
            out[k] = x
        return out

    def __contains__(self, v) -> bool:
        if len(v) != self.ambient:
            raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {self.ambient}")
        return not self._ech.reduce(_sparse(v))

    def coordinates(self, v) -> list:
        """Coefficients of v in the RREF basis; raises ValueError if v is outside."""
        if v not in self:
            raise ValueError("vector is not in the subspace")
        return [v[p] for p in self.pivots]

    def from_coordinates(self, c) -> list:
        out = [self.field.zero] * self.ambient
        for x, b in zip(c, self.basis):
            if x:
                for k, y in enumerate(b):
                    if y:
                        out[k] += x * y
        return out

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.field == other.field and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(b) for b in self.basis)))

    def __le__(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace(self.field, self.ambient, self.basis + other.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"


def matrix_of(field: Field, images: Sequence[Sequence], nrows: int) -> Matrix:
    """Matrix whose j-th column is images[j]."""
    return Matrix.from_columns(field, images, nrows)
