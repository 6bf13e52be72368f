"""Partial Hopf-Galois extensions: the canonical map and the equivalent conditions.

Every condition is evaluated from its own construction; ``galois_report``
only compares the verdicts afterwards.  Numbering of the verdicts:

c1  Can : A (x)_{A^H} A -> (A (x) H*) rho(1) is bijective
c2  [ , ] : A (x)_{A^H} A -> A #_ H, a (x) b -> a t b, is surjective
c3  there are x_i, y_i in A with sum x_i (h . y_i) = T(h) 1_A for all h
c4  A is a generator of left A #_ H-modules (trace ideal test)
c5  A_{A^H} is finitely generated projective and Pi : A #_ H -> End(A_{A^H}) is bijective
c6  mu_M : A (x)_{A^H} M^H -> M is bijective, on a finite family of modules
c7  mu : A (x)_{A^H} (A #_ H)^H -> A #_ H is surjective
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .algebra import FinDimAlgebra, HomSpace, RelativeTensor, flatten, hom_over_subalgebra, tensor_algebra, tensor_over
from .errors import TheoremViolation
from .hopf import IntegralPair, theta
from .linalg import Matrix, Subspace, image, kernel_basis, kron, scalar_to_json, solve, unit_vector, vscale
from .paction import PartialAction, induced_coaction
from .report import Report
from .smash import SmashContext, as_context, fixed_part

__all__ = [
    "GaloisContext", "GaloisReport", "ModuleData", "reduced_tensor", "phi_iso", "canonical_map",
    "bracket_map", "integral_condition", "verify_integral_witness", "pi_end_check", "generator_check",
    "mu_condition", "mu_M_check", "module_family", "galois_report",
]


def _add(u, v):
    return [x + y for x, y in zip(u, v)]


def _rank1_terms(field, w, n_left, n_right):
    """Split w in k^{n_left} (x) k^{n_right} as sum e_i (x) row_i, skipping zero rows."""
    out = []
    for i in range(n_left):
        row = list(w[i * n_right:(i + 1) * n_right])
        if any(row):
            out.append((unit_vector(field, n_left, i), row))
    return out


class GaloisContext(SmashContext):
    """SmashContext plus the coaction side and the tensor over the invariants."""

    @cached_property
    def coaction(self):
        return induced_coaction(self.pa)

    @cached_property
    def AHstar(self) -> FinDimAlgebra:
        return tensor_algebra(self.A, self.coaction.K.algebra)

    @cached_property
    def tensor_over_invariants(self) -> RelativeTensor:
        A = self.A
        return tensor_over(self.field, A.dim, A.dim, [(A.rmul(x), A.lmul(x)) for x in self.invariants.basis])

    @cached_property
    def fixed(self):
        return fixed_part(self)

    def act_ambient(self, v, b) -> list:
        """(sum c a_i # h_j) acting on b by a_i (h_j . b)."""
        A, nH = self.A, self.H.dim
        out = A.zero()
        for idx, c in enumerate(v):
            if c:
                i, j = divmod(idx, nH)
                out = _add(out, vscale(c, A.mul(A.basis(i), self.pa.basis_actions[j].apply(b))))
        return out

    @cached_property
    def Pi(self) -> Matrix:
        """Pi on corner coordinates, valued in flattened nA x nA matrices."""
        A = self.A
        cols = []
        for v in self.ps.ambient_basis():
            m = Matrix.from_columns(self.field, [self.act_ambient(v, A.basis(k)) for k in range(A.dim)], A.dim)
            cols.append(flatten(m))
        return Matrix.from_columns(self.field, cols, A.dim * A.dim)

    def Pi_of(self, x) -> Matrix:
        n = self.A.dim
        v = self.Pi.apply(x)
        return Matrix.from_rows(self.field, [v[i * n:(i + 1) * n] for i in range(n)], n)


def as_galois_context(pa, pair=None) -> GaloisContext:
    if isinstance(pa, GaloisContext):
        return pa
    if isinstance(pa, SmashContext):
        return GaloisContext(pa.pa, pa.pair, pa.check)
    return GaloisContext(pa, pair)


# -- reduced tensor, phi, Can, bracket ---------------------------------------------

def reduced_tensor(pa) -> Subspace:
    """(A (x) H*) rho(1) inside A (x) H*."""
    ctx = as_galois_context(pa)
    return image(ctx.AHstar.rmul(ctx.coaction.rho_one))


def phi_iso(pa, pair=None) -> Matrix:
    """a (x) f -> (a # theta(f))(1 # 1), from reduced-tensor coordinates to corner coordinates."""
    ctx = as_galois_context(pa, pair)
    red = reduced_tensor(ctx)
    th = theta(ctx.H, ctx.pair)
    nH = ctx.H.dim
    ps = ctx.ps

    def phi_amb(v):
        out = [ctx.field.zero] * ps.dim
        for idx, c in enumerate(v):
            if c:
                i, j = divmod(idx, nH)
                out = _add(out, vscale(c, ps.underline(ctx.A.basis(i), th.col(j))))
        return out

    m = Matrix.from_columns(ctx.field, [phi_amb(v) for v in red.basis], ps.dim)
    if m.nrows != m.ncols or m.rank() != m.ncols:
        raise TheoremViolation(f"phi: reduced tensor (dim {red.dim}) -> A#H (dim {ps.dim}) is not bijective")
    AHs = ctx.AHstar
    one_K = ctx.coaction.K.one
    for i in range(ctx.A.dim):
        a = ctx.A.basis(i)
        left = AHs.lmul(kron(a, one_K))
        for q, v in enumerate(red.basis):
            lhs = m.apply(red.coordinates(left.apply(v)))
            rhs = ps.mul(ps.iota(a), m.col(q))
            if lhs != rhs:
                raise TheoremViolation(f"phi is not left A-linear at a_{i}, basis {q}")
    return m


@dataclass
class MapVerdict:
    matrix: Matrix
    surjective: bool
    injective: bool


def canonical_map(pa) -> MapVerdict:
    """a (x) b -> (a (x) 1) rho(b), on A (x)_{A^H} A, in reduced-tensor coordinates."""
    ctx = as_galois_context(pa)
    A, pc = ctx.A, ctx.coaction
    red = reduced_tensor(ctx)
    one_K = pc.K.one
    AHs = ctx.AHstar
    n = A.dim
    cols = []
    for k in range(n * n):
        i, j = divmod(k, n)
        v = AHs.mul(kron(A.basis(i), one_K), pc(A.basis(j)))
        cols.append(red.coordinates(v))
    full = Matrix.from_columns(ctx.field, cols, red.dim)
    rt = ctx.tensor_over_invariants
    m = rt.induced_map(full)
    r = m.rank()
    surj = r == red.dim
    inj = r == rt.dim
    if surj and not inj:
        raise TheoremViolation(f"Can is surjective but not injective (domain {rt.dim}, rank {r})")
    return MapVerdict(m, surj, inj)


@dataclass
class BracketVerdict(MapVerdict):
    decomposition: list = dc_field(default_factory=list)   # [(b_i, c_i)] with sum b_i t c_i = 1


def bracket_map(pa, pair=None) -> BracketVerdict:
    """a (x) b -> (a #_ 1)(1 #_ t)(b #_ 1), checked to factor as phi o Can."""
    ctx = as_galois_context(pa, pair)
    A, ps = ctx.A, ctx.ps
    n = A.dim
    cols = [ps.mul(ps.iota(A.basis(k // n)), ctx.one_t, ps.iota(A.basis(k % n))) for k in range(n * n)]
    rt = ctx.tensor_over_invariants
    m = rt.induced_map(Matrix.from_columns(ctx.field, cols, ps.dim))
    can = canonical_map(ctx)
    phi = phi_iso(ctx)
    if phi @ can.matrix != m:
        raise TheoremViolation("bracket map does not factor as phi o Can")
    r = m.rank()
    out = BracketVerdict(m, r == ps.dim, r == rt.dim)
    if out.surjective:
        q = solve(m, ps.one)
        w = rt.section(q)
        out.decomposition = _rank1_terms(ctx.field, w, n, n)
        total = [ctx.field.zero] * ps.dim
        for b, c in out.decomposition:
            total = _add(total, ps.mul(ps.iota(b), ctx.one_t, ps.iota(c)))
        if total != ps.one:
            raise TheoremViolation("generator decomposition sum b_i t c_i does not reproduce 1#1")
    return out


# -- condition (3) ------------------------------------------------------------------

def integral_condition(pa, pair=None):
    """Pairs (x_i, y_i) with sum x_i (h . y_i) = T(h) 1_A for every h, or None."""
    ctx = as_galois_context(pa, pair)
    A, H = ctx.A, ctx.H
    n = A.dim
    cols = []
    for k in range(n * n):
        i, j = divmod(k, n)
        v = []
        for act in ctx.pa.basis_actions:
            v.extend(A.mul(A.basis(i), act.col(j)))
        cols.append(v)
    rhs = []
    for l in range(H.dim):
        rhs.extend(vscale(ctx.pair.T[l], A.one))
    w = solve(Matrix.from_columns(ctx.field, cols, n * H.dim), rhs)
    if w is None:
        return None
    terms = _rank1_terms(ctx.field, w, n, n)
    if not verify_integral_witness(ctx, terms):
        raise TheoremViolation("solution of the integral system fails substitution")
    return terms


def verify_integral_witness(pa, terms, pair=None) -> bool:
    ctx = as_galois_context(pa, pair)
    A, H = ctx.A, ctx.H
    for l in range(H.dim):
        h = H.basis(l)
        total = A.zero()
        for x, y in terms:
            total = _add(total, A.mul(x, ctx.pa.act(h, y)))
        if total != vscale(ctx.pair.T[l], A.one):
            return False
    return True


# -- conditions (4) and (5) ---------------------------------------------------------

@dataclass
class EndVerdict:
    verdict: bool
    pi_bijective: bool
    projective: bool
    end_space: HomSpace
    dual_basis: list          # [(a_i, f_i)] with f_i as nA x nA matrices valued in A^H
    opposite_iso: bool
    report: Report


def _invariant_hom(ctx) -> HomSpace:
    """Hom_{A^H}(A, A^H) for right modules, maps valued in invariant coordinates."""
    A, inv = ctx.A, ctx.invariants
    acts = []
    for x in inv.basis:
        tgt = Matrix.from_columns(ctx.field, [inv.coordinates(A.mul(y, x)) for y in inv.basis], inv.dim)
        acts.append((A.rmul(x), tgt))
    return hom_over_subalgebra(ctx.field, A.dim, inv.dim, acts)


def pi_end_check(pa, pair=None) -> EndVerdict:
    ctx = as_galois_context(pa, pair)
    A, ps, inv = ctx.A, ctx.ps, ctx.invariants
    rep = Report("Pi / End")
    end = _end_space(ctx)
    Pi = ctx.Pi
    images_inside = all(Pi.col(k) in end.subspace for k in range(ps.dim))
    rep.check(images_inside, "Pi lands in End(A_{A^H})")
    pi_bij = images_inside and Pi.rank() == ps.dim == end.dim
    rep.check(pi_bij, "Pi bijective", ps.dim, end.dim)

    # dual basis: id_A in span{ b -> a_i f(b) }
    hom = _invariant_hom(ctx)
    emb = inv.embedding()
    gens, labels = [], []
    for i in range(A.dim):
        La = A.lmul(A.basis(i))
        for k, f in enumerate(hom.basis):
            gens.append(flatten(La @ emb @ f))
            labels.append((i, k))
    ident = flatten(Matrix.identity(ctx.field, A.dim))
    coeffs = solve(Matrix.from_columns(ctx.field, gens, A.dim * A.dim), ident) if gens else None
    projective = coeffs is not None
    rep.check(projective, "dual basis exists")
    dual = []
    if projective:
        for k, f in enumerate(hom.basis):
            a = A.zero()
            for (i, kk), c in zip(labels, coeffs):
                if kk == k and c:
                    a[i] += c
            if any(a):
                dual.append((a, emb @ f))
        for j in range(A.dim):
            b = A.basis(j)
            total = A.zero()
            for a, f in dual:
                total = _add(total, A.mul(a, f.apply(b)))
            rep.check(total == b, "a = sum a_i f_i(a)", j)

    # (A^H)^op -> End(_{A #_ H} A), x -> right multiplication by x
    acts = [(ctx.Pi_of(unit_vector(ctx.field, ps.dim, k)),) * 2 for k in range(ps.dim)]
    end_left = hom_over_subalgebra(ctx.field, A.dim, A.dim, acts)
    rmats = [A.rmul(x) for x in inv.basis]
    op_ok = all(r in end_left for r in rmats) and end_left.dim == inv.dim
    op_ok = op_ok and Subspace(ctx.field, A.dim * A.dim, [flatten(r) for r in rmats]).dim == inv.dim
    for p, x in enumerate(inv.basis):
        for q, y in enumerate(inv.basis):
            ok = A.rmul(A.mul(x, y)) == rmats[q] @ rmats[p]
            op_ok = op_ok and ok
    rep.check(op_ok, "(A^H)^op = End over A#H of A")
    rep.note("projectivity is tested for A as a right A^H-module, matching the codomain of Pi")
    return EndVerdict(pi_bij and projective, pi_bij, projective, end, dual, op_ok, rep)


def _end_space(ctx) -> HomSpace:
    A = ctx.A
    return hom_over_subalgebra(ctx.field, A.dim, A.dim, [(A.rmul(x), A.rmul(x)) for x in ctx.invariants.basis])


def generator_check(pa, pair=None):
    """A generates A #_ H-Mod iff the images of Hom_{A #_ H}(A, A #_ H) span A #_ H.

    Returns (verdict, dimension of the trace ideal).
    """
    ctx = as_galois_context(pa, pair)
    ps, A = ctx.ps, ctx.A
    acts = []
    for k in range(ps.dim):
        s = unit_vector(ctx.field, ps.dim, k)
        acts.append((ctx.Pi_of(s), ps.algebra.lmul(s)))
    hom = hom_over_subalgebra(ctx.field, A.dim, ps.dim, acts)
    vecs = [f.col(j) for f in hom.basis for j in range(A.dim)]
    trace = Subspace(ctx.field, ps.dim, vecs)
    return trace.dim == ps.dim, trace.dim


# -- conditions (6) and (7) ---------------------------------------------------------

@dataclass
class ModuleData:
    """Left A #_ H-module: one matrix per corner basis element."""
    name: str
    dim: int
    action: list
    field: object = None

    def act(self, s, m) -> list:
        out = [self.field.zero] * self.dim
        for k, c in enumerate(s):
            if c:
                out = _add(out, vscale(c, self.action[k].apply(m)))
        return out


def module_family(pa, pair=None) -> list:
    """A through Pi, the regular module A #_ H, and the zero module."""
    ctx = as_galois_context(pa, pair)
    ps = ctx.ps
    basis = [unit_vector(ctx.field, ps.dim, k) for k in range(ps.dim)]
    return [
        ModuleData("A", ctx.A.dim, [ctx.Pi_of(s) for s in basis], ctx.field),
        ModuleData("A#H", ps.dim, [ps.algebra.lmul(s) for s in basis], ctx.field),
        ModuleData("0", 0, [], ctx.field),
    ]


@dataclass
class MuVerdict:
    module: str
    bijective: bool
    fixed_dim: int
    inverse_checked: bool
    report: Report


def _module_fixed(ctx, M: ModuleData) -> Subspace:
    ps, H = ctx.ps, ctx.H
    blocks = []
    for j in range(H.dim):
        h = H.basis(j)
        s = vscale(-1, ps.iota(ctx.pa.h_dot_one(h)))
        diff = _add(ps.underline(ctx.A.one, h), s)
        blocks.append(Matrix.from_columns(ctx.field, [M.act(diff, unit_vector(ctx.field, M.dim, k))
                                                      for k in range(M.dim)], M.dim))
    return kernel_basis(Matrix.vstack(blocks))


def mu_M_check(pa, M: ModuleData, pair=None, end: EndVerdict | None = None) -> MuVerdict:
    ctx = as_galois_context(pa, pair)
    rep = Report(f"mu_M on {M.name}")
    if M.dim == 0:
        rep.note("zero module")
        return MuVerdict(M.name, True, 0, True, rep)
    A, ps, inv, f = ctx.A, ctx.ps, ctx.invariants, ctx.field
    fixed = _module_fixed(ctx, M)
    emb = fixed.basis
    if fixed.dim == 0:
        return MuVerdict(M.name, False, 0, False, rep)
    acts = []
    for x in inv.basis:
        ix = ps.iota(x)
        try:
            tgt = Matrix.from_columns(f, [fixed.coordinates(M.act(ix, m)) for m in emb], fixed.dim)
        except ValueError:
            raise TheoremViolation(f"M^H of {M.name} is not stable under A^H")
        acts.append((A.rmul(x), tgt))
    rt = tensor_over(f, A.dim, fixed.dim, acts)
    cols = [M.act(ps.iota(A.basis(k // fixed.dim)), emb[k % fixed.dim]) for k in range(A.dim * fixed.dim)]
    mu = rt.induced_map(Matrix.from_columns(f, cols, M.dim))
    bij = rt.dim == M.dim and mu.rank() == M.dim
    rep.check(bij, "mu_M bijective", rt.dim, M.dim)
    inverse_checked = False
    if bij:
        end = end or pi_end_check(ctx)
        if end.verdict:
            Pi_inv = []
            for a, fmat in end.dual_basis:
                x = solve(ctx.Pi, flatten(fmat))
                Pi_inv.append((a, x))
            # nu(m) = sum a_i (x) x_i m
            nu_cols = []
            for k in range(M.dim):
                m = unit_vector(f, M.dim, k)
                v = [f.zero] * rt.ambient
                for a, x in Pi_inv:
                    xm = M.act(x, m)
                    if xm not in fixed:
                        rep.check(False, "x_i m in M^H", k)
                        continue
                    v = _add(v, kron(a, fixed.coordinates(xm)))
                nu_cols.append(rt.project(v))
            nu = Matrix.from_columns(f, nu_cols, rt.dim)
            rep.check(nu @ mu == Matrix.identity(f, rt.dim), "nu o mu = id")
            rep.check(mu @ nu == Matrix.identity(f, M.dim), "mu o nu = id")
            inverse_checked = rep.ok
    return MuVerdict(M.name, bij and rep.ok, fixed.dim, inverse_checked, rep)


def mu_condition(pa, pair=None):
    """mu : A (x)_{A^H} (A #_ H)^H -> A #_ H surjective?  Returns (verdict, domain dim, rank)."""
    ctx = as_galois_context(pa, pair)
    A, ps, inv, f = ctx.A, ctx.ps, ctx.invariants, ctx.field
    fx = ctx.fixed.subspace
    acts = []
    for x in inv.basis:
        lx = ps.algebra.lmul(ps.iota(x))
        acts.append((A.rmul(x), Matrix.from_columns(f, [fx.coordinates(lx.apply(v)) for v in fx.basis], fx.dim)))
    rt = tensor_over(f, A.dim, fx.dim, acts)
    cols = [ps.mul(ps.iota(A.basis(k // fx.dim)), fx.basis[k % fx.dim]) for k in range(A.dim * fx.dim)]
    mu = rt.induced_map(Matrix.from_columns(f, cols, ps.dim))
    r = mu.rank()
    return r == ps.dim, rt.dim, r


# -- aggregate ------------------------------------------------------------------------

CONDITIONS = ("c1", "c2", "c3", "c4", "c5", "c6", "c7")


@dataclass
class GaloisReport:
    verdicts: dict
    dimensions: dict
    witnesses: dict
    agreement: bool
    findings: list
    notes: list

    @property
    def galois(self) -> bool:
        return self.agreement and all(self.verdicts.values())

    def to_dict(self) -> dict:
        return {
            "verdicts": dict(self.verdicts),
            "dimensions": dict(self.dimensions),
            "witnesses": self.witnesses,
            "agreement": self.agreement,
            "findings": list(self.findings),
            "notes": list(self.notes),
        }


def _vec(v):
    return [scalar_to_json(x) for x in v]


def galois_report(pa, pair=None) -> GaloisReport:
    ctx = as_galois_context(pa, pair)
    ctx.pa.require(symmetric=True)
    can = canonical_map(ctx)
    br = bracket_map(ctx)
    c3 = integral_condition(ctx)
    gen, trace_dim = generator_check(ctx)
    end = pi_end_check(ctx)
    family = [mu_M_check(ctx, M, end=end) for M in module_family(ctx)]
    c7, mu_dom, mu_rank = mu_condition(ctx)
    verdicts = {
        "c1": can.surjective and can.injective,
        "c2": br.surjective,
        "c3": c3 is not None,
        "c4": gen,
        "c5": end.verdict,
        "c6": all(m.bijective for m in family),
        "c7": c7,
    }
    agreement = len(set(verdicts.values())) == 1
    dims = {
        "A": ctx.A.dim,
        "H": ctx.H.dim,
        "invariants": ctx.invariants.dim,
        "partial_smash": ctx.ps.dim,
        "tensor_over_invariants": ctx.tensor_over_invariants.dim,
        "reduced_tensor": reduced_tensor(ctx).dim,
        "fixed_part": ctx.fixed.dim,
        "fixed_part_ambient": ctx.fixed.ambient.dim,
        "end": end.end_space.dim,
        "trace_ideal": trace_dim,
        "mu_domain": mu_dom,
        "mu_rank": mu_rank,
    }
    witnesses = {
        "c3": None if c3 is None else [[_vec(x), _vec(y)] for x, y in c3],
        "dual_basis": [[_vec(a), [_vec(r) for r in f.tolist()]] for a, f in end.dual_basis],
        "c2": [[_vec(b), _vec(c)] for b, c in br.decomposition],
        "c6_family": {m.module: {"bijective": m.bijective, "fixed_dim": m.fixed_dim,
                                 "inverse_checked": m.inverse_checked} for m in family},
    }
    findings = []
    if not agreement:
        findings.append({"kind": "theorem-violation", "verdicts": dict(verdicts)})
    if not end.opposite_iso:
        findings.append({"kind": "theorem-violation", "detail": "(A^H)^op is not End over A#H of A"})
    notes = ["c6 evaluated on the modules A, A#H, 0"] + end.report.notes
    if not ctx.pair.T_is_left:
        notes.append("T is a right integral of H* that is not a left integral")
    return GaloisReport(verdicts, dims, witnesses, agreement, findings, notes)
