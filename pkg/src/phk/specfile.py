"""JSON instance files: parsing with keyed error messages, and serialization.

Layout::

    {
      "name": "E1",
      "field": "Q",                      # or "Fp:7"
      "algebras": {"A": {"dim": 2, "unit": [...], "structure_constants": [[[...]]]}, ...},
      "hopf": {"algebra": "H", "coproduct": [[...]], "counit": [...], "antipode": [[...]]},
      "action": {"algebra": "A", "matrix": [[...]]}
      # or
      "group_action": {"algebra": "A", "table": [[...]], "idempotents": [[...]], "isomorphisms": [[[...]]]},
      "checks": ["galois"]
    }

Matrices are lists of rows.  ``structure_constants[i][j]`` holds the coordinates
of e_i e_j.  The coproduct has one row per pair (p, q) at ``p * dim + q``.
Rational entries are strings such as ``"-3/7"``; integers are accepted too.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .algebra import FinDimAlgebra
from .errors import DimensionMismatch, FieldMismatch, PreconditionError, SpecError
from .hopf import HopfAlgebra, group_algebra, validate_group_table
from .linalg import Field, Matrix, parse_field, scalar_to_json
from .paction import GroupPartialActionData, PartialAction, from_group_partial_action

KNOWN_KEYS = {"name", "field", "algebras", "hopf", "action", "group_action", "checks", "meta"}


@dataclass
class SpecFile:
    name: str
    field: Field
    algebras: dict
    hopf: HopfAlgebra | None = None
    action: PartialAction | None = None
    group_data: GroupPartialActionData | None = None
    checks: list = dc_field(default_factory=list)
    meta: dict = dc_field(default_factory=dict)
    raw: dict = dc_field(default_factory=dict, repr=False)

    def require_hopf(self) -> HopfAlgebra:
        if self.hopf is None:
            raise SpecError("this command needs a 'hopf' block")
        return self.hopf

    def require_action(self) -> PartialAction:
        if self.action is None:
            raise SpecError("this command needs an 'action' or 'group_action' block")
        return self.action


def _need(d, key, ctx):
    if not isinstance(d, dict):
        raise SpecError(f"expected an object, got {type(d).__name__}", ctx)
    if key not in d:
        raise SpecError(f"missing key {key!r}", ctx)
    return d[key]


def _scalar(fld, x, ctx):
    if isinstance(x, float):
        raise SpecError(f"float {x!r} not allowed; write exact values as strings like \"1/3\"", ctx)
    try:
        return fld(x)
    except (ValueError, TypeError, ZeroDivisionError, FieldMismatch) as exc:
        raise SpecError(f"malformed number {x!r}: {exc}", ctx) from None


def _vector(fld, v, n, ctx):
    if not isinstance(v, list):
        raise SpecError("expected a list", ctx)
    if n is not None and len(v) != n:
        raise SpecError(f"expected length {n}, got {len(v)}", ctx)
    return [_scalar(fld, x, f"{ctx}[{i}]") for i, x in enumerate(v)]


def _matrix(fld, rows, nrows, ncols, ctx) -> Matrix:
    if not isinstance(rows, list):
        raise SpecError("expected a list of rows", ctx)
    if nrows is not None and len(rows) != nrows:
        raise SpecError(f"expected {nrows} rows, got {len(rows)}", ctx)
    if rows and ncols is None:
        ncols = len(rows[0]) if isinstance(rows[0], list) else None
    out = [_vector(fld, r, ncols, f"{ctx}[{i}]") for i, r in enumerate(rows)]
    return Matrix(fld, out, ncols if ncols is not None else 0)


def _algebra(fld, name, d) -> FinDimAlgebra:
    ctx = f"algebras.{name}"
    n = _need(d, "dim", ctx)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SpecError(f"dim must be a positive integer, got {n!r}", f"{ctx}.dim")
    unit = _vector(fld, _need(d, "unit", ctx), n, f"{ctx}.unit")
    sc = _need(d, "structure_constants", ctx)
    sctx = f"{ctx}.structure_constants"
    if not isinstance(sc, list) or len(sc) != n:
        got = len(sc) if isinstance(sc, list) else type(sc).__name__
        raise SpecError(f"dimension mismatch: expected {n} slabs, got {got}", sctx)
    table = []
    for i, slab in enumerate(sc):
        if not isinstance(slab, list) or len(slab) != n:
            got = len(slab) if isinstance(slab, list) else type(slab).__name__
            raise SpecError(f"dimension mismatch: slab {i} has {got} rows for dim {n}", f"{sctx}[{i}]")
        table.append([_vector(fld, v, n, f"{sctx}[{i}][{j}]") for j, v in enumerate(slab)])
    try:
        return FinDimAlgebra(fld, table, unit, name=name)
    except DimensionMismatch as exc:
        raise SpecError(str(exc), ctx) from None


def _hopf(fld, d, algebras) -> HopfAlgebra:
    ctx = "hopf"
    if "group" in d:
        table = d["group"]
        try:
            validate_group_table(table)
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), "hopf.group") from None
        return group_algebra(table, fld, name=d.get("name"))
    aname = _need(d, "algebra", ctx)
    if aname not in algebras:
        raise SpecError(f"unknown algebra {aname!r}", "hopf.algebra")
    H = algebras[aname]
    n = H.dim
    delta = _matrix(fld, _need(d, "coproduct", ctx), n * n, n, "hopf.coproduct")
    eps = _vector(fld, _need(d, "counit", ctx), n, "hopf.counit")
    S = _matrix(fld, _need(d, "antipode", ctx), n, n, "hopf.antipode")
    try:
        return HopfAlgebra(H, delta, eps, S, name=d.get("name", aname))
    except DimensionMismatch as exc:
        raise SpecError(str(exc), ctx) from None


def _action(fld, d, algebras, H) -> PartialAction:
    ctx = "action"
    if H is None:
        raise SpecError("an 'action' block needs a 'hopf' block", ctx)
    aname = _need(d, "algebra", ctx)
    if aname not in algebras:
        raise SpecError(f"unknown algebra {aname!r}", "action.algebra")
    A = algebras[aname]
    m = _matrix(fld, _need(d, "matrix", ctx), A.dim, H.dim * A.dim, "action.matrix")
    return PartialAction(H, A, m, name=d.get("name"))


def _group_action(fld, d, algebras) -> GroupPartialActionData:
    ctx = "group_action"
    aname = _need(d, "algebra", ctx)
    if aname not in algebras:
        raise SpecError(f"unknown algebra {aname!r}", "group_action.algebra")
    A = algebras[aname]
    table = _need(d, "table", ctx)
    try:
        validate_group_table(table)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), "group_action.table") from None
    n = len(table)
    idems = _need(d, "idempotents", ctx)
    if not isinstance(idems, list) or len(idems) != n:
        raise SpecError(f"expected one idempotent per group element ({n})", "group_action.idempotents")
    idems = [_vector(fld, v, A.dim, f"group_action.idempotents[{g}]") for g, v in enumerate(idems)]
    isos = _need(d, "isomorphisms", ctx)
    if not isinstance(isos, list) or len(isos) != n:
        raise SpecError(f"expected one isomorphism per group element ({n})", "group_action.isomorphisms")
    isos = [_matrix(fld, m, A.dim, A.dim, f"group_action.isomorphisms[{g}]") for g, m in enumerate(isos)]
    return GroupPartialActionData(table, A, idems, isos, meta=dict(d.get("meta", {})))


def load_spec(doc: dict, field_override: str | None = None, name: str | None = None) -> SpecFile:
    if not isinstance(doc, dict):
        raise SpecError("top level must be a JSON object")
    unknown = set(doc) - KNOWN_KEYS
    if unknown:
        raise SpecError(f"unknown keys {sorted(unknown)}")
    descriptor = field_override or doc.get("field", "Q")
    try:
        fld = parse_field(descriptor)
    except ValueError as exc:
        raise SpecError(str(exc), "field") from None
    algebras = {}
    raw_algs = doc.get("algebras", {})
    if not isinstance(raw_algs, dict):
        raise SpecError("expected an object of named algebras", "algebras")
    for aname, d in raw_algs.items():
        algebras[aname] = _algebra(fld, aname, d)
    H = _hopf(fld, doc["hopf"], algebras) if "hopf" in doc else None
    pa = group_data = None
    if "action" in doc and "group_action" in doc:
        raise SpecError("give either 'action' or 'group_action', not both")
    if "action" in doc:
        pa = _action(fld, doc["action"], algebras, H)
    elif "group_action" in doc:
        group_data = _group_action(fld, doc["group_action"], algebras)
        try:
            pa = from_group_partial_action(group_data, name=doc.get("name"))
        except PreconditionError as exc:
            raise SpecError(str(exc), "group_action") from None
        if H is not None and H != pa.H:
            raise SpecError("hopf block is not the group algebra of group_action.table", "hopf")
        H = H or pa.H
    checks = doc.get("checks", [])
    return SpecFile(doc.get("name") or name or "unnamed", fld, algebras, H, pa, group_data, list(checks),
                    dict(doc.get("meta", {})), doc)


def parse_spec(path, field_override: str | None = None) -> SpecFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return load_spec(doc, field_override, name=path.stem)


# -- serialization ------------------------------------------------------------

def _jv(v):
    return [scalar_to_json(x) for x in v]


def _jm(m: Matrix):
    return [_jv(r) for r in m.tolist()]


def algebra_to_dict(A: FinDimAlgebra) -> dict:
    return {"dim": A.dim, "unit": _jv(A.unit),
            "structure_constants": [[_jv(v) for v in slab] for slab in A.table]}


def hopf_to_dict(H: HopfAlgebra, algebra_name: str = "H") -> dict:
    return {"algebra": algebra_name, "coproduct": _jm(H.coproduct), "counit": _jv(H.counit),
            "antipode": _jm(H.antipode)}


def group_action_to_dict(data: GroupPartialActionData, algebra_name: str = "A") -> dict:
    return {"algebra": algebra_name, "table": [list(r) for r in data.table],
            "idempotents": [_jv([data.algebra.field(x) for x in v]) for v in data.idempotents],
            "isomorphisms": [_jm(m) for m in data.isomorphisms]}


def spec_dict(name, *, hopf: HopfAlgebra | None = None, data: GroupPartialActionData | None = None,
              action: PartialAction | None = None, checks=(), meta=None) -> dict:
    """JSON document for a Hopf algebra, a group partial action, or a general partial action."""
    doc = {"name": name, "algebras": {}}
    if data is not None:
        hopf = hopf or group_algebra(data.table, data.algebra.field)
        doc["field"] = data.algebra.field.descriptor
        doc["algebras"]["A"] = algebra_to_dict(data.algebra)
        doc["group_action"] = group_action_to_dict(data)
    if action is not None:
        hopf = action.H
        doc["field"] = action.field.descriptor
        doc["algebras"]["A"] = algebra_to_dict(action.A)
        doc["action"] = {"algebra": "A", "matrix": _jm(action.matrix)}
    if hopf is not None:
        doc["field"] = hopf.field.descriptor
        doc["algebras"]["H"] = algebra_to_dict(hopf.algebra)
        doc["hopf"] = hopf_to_dict(hopf)
    if checks:
        doc["checks"] = list(checks)
    if meta:
        doc["meta"] = meta
    return doc


_FLAT_LIST = re.compile(r"\[\s*([^\[\]{}]*?)\s*\]")


def dump_spec(doc: dict) -> str:
    """Deterministic JSON with innermost lists kept on one line."""
    text = json.dumps(doc, indent=1, sort_keys=True)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r"\s*\n\s*", " ", m.group(1)) + "]", text) + "\n"
