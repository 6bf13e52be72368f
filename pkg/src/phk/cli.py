"""Command line entry point: ``phk <command> <spec.json> [options]``.

Exit status: 0 when every requested check passes, 1 when a check fails or a
precondition is not met, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import __version__
from .errors import PhkError, PreconditionError, SpecError, StructuralInconsistency, TheoremViolation
from .galois import GaloisContext, galois_report
from .hopf import check_frobenius_example, check_hopf, check_integral_identities, dual_hopf, integral_space, normalized_pair
from .linalg import parse_field, scalar_to_json
from .paction import (PartialAction, check_pca, coinvariants, from_group_partial_action, induced_coaction,
                      invariants, is_partial_coaction, random_cyclic_parameters,
                      restricted_cyclic_action)
from .report import Report
from .smash import alpha_beta, fixed_part, frobenius_system, partial_smash, verify_frobenius
from .specfile import SpecFile, dump_spec, parse_spec, spec_dict

PASS, FAIL, NA = "pass", "fail", "not-applicable"
COMMANDS = ("check-hopf", "check-action", "invariants", "smash", "frobenius", "galois", "fuzz")
FUZZ_GROUPS = (2, 3, 4)


def _v(ok) -> str:
    return PASS if ok else FAIL


def _vec(v):
    return [scalar_to_json(x) for x in v]


def _mat(m):
    return [_vec(r) for r in m.tolist()]


class Outcome:
    def __init__(self):
        self.verdicts = {}
        self.dimensions = {}
        self.witnesses = {}
        self.ok = True

    def verdict(self, name, ok, required=True):
        self.verdicts[name] = _v(ok) if ok is not None else NA
        if required and ok is False:
            self.ok = False

    def failures(self, name, rep: Report, limit=10):
        if rep.failures:
            self.witnesses[name] = rep.failures[:limit]


# -- commands -------------------------------------------------------------------

def cmd_check_hopf(spec: SpecFile, args, out: Outcome):
    H = spec.require_hopf()
    rep = check_hopf(H)
    out.verdict("hopf_axioms", rep.ok)
    out.failures("hopf_failures", rep)
    out.dimensions["H"] = H.dim
    if not rep.ok:
        return
    dual_rep = check_hopf(dual_hopf(H))
    out.verdict("dual_hopf_axioms", dual_rep.ok)
    out.failures("dual_hopf_failures", dual_rep)
    for side in ("left", "right"):
        try:
            sp = integral_space(H, side)
            out.dimensions[f"{side}_integrals"] = sp.dim
            out.verdict(f"{side}_integrals_one_dimensional", True)
        except StructuralInconsistency as exc:
            out.verdict(f"{side}_integrals_one_dimensional", False)
            out.witnesses[f"{side}_integrals"] = str(exc)
            return
    pair = normalized_pair(H)
    out.witnesses["t"] = _vec(pair.t)
    out.witnesses["T"] = _vec(pair.T)
    ids = check_integral_identities(H, pair)
    out.verdict("integral_identities", ids.ok)
    out.failures("integral_identity_failures", ids)
    fr = check_frobenius_example(H, pair)
    out.verdict("frobenius_example", fr.ok)
    out.failures("frobenius_example_failures", fr)
    notes = ids.notes + fr.notes
    if notes:
        out.witnesses["notes"] = notes


def _action_checked(spec: SpecFile, out: Outcome, symmetric: bool) -> PartialAction:
    pa = spec.require_action()
    out.dimensions["A"] = pa.A.dim
    out.dimensions["H"] = pa.H.dim
    pa.require(symmetric=symmetric)
    return pa


def cmd_check_action(spec: SpecFile, args, out: Outcome):
    pa = spec.require_action()
    out.dimensions["A"] = pa.A.dim
    out.dimensions["H"] = pa.H.dim
    out.verdict("partial_action", pa.is_partial_action)
    out.failures("partial_action_failures", pa.pa_report)
    out.verdict("symmetric", pa.is_symmetric)
    out.failures("symmetric_failures", pa.symmetric_report)
    if not pa.is_partial_action:
        for name in ("partial_coaction", "coaction_symmetric", "coinvariants_equal_invariants"):
            out.verdict(name, None)
        return
    pc = induced_coaction(pa)
    rep = check_pca(pc)
    out.verdict("partial_coaction", is_partial_coaction(rep))
    out.verdict("coaction_symmetric", not rep.failing("PCA4"), required=pa.is_symmetric)
    out.failures("coaction_failures", rep)
    out.witnesses["rho_one"] = _vec(pc.rho_one)
    out.witnesses["global"] = pa.is_global()
    out.verdict("coinvariants_equal_invariants", coinvariants(pc) == invariants(pa))


def cmd_invariants(spec: SpecFile, args, out: Outcome):
    pa = _action_checked(spec, out, symmetric=False)
    left = invariants(pa, "left")
    out.dimensions["invariants"] = left.dim
    out.witnesses["invariants"] = [_vec(v) for v in left.basis]
    out.verdict("subalgebra", pa.A.is_subalgebra(left))
    if pa.is_symmetric:
        out.verdict("left_equals_right", invariants(pa, "right") == left)
    else:
        out.verdict("left_equals_right", None)
    co = coinvariants(induced_coaction(pa))
    out.witnesses["coinvariants"] = [_vec(v) for v in co.basis]
    out.verdict("coinvariants_equal_invariants", co == left)


def cmd_smash(spec: SpecFile, args, out: Outcome):
    pa = _action_checked(spec, out, symmetric=False)
    ps = partial_smash(pa)
    out.verdict("smash_associative", True)
    out.verdict("unit_left_identity", True)
    out.verdict("iota_monomorphism", ps.check_iota().ok)
    out.dimensions["smash"] = ps.smash.dim
    out.dimensions["partial_smash"] = ps.dim
    out.witnesses["partial_smash_basis"] = [_vec(v) for v in ps.ambient_basis()]
    if pa.is_symmetric:
        fp = fixed_part(pa)
        out.dimensions["fixed_part"] = fp.dim
        out.dimensions["fixed_part_ambient"] = fp.ambient.dim


def cmd_frobenius(spec: SpecFile, args, out: Outcome):
    pa = _action_checked(spec, out, symmetric=True)
    ctx = GaloisContext(pa)
    fs = frobenius_system(ctx)
    rep = verify_frobenius(fs)
    out.verdict("frobenius_system", rep.ok)
    out.failures("frobenius_failures", rep)
    fp = fixed_part(ctx)
    out.verdict("fixed_part_equals_integral_span", True)
    ab = alpha_beta(ctx)
    out.verdict("alpha_beta", ab.ok)
    out.failures("alpha_beta_failures", ab)
    out.dimensions.update(partial_smash=ctx.ps.dim, fixed_part=fp.dim, fixed_part_ambient=fp.ambient.dim,
                          tensor_over_A=fs.tensor.dim)
    out.witnesses["t"] = _vec(ctx.pair.t)
    out.witnesses["T"] = _vec(ctx.pair.T)
    out.witnesses["Phi"] = _mat(fs.Phi)
    out.witnesses["e"] = [[scalar_to_json(c), _vec(x), _vec(y)] for c, x, y in fs.terms]
    if rep.notes:
        out.witnesses["notes"] = rep.notes


def cmd_galois(spec: SpecFile, args, out: Outcome):
    pa = _action_checked(spec, out, symmetric=True)
    rep = galois_report(pa)
    for k, v in rep.verdicts.items():
        out.verdict(k, v, required=args.require_galois)
    out.verdict("agreement", rep.agreement)
    out.dimensions.update(rep.dimensions)
    out.witnesses.update(rep.witnesses)
    out.witnesses["findings"] = rep.findings
    out.witnesses["notes"] = rep.notes


# -- fuzz -------------------------------------------------------------------------

def instance_failure(n, orbits, subset, field):
    """None if the instance passes every check, else a short description."""
    try:
        pa = from_group_partial_action(restricted_cyclic_action(n, orbits, subset, field))
        ctx = GaloisContext(pa)
        rep = verify_frobenius(frobenius_system(ctx))
        if not rep.ok:
            return f"Frobenius system fails: {rep.failures[0]}"
        fixed_part(ctx)
        if not alpha_beta(ctx).ok:
            return "alpha/beta fails"
        g = galois_report(ctx)
        if not g.agreement:
            return f"verdicts disagree: {g.verdicts}"
    except PhkError as exc:
        return f"{type(exc).__name__}: {exc}"
    return None


def minimize_instance(n, orbits, subset, failing):
    """Greedily drop points and then unused orbits while ``failing`` stays truthy."""
    subset = list(subset)
    orbits = list(orbits)
    changed = True
    while changed:
        changed = False
        for s in list(subset):
            trial = [x for x in subset if x != s]
            if trial and failing(n, orbits, trial):
                subset = trial
                changed = True
    starts = []
    pos = 0
    for d in orbits:
        starts.append(pos)
        pos += d
    for o in reversed(range(len(orbits))):
        lo, hi = starts[o], starts[o] + orbits[o]
        if any(lo <= s < hi for s in subset) or len(orbits) == 1:
            continue
        trial_orbits = orbits[:o] + orbits[o + 1:]
        trial_subset = [s - orbits[o] if s >= hi else s for s in subset]
        if failing(n, trial_orbits, trial_subset):
            orbits, subset = trial_orbits, trial_subset
    return orbits, subset


def cmd_fuzz(spec, args, out: Outcome):
    field = parse_field(args.field) if args.field else (spec.field if spec else parse_field("Q"))
    seed = args.seed if args.seed is not None else 0
    rng = random.Random(seed)
    failures = []
    galois_true = 0
    for k in range(args.count):
        n = FUZZ_GROUPS[k % len(FUZZ_GROUPS)]
        orbits, subset = random_cyclic_parameters(n, rng)
        msg = instance_failure(n, orbits, subset, field)
        if msg is None:
            pa = from_group_partial_action(restricted_cyclic_action(n, orbits, subset, field))
            galois_true += galois_report(pa).galois
            continue
        orbits, subset = minimize_instance(n, orbits, subset, lambda *a: instance_failure(*a, field) is not None)
        data = restricted_cyclic_action(n, orbits, subset, field)
        item = {"index": k, "group": f"C{n}", "orbits": orbits, "subset": subset,
                "reason": instance_failure(n, orbits, subset, field)}
        if args.out_dir:
            path = Path(args.out_dir) / f"fuzz-seed{seed}-case{k}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            try:
                doc = spec_dict(path.stem, data=data, meta=data.meta)
            except PhkError:
                doc = {"name": path.stem, "meta": data.meta}
            path.write_text(dump_spec(doc))
            item["reproducer"] = str(path)
        failures.append(item)
    print(f"fuzz seed {seed}: {args.count} instances, {len(failures)} failing", file=sys.stderr)
    out.verdict("all_instances", not failures)
    out.dimensions["instances"] = args.count
    out.dimensions["galois_true"] = galois_true
    out.witnesses["failures"] = failures


HANDLERS = {
    "check-hopf": cmd_check_hopf,
    "check-action": cmd_check_action,
    "invariants": cmd_invariants,
    "smash": cmd_smash,
    "frobenius": cmd_frobenius,
    "galois": cmd_galois,
    "fuzz": cmd_fuzz,
}


# -- driver ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phk", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("spec", nargs="?", help="JSON instance file (optional for fuzz)")
    p.add_argument("--seed", type=int, default=None, help="random seed for fuzz")
    p.add_argument("--count", type=int, default=100, help="number of fuzz instances")
    p.add_argument("--out-dir", default=None, help="where fuzz writes minimized failing instances")
    p.add_argument("--field", default=None, help="override the field: Q or Fp:p")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--agreement", dest="require_galois", action="store_false",
                      help="galois passes when the verdicts agree (default)")
    mode.add_argument("--require-galois", dest="require_galois", action="store_true",
                      help="galois passes only when every verdict is true")
    p.add_argument("--json", dest="json_out", default=None, help="also write the report to this file")
    p.set_defaults(require_galois=False)
    return p


def render(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"


def run(args) -> tuple[int, dict]:
    out = Outcome()
    spec = None
    code = 0
    try:
        if args.spec is not None:
            spec = parse_spec(args.spec, args.field)
            out.witnesses["fixture"] = {"name": spec.name, "field": spec.field.descriptor}
        elif args.command != "fuzz":
            raise SpecError(f"{args.command} needs a spec file")
        HANDLERS[args.command](spec, args, out)
        code = 0 if out.ok else 1
    except SpecError as exc:
        out.verdicts["input"] = FAIL
        out.witnesses["error"] = str(exc)
        code = 2
    except PreconditionError as exc:
        out.verdicts["precondition"] = FAIL
        out.witnesses["error"] = str(exc)
        if exc.report is not None:
            out.witnesses["precondition_report"] = exc.report.to_dict()
        code = 1
    except (TheoremViolation, StructuralInconsistency) as exc:
        out.verdicts["consistency"] = FAIL
        out.witnesses["error"] = f"{type(exc).__name__}: {exc}"
        code = 1
    report = {
        "command": args.command,
        "verdicts": out.verdicts,
        "dimensions": out.dimensions,
        "witnesses": out.witnesses,
        "seed": args.seed,
        "version": __version__,
    }
    return code, report


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    code, report = run(args)
    text = render(report)
    sys.stdout.write(text)
    if args.json_out:
        try:
            Path(args.json_out).write_text(text)
        except OSError as exc:
            print(f"cannot write {args.json_out}: {exc.strerror}", file=sys.stderr)
            return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
