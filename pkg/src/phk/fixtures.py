"""The canonical instances used across the test-suite and shipped as JSON.

E1  global swap action of C2 on k x k          (Galois)
E2  C2 on k with 1_g = 0, so g . a = 0          (Galois, degenerate)
E3  C2 on k x k with domain k x 0, alpha_g = id (symmetric, not Galois)

The JSON copies in phk/data are regenerated with ``write_fixture_files``.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .hopf import cyclic_table, dual_hopf, group_algebra, sweedler_hopf, symmetric_table
from .linalg import QQ, Field, Matrix
from .paction import GroupPartialActionData, PartialAction, from_group_partial_action, product_of_fields
from .specfile import dump_spec, spec_dict

C2 = cyclic_table(2)


def e1_data(field: Field = QQ) -> GroupPartialActionData:
    A = product_of_fields(2, field, name="kxk")
    swap = Matrix(field, [[0, 1], [1, 0]])
    return GroupPartialActionData(C2, A, [[1, 1], [1, 1]], [Matrix.identity(field, 2), swap], meta={"fixture": "E1"})


def e2_data(field: Field = QQ) -> GroupPartialActionData:
    A = product_of_fields(1, field, name="k")
    return GroupPartialActionData(C2, A, [[1], [0]], [Matrix.identity(field, 1), Matrix(field, [[0]])],
                                  meta={"fixture": "E2"})


def e3_data(field: Field = QQ) -> GroupPartialActionData:
    A = product_of_fields(2, field, name="kxk")
    proj = Matrix(field, [[1, 0], [0, 0]])
    return GroupPartialActionData(C2, A, [[1, 1], [1, 0]], [Matrix.identity(field, 2), proj], meta={"fixture": "E3"})


def e1(field: Field = QQ):
    return from_group_partial_action(e1_data(field), name="E1")


def e2(field: Field = QQ):
    return from_group_partial_action(e2_data(field), name="E2")


def e3(field: Field = QQ):
    return from_group_partial_action(e3_data(field), name="E3")


def kc2(field: Field = QQ):
    return group_algebra(C2, field, name="kC2")


def kc3(field: Field = QQ):
    return group_algebra(cyclic_table(3), field, name="kC3")


def ks3(field: Field = QQ):
    return group_algebra(symmetric_table(3), field, name="kS3")


FIXTURES = {"E1": e1, "E2": e2, "E3": e3}


def e3_perturbed(field: Field = QQ):
    """E3 with g . u = u + v.  PA3 and PA4 both fail."""
    pa = e3(field)
    rows = [list(r) for r in pa.matrix.tolist()]
    rows[1][2] = field.one
    return PartialAction(pa.H, pa.A, Matrix(field, rows), name="E3_perturbed")


def grading(field: Field = QQ):
    """(kC2)* acting on kC2 through the C2-grading: p_x . e_y = [x = y] e_y.  Global."""
    H = dual_hopf(kc2(field))
    A = kc2(field).algebra
    mats = [Matrix(field, [[1, 0], [0, 0]]), Matrix(field, [[0, 0], [0, 1]])]
    return PartialAction.from_basis_actions(H, A, mats, name="grading")


def fixture_documents(field: Field = QQ) -> dict:
    """The JSON documents shipped in phk/data, keyed by file stem."""
    full = ["check-action", "invariants", "smash", "frobenius", "galois"]
    return {
        "E1": spec_dict("E1", data=e1_data(field), checks=full),
        "E2": spec_dict("E2", data=e2_data(field), checks=full),
        "E3": spec_dict("E3", data=e3_data(field), checks=full),
        "E1_matrix": spec_dict("E1_matrix", action=e1(field), checks=full),
        "E3_perturbed": spec_dict("E3_perturbed", action=e3_perturbed(field), checks=["check-action"],
                                  meta={"perturbation": "g . u = u + v instead of u"}),
        "kC2": spec_dict("kC2", hopf=kc2(field), checks=["check-hopf"]),
        "kC3": spec_dict("kC3", hopf=kc3(field), checks=["check-hopf"]),
        "kS3": spec_dict("kS3", hopf=ks3(field), checks=["check-hopf"]),
        "kC2_dual": spec_dict("kC2_dual", hopf=dual_hopf(kc2(field)), checks=["check-hopf"]),
        "grading": spec_dict("grading", action=grading(field), checks=full),
        "H4": spec_dict("H4", hopf=sweedler_hopf(field), checks=["check-hopf"]),
    }


def data_path(stem: str):
    return resources.files("phk") / "data" / f"{stem}.json"


def write_fixture_files(directory):
    directory = Path(directory)
    for stem, doc in fixture_documents().items():
        (directory / f"{stem}.json").write_text(dump_spec(doc))
