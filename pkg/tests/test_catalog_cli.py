import io
import json
import subprocess
import sys

import pytest
from conftest import GOLDEN

from abgrad import (
    QQ,
    all_catalog_gradings,
    catalog_load,
    comodule_from_grading,
    parse_algebra,
    parse_document,
    parse_field_spec,
    serialize_algebra,
    serialize_document,
    universal_group,
    verify_generic_automorphism,
)
from abgrad.catalog import CATALOG_NAMES, cayley_dickson
from abgrad.cli import cli_main
from abgrad.errors import ParseError, UnknownEntry, ValidationError
from abgrad.extension import check_extension_invariants, extend_algebra
from abgrad.serialize import dumps, grading_from_json, loads


def resolve(name, field):
    return catalog_load(name, field or QQ).algebra


def run(*argv, stdin=None):
    buf = io.StringIO()
    if stdin is not None:
        old = sys.stdin
        sys.stdin = io.StringIO(stdin)
    try:
        code = cli_main(list(argv), stdout=buf)
    finally:
        if stdin is not None:
            sys.stdin = old
    return code, json.loads(buf.getvalue()), buf.getvalue()


# -- catalog -------------------------------------------------------------------


def test_catalog_entries():
    assert set(CATALOG_NAMES) == {"sl2", "m2", "quaternions", "octonions", "group_algebra_zn"}
    sl2 = catalog_load("sl2")
    assert sorted(g.coords for g in sl2.grading("z").support()) == [(-1,), (0,), (1,)]
    with pytest.raises(UnknownEntry):
        catalog_load("e8")
    with pytest.raises(UnknownEntry):
        sl2.grading("nope")


def test_octonions_against_independent_table(oracle):
    O = catalog_load("octonions").algebra
    table = [[[c.to_json() for c in vec] for vec in row] for row in O.structure_constants]
    assert table == oracle["octonions"]
    assert len(catalog_load("octonions").grading("z2^3").components) == 8


def test_octonion_basics():
    O = catalog_load("octonions").algebra
    e = O.basis_vector
    one = e(0)
    for i in range(1, 8):
        assert O.multiply(e(i), e(i)) == [-c for c in one]
        for j in range(1, 8):
            if i != j:
                assert O.multiply(e(i), e(j)) == [-c for c in O.multiply(e(j), e(i))]
    # alternative but not associative
    x, y, z = e(1), e(2), e(4)
    assert O.multiply(O.multiply(x, y), z) != O.multiply(x, O.multiply(y, z))
    assert O.multiply(O.multiply(x, x), y) == O.multiply(x, O.multiply(x, y))


def test_quaternions_are_first_two_doublings():
    assert cayley_dickson(QQ, 2) == [
        [row[:4] for row in r[:4]] for r in [[v[:4] for v in row[:4]] for row in cayley_dickson(QQ, 3)[:4]]
    ]


def test_m2_pauli_universal_group():
    assert universal_group(catalog_load("m2").grading("pauli"))[0].canonical == (0, (2, 2))


def test_group_algebra_zn_parameter():
    entry = catalog_load("group_algebra_zn", n=6)
    assert entry.algebra.dim == 6
    assert entry.grading("tautological").group.canonical == (0, (6,))


def test_catalog_over_other_fields():
    for spec in ("F7", "Q[-2,0,1]"):
        F = parse_field_spec(spec)
        for name in CATALOG_NAMES:
            entry = catalog_load(name, F)
            for G in entry.gradings.values():
                assert verify_generic_automorphism(comodule_from_grading(G))


@pytest.mark.parametrize("entry,name,G", all_catalog_gradings(), ids=lambda v: v if isinstance(v, str) else "")
def test_every_catalog_grading_invariants(entry, name, G):
    K = parse_field_spec("Q[-2,0,1]")
    assert check_extension_invariants(extend_algebra(G.algebra, K), G).passed


# -- serialization ---------------------------------------------------------------


def test_document_roundtrip_all_catalog():
    for _, _, G in all_catalog_gradings():
        text = serialize_document(G.algebra, G)
        A, H = parse_document(text)
        assert A == G.algebra and H == G
        assert serialize_document(A, H) == text


def test_serialization_deterministic():
    a = serialize_document(catalog_load("m2").algebra, catalog_load("m2").grading("pauli"))
    b = serialize_document(catalog_load("m2").algebra, catalog_load("m2").grading("pauli"))
    assert a == b


def test_extension_field_serialization():
    K = parse_field_spec("Q[-2,0,1][1,0,1]")
    A = catalog_load("quaternions", K).algebra
    assert parse_algebra(serialize_algebra(A)) == A


def test_label_vectors():
    A, G = parse_document((GOLDEN / "sl2_labels.json").read_text(), resolve)
    assert G == catalog_load("sl2").grading("z")


def test_absent_label_is_parse_error():
    with pytest.raises(ParseError) as exc:
        parse_document((GOLDEN / "bad_label.json").read_text(), resolve)
    assert exc.value.path == "$.grading.components[1].basis[0].X"


def test_axiom_violation_is_validation_error():
    with pytest.raises(ValidationError) as exc:
        parse_document((GOLDEN / "bad_axiom.json").read_text(), resolve)
    assert (exc.value.cause.g.coords, exc.value.cause.h.coords) == ((1,), (1,))


def test_parse_error_diagnostics():
    with pytest.raises(ParseError) as exc:
        loads('{\n  "algebra": [1,\n}')
    assert exc.value.line == 3
    A = catalog_load("sl2").algebra
    with pytest.raises(ParseError) as exc:
        grading_from_json({"group": {"ngens": 1, "relations": []}, "components": [{"degree": [0, 1], "basis": []}]}, A)
    assert exc.value.path == "$.components[0].degree"
    with pytest.raises(ParseError):
        parse_algebra('{"field": "Q", "dim": 1, "basis": ["a"], "products": [[["1/0"]]]}')
    with pytest.raises(ParseError):
        parse_algebra('{"field": "Q", "dim": 1, "basis": ["a"], "products": [[["1"]]], "extra": 1}')


def test_dumps_sorted_and_compact():
    assert dumps({"b": [1, 2], "a": {"y": 1, "x": [[1], [2]]}}) == (
        '{\n  "a": {\n    "x": [[1], [2]],\n    "y": 1\n  },\n  "b": [1, 2]\n}\n'
    )


# -- CLI -------------------------------------------------------------------------


def test_cli_ugroup():
    code, out, _ = run("ugroup", "--catalog", "sl2", "--grading", "z")
    assert code == 0 and out == {"free_rank": 1, "invariant_factors": []}
    code, out, _ = run("ugroup", "--catalog", "m2", "--grading", "pauli")
    assert out == {"free_rank": 0, "invariant_factors": [2, 2]}
    code, out, _ = run("ugroup", "--catalog", "sl2", "--grading", "z3", "--literal")
    assert out == {"free_rank": 0, "invariant_factors": [3]}


def test_cli_induce():
    code, out, _ = run("induce", "--catalog", "sl2", "--grading", "z", "--hom", "Z->Z/2:1")
    assert code == 0 and out["support_size"] == 2 and out["dims"] == [1, 2]
    code, out, _ = run("induce", "--catalog", "sl2", "--grading", "z", "--hom", "Z/2->Z:1")
    assert code == 2


def test_cli_verify():
    code, out, _ = run("verify", str(GOLDEN / "sl2__z.json"))
    assert code == 0 and out["valid"] is True
    code, out, _ = run("verify", str(GOLDEN / "bad_axiom.json"))
    assert code == 1 and out["error"] == "AxiomViolated" and out["g"] == [1] and out["h"] == [1]
    assert out["witness"] == ["1", "0", "0"]
    code, out, _ = run("verify", str(GOLDEN / "bad_label.json"))
    assert code == 2 and out["error"] == "ParseError"
    code, out, _ = run("verify", "-", stdin=(GOLDEN / "m2__pauli.json").read_text())
    assert code == 0
    code, out, _ = run("verify", "/nonexistent.json")
    assert code == 2


def test_cli_support_and_invariants():
    code, out, _ = run("support", "--catalog", "sl2", "--grading", "z")
    assert out == {"support": [[-1], [0], [1]], "size": 3}
    code, out, _ = run("invariants", "--catalog", "m2", "--grading", "z")
    assert out["component_dims"] == [1, 1, 2] and out["support_size"] == 3


def test_cli_refine_aut():
    m = json.dumps({"images": [{"E11": 1}, {"E12": -1}, {"E21": -1}, {"E22": 1}]})
    code, out, _ = run("refine-aut", "--catalog", "m2", "--grading", "trivial", "--map", m)
    assert code == 0 and out["relation"] == "ProperlyRefines" and out["dims"] == [2, 2]
    # Ad of a rotation-like matrix has eigenvalues +-i
    h, k = "1/2", "-1/2"
    rot = json.dumps({"matrix": [[h, h, h, h], [k, h, k, h], [k, k, h, h], [h, k, k, h]]})
    code, out, _ = run("refine-aut", "--catalog", "m2", "--grading", "trivial", "--map", rot)
    assert code == 1 and out["error"] == "NotSplitOverField"
    swap = json.dumps({"images": [{"H": 1}, {"F": 1}, {"E": -1}]})
    code, out, _ = run("refine-aut", "--catalog", "sl2", "--grading", "trivial", "--map", swap)
    assert code == 1 and out["error"] == "NotAnAutomorphism"


def test_cli_common_refine():
    code, out, _ = run("common-refine", "--catalog", "m2", "--grading", "z", "--grading", "pauli")
    assert code == 1 and out["deficit"] == 2
    code, out, _ = run("common-refine", str(GOLDEN / "sl2__z.json"), str(GOLDEN / "sl2__z2.json"))
    assert code == 0 and out["dims"] == [1, 1, 1]


def test_cli_equiv_check():
    code, out, _ = run("equiv-check", "--catalog", "m2", "--grading", "z", "--grading", "pauli")
    assert code == 1 and out["verdict"] == "NotEquivalent"
    code, out, _ = run("equiv-check", "--catalog", "sl2", "--grading", "z3", "--grading", "z4")
    assert code == 3 and out["verdict"] == "Unknown"
    w = json.dumps({"alpha": "Z->Z:-1", "phi": {"images": [{"H": -1}, {"F": 1}, {"E": 1}]}})
    code, out, _ = run("equiv-check", "--catalog", "sl2", "--grading", "z", "--grading", "z", "--witness", w)
    assert code == 0 and out["verdict"] == "Equivalent"


def test_cli_extend_and_descend(tmp_path):
    code, out, _ = run("extend", "--catalog", "sl2", "--grading", "z", "--to", "Q[-2,0,1]")
    assert code == 0 and out["report"]["passed"]
    doc = tmp_path / "ext.json"
    doc.write_text(dumps(out["document"]))
    code, back, _ = run("descend", str(doc))
    assert code == 0
    assert back["document"] == json.loads((GOLDEN / "sl2__z.json").read_text())
    mixed = json.loads(dumps(out["document"]))
    mixed["grading"]["components"][1]["basis"] = [[["1", "0"], ["0", "-2"], ["0", "0"]]]
    mixed["grading"]["components"][0]["basis"] = [[["0", "1"], ["-2", "0"], ["1", "0"]]]
    doc.write_text(dumps(mixed))
    code, res, _ = run("descend", str(doc))
    assert code == 1 and res["error"] == "NotDefinedOverBase"


def test_cli_comodule_check(tmp_path):
    code, out, _ = run("comodule-check", "--catalog", "octonions", "--grading", "z2^3")
    assert code == 0 and out == {"generic_automorphism": True, "roundtrip": True}
    bad = {
        "algebra": "sl2",
        "comodule": {
            "group": {"ngens": 1, "relations": []},
            "action": [
                [{"degree": [0], "vector": {"H": "1"}}],
                [{"degree": [1], "vector": {"E": "1"}}],
                [{"degree": [1], "vector": {"F": "1"}}],
            ],
        },
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(bad))
    code, out, _ = run("comodule-check", str(p))
    assert code == 1 and out == {"generic_automorphism": False}
    bad["comodule"]["action"][2][0]["degree"] = [-1]
    p.write_text(json.dumps(bad))
    code, out, _ = run("comodule-check", str(p))
    assert code == 0 and out["roundtrip"] and out["dims"] == [1, 1, 1]


def test_cli_catalog_and_field():
    code, out, _ = run("catalog")
    assert out["entries"][0] == "sl2"
    code, out, _ = run("catalog", "sl2", "--grading", "z")
    assert out == json.loads((GOLDEN / "sl2__z.json").read_text())
    code, out, _ = run("verify", "--catalog", "m2", "--grading", "pauli", "--field", "F3")
    assert code == 0
    code, out, _ = run("verify", "--catalog", "m2", "--grading", "pauli", "--field", "F2")
    # the catalog construction itself degenerates in characteristic 2
    assert code == 2 and out["error"] == "NotDirectSum"
    code, out, _ = run("verify", "--catalog", "m2", "--grading", "pauli", "--field", "F4")
    assert code == 2


def test_cli_usage_errors():
    assert run("bogus")[0] == 2
    assert run("verify")[0] == 2
    assert run("verify", "--catalog", "sl2", "--grading", "missing")[0] == 2
    assert run("equiv-check", "--catalog", "sl2", "--grading", "z")[0] == 2


def test_cli_byte_stable_subprocess():
    cmd = [sys.executable, "-m", "abgrad", "induce", "--catalog", "sl2", "--grading", "z", "--hom", "Z->Z/5:1"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["support"] == [[0], [1], [4]]
