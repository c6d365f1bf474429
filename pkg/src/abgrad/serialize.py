"""JSON interchange format for algebras, gradings and linear maps.

Algebra::

    {"field": F, "dim": n, "basis": [names], "products": [[[scalar, ...], ...], ...]}

with ``products[i][j]`` the coordinates of ``b_i * b_j``.  Grading::

    {"group": {"ngens": k, "relations": [[...], ...]},
     "components": [{"degree": [ints], "basis": [vector, ...]}, ...]}

Degrees are canonical coordinates of the group.  On input a vector may also be
an object ``{basis label: scalar}``.  Output is deterministic: sorted keys,
components ordered by degree, canonical scalar spellings.
"""

from __future__ import annotations

import json

from .algebra import Algebra, LinearMap
from .errors import (
    AlgebraError,
    AxiomViolated,
    DimensionMismatch,
    InvalidField,
    NotDirectSum,
    ParseError,
    ValidationError,
)
from .grading import Grading
from .groups import FPAbelianGroup
from .scalars import field_from_json, field_to_json


def _is_flat(obj) -> bool:
    return isinstance(obj, list) and all(
        not isinstance(x, (dict, list)) or (isinstance(x, list) and _is_flat(x) and len(json.dumps(x)) < 40)
        for x in obj
    )


def _emit(obj, indent: int) -> str:
    if isinstance(obj, dict) and obj:
        pad = "  " * (indent + 1)
        items = [f"{pad}{json.dumps(k)}: {_emit(obj[k], indent + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and obj and not _is_flat(obj):
        pad = "  " * (indent + 1)
        return "[\n" + ",\n".join(pad + _emit(x, indent + 1) for x in obj) + "\n" + "  " * indent + "]"
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, short scalar arrays kept on one line."""
    return _emit(obj, 0) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno, column=exc.colno) from None


def _expect(cond, message, path):
    if not cond:
        raise ParseError(message, path)


def _keys(obj, required, path, optional=()):
    _expect(isinstance(obj, dict), "expected an object", path)
    missing = [k for k in required if k not in obj]
    _expect(not missing, f"missing key(s) {missing}", path)
    extra = sorted(set(obj) - set(required) - set(optional))
    _expect(not extra, f"unexpected key(s) {extra}", path)


# -- algebras ---------------------------------------------------------------


def algebra_to_json(A: Algebra):
    return {
        "field": field_to_json(A.field),
        "dim": A.dim,
        "basis": list(A.basis_names),
        "products": [[[c.to_json() for c in vec] for vec in row] for row in A.structure_constants],
    }


def _scalar(F, obj, path):
    try:
        return F.from_json(obj)
    except (ValueError, TypeError, AlgebraError) as exc:
        raise ParseError(f"bad scalar: {exc}", path) from None


def algebra_from_json(obj, path="$") -> Algebra:
    _keys(obj, ("field", "dim", "basis", "products"), path)
    try:
        F = field_from_json(obj["field"])
    except (ValueError, TypeError, AlgebraError) as exc:
        raise ParseError(f"bad field: {exc}", f"{path}.field") from None
    n = obj["dim"]
    _expect(isinstance(n, int) and not isinstance(n, bool) and n > 0, "dim must be a positive integer", f"{path}.dim")
    names = obj["basis"]
    _expect(
        isinstance(names, list) and len(names) == n and all(isinstance(s, str) for s in names),
        f"basis must be a list of {n} strings",
        f"{path}.basis",
    )
    _expect(len(set(names)) == n, "basis labels must be distinct", f"{path}.basis")
    prods = obj["products"]
    p = f"{path}.products"
    _expect(isinstance(prods, list) and len(prods) == n, f"expected {n} rows", p)
    sc = []
    for i, row in enumerate(prods):
        _expect(isinstance(row, list) and len(row) == n, f"expected {n} entries", f"{p}[{i}]")
        out_row = []
        for j, vec in enumerate(row):
            q = f"{p}[{i}][{j}]"
            _expect(isinstance(vec, list) and len(vec) == n, f"expected {n} coordinates", q)
            out_row.append([_scalar(F, c, f"{q}[{k}]") for k, c in enumerate(vec)])
        sc.append(out_row)
    return Algebra(F, sc, names)


def serialize_algebra(A: Algebra) -> str:
    return dumps(algebra_to_json(A))


def parse_algebra(text: str) -> Algebra:
    return algebra_from_json(loads(text))


# -- vectors, gradings, maps ---------------------------------------------------


def _vector(A: Algebra, obj, path):
    F = A.field
    if isinstance(obj, dict):
        v = [F.zero] * A.dim
        for label, c in obj.items():
            _expect(label in A.basis_names, f"unknown basis label {label!r}", f"{path}.{label}")
            v[A.index(label)] = _scalar(F, c, f"{path}.{label}")
        return v
    _expect(isinstance(obj, list) and len(obj) == A.dim, f"expected {A.dim} coordinates or a label object", path)
    return [_scalar(F, c, f"{path}[{k}]") for k, c in enumerate(obj)]


def _int_list(obj, path, length=None):
    ok = isinstance(obj, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in obj)
    _expect(ok and (length is None or len(obj) == length), "expected a list of integers"
            + ("" if length is None else f" of length {length}"), path)
    return obj


def group_from_json(obj, path="$") -> FPAbelianGroup:
    _keys(obj, ("ngens", "relations"), path)
    k = obj["ngens"]
    _expect(isinstance(k, int) and not isinstance(k, bool) and k >= 0, "ngens must be a nonnegative integer",
            f"{path}.ngens")
    rels = obj["relations"]
    _expect(isinstance(rels, list), "relations must be a list", f"{path}.relations")
    rows = [_int_list(r, f"{path}.relations[{i}]", k) for i, r in enumerate(rels)]
    return FPAbelianGroup(k, rows)


def grading_to_json(G: Grading):
    return {
        "group": G.group.to_json(),
        "components": [
            {"degree": list(g.coords), "basis": [[c.to_json() for c in v] for v in s.basis]}
            for g, s in G.components.items()
        ],
    }


def grading_from_json(obj, algebra: Algebra, path="$") -> Grading:
    _keys(obj, ("group", "components"), path)
    group = group_from_json(obj["group"], f"{path}.group")
    comps_obj = obj["components"]
    _expect(isinstance(comps_obj, list), "components must be a list", f"{path}.components")
    comps = {}
    for i, c in enumerate(comps_obj):
        q = f"{path}.components[{i}]"
        _keys(c, ("degree", "basis"), q)
        deg = group(_int_list(c["degree"], f"{q}.degree", group.rank))
        _expect(deg not in comps, f"degree {deg} appears twice", f"{q}.degree")
        _expect(isinstance(c["basis"], list), "basis must be a list of vectors", f"{q}.basis")
        comps[deg] = [_vector(algebra, v, f"{q}.basis[{k}]") for k, v in enumerate(c["basis"])]
    try:
        return Grading(algebra, group, comps)
    except (AxiomViolated, NotDirectSum, DimensionMismatch) as exc:
        raise ValidationError(exc) from exc


def serialize_grading(G: Grading) -> str:
    return dumps(grading_to_json(G))


def parse_grading(text: str, algebra: Algebra) -> Grading:
    return grading_from_json(loads(text), algebra)


def map_to_json(phi: LinearMap):
    return {"matrix": [[c.to_json() for c in row] for row in phi.matrix]}


def map_from_json(obj, algebra: Algebra, path="$") -> LinearMap:
    """``{"matrix": rows}`` (column j = image of b_j) or ``{"images": [vector per basis vector]}``."""
    _expect(isinstance(obj, dict) and len(obj) == 1 and set(obj) <= {"matrix", "images"},
            "expected {\"matrix\": ...} or {\"images\": ...}", path)
    if "images" in obj:
        ims = obj["images"]
        _expect(isinstance(ims, list) and len(ims) == algebra.dim, f"expected {algebra.dim} images", f"{path}.images")
        return LinearMap.from_images(algebra, algebra, [_vector(algebra, v, f"{path}.images[{k}]")
                                                        for k, v in enumerate(ims)])
    rows = obj["matrix"]
    _expect(isinstance(rows, list) and len(rows) == algebra.dim, f"expected {algebra.dim} rows", f"{path}.matrix")
    return LinearMap(algebra, algebra, [_vector(algebra, r, f"{path}.matrix[{k}]") for k, r in enumerate(rows)])


# -- documents --------------------------------------------------------------


def document_to_json(A: Algebra, G: Grading | None = None):
    out = {"algebra": algebra_to_json(A)}
    if G is not None:
        out["grading"] = grading_to_json(G)
    return out


def document_from_json(obj, resolve_catalog=None, field=None):
    """Parse ``{"algebra": ..., "grading": ...}``.

    The algebra may be a catalog name; then ``resolve_catalog(name, field)``
    must return the catalog algebra.
    """
    _keys(obj, ("algebra",), "$", optional=("grading",))
    alg = obj["algebra"]
    if isinstance(alg, str):
        _expect(resolve_catalog is not None, "catalog names are not allowed here", "$.algebra")
        A = resolve_catalog(alg, field)
    else:
        A = algebra_from_json(alg, "$.algebra")
        if field is not None and field != A.field:
            raise InvalidField(f"document is over {A.field}, not {field}")
    G = grading_from_json(obj["grading"], A, "$.grading") if "grading" in obj else None
    return A, G


def serialize_document(A: Algebra, G: Grading | None = None) -> str:
    return dumps(document_to_json(A, G))


def parse_document(text: str, resolve_catalog=None, field=None):
    return document_from_json(loads(text), resolve_catalog, field)
