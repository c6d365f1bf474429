"""Command-line driver.

Every command prints one JSON document on standard output.  Exit codes:
0 success / the property holds, 1 checked and fails, 2 usage or parse error,
3 undecided (``equiv-check`` without a witness or distinguishing invariant).
"""

from __future__ import annotations

import argparse
import sys

from . import catalog as C
from . import serialize as S
from .algebra import Algebra
from .comodule import (
    ComoduleMap,
    comodule_from_grading,
    grading_from_comodule,
    verify_generic_automorphism,
)
from .errors import (
    AlgebraError,
    AxiomViolated,
    ComponentNotPreserved,
    NotAnAutomorphism,
    NotAGenericAutomorphism,
    NotCompatible,
    NotDefinedOverBase,
    NotDiagonalizable,
    NotDirectSum,
    NotSplitOverField,
    ParseError,
    ValidationError,
)
from .extension import check_extension_invariants, extend_algebra, extend_grading, try_descend
from .grading import (
    Verdict,
    common_refinement,
    decide_equivalence,
    equivalence_invariants,
    induce,
    refine_by_automorphism,
    refinement_relation,
    universal_group,
)
from .groups import parse_hom
from .scalars import descend_scalar, parse_field_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


# -- input handling -----------------------------------------------------------


def _field(args):
    if getattr(args, "field", None) is None:
        return None
    try:
        return parse_field_spec(args.field)
    except (ValueError, AlgebraError) as exc:
        raise _Usage(f"bad --field: {exc}") from None


def _catalog_algebra(args):
    def resolve(name, field):
        return _entry(args, name, field).algebra

    return resolve


def _entry(args, name, field=None):
    params = {"n": args.n} if name == "group_algebra_zn" and getattr(args, "n", None) else {}
    return C.catalog_load(name, field if field is not None else _field(args) or C.QQ, **params)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path}: {exc.strerror}") from None


def _load_documents(args, count):
    """Return ``count`` (algebra, grading) pairs from files or the catalog."""
    names = args.grading or []
    if args.catalog:
        if args.files:
            raise _Usage("give either input files or --catalog, not both")
        if len(names) != count:
            raise _Usage(f"this command needs {count} --grading name(s) with --catalog")
        entry = _entry(args, args.catalog)
        return [(entry.algebra, entry.grading(n)) for n in names]
    if len(args.files) != count:
        raise _Usage(f"this command needs {count} input document(s)")
    out = []
    for path in args.files:
        A, G = S.parse_document(_read(path), _catalog_algebra(args), _field(args))
        if G is None:
            raise ParseError("document has no grading", "$")
        out.append((A, G))
    if count == 2 and out[0][0] != out[1][0]:
        raise _Usage("the two gradings live on different algebras")
    return out


def _one(args):
    return _load_documents(args, 1)[0]


def _map_arg(args, A):
    if args.map is None:
        raise _Usage("--map is required")
    text = args.map if args.map.lstrip().startswith("{") else _read(args.map)
    return S.map_from_json(S.loads(text), A)


def _summary(G):
    return {
        "group": str(G.group),
        "support": [list(g.coords) for g in G.support()],
        "dims": [s.dim for s in G.components.values()],
    }


def _error_payload(exc):
    cause = exc.cause if isinstance(exc, ValidationError) else exc
    out = {"error": type(cause).__name__, "message": str(cause)}
    if isinstance(cause, AxiomViolated):
        out.update(g=list(cause.g.coords), h=list(cause.h.coords), witness=[c.to_json() for c in cause.witness])
    elif isinstance(cause, NotDirectSum):
        out.update(total_dim=cause.total_dim, rank=cause.rank, dim=cause.dim)
    elif isinstance(cause, NotCompatible):
        out.update(deficit=cause.deficit)
    elif isinstance(cause, NotDefinedOverBase):
        out.update(degree=list(cause.degree.coords), rational_dim=cause.rational_dim, dim=cause.dim)
    elif isinstance(cause, ParseError):
        out.update(path=cause.path, line=cause.line, column=cause.column)
    return out


# -- commands ---------------------------------------------------------------


def cmd_verify(args):
    A, G = _one(args)
    return EXIT_OK, {"valid": True, **_summary(G)}


def cmd_support(args):
    _, G = _one(args)
    supp = [list(g.coords) for g in G.support()]
    return EXIT_OK, {"support": supp, "size": len(supp)}


def cmd_ugroup(args):
    _, G = _one(args)
    U, relabel = universal_group(G, literal=args.literal)
    free, tors = U.canonical
    out = {"free_rank": free, "invariant_factors": list(tors)}
    if args.relabel:
        out["relabel"] = [{"degree": list(g.coords), "image": list(u.coords)} for g, u in relabel.items()]
    return EXIT_OK, out


def _hom(args, src):
    try:
        return parse_hom(args.hom, src)
    except ValueError as exc:
        raise _Usage(f"bad --hom: {exc}") from None


def cmd_induce(args):
    A, G = _one(args)
    H = induce(G, _hom(args, G.group))
    return EXIT_OK, {"support_size": len(H.components), **_summary(H), "document": S.document_to_json(A, H)}


def cmd_refine_aut(args):
    A, G = _one(args)
    phi = _map_arg(args, A)
    try:
        R = refine_by_automorphism(G, phi)
    except (NotSplitOverField, NotDiagonalizable, NotAnAutomorphism, ComponentNotPreserved) as exc:
        return EXIT_FAIL, _error_payload(exc)
    rel = refinement_relation(R, G)
    return EXIT_OK, {"relation": rel.value, **_summary(R), "document": S.document_to_json(A, R)}


def cmd_common_refine(args):
    (A, G1), (_, G2) = _load_documents(args, 2)
    try:
        R = common_refinement(G1, G2)
    except NotCompatible as exc:
        return EXIT_FAIL, _error_payload(exc)
    return EXIT_OK, {**_summary(R), "document": S.document_to_json(A, R)}


def cmd_invariants(args):
    _, G = _one(args)
    return EXIT_OK, equivalence_invariants(G).to_json()


def cmd_equiv_check(args):
    (A, G1), (_, G2) = _load_documents(args, 2)
    witness = None
    if args.witness:
        text = args.witness if args.witness.lstrip().startswith("{") else _read(args.witness)
        obj = S.loads(text)
        if not isinstance(obj, dict) or set(obj) != {"alpha", "phi"} or not isinstance(obj["alpha"], str):
            raise ParseError('witness must be {"alpha": "hom", "phi": {"matrix": ...}}', "$")
        U1, _ = universal_group(G1)
        try:
            alpha = parse_hom(obj["alpha"], U1)
        except ValueError as exc:
            raise ParseError(f"bad alpha: {exc}", "$.alpha") from None
        witness = (alpha, S.map_from_json(obj["phi"], A, "$.phi"))
    res = decide_equivalence(G1, G2, witness)
    code = {Verdict.EQUIVALENT: EXIT_OK, Verdict.NOT_EQUIVALENT: EXIT_FAIL, Verdict.UNKNOWN: EXIT_UNKNOWN}
    return code[res.verdict], res.to_json()


def _target_field(args):
    try:
        return parse_field_spec(args.to)
    except (ValueError, AlgebraError) as exc:
        raise _Usage(f"bad --to: {exc}") from None


def cmd_extend(args):
    A, G = _one(args)
    ctx = extend_algebra(A, _target_field(args))
    report = check_extension_invariants(ctx, G)
    GK = extend_grading(ctx, G)
    out = {"report": report.to_json(), "document": S.document_to_json(ctx.extended_algebra, GK)}
    return (EXIT_OK if report.passed else EXIT_FAIL), out


def cmd_descend(args):
    AK, GK = _one(args)
    K = AK.field
    if not hasattr(K, "base"):
        raise _Usage(f"{K} is not an extension field")
    if args.to:
        F = _target_field(args)
    else:
        F = K.base
    if F not in K.tower():
        raise _Usage(f"{F} is not a subfield of {K}")
    base_sc = []
    for row in AK.structure_constants:
        base_row = []
        for vec in row:
            vals = [descend_scalar(c, F) for c in vec]
            if any(v is None for v in vals):
                return EXIT_FAIL, {"error": "NotDefinedOverBase", "message": "structure constants are not over the base"}
            base_row.append(vals)
        base_sc.append(base_row)
    A = Algebra(F, base_sc, AK.basis_names)
    ctx = extend_algebra(A, K)
    if ctx.extended_algebra != AK:
        raise _Usage("algebra does not descend")
    try:
        G = try_descend(ctx, GK)
    except NotDefinedOverBase as exc:
        return EXIT_FAIL, _error_payload(exc)
    return EXIT_OK, {**_summary(G), "document": S.document_to_json(A, G)}


def _comodule_from_json(obj, A):
    S._keys(obj, ("group", "action"), "$.comodule")
    group = S.group_from_json(obj["group"], "$.comodule.group")
    acts = obj["action"]
    if not isinstance(acts, list) or len(acts) != A.dim:
        raise ParseError(f"expected {A.dim} images", "$.comodule.action")
    action = []
    for i, image in enumerate(acts):
        p = f"$.comodule.action[{i}]"
        if not isinstance(image, list):
            raise ParseError("expected a list of terms", p)
        terms = []
        for k, t in enumerate(image):
            q = f"{p}[{k}]"
            S._keys(t, ("degree", "vector"), q)
            deg = group(S._int_list(t["degree"], f"{q}.degree", group.rank))
            terms.append((deg, S._vector(A, t["vector"], f"{q}.vector")))
        action.append(terms)
    return ComoduleMap(A, group, action)


def cmd_comodule_check(args):
    if args.files and not args.catalog and len(args.files) == 1:
        obj = S.loads(_read(args.files[0]))
        if isinstance(obj, dict) and "comodule" in obj:
            A, _ = S.document_from_json({"algebra": obj.get("algebra")}, _catalog_algebra(args), _field(args))
            rho = _comodule_from_json(obj["comodule"], A)
            ok = verify_generic_automorphism(rho)
            out = {"generic_automorphism": ok}
            if ok:
                G = grading_from_comodule(rho)
                out.update(_summary(G))
                out["roundtrip"] = comodule_from_grading(G) == rho
            return (EXIT_OK if ok else EXIT_FAIL), out
    A, G = _one(args)
    rho = comodule_from_grading(G)
    ok = verify_generic_automorphism(rho)
    try:
        back = grading_from_comodule(rho) == G
    except NotAGenericAutomorphism:
        back = False
    return (EXIT_OK if ok and back else EXIT_FAIL), {"generic_automorphism": ok, "roundtrip": back}


def cmd_catalog(args):
    if not args.name:
        return EXIT_OK, {"entries": list(C.CATALOG_NAMES)}
    entry = _entry(args, args.name)
    if args.grading:
        if len(args.grading) != 1:
            raise _Usage("catalog takes at most one --grading")
        return EXIT_OK, S.document_to_json(entry.algebra, entry.grading(args.grading[0]))
    return EXIT_OK, {
        "name": entry.name,
        "notes": entry.notes,
        "algebra": S.algebra_to_json(entry.algebra),
        "gradings": {name: S.grading_to_json(g) for name, g in entry.gradings.items()},
    }


# -- parser -----------------------------------------------------------------


def _inputs(p, two=False):
    p.add_argument("files", nargs="*", help="JSON document(s) {algebra, grading}; '-' reads stdin")
    p.add_argument("--catalog", help="use a built-in algebra instead of files")
    p.add_argument(
        "--grading",
        action="append",
        help="catalog grading name" + (" (give twice)" if two else ""),
    )
    p.add_argument("--field", help="Q, Fp, or an extension such as Q[-2,0,1]")
    p.add_argument("--n", type=int, help="order for group_algebra_zn")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="abgrad", description="Exact computations with abelian group gradings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text, two=False):
        p = sub.add_parser(name, help=help_text)
        _inputs(p, two)
        p.set_defaults(func=func)
        return p

    add("verify", cmd_verify, "check the grading axioms")
    add("support", cmd_support, "list the support")
    p = add("ugroup", cmd_ugroup, "universal group")
    p.add_argument("--relabel", action="store_true", help="also print support -> U")
    p.add_argument("--literal", action="store_true", help="impose a relation whenever g, h, g+h lie in the support")
    p = add("induce", cmd_induce, "coarsen along a group homomorphism")
    p.add_argument("--hom", required=True, help='e.g. "Z->Z/2:1"')
    p = add("refine-aut", cmd_refine_aut, "refine by eigenspaces of an automorphism")
    p.add_argument("--map", help='file or inline JSON {"matrix": ...} / {"images": ...}')
    add("common-refine", cmd_common_refine, "intersect two gradings", two=True)
    add("invariants", cmd_invariants, "equivalence fingerprint")
    p = add("equiv-check", cmd_equiv_check, "Equivalent / NotEquivalent / Unknown", two=True)
    p.add_argument("--witness", help='file or inline JSON {"alpha": hom, "phi": map}')
    p = add("extend", cmd_extend, "extend scalars and check invariance")
    p.add_argument("--to", required=True, help="extension field, e.g. Q[-2,0,1]")
    p = add("descend", cmd_descend, "descend a grading to the base field")
    p.add_argument("--to", help="base field (default: the immediate base)")
    add("comodule-check", cmd_comodule_check, "check the generic automorphism of a grading or comodule")
    p = sub.add_parser("catalog", help="list or dump catalog entries")
    p.add_argument("name", nargs="?")
    p.add_argument("--grading", action="append")
    p.add_argument("--field")
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_catalog)
    return parser


def cli_main(argv=None, stdout=None) -> int:
    out = stdout if stdout is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        code, payload = args.func(args)
    except _Usage as exc:
        code, payload = EXIT_USAGE, {"error": "UsageError", "message": str(exc)}
    except ValidationError as exc:
        code, payload = EXIT_FAIL, {"valid": False, **_error_payload(exc)}
    except AlgebraError as exc:
        code, payload = EXIT_USAGE, _error_payload(exc)
    out.write(S.dumps(payload))
    return code


def main() -> None:  # console-script entry point
    sys.exit(cli_main())
