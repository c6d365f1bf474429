"""Base change of algebras, gradings and maps along a field extension ``K/F``.

``K`` is a field whose tower contains ``F`` (or ``F`` itself).  Everything is
transported by the constant embedding of scalars, so structure constants,
component bases and matrices keep their shape.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as L
from .algebra import Algebra, LinearMap, Subspace
from .comodule import ComoduleMap
from .errors import AmbientMismatch, FieldMismatch, NotDefinedOverBase
from .grading import (
    Grading,
    Refinement,
    equivalence_invariants,
    refinement_relation,
    universal_group,
)
from .groups import groups_isomorphic
from .scalars import embed, flatten


@dataclass(frozen=True)
class ExtensionContext:
    base_field: object
    extension_field: object
    base_algebra: Algebra
    extended_algebra: Algebra

    def lift(self, v):
        return [embed(self.base_field(c), self.extension_field) for c in v]

    @property
    def degree(self) -> int:
        return self.extension_field.degree_over(self.base_field)


def extend_algebra(A: Algebra, K) -> ExtensionContext:
    F = A.field
    if F not in K.tower():
        raise FieldMismatch(f"{K} is not an extension of {F}")
    if K == F:
        return ExtensionContext(F, K, A, A)
    sc = [[[embed(c, K) for c in vec] for vec in row] for row in A.structure_constants]
    return ExtensionContext(F, K, A, Algebra(K, sc, A.basis_names))


def _check_grading(ctx, grading):
    if grading.algebra != ctx.base_algebra:
        raise AmbientMismatch("grading is not on the base algebra of the extension")


def extend_grading(ctx: ExtensionContext, grading: Grading) -> Grading:
    _check_grading(ctx, grading)
    AK = ctx.extended_algebra
    comps = {g: Subspace(AK, [ctx.lift(v) for v in s.basis]) for g, s in grading.components.items()}
    return Grading(AK, grading.group, comps)


def extend_map(ctx: ExtensionContext, phi: LinearMap) -> LinearMap:
    if phi.src.field != ctx.base_field or phi.src != ctx.base_algebra or phi.dst != ctx.base_algebra:
        raise FieldMismatch("map is not defined on the base algebra")
    AK = ctx.extended_algebra
    return LinearMap(AK, AK, [ctx.lift(row) for row in phi.matrix])


def extend_comodule(ctx: ExtensionContext, rho: ComoduleMap) -> ComoduleMap:
    if rho.algebra != ctx.base_algebra:
        raise AmbientMismatch("comodule is not on the base algebra of the extension")
    action = [[(g, ctx.lift(v)) for g, v in image] for image in rho.action]
    return ComoduleMap(ctx.extended_algebra, rho.group, action)


@dataclass
class ExtensionReport:
    checks: dict = dc_field(default_factory=dict)
    extended: Grading | None = None

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self):
        return {"passed": self.passed, "checks": dict(sorted(self.checks.items()))}


def check_extension_invariants(ctx: ExtensionContext, grading: Grading, refinements=()) -> ExtensionReport:
    """Compare ``grading`` with its extension; ``refinements`` are proper refinements of ``grading``.

    Never raises for a failing assertion; each check is recorded instead.
    """
    report = ExtensionReport()
    try:
        GK = extend_grading(ctx, grading)
    except Exception:  # noqa: BLE001 - the report records the failure
        report.checks["extended_grading_valid"] = False
        return report
    report.extended = GK
    c = report.checks
    c["extended_grading_valid"] = True
    c["support_equal"] = GK.support() == grading.support()
    c["dims_equal"] = GK.dims() == grading.dims()
    c["dim_multiset_equal"] = GK.dim_multiset() == grading.dim_multiset()
    c["universal_group_isomorphic"] = groups_isomorphic(universal_group(GK)[0], universal_group(grading)[0])
    c["fingerprint_equal"] = equivalence_invariants(GK) == equivalence_invariants(grading)
    for k, fine in enumerate(refinements):
        proper = refinement_relation(fine, grading) == Refinement.PROPERLY_REFINES
        try:
            lifted = refinement_relation(extend_grading(ctx, fine), GK) == Refinement.PROPERLY_REFINES
        except Exception:  # noqa: BLE001
            lifted = False
        c[f"refinement_{k}_proper_after_extension"] = proper and lifted
    return report


def rational_points(ctx: ExtensionContext, space: Subspace) -> Subspace:
    """The base-field subspace ``{v in F^n : v in space}``."""
    F, K = ctx.base_field, ctx.extension_field
    A = ctx.base_algebra
    n = A.dim
    # v lies in ``space`` iff it is annihilated by every row of ``C``
    C = L.right_kernel(space.basis, n, K) if space.dim else L.identity(K, n)
    eqs = []
    for row in C:
        coords = [flatten(c, F) for c in row]
        for slot in range(ctx.degree):
            eqs.append([coords[j][slot] for j in range(n)])
    sols = L.right_kernel(eqs, n, F) if eqs else [A.basis_vector(i) for i in range(n)]
    return Subspace(A, sols)


def try_descend(ctx: ExtensionContext, grading: Grading) -> Grading:
    """Return the base-field grading whose extension is ``grading``, if the
    components are literally spanned by base-rational vectors."""
    if grading.algebra != ctx.extended_algebra:
        raise AmbientMismatch("grading is not on the extended algebra")
    comps = {}
    for g, space in grading.components.items():
        R = rational_points(ctx, space)
        if R.dim != space.dim:
            raise NotDefinedOverBase(g, R.dim, space.dim)
        comps[g] = R
    return Grading(ctx.base_algebra, grading.group, comps)
