"""Abelian-group gradings on finite-dimensional algebras.

A :class:`Grading` is a direct-sum decomposition ``A = (+)_g A_g`` indexed by
elements of an :class:`~abgrad.groups.FPAbelianGroup` with
``A_g * A_h`` contained in ``A_{g+h}``.  Groups are written additively.
Only nonzero components are stored.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import linalg as L
from .algebra import Algebra, LinearMap, Subspace, eigensplit, is_automorphism
from .errors import (
    AmbientMismatch,
    AxiomViolated,
    ComponentNotPreserved,
    DimensionMismatch,
    GroupMismatch,
    NotAnAutomorphism,
    NotAnIsomorphism,
    NotARealization,
    NotCompatible,
    NotDirectSum,
)
from .groups import (
    FPAbelianGroup,
    GroupElement,
    GroupHom,
    abelian_group,
    direct_product,
    multiplicative_degree_group,
    subgroup_generated,
)


class Grading:
    """A validated ``group``-grading of ``algebra``.

    ``components`` maps degrees (group elements, or their canonical
    coordinates) to subspaces (or spanning lists of vectors).  Construction
    runs the full verification, raising :class:`NotDirectSum` or
    :class:`AxiomViolated` for the first offending pair of degrees.
    """

    def __init__(self, algebra: Algebra, group: FPAbelianGroup, components):
        comps = {}
        for g, space in dict(components).items():
            g = group(g)
            if not isinstance(space, Subspace):
                space = Subspace(algebra, space)
            elif space.ambient != algebra:
                raise AmbientMismatch("component is not a subspace of the graded algebra")
            if space.dim == 0:
                continue
            if g in comps:
                raise ValueError(f"degree {g} given twice")
            comps[g] = space
        self.algebra = algebra
        self.group = group
        self.components = dict(sorted(comps.items(), key=lambda kv: kv[0].coords))
        self._inverse_basis = None
        self._check()

    def _check(self):
        A = self.algebra
        F = A.field
        total = sum(s.dim for s in self.components.values())
        stacked = [v for s in self.components.values() for v in s.basis]
        r = L.rank(stacked, F)
        if total != A.dim or r != A.dim:
            raise NotDirectSum(total, r, A.dim)
        supp = list(self.components)
        for g in supp:
            for h in supp:
                target = self.components.get(g + h)
                for u in self.components[g].basis:
                    for v in self.components[h].basis:
                        w = A.multiply(u, v)
                        if not any(w):
                            continue
                        if target is None or not target.contains(w):
                            raise AxiomViolated(g, h, w)

    # -- accessors ----------------------------------------------------------
    def support(self) -> list[GroupElement]:
        return list(self.components)

    def component(self, g) -> Subspace:
        g = self.group(g)
        return self.components.get(g) or Subspace.zero(self.algebra)

    def dims(self) -> dict:
        return {g: s.dim for g, s in self.components.items()}

    def dim_multiset(self) -> tuple:
        return tuple(sorted(s.dim for s in self.components.values()))

    def component_set(self) -> frozenset:
        return frozenset(self.components.values())

    def decompose(self, v) -> dict:
        """Split ``v`` into its homogeneous parts ``{degree: vector}`` (zero parts omitted)."""
        F = self.algebra.field
        if self._inverse_basis is None:
            rows = [list(b) for s in self.components.values() for b in s.basis]
            self._inverse_basis = L.inverse(rows, F)
        coeffs = [L._dot(list(v), col) for col in L.transpose(self._inverse_basis)]
        # v = coeffs . rows
        out = {}
        k = 0
        n = self.algebra.dim
        for g, s in self.components.items():
            part = [F.zero] * n
            for b in s.basis:
                c = coeffs[k]
                k += 1
                if c:
                    part = [x + c * y for x, y in zip(part, b)]
            if any(part):
                out[g] = part
        return out

    def degree_of(self, v):
        """Degree of a nonzero homogeneous vector, else None."""
        parts = self.decompose(v)
        return next(iter(parts)) if len(parts) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        return (
            self.group == other.group
            and self.components == other.components
            and (self.algebra is other.algebra or self.algebra == other.algebra)
        )

    def __hash__(self):
        return hash((self.group, tuple(self.components)))

    def __repr__(self):
        body = ", ".join(f"{g}: dim {s.dim}" for g, s in self.components.items())
        return f"Grading<{self.group}; {body}>"


def verify_grading(A: Algebra, group: FPAbelianGroup, components) -> Grading:
    return Grading(A, group, components)


def grading_from_degrees(A: Algebra, group: FPAbelianGroup, degrees) -> Grading:
    """Grading in which basis vector ``b_i`` is homogeneous of degree ``degrees[i]``."""
    if len(degrees) != A.dim:
        raise DimensionMismatch("one degree per basis vector")
    comps: dict = {}
    for i, d in enumerate(degrees):
        comps.setdefault(group(d), []).append(A.basis_vector(i))
    return Grading(A, group, comps)


def trivial_grading(A: Algebra, group: FPAbelianGroup | None = None) -> Grading:
    group = group if group is not None else abelian_group(0, ())
    return Grading(A, group, {group.identity(): Subspace.whole(A)})


def support(grading: Grading) -> list[GroupElement]:
    return grading.support()


def normalize_to_support_subgroup(grading: Grading) -> Grading:
    """Regrade by the subgroup generated by the support."""
    supp = grading.support()
    inc = subgroup_generated(grading.group, supp)
    S = inc.src
    comps = {}
    for j, g in enumerate(supp):
        e = [int(i == j) for i in range(len(supp))]
        comps[S.from_presentation(e)] = grading.components[g]
    return Grading(grading.algebra, S, comps)


def _nonzero_product(grading, g, h) -> bool:
    A = grading.algebra
    return any(
        any(A.multiply(u, v)) for u in grading.components[g].basis for v in grading.components[h].basis
    )


def universal_group(grading: Grading, literal: bool = False):
    """The universal group ``U`` and the relabelling ``support -> U``.

    ``U`` has one generator per support element and the relation
    ``a_g + a_h = a_{g+h}`` for every ordered pair whose component product is
    nonzero.  With ``literal=True`` the relation is imposed whenever ``g``,
    ``h`` and ``g+h`` all lie in the support, regardless of the product;
    that version depends on the chosen realization and generally lacks the
    universal property, so it is only offered for comparison.
    """
    supp = grading.support()
    pos = {g: i for i, g in enumerate(supp)}
    m = len(supp)
    rels = []
    for g in supp:
        for h in supp:
            gh = g + h
            if gh not in pos:
                continue
            if not literal and not _nonzero_product(grading, g, h):
                continue
            row = [0] * m
            row[pos[g]] += 1
            row[pos[h]] += 1
            row[pos[gh]] -= 1
            rels.append(row)
    U = FPAbelianGroup(m, rels)
    relabel = {g: U.from_presentation([int(i == pos[g]) for i in range(m)]) for g in supp}
    return U, relabel


def universal_realization(grading: Grading) -> tuple[Grading, dict]:
    """The grading regraded by its universal group (re-verified), with the relabelling."""
    U, relabel = universal_group(grading)
    comps = {}
    for g, space in grading.components.items():
        u = relabel[g]
        if u in comps:
            # two support elements identified in U; impossible for a true grading
            raise AssertionError(f"universal group identifies degrees {g}")
        comps[u] = space
    return Grading(grading.algebra, U, comps), relabel


def induce(grading: Grading, rho: GroupHom) -> Grading:
    """The coarsening whose degree-``h`` component sums the ``A_g`` with ``rho(g) = h``."""
    if rho.src != grading.group:
        raise GroupMismatch(f"hom source {rho.src} differs from grading group {grading.group}")
    merged: dict = {}
    for g, space in grading.components.items():
        h = rho(g)
        merged[h] = merged[h] + space if h in merged else space
    return Grading(grading.algebra, rho.dst, merged)


def universal_property_factor(universal: Grading, realization: Grading) -> GroupHom:
    """The unique ``rho`` with ``induce(universal, rho) == realization``.

    ``universal`` must be graded by a group generated by its support
    (the universal realization); ``realization`` must have the same set of
    components.
    """
    if realization.algebra != universal.algebra:
        raise AmbientMismatch("gradings live on different algebras")
    if realization.component_set() != universal.component_set():
        raise NotARealization("component sets differ")
    U, H = universal.group, realization.group
    target = {space: h for h, space in realization.components.items()}
    supp = universal.support()
    inc = subgroup_generated(U, supp)
    if not inc.is_surjective():
        raise ValueError("support of the universal grading does not generate its group")
    images = []
    for c in U.gens():
        x = inc.src.to_presentation(inc.preimage(c))
        out = H.identity()
        for xi, u in zip(x, supp):
            if xi:
                out = out + xi * target[universal.components[u]]
        images.append(out)
    rho = GroupHom(U, H, images)
    for u in supp:
        if rho(u) != target[universal.components[u]]:
            raise NotARealization(f"degree assignment is not induced by a homomorphism at {u}")
    return rho


class Refinement(enum.Enum):
    NO = "No"
    REFINES = "Refines"
    PROPERLY_REFINES = "ProperlyRefines"


def refinement_relation(fine: Grading, coarse: Grading) -> Refinement:
    """Whether every component of ``fine`` lies inside a component of ``coarse``."""
    if fine.algebra != coarse.algebra:
        raise AmbientMismatch("gradings live on different algebras")
    proper = False
    for space in fine.components.values():
        host = next((c for c in coarse.components.values() if c.contains(space)), None)
        if host is None:
            return Refinement.NO
        if host.dim > space.dim:
            proper = True
    return Refinement.PROPERLY_REFINES if proper else Refinement.REFINES


def common_refinement(first: Grading, second: Grading) -> Grading:
    """Grading by ``G x H`` with components ``A_g & A'_h``.

    Raises :class:`NotCompatible` with the dimension deficit when the
    intersections do not fill the algebra.
    """
    if first.algebra != second.algebra:
        raise AmbientMismatch("gradings live on different algebras")
    prod = direct_product(first.group, second.group)
    comps = {}
    total = 0
    for g, U in first.components.items():
        for h, W in second.components.items():
            X = U & W
            if X.dim:
                comps[prod.pair(g, h)] = X
                total += X.dim
    if total != first.algebra.dim:
        raise NotCompatible(first.algebra.dim - total)
    return Grading(first.algebra, prod.group, comps)


def refine_by_automorphism(grading: Grading, phi: LinearMap) -> Grading:
    """Split every component into eigenspaces of a diagonalizable automorphism.

    The new group is ``G x E`` where ``E`` is the multiplicative group generated
    by the eigenvalues; an eigenvector for ``lam`` in ``A_g`` gets degree
    ``(g, deg(lam))``.  When ``E`` is trivial the input is returned unchanged.
    """
    A = grading.algebra
    if not is_automorphism(A, phi):
        raise NotAnAutomorphism("refining map is not an algebra automorphism")
    for g, space in grading.components.items():
        if not space.contains(space.image(phi)):
            raise ComponentNotPreserved(g)
    eig = eigensplit(A, phi)
    E, deg = multiplicative_degree_group(A.field, [lam for lam, _ in eig])
    if E.is_trivial():
        return grading
    prod = direct_product(grading.group, E)
    comps = {}
    for g, space in grading.components.items():
        for lam, V in eig:
            X = space & V
            if X.dim:
                comps[prod.pair(g, deg(lam))] = X
    return Grading(A, prod.group, comps)


def conjugate_grading(grading: Grading, phi: LinearMap) -> Grading:
    """The grading with components ``phi(A_g)`` at the same degrees."""
    if not is_automorphism(grading.algebra, phi):
        raise NotAnAutomorphism("conjugating map is not an algebra automorphism")
    return Grading(
        grading.algebra,
        grading.group,
        {g: space.image(phi) for g, space in grading.components.items()},
    )


def check_isomorphism_witness(first: Grading, second: Grading, phi: LinearMap) -> bool:
    if first.group != second.group:
        raise GroupMismatch(f"{first.group} vs {second.group}")
    if first.algebra != second.algebra:
        raise AmbientMismatch("gradings live on different algebras")
    if not is_automorphism(first.algebra, phi):
        return False
    if set(first.components) != set(second.components):
        return False
    return all(space.image(phi) == second.components[g] for g, space in first.components.items())


def check_equivalence_witness(first: Grading, second: Grading, alpha: GroupHom, phi: LinearMap) -> bool:
    """Check that ``phi`` is an isomorphism ``induce(U(first), alpha) -> U(second)``.

    ``alpha`` is given between the universal groups (canonical coordinates).
    """
    hat1, _ = universal_realization(first)
    hat2, _ = universal_realization(second)
    if alpha.src != hat1.group or alpha.dst != hat2.group or not alpha.is_isomorphism():
        raise NotAnIsomorphism(
            f"{alpha.src}->{alpha.dst} is not an isomorphism {hat1.group} -> {hat2.group}"
        )
    return check_isomorphism_witness(induce(hat1, alpha), hat2, phi)


@dataclass(frozen=True)
class EquivalenceFingerprint:
    component_dims: tuple
    support_size: int
    universal_group: tuple
    product_dims: tuple

    def to_json(self):
        free, tors = self.universal_group
        return {
            "component_dims": list(self.component_dims),
            "support_size": self.support_size,
            "universal_group": {"free_rank": free, "invariant_factors": list(tors)},
            "product_dims": list(self.product_dims),
        }


def equivalence_invariants(grading: Grading) -> EquivalenceFingerprint:
    U, _ = universal_group(grading)
    prods = []
    for g, X in grading.components.items():
        for h, Y in grading.components.items():
            d = X.product(Y).dim
            if d:
                prods.append(d)
    return EquivalenceFingerprint(
        component_dims=grading.dim_multiset(),
        support_size=len(grading.components),
        universal_group=U.canonical,
        product_dims=tuple(sorted(prods)),
    )


class Verdict(enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"


@dataclass
class EquivalenceResult:
    verdict: Verdict
    reason: str
    differing: tuple = ()

    def to_json(self):
        out = {"verdict": self.verdict.value, "reason": self.reason}
        if self.differing:
            out["differing_invariants"] = list(self.differing)
        return out


def decide_equivalence(first: Grading, second: Grading, witness=None) -> EquivalenceResult:
    """Equivalent only with a checked witness ``(alpha, phi)``; NotEquivalent only
    with a distinguishing invariant; Unknown otherwise."""
    if witness is not None:
        alpha, phi = witness
        try:
            if check_equivalence_witness(first, second, alpha, phi):
                return EquivalenceResult(Verdict.EQUIVALENT, "witness verified")
        except (NotAnIsomorphism, GroupMismatch, AmbientMismatch):
            pass
    if first.algebra != second.algebra:
        raise AmbientMismatch("gradings live on different algebras")
    f1, f2 = equivalence_invariants(first), equivalence_invariants(second)
    differing = tuple(
        name
        for name in ("component_dims", "support_size", "universal_group", "product_dims")
        if getattr(f1, name) != getattr(f2, name)
    )
    if differing:
        return EquivalenceResult(Verdict.NOT_EQUIVALENT, "invariants differ", differing)
    reason = "supplied witness failed; " if witness is not None else ""
    return EquivalenceResult(Verdict.UNKNOWN, reason + "invariants agree and no witness verified")
