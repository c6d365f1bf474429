"""Gradings as comodule structures ``A -> A (x) FG``.

A G-grading is the same thing as a coaction ``rho(a) = sum_g a_g (x) g`` that
is counital, coassociative and multiplicative.  Its FG-linear extension is the
generic automorphism of ``A (x) FG``; evaluating the group-algebra variable at
a character gives ordinary automorphisms of ``A``.
"""

from __future__ import annotations

from . import linalg as L
from .algebra import Algebra, LinearMap, Subspace, is_automorphism
from .errors import (
    CharacterValueUnavailable,
    DimensionMismatch,
    FieldMismatch,
    GroupMismatch,
    NotAGenericAutomorphism,
)
from .factor import primitive_roots_of_unity
from .grading import Grading
from .groups import FPAbelianGroup, GroupElement, GroupHom
from .scalars import Scalar, embed


class GroupAlgebra:
    """The group algebra ``FG``; elements are dicts ``{GroupElement: Scalar}`` without zeros.

    Free coordinates behave like Laurent exponents, torsion coordinates are
    reduced by the group, so dict keys are already in normal form.
    """

    def __init__(self, field, group: FPAbelianGroup):
        self.field = field
        self.group = group

    def element(self, terms) -> dict:
        out: dict = {}
        for g, c in dict(terms).items():
            g = self.group(g)
            c = self.field(c)
            out[g] = out[g] + c if g in out else c
        return {g: c for g, c in sorted(out.items(), key=lambda kv: kv[0].coords) if c}

    def basis(self, g) -> dict:
        return {self.group(g): self.field.one}

    def one(self) -> dict:
        return self.basis(self.group.identity())

    def add(self, x, y) -> dict:
        return self.element(_collect(list(x.items()) + list(y.items())))

    def mul(self, x, y) -> dict:
        out: dict = {}
        for g, a in x.items():
            for h, b in y.items():
                k = g + h
                out[k] = out[k] + a * b if k in out else a * b
        return self.element(out)

    def push(self, x, alpha: GroupHom, target: "GroupAlgebra") -> dict:
        """The algebra map ``alpha_* : FG -> FH`` on basis elements ``g -> alpha(g)``."""
        return target.element(_collect((alpha(g), c) for g, c in x.items()))

    def __eq__(self, other):
        return isinstance(other, GroupAlgebra) and self.field == other.field and self.group == other.group

    def __hash__(self):
        return hash((self.field, self.group))

    def __repr__(self):
        return f"GroupAlgebra({self.field!r}, {self.group})"


def _collect(pairs):
    out: dict = {}
    for g, c in pairs:
        out[g] = out[g] + c if g in out else c
    return out


def _add_vec(u, v):
    return [a + b for a, b in zip(u, v)]


def _scale_vec(c, v):
    return [c * a for a in v]


class ComoduleMap:
    """A linear map ``A -> A (x) FG`` stored per basis vector.

    ``action[i]`` is a tuple of ``(GroupElement, vector)`` pairs sorted by
    degree with nonzero vectors, so ``b_i -> sum vector (x) degree``.
    """

    def __init__(self, algebra: Algebra, group: FPAbelianGroup, action):
        F = algebra.field
        if len(action) != algebra.dim:
            raise DimensionMismatch("one image per basis vector")
        rows = []
        for image in action:
            acc: dict = {}
            items = image.items() if isinstance(image, dict) else image
            for g, v in items:
                g = group(g)
                v = [F(c) for c in v]
                if len(v) != algebra.dim:
                    raise DimensionMismatch(f"vectors have {algebra.dim} coordinates")
                acc[g] = _add_vec(acc[g], v) if g in acc else v
            rows.append(
                tuple((g, tuple(v)) for g, v in sorted(acc.items(), key=lambda kv: kv[0].coords) if any(v))
            )
        self.algebra = algebra
        self.group = group
        self.group_algebra = GroupAlgebra(F, group)
        self.action = tuple(rows)

    @classmethod
    def from_degrees(cls, algebra: Algebra, group: FPAbelianGroup, degrees) -> "ComoduleMap":
        """``b_i -> b_i (x) degrees[i]``; no validity check."""
        return cls(algebra, group, [[(d, algebra.basis_vector(i))] for i, d in enumerate(degrees)])

    def apply(self, v) -> dict:
        """Image of an arbitrary vector, as ``{degree: vector}`` without zero parts."""
        out: dict = {}
        for c, image in zip(v, self.action):
            if not c:
                continue
            for g, w in image:
                part = _scale_vec(c, w)
                out[g] = _add_vec(out[g], part) if g in out else part
        return {g: w for g, w in sorted(out.items(), key=lambda kv: kv[0].coords) if any(w)}

    def degrees(self) -> list[GroupElement]:
        seen = {g for image in self.action for g, _ in image}
        return sorted(seen, key=lambda g: g.coords)

    def degree_matrix(self, g) -> list[list]:
        """Matrix of ``v -> (rho(v))_g``."""
        F = self.algebra.field
        n = self.algebra.dim
        g = self.group(g)
        cols = []
        for image in self.action:
            col = dict(image).get(g)
            cols.append(list(col) if col is not None else [F.zero] * n)
        return L.transpose(cols, n)

    def __eq__(self, other):
        if not isinstance(other, ComoduleMap):
            return NotImplemented
        return self.group == other.group and self.action == other.action and self.algebra == other.algebra

    def __hash__(self):
        return hash((self.group, self.action))

    def __repr__(self):
        return f"ComoduleMap<{self.group}; {len(self.degrees())} degrees>"


def comodule_from_grading(grading: Grading) -> ComoduleMap:
    A = grading.algebra
    action = [grading.decompose(A.basis_vector(i)) for i in range(A.dim)]
    return ComoduleMap(A, grading.group, action)


def _tensor_product(A, x: dict, y: dict) -> dict:
    out: dict = {}
    for g, u in x.items():
        for h, v in y.items():
            w = A.multiply(list(u), list(v))
            k = g + h
            out[k] = _add_vec(out[k], w) if k in out else w
    return {g: w for g, w in out.items() if any(w)}


def verify_generic_automorphism(rho: ComoduleMap) -> bool:
    """Whether ``rho`` is the coaction of a grading.

    Checks the counit (the parts of ``rho(b_i)`` add up to ``b_i``),
    coassociativity (each part of degree ``g`` is itself sent to part (x) g)
    and multiplicativity on all basis pairs.  Counit plus coassociativity give
    a direct-sum decomposition, so the FG-linear extension is bijective.
    """
    A = rho.algebra
    n = A.dim
    F = A.field
    for i, image in enumerate(rho.action):
        total = [F.zero] * n
        for g, v in image:
            total = _add_vec(total, v)
            if rho.apply(v) != {g: list(v)}:
                return False
        if total != A.basis_vector(i):
            return False
    images = [{g: list(v) for g, v in image} for image in rho.action]
    for i in range(n):
        for j in range(n):
            lhs = rho.apply(A.product_vector(i, j))
            rhs = _tensor_product(A, images[i], images[j])
            if lhs != dict(sorted(rhs.items(), key=lambda kv: kv[0].coords)):
                return False
    return True


def grading_from_comodule(rho: ComoduleMap) -> Grading:
    """Components ``A_g = {a : rho(a) = a (x) g}`` by exact linear algebra."""
    if not verify_generic_automorphism(rho):
        raise NotAGenericAutomorphism("coaction is not counital, coassociative and multiplicative")
    A = rho.algebra
    F = A.field
    n = A.dim
    degs = rho.degrees()
    mats = {g: rho.degree_matrix(g) for g in degs}
    comps = {}
    for g in degs:
        rows = []
        for h in degs:
            M = mats[h]
            if h == g:
                rows.extend([c - F.one if r == k else c for k, c in enumerate(row)] for r, row in enumerate(M))
            else:
                rows.extend(list(row) for row in M)
        comps[g] = Subspace(A, L.right_kernel(rows, n, F))
    return Grading(A, rho.group, comps)


def pushforward(rho: ComoduleMap, alpha: GroupHom) -> ComoduleMap:
    """Apply ``alpha_* : FG -> FH`` to the group-algebra factor."""
    if alpha.src != rho.group:
        raise GroupMismatch(f"hom source {alpha.src} differs from {rho.group}")
    action = [[(alpha(g), v) for g, v in image] for image in rho.action]
    return ComoduleMap(rho.algebra, alpha.dst, action)


class Character:
    """A homomorphism from ``group`` to the multiplicative group of ``field``.

    ``values[j]`` is the value on the ``j``-th canonical generator; a torsion
    generator of order ``d`` must go to a ``d``-th root of unity.
    """

    def __init__(self, group: FPAbelianGroup, values, field=None):
        if len(values) != group.rank:
            raise DimensionMismatch(f"{group} needs {group.rank} character values")
        if field is None:
            if not values or not isinstance(values[0], Scalar):
                raise ValueError("field must be given when it cannot be read off the values")
            field = values[0].field
        vals = []
        for v, d in zip(values, group.orders):
            v = v if isinstance(v, Scalar) and v.field == field else _embed_value(v, field)
            if not v:
                raise ValueError("character values must be nonzero")
            if d and v**d != field.one:
                raise ValueError(f"value {v} on a generator of order {d} is not a root of unity of that order")
            vals.append(v)
        self.group = group
        self.field = field
        self.values = tuple(vals)

    @classmethod
    def trivial(cls, group: FPAbelianGroup, field) -> "Character":
        return cls(group, [field.one] * group.rank, field)

    @classmethod
    def with_orders(cls, group: FPAbelianGroup, field, orders) -> "Character":
        """Send generator ``j`` to the first primitive ``orders[j]``-th root of unity in ``field``."""
        vals = []
        for m, d in zip(orders, group.orders):
            if d and d % m:
                raise ValueError(f"order {m} does not divide generator order {d}")
            found = primitive_roots_of_unity(field, m)
            if not found:
                raise CharacterValueUnavailable(f"{field} has no primitive {m}-th root of unity")
            vals.append(found[0])
        return cls(group, vals, field)

    def __call__(self, g) -> Scalar:
        g = self.group(g)
        out = self.field.one
        for v, e in zip(self.values, g.coords):
            if e:
                out = out * v**e
        return out

    def __mul__(self, other: "Character") -> "Character":
        if other.group != self.group:
            raise GroupMismatch("characters on different groups")
        return Character(self.group, [a * b for a, b in zip(self.values, other.values)], self.field)

    def __eq__(self, other):
        return isinstance(other, Character) and self.group == other.group and self.values == other.values

    def __hash__(self):
        return hash((self.group, self.values))

    def __repr__(self):
        return f"Character({self.group}; {', '.join(map(str, self.values))})"


def _embed_value(v, field):
    if isinstance(v, Scalar):
        try:
            return embed(v, field)
        except FieldMismatch:
            raise CharacterValueUnavailable(f"{v} does not lie in {field}") from None
    return field(v)


def specialize_character(rho: ComoduleMap, chi: Character) -> LinearMap:
    """The automorphism ``a -> chi(g) a`` on each ``A_g``."""
    if chi.group != rho.group:
        raise GroupMismatch(f"character on {chi.group}, grading by {rho.group}")
    A = rho.algebra
    F = A.field
    n = A.dim
    cache: dict = {}

    def value(g):
        if g not in cache:
            cache[g] = _embed_value(chi(g), F)
        return cache[g]

    images = []
    for image in rho.action:
        col = [F.zero] * n
        for g, v in image:
            col = _add_vec(col, _scale_vec(value(g), v))
        images.append(col)
    phi = LinearMap.from_images(A, A, images)
    if not is_automorphism(A, phi):
        raise NotAGenericAutomorphism("specialization is not an automorphism; the coaction is invalid")
    return phi
