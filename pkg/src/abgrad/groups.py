"""Finitely presented abelian groups in Smith normal form.

A group is presented by ``ngens`` generators and an integer relation matrix
(one relation per row).  The Smith normal form of the relation matrix gives
the canonical decomposition ``Z^r x Z/d1 x ... x Z/dk`` with ``d1 | d2 | ...``
and every ``di >= 2``.  Elements always live in *canonical coordinates*: free
coordinates first, then torsion coordinates reduced modulo ``di``.

Two groups compare equal when their canonical data agree; the presentation
is kept only to translate presentation coordinates and for serialization.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DimensionMismatch,
    GroupMismatch,
    NotAnIsomorphism,
    RelationNotKilled,
    UnsupportedField,
    ZeroGenerator,
)
from .scalars import QQ, Scalar, factor_integer, factor_rational_multiplicative


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _snf(M, ncols=None):
    """Return (S, U, V, Vinv) with S = U M V; see :func:`smith_normal_form`."""
    S = [list(map(int, row)) for row in M]
    r = len(S)
    n = len(S[0]) if S else (ncols or 0)
    U, V, Vinv = _identity(r), _identity(n), _identity(n)

    def row_add(dst, src, q):  # row_dst += q * row_src
        if q:
            S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def col_add(dst, src, q):  # col_dst += q * col_src
        if q:
            for row in S:
                row[dst] += q * row[src]
            for row in V:
                row[dst] += q * row[src]
            Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def row_swap(a, b):
        if a != b:
            S[a], S[b] = S[b], S[a]
            U[a], U[b] = U[b], U[a]

    def col_swap(a, b):
        if a != b:
            for row in S:
                row[a], row[b] = row[b], row[a]
            for row in V:
                row[a], row[b] = row[b], row[a]
            Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    for t in range(min(r, n)):
        while True:
            best = None
            for i in range(t, r):
                for j in range(t, n):
                    v = abs(S[i][j])
                    if v and (best is None or v < best[0]):
                        best = (v, i, j)
            if best is None:
                break
            _, i, j = best
            row_swap(t, i)
            col_swap(t, j)
            p = S[t][t]
            for i in range(t + 1, r):
                row_add(i, t, -(S[i][t] // p))
            for j in range(t + 1, n):
                col_add(j, t, -(S[t][j] // p))
            if any(S[i][t] for i in range(t + 1, r)) or any(S[t][j] for j in range(t + 1, n)):
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, 1)
        if best is None:
            break
        if S[t][t] < 0:
            S[t] = [-a for a in S[t]]
            U[t] = [-a for a in U[t]]
    return S, U, V, Vinv


def smith_normal_form(M):
    """Smith normal form ``S = U * M * V`` of an integer matrix.

    ``U`` and ``V`` are unimodular; ``S`` is diagonal with nonnegative entries
    ``s1 | s2 | ...``.  Only ``S`` is canonical.  The pivot in each round is the
    nonzero entry of least absolute value (row-major tie break).

    >>> smith_normal_form([[2, 0], [0, 3]])[0]
    [[1, 0], [0, 6]]
    """
    S, U, V, _ = _snf(M)
    return S, U, V


def _matvec_row(x, M):
    """Row vector times matrix."""
    if not M:
        return []
    out = [0] * len(M[0])
    for xi, row in zip(x, M):
        if xi:
            for j, a in enumerate(row):
                out[j] += xi * a
    return out


def _integer_left_solve(B, v, ncols):
    """Integer x with x * B = v, or None."""
    S, U, V, _ = _snf(B, ncols)
    w = _matvec_row(v, V) if V else []
    p = len(S)
    y = [0] * p
    for j in range(ncols):
        s = S[j][j] if j < p else 0
        if s:
            if w[j] % s:
                return None
            y[j] = w[j] // s
        elif w[j]:
            return None
    return _matvec_row(y, U) if U else []


def _integer_left_kernel(B, ncols):
    S, U, _, _ = _snf(B, ncols)
    return [U[i] for i in range(len(S)) if not any(S[i])]


class FPAbelianGroup:
    """The abelian group ``Z^ngens / rowspace(relations)``."""

    def __init__(self, ngens: int, relations=()):
        relations = [list(map(int, row)) for row in relations]
        if ngens < 0 or any(len(row) != ngens for row in relations):
            raise DimensionMismatch(f"every relation must have {ngens} entries")
        self.ngens = ngens
        self.relations = relations
        S, U, V, Vinv = _snf(relations, ngens)
        diag = [S[i][i] if i < len(S) else 0 for i in range(ngens)]
        self._free_cols = [j for j in range(ngens) if diag[j] == 0]
        self._tors_cols = [j for j in range(ngens) if diag[j] > 1]
        self.free_rank = len(self._free_cols)
        self.invariant_factors = tuple(diag[j] for j in self._tors_cols)
        self.change_of_basis = (V, Vinv)
        self._orders = (0,) * self.free_rank + self.invariant_factors

    # -- canonical data ---------------------------------------------------
    @property
    def canonical(self):
        return (self.free_rank, self.invariant_factors)

    @property
    def rank(self) -> int:
        """Number of canonical coordinates."""
        return len(self._orders)

    @property
    def orders(self):
        """Order of each canonical generator; 0 for free generators."""
        return self._orders

    def order(self):
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.rank == 0

    # -- elements ---------------------------------------------------------
    def __call__(self, coords) -> "GroupElement":
        if isinstance(coords, GroupElement):
            if coords.group != self:
                raise GroupMismatch(f"{coords} is not in {self}")
            return coords
        if isinstance(coords, int):
            coords = [coords]
        coords = list(coords)
        if len(coords) != self.rank:
            raise DimensionMismatch(f"{self} elements have {self.rank} coordinates, got {coords}")
        return GroupElement(self, tuple(c % d if d else c for c, d in zip(coords, self._orders)))

    def identity(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def gens(self) -> list["GroupElement"]:
        return [self([int(i == j) for j in range(self.rank)]) for i in range(self.rank)]

    def from_presentation(self, x) -> "GroupElement":
        """Class of a vector in presentation coordinates."""
        x = list(x)
        if len(x) != self.ngens:
            raise DimensionMismatch(f"presentation has {self.ngens} generators")
        y = _matvec_row(x, self.change_of_basis[0])
        return self([y[j] for j in self._free_cols + self._tors_cols])

    def to_presentation(self, g: "GroupElement") -> list[int]:
        """A presentation-coordinate vector representing ``g``."""
        z = [0] * self.ngens
        for c, j in zip(self(g).coords, self._free_cols + self._tors_cols):
            z[j] = c
        return _matvec_row(z, self.change_of_basis[1])

    def elements(self):
        if self.free_rank:
            raise ValueError(f"{self} is infinite")
        out = [()]
        for d in self.invariant_factors:
            out = [c + (k,) for c in out for k in range(d)]
        return [GroupElement(self, c) for c in out]

    def canonical_relations(self):
        """Relation rows of the canonical presentation (one per torsion coordinate)."""
        f = self.free_rank
        return [
            [d if j == f + i else 0 for j in range(self.rank)]
            for i, d in enumerate(self.invariant_factors)
        ]

    # -- protocol ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FPAbelianGroup):
            return NotImplemented
        return self is other or self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __str__(self):
        return format_group(self.free_rank, self.invariant_factors)

    def __repr__(self):
        return f"FPAbelianGroup<{self}>"

    def to_json(self):
        return {"ngens": self.ngens, "relations": [list(r) for r in self.relations]}


def group_from_presentation(ngens: int, relations=()) -> FPAbelianGroup:
    return FPAbelianGroup(ngens, relations)


def abelian_group(free_rank: int = 0, invariant_factors=()) -> FPAbelianGroup:
    """``Z^free_rank x Z/d1 x ...`` presented in canonical form (factors may be any
    positive integers; they are re-canonicalized)."""
    n = free_rank + len(invariant_factors)
    rels = [[d if j == free_rank + i else 0 for j in range(n)] for i, d in enumerate(invariant_factors)]
    return FPAbelianGroup(n, rels)


def cyclic(n: int) -> FPAbelianGroup:
    """``Z/n``; ``cyclic(0)`` is ``Z``."""
    return abelian_group(1, ()) if n == 0 else abelian_group(0, (n,))


def format_group(free_rank, invariant_factors) -> str:
    parts = []
    if free_rank == 1:
        parts.append("Z")
    elif free_rank > 1:
        parts.append(f"Z^{free_rank}")
    parts.extend(f"Z/{d}" for d in invariant_factors)
    return " x ".join(parts) if parts else "1"


def parse_group(text: str) -> FPAbelianGroup:
    """Parse ``Z^r x Z/d1 x ...`` (``1`` or ``0`` is the trivial group)."""
    text = text.strip()
    free, tors = 0, []
    if text in ("", "1", "0", "trivial"):
        return abelian_group(0, ())
    for part in text.split("x"):
        part = part.strip().replace(" ", "")
        m = re.fullmatch(r"Z(?:\^(\d+))?", part)
        if m:
            free += int(m.group(1) or 1)
            continue
        m = re.fullmatch(r"Z/(\d+)", part)
        if m and int(m.group(1)) >= 1:
            tors.append(int(m.group(1)))
            continue
        raise ValueError(f"cannot parse group factor {part!r}")
    return abelian_group(free, tors)


class GroupElement:
    """An element of an :class:`FPAbelianGroup` in canonical coordinates."""

    __slots__ = ("group", "coords")

    def __init__(self, group: FPAbelianGroup, coords: tuple):
        self.group = group
        self.coords = coords

    def _other(self, other):
        if not isinstance(other, GroupElement):
            return None
        if other.group is not self.group and other.group != self.group:
            raise GroupMismatch(f"{self.group} vs {other.group}")
        return other

    def __add__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.group([a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        other = self._other(other)
        if other is None:
            return NotImplemented
        return self.group([a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.group([-a for a in self.coords])

    def __mul__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return self.group([n * a for a in self.coords])

    __rmul__ = __mul__

    def is_identity(self) -> bool:
        return not any(self.coords)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.coords == other.coords and self.group == other.group

    def __hash__(self):
        return hash(self.coords)

    def __lt__(self, other):
        return self.coords < other.coords

    def __str__(self):
        return "[" + ", ".join(map(str, self.coords)) + "]"

    def __repr__(self):
        return f"GroupElement({self.group}, {list(self.coords)})"


def compose(g: GroupElement, h: GroupElement) -> GroupElement:
    return g + h


def inverse(g: GroupElement) -> GroupElement:
    return -g


class GroupHom:
    """A homomorphism given by the images of the source's canonical generators.

    Construction validates that every torsion generator of order ``d`` maps to
    an element killed by ``d``.
    """

    def __init__(self, src: FPAbelianGroup, dst: FPAbelianGroup, images):
        images = [dst(im) for im in images]
        if len(images) != src.rank:
            raise DimensionMismatch(f"{src} needs {src.rank} generator images, got {len(images)}")
        for i, (d, im) in enumerate(zip(src.orders, images)):
            if d and not (d * im).is_identity():
                raise RelationNotKilled(i, im)
        self.src = src
        self.dst = dst
        self.images = tuple(images)

    def __call__(self, g) -> GroupElement:
        g = self.src(g)
        out = self.dst.identity()
        for c, im in zip(g.coords, self.images):
            if c:
                out = out + c * im
        return out

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        """Composition ``self o other``."""
        if other.dst != self.src:
            raise GroupMismatch(f"cannot compose {self} after {other}")
        return GroupHom(other.src, self.dst, [self(im) for im in other.images])

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and self.images == other.images

    def __hash__(self):
        return hash((self.src, self.dst, self.images))

    def _stacked(self):
        return [list(im.coords) for im in self.images] + self.dst.canonical_relations()

    def preimage(self, h) -> GroupElement | None:
        """Some ``g`` with ``self(g) == h``, or None when ``h`` is not in the image."""
        h = self.dst(h)
        x = _integer_left_solve(self._stacked(), list(h.coords), self.dst.rank)
        if x is None:
            return None
        return self.src(x[: self.src.rank])

    def is_surjective(self) -> bool:
        return all(self.preimage(g) is not None for g in self.dst.gens())

    def is_isomorphism(self) -> bool:
        # finitely generated abelian groups are Hopfian
        return groups_isomorphic(self.src, self.dst) and self.is_surjective()

    def inverse(self) -> "GroupHom":
        if not self.is_isomorphism():
            raise NotAnIsomorphism(f"{self} is not bijective")
        return GroupHom(self.dst, self.src, [self.preimage(g) for g in self.dst.gens()])

    def __str__(self):
        return format_hom(self)

    def __repr__(self):
        return f"GroupHom<{self}>"


def hom_make(src, dst, images) -> GroupHom:
    return GroupHom(src, dst, images)


def identity_hom(G: FPAbelianGroup) -> GroupHom:
    return GroupHom(G, G, G.gens())


def zero_hom(G: FPAbelianGroup, H: FPAbelianGroup) -> GroupHom:
    return GroupHom(G, H, [H.identity()] * G.rank)


def groups_isomorphic(G: FPAbelianGroup, H: FPAbelianGroup) -> bool:
    return G.canonical == H.canonical


def format_hom(rho: GroupHom) -> str:
    def fmt(im):
        return str(im.coords[0]) if rho.dst.rank == 1 else "(" + ",".join(map(str, im.coords)) + ")"

    return f"{rho.src}->{rho.dst}:" + ",".join(fmt(im) for im in rho.images)


def parse_hom(text: str, src: FPAbelianGroup | None = None) -> GroupHom:
    """Parse ``SRC->DST:IMAGES``, e.g. ``Z->Z/5:1`` or ``Z x Z/2->Z/2^...:(1),(0)``.

    Images are listed per canonical source generator; each is an integer
    (one-coordinate targets) or a parenthesized tuple.  When ``src`` is given
    its canonical data must match the written source group.
    """
    if "->" not in text or ":" not in text:
        raise ValueError(f"hom must look like 'SRC->DST:IMAGES', got {text!r}")
    head, _, imgs = text.partition(":")
    s_text, _, d_text = head.partition("->")
    G = parse_group(s_text)
    H = parse_group(d_text)
    if src is not None:
        if src.canonical != G.canonical:
            raise GroupMismatch(f"hom source {G} does not match {src}")
        G = src
    images = []
    for tup, single in re.findall(r"\(([^)]*)\)|(-?\d+)", imgs):
        if single:
            images.append([int(single)])
        else:
            images.append([int(c) for c in tup.split(",") if c.strip()])
    return GroupHom(G, H, images)


# --- subgroups and products ------------------------------------------------


def subgroup_generated(G: FPAbelianGroup, elements) -> GroupHom:
    """Inclusion ``S -> G`` of the subgroup generated by ``elements``.

    ``S`` is presented on one generator per element (in order), with the full
    relation lattice of those elements.
    """
    elements = [G(e) for e in elements]
    m = len(elements)
    B = [list(e.coords) for e in elements] + G.canonical_relations()
    rels = [row[:m] for row in _integer_left_kernel(B, G.rank)]
    S = FPAbelianGroup(m, rels)
    images = []
    for c in S.gens():
        x = S.to_presentation(c)
        out = G.identity()
        for xi, e in zip(x, elements):
            out = out + xi * e
        images.append(out)
    return GroupHom(S, G, images)


@dataclass(frozen=True)
class DirectProduct:
    """``G x H`` presented on the canonical generators of both factors."""

    left: FPAbelianGroup
    right: FPAbelianGroup
    group: FPAbelianGroup

    def pair(self, g, h) -> GroupElement:
        g, h = self.left(g), self.right(h)
        return self.group.from_presentation(list(g.coords) + list(h.coords))

    def split(self, p) -> tuple[GroupElement, GroupElement]:
        x = self.group.to_presentation(p)
        r = self.left.rank
        return self.left(x[:r]), self.right(x[r:])

    def inclusions(self) -> tuple[GroupHom, GroupHom]:
        return (
            GroupHom(self.left, self.group, [self.pair(g, self.right.identity()) for g in self.left.gens()]),
            GroupHom(self.right, self.group, [self.pair(self.left.identity(), h) for h in self.right.gens()]),
        )

    def projections(self) -> tuple[GroupHom, GroupHom]:
        parts = [self.split(p) for p in self.group.gens()]
        return (
            GroupHom(self.group, self.left, [a for a, _ in parts]),
            GroupHom(self.group, self.right, [b for _, b in parts]),
        )


def direct_product(G: FPAbelianGroup, H: FPAbelianGroup) -> DirectProduct:
    n = G.rank + H.rank
    rels = []
    for i, d in enumerate(G.orders):
        if d:
            rels.append([d if j == i else 0 for j in range(n)])
    for i, d in enumerate(H.orders):
        if d:
            rels.append([d if j == G.rank + i else 0 for j in range(n)])
    return DirectProduct(G, H, FPAbelianGroup(n, rels))


# --- multiplicative degree groups -------------------------------------------


class DegreeMap:
    """Multiplicative map from a set of field elements to an abstract group."""

    def __init__(self, group, inclusion, encode):
        self.group = group
        self._inclusion = inclusion
        self._encode = encode

    def __call__(self, value) -> GroupElement:
        amb = self._encode(value)
        g = None if amb is None else self._inclusion.preimage(amb)
        if g is None:
            raise ValueError(f"{value} is not in the generated multiplicative subgroup")
        return g


def multiplicative_subgroup_of_rationals(generators):
    """Subgroup of ``Q^x`` generated by ``generators``, with its degree map.

    Returns ``(E, degree_map)``: ``E`` is presented on the generators and
    ``degree_map`` sends any element of the generated subgroup to ``E``.
    """
    gens = []
    for q in generators:
        q = q.value if isinstance(q, Scalar) else Fraction(q)
        if q == 0:
            raise ZeroGenerator("0 is not a unit")
        gens.append(q)
    facts = [factor_rational_multiplicative(q) for q in gens]
    primes = sorted({p for _, e in facts for p in e})
    amb = FPAbelianGroup(1 + len(primes), [[2] + [0] * len(primes)])

    def encode(q):
        q = q.value if isinstance(q, Scalar) else Fraction(q)
        sign, exps = factor_rational_multiplicative(q)
        if any(p not in primes for p in exps):
            return None
        return amb.from_presentation([int(sign < 0)] + [exps.get(p, 0) for p in primes])

    inc = subgroup_generated(amb, [encode(q) for q in gens])
    return inc.src, DegreeMap(inc.src, inc, encode)


def _cyclic_generator(F):
    n = F.order - 1
    ps = list(factor_integer(n)) if n > 1 else []
    for x in F.elements():
        if x and all(x ** (n // p) != F.one for p in ps):
            return x
    raise AssertionError("finite field without a primitive element")


def multiplicative_subgroup_of_finite_field(F, generators):
    """Finite-field analogue of :func:`multiplicative_subgroup_of_rationals`.

    Discrete logarithms are brute force in the cyclic group ``F^x``.
    """
    if not F.is_finite:
        raise UnsupportedField(f"{F} is not finite")
    if F.order > 10**6:
        raise UnsupportedField(f"{F} too large for brute-force discrete logarithms")
    gens = [F(g) for g in generators]
    if any(not g for g in gens):
        raise ZeroGenerator("0 is not a unit")
    prim = _cyclic_generator(F)
    logs = {}
    x = F.one
    for k in range(F.order - 1):
        logs[x] = k
        x = x * prim
    amb = cyclic(F.order - 1)

    def encode(v):
        v = F(v)
        return amb([logs[v]]) if v in logs else None

    inc = subgroup_generated(amb, [encode(g) for g in gens])
    return inc.src, DegreeMap(inc.src, inc, encode)


def multiplicative_degree_group(F, generators):
    """Dispatch to the rational or finite-field degree group."""
    if F == QQ:
        return multiplicative_subgroup_of_rationals(generators)
    if F.is_finite:
        return multiplicative_subgroup_of_finite_field(F, generators)
    raise UnsupportedField(f"no multiplicative degree groups over {F}")
