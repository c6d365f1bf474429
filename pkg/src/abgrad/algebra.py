"""Finite-dimensional nonassociative algebras given by structure constants.

``c[i][j][k]`` is the coefficient of ``b_k`` in ``b_i * b_j``.  No identity,
associativity or (anti)commutativity is assumed.
"""

from __future__ import annotations

from . import linalg as L
from . import polynomials as P
from .errors import (
    AmbientMismatch,
    DimensionMismatch,
    NotDiagonalizable,
    NotSplitOverField,
    UnsupportedField,
)
from .factor import factor, roots


class Algebra:
    def __init__(self, field, structure_constants, basis_names=None):
        n = len(structure_constants)
        if n == 0:
            raise DimensionMismatch("zero-dimensional algebras are not allowed")
        sc = []
        for i in range(n):
            if len(structure_constants[i]) != n:
                raise DimensionMismatch("structure constants must be dim x dim x dim")
            row = []
            for j in range(n):
                vec = structure_constants[i][j]
                if len(vec) != n:
                    raise DimensionMismatch("structure constants must be dim x dim x dim")
                row.append(tuple(field(c) for c in vec))
            sc.append(tuple(row))
        self.field = field
        self.dim = n
        self.structure_constants = tuple(sc)
        names = list(basis_names) if basis_names is not None else [f"b{i}" for i in range(n)]
        if len(names) != n or len(set(names)) != n:
            raise DimensionMismatch("basis names must be distinct and one per basis vector")
        self.basis_names = tuple(names)
        # sparse table: (i, j) -> [(k, c), ...]
        self._sparse = {
            (i, j): [(k, c) for k, c in enumerate(sc[i][j]) if c]
            for i in range(n)
            for j in range(n)
            if any(sc[i][j])
        }

    @classmethod
    def from_products(cls, field, basis_names, products):
        """``products[i][j]`` is the coordinate vector of ``b_i * b_j``."""
        return cls(field, products, basis_names)

    @classmethod
    def from_table(cls, field, basis_names, table):
        """Build from a sparse table ``{(name_i, name_j): {name_k: coeff}}``."""
        n = len(basis_names)
        idx = {name: i for i, name in enumerate(basis_names)}
        sc = [[[field.zero] * n for _ in range(n)] for _ in range(n)]
        for (a, b), out in table.items():
            for name, c in out.items():
                sc[idx[a]][idx[b]][idx[name]] = field(c)
        return cls(field, sc, basis_names)

    def index(self, name) -> int:
        return self.basis_names.index(name)

    def vector(self, coords):
        coords = [self.field(c) for c in coords]
        if len(coords) != self.dim:
            raise DimensionMismatch(f"vectors have {self.dim} coordinates")
        return coords

    def basis_vector(self, i):
        if isinstance(i, str):
            i = self.index(i)
        return [self.field.one if k == i else self.field.zero for k in range(self.dim)]

    def zero_vector(self):
        return [self.field.zero] * self.dim

    def multiply(self, x, y):
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionMismatch(f"vectors have {self.dim} coordinates")
        out = [self.field.zero] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                terms = self._sparse.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] = out[k] + ab * c
        return out

    def product_vector(self, i, j):
        return list(self.structure_constants[i][j])

    def with_constants(self, structure_constants):
        return Algebra(self.field, structure_constants, self.basis_names)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return self is other or (
            self.field == other.field
            and self.basis_names == other.basis_names
            and self.structure_constants == other.structure_constants
        )

    def __hash__(self):
        return hash((self.field, self.basis_names))

    def __repr__(self):
        return f"Algebra(dim={self.dim}, field={self.field!r}, basis={list(self.basis_names)})"


def multiply(A: Algebra, x, y):
    return A.multiply(x, y)


class Subspace:
    """A subspace of an algebra, stored by its reduced row echelon basis.

    Equal subspaces have identical bases, so ``==`` and ``hash`` are exact.
    """

    __slots__ = ("ambient", "basis", "pivots")

    def __init__(self, ambient: Algebra, vectors=()):
        F = ambient.field
        vecs = []
        for v in vectors:
            v = [F(c) for c in v]
            if len(v) != ambient.dim:
                raise DimensionMismatch(f"vectors have {ambient.dim} coordinates")
            vecs.append(v)
        self.ambient = ambient
        basis, pivots = L.rref(vecs, F)
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def zero(cls, A):
        return cls(A, ())

    @classmethod
    def whole(cls, A):
        return cls(A, [A.basis_vector(i) for i in range(A.dim)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _same(self, other):
        if other.ambient is not self.ambient and other.ambient != self.ambient:
            raise AmbientMismatch("subspaces of different algebras")

    def contains(self, v) -> bool:
        if isinstance(v, Subspace):
            self._same(v)
            return all(self.contains(w) for w in v.basis)
        rem = L.reduce_against(v, self.basis, self.pivots)
        return not any(rem)

    __contains__ = contains

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._same(other)
        return Subspace(self.ambient, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        self._same(other)
        if not self.dim or not other.dim:
            return Subspace.zero(self.ambient)
        F = self.ambient.field
        rows = list(self.basis) + [[-c for c in w] for w in other.basis]
        kernel = L.left_kernel(rows, self.ambient.dim, F)
        vecs = []
        for a in kernel:
            v = [F.zero] * self.ambient.dim
            for ai, u in zip(a[: self.dim], self.basis):
                if ai:
                    v = [x + ai * y for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace(self.ambient, vecs)

    __and__ = intersection

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.basis == other.basis and (
            self.ambient is other.ambient or self.ambient == other.ambient
        )

    def __hash__(self):
        return hash(self.basis)

    def image(self, phi: "LinearMap") -> "Subspace":
        return Subspace(phi.dst, [phi(v) for v in self.basis])

    def product(self, other: "Subspace") -> "Subspace":
        """The span of all products ``u * v`` with ``u`` here and ``v`` in ``other``."""
        self._same(other)
        A = self.ambient
        return Subspace(A, [A.multiply(u, v) for u in self.basis for v in other.basis])

    def coordinates(self, v):
        """Coefficients of ``v`` in this subspace's echelon basis (``v`` must lie here)."""
        return [v[p] for p in self.pivots]

    def __repr__(self):
        rows = ["(" + ", ".join(map(str, r)) + ")" for r in self.basis]
        return f"Subspace[dim {self.dim}: {', '.join(rows)}]"


def subspace_from_spanning(A: Algebra, vectors) -> Subspace:
    return Subspace(A, vectors)


class LinearMap:
    """A linear map between algebras; column ``j`` of ``matrix`` is the image of ``b_j``."""

    def __init__(self, src: Algebra, dst: Algebra, matrix):
        if src.field != dst.field:
            raise AmbientMismatch("linear maps must stay over one field")
        F = src.field
        m = [tuple(F(c) for c in row) for row in matrix]
        if len(m) != dst.dim or any(len(row) != src.dim for row in m):
            raise DimensionMismatch(f"matrix must be {dst.dim} x {src.dim}")
        self.src = src
        self.dst = dst
        self.matrix = tuple(m)

    @classmethod
    def from_images(cls, src, dst, images):
        """Map sending ``b_j`` to ``images[j]``."""
        return cls(src, dst, L.transpose([list(v) for v in images], dst.dim))

    @classmethod
    def identity(cls, A):
        return cls(A, A, L.identity(A.field, A.dim))

    def __call__(self, v):
        return L.matvec(self.matrix, list(v), self.src.field)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        """Composition ``self o other``."""
        if other.dst != self.src:
            raise AmbientMismatch("cannot compose maps between different algebras")
        return LinearMap(other.src, self.dst, L.matmul(self.matrix, other.matrix))

    def is_invertible(self) -> bool:
        return self.src.dim == self.dst.dim and L.rank(self.matrix, self.src.field) == self.src.dim

    def inverse(self) -> "LinearMap":
        return LinearMap(self.dst, self.src, L.inverse(self.matrix, self.src.field))

    def images(self):
        return L.transpose([list(r) for r in self.matrix], self.src.dim)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix and self.src == other.src and self.dst == other.dst

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearMap({[list(map(str, r)) for r in self.matrix]})"


def is_automorphism(A: Algebra, phi: LinearMap) -> bool:
    if phi.src != A or phi.dst != A or not phi.is_invertible():
        return False
    cols = phi.images()
    for i in range(A.dim):
        for j in range(A.dim):
            if phi(A.product_vector(i, j)) != A.multiply(cols[i], cols[j]):
                return False
    return True


def eigensplit(A: Algebra, phi: LinearMap):
    """Eigenspace decomposition of a diagonalizable ``phi`` split over ``A.field``.

    Returns ``[(eigenvalue, Subspace), ...]`` sorted by eigenvalue.  Raises
    :class:`NotSplitOverField` (carrying the irreducible non-linear factors of
    the characteristic polynomial) or :class:`NotDiagonalizable`.
    """
    F = A.field
    chi = L.charpoly(phi.matrix, F)
    found = roots(F, chi)
    linear_part = P.from_roots([r for r, m in found for _ in range(m)], F.one)
    if len(linear_part) < len(chi):
        rest = P.divmod_poly(chi, linear_part)[0]
        try:
            _, fac = factor(F, rest)
            fac = [(f, m) for f, m in fac if len(f) > 2]
        except UnsupportedField:
            fac = [(rest, 1)]
        raise NotSplitOverField(fac)
    out = []
    for lam, mult in found:
        shifted = [
            [c - lam if i == j else c for j, c in enumerate(row)] for i, row in enumerate(phi.matrix)
        ]
        space = Subspace(A, L.right_kernel(shifted, A.dim, F))
        if space.dim != mult:
            raise NotDiagonalizable(lam, mult, space.dim)
        out.append((lam, space))
    return out
