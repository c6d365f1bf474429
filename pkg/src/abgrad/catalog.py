"""Built-in algebras with named gradings."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from . import linalg as L
from .algebra import Algebra, LinearMap
from .errors import UnknownEntry
from .grading import Grading, grading_from_degrees, induce, trivial_grading
from .groups import abelian_group, cyclic, hom_make
from .scalars import QQ


@dataclass
class CatalogEntry:
    name: str
    algebra: Algebra
    gradings: dict = dc_field(default_factory=dict)
    notes: str = ""

    def grading(self, name: str) -> Grading:
        try:
            return self.gradings[name]
        except KeyError:
            raise UnknownEntry(f"{self.name} has no grading {name!r}; known: {sorted(self.gradings)}") from None


def sl2_algebra(F=QQ) -> Algebra:
    table = {
        ("H", "E"): {"E": 2},
        ("E", "H"): {"E": -2},
        ("H", "F"): {"F": -2},
        ("F", "H"): {"F": 2},
        ("E", "F"): {"H": 1},
        ("F", "E"): {"H": -1},
    }
    return Algebra.from_table(F, ["H", "E", "F"], table)


def _sl2(F, **_):
    A = sl2_algebra(F)
    Z = cyclic(0)
    z = grading_from_degrees(A, Z, [0, 1, -1])
    gradings = {"z": z}
    for n in (2, 3, 4, 5):
        gradings[f"z{n}"] = induce(z, hom_make(Z, cyclic(n), [1]))
    gradings["trivial"] = trivial_grading(A)
    return CatalogEntry("sl2", A, gradings, "bracket table in the basis H, E, F; Z-grading by ad H eigenvalue / 2")


def m2_algebra(F=QQ) -> Algebra:
    names = ["E11", "E12", "E21", "E22"]
    table = {}
    for i in (1, 2):
        for j in (1, 2):
            for k in (1, 2):
                table[(f"E{i}{j}", f"E{j}{k}")] = {f"E{i}{k}": 1}
    return Algebra.from_table(F, names, table)


def m2_inner(A: Algebra, X) -> LinearMap:
    """Conjugation ``Y -> X Y X^-1`` on 2x2 matrices in the basis E11, E12, E21, E22."""
    F = A.field
    X = [[F(c) for c in row] for row in X]
    Xi = L.inverse(X, F)
    images = []
    for i in range(2):
        for j in range(2):
            Y = [[F.one if (r, c) == (i, j) else F.zero for c in range(2)] for r in range(2)]
            Z = L.matmul(L.matmul(X, Y), Xi)
            images.append([Z[0][0], Z[0][1], Z[1][0], Z[1][1]])
    return LinearMap.from_images(A, A, images)


def _m2(F, **_):
    A = m2_algebra(F)
    Z = cyclic(0)
    z = grading_from_degrees(A, Z, [0, 1, -1, 0])
    z2 = grading_from_degrees(A, cyclic(2), [0, 1, 1, 0])
    K = abelian_group(0, (2, 2))
    pauli = Grading(
        A,
        K,
        {
            (0, 0): [[1, 0, 0, 1]],
            (1, 0): [[1, 0, 0, -1]],
            (0, 1): [[0, 1, 1, 0]],
            (1, 1): [[0, 1, -1, 0]],
        },
    )
    gradings = {"z": z, "z2": z2, "pauli": pauli, "trivial": trivial_grading(A)}
    return CatalogEntry("m2", A, gradings, "2x2 matrices; Pauli components I, diag(1,-1), offdiag(1,1), their product")


def cayley_dickson(F, levels: int):
    """Structure constants of the ``levels``-fold doubling of ``F``.

    ``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))`` with
    ``conj(a, b) = (conj(a), -b)``; basis vector ``e_{m + k}`` is ``(0, e_k)``
    where ``m`` is the previous dimension.
    """

    def mul(x, y):
        n = len(x)
        if n == 1:
            return [x[0] * y[0]]
        h = n // 2
        a, b, c, d = x[:h], x[h:], y[:h], y[h:]
        left = [p - q for p, q in zip(mul(a, c), mul(conj(d), b))]
        right = [p + q for p, q in zip(mul(d, a), mul(b, conj(c)))]
        return left + right

    def conj(x):
        n = len(x)
        if n == 1:
            return list(x)
        h = n // 2
        return conj(x[:h]) + [-c for c in x[h:]]

    n = 2**levels
    basis = [[F.one if k == i else F.zero for k in range(n)] for i in range(n)]
    return [[mul(basis[i], basis[j]) for j in range(n)] for i in range(n)]


def _binary_degrees(n_bits):
    return [tuple((b >> (n_bits - 1 - k)) & 1 for k in range(n_bits)) for b in range(2**n_bits)]


def _quaternions(F, **_):
    A = Algebra(F, cayley_dickson(F, 2), ["1", "i", "j", "k"])
    g = grading_from_degrees(A, abelian_group(0, (2, 2)), _binary_degrees(2))
    return CatalogEntry("quaternions", A, {"z2^2": g, "trivial": trivial_grading(A)}, "Cayley-Dickson doubling twice")


def _octonions(F, **_):
    A = Algebra(F, cayley_dickson(F, 3), [f"e{i}" for i in range(8)])
    g = grading_from_degrees(A, abelian_group(0, (2, 2, 2)), _binary_degrees(3))
    return CatalogEntry(
        "octonions", A, {"z2^3": g, "trivial": trivial_grading(A)}, "Cayley-Dickson doubling three times; deg e_b = bits of b"
    )


def group_algebra_zn(F=QQ, n: int = 4) -> Algebra:
    names = [f"g{i}" for i in range(n)]
    table = {(names[i], names[j]): {names[(i + j) % n]: 1} for i in range(n) for j in range(n)}
    return Algebra.from_table(F, names, table)


def _group_algebra_zn(F, n: int = 4, **_):
    A = group_algebra_zn(F, n)
    g = grading_from_degrees(A, cyclic(n), list(range(n)))
    return CatalogEntry(
        "group_algebra_zn", A, {"tautological": g, "trivial": trivial_grading(A)}, f"F[Z/{n}] graded by Z/{n}"
    )


_BUILDERS = {
    "sl2": _sl2,
    "m2": _m2,
    "quaternions": _quaternions,
    "octonions": _octonions,
    "group_algebra_zn": _group_algebra_zn,
}

CATALOG_NAMES = tuple(_BUILDERS)


def catalog_load(name: str, field=QQ, **params) -> CatalogEntry:
    """Build a catalog entry; every grading is verified on construction."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownEntry(f"unknown catalog entry {name!r}; known: {list(_BUILDERS)}") from None
    return builder(field, **params)


def all_catalog_gradings(field=QQ):
    """``[(entry name, grading name, Grading)]`` over every entry."""
    out = []
    for name in CATALOG_NAMES:
        entry = catalog_load(name, field)
        for gname, g in entry.gradings.items():
            out.append((name, gname, g))
    return out
