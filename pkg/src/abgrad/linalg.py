"""Exact dense linear algebra over a :class:`~abgrad.scalars.Field`.

Matrices are lists of rows; vectors are lists (or tuples) of scalars.
The field is passed explicitly wherever an empty input would leave it
undetermined.
"""

from __future__ import annotations

from . import polynomials as P
from .errors import DimensionMismatch, DivisionByZero


def zeros(F, m, n):
    return [[F.zero] * n for _ in range(m)]


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(M, ncols=None):
    if not M:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A, B):
    if A and len(A[0]) != len(B):
        raise DimensionMismatch(f"cannot multiply {len(A)}x{len(A[0])} by {len(B)}x?")
    Bt = transpose(B)
    return [[_dot(row, col) for col in Bt] for row in A]


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        if a and b:
            acc = a * b if acc is None else acc + a * b
    if acc is None:
        return (u[0] * 0) if u else None
    return acc


def matvec(M, v, F):
    return [_dot(row, v) if row else F.zero for row in M]


def rref(rows, F):
    """Reduced row echelon form.  Returns ``(nonzero rows as tuples, pivot columns)``."""
    M = [list(r) for r in rows]
    if not M:
        return [], []
    n = len(M[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = M[r][c].inv()
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(row) for row in M[:r]], pivots


def rank(rows, F):
    return len(rref(rows, F)[1])


def right_kernel(M, ncols, F):
    """Basis of ``{x : M x = 0}`` (the standard echelon kernel basis)."""
    R, pivots = rref(M, F)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [F.zero] * ncols
        x[f] = F.one
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def left_kernel(rows, ncols, F):
    """Basis of ``{a : sum_i a_i rows[i] = 0}``."""
    return right_kernel(transpose(rows, ncols), len(rows), F)


def reduce_against(v, R, pivots):
    """Remainder of ``v`` after elimination by echelon rows ``R``."""
    v = list(v)
    for row, p in zip(R, pivots):
        c = v[p]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def solve(M, b, F):
    """One solution ``x`` of ``M x = b``, or None."""
    n = len(M[0]) if M else 0
    aug = [list(row) + [bi] for row, bi in zip(M, b)]
    R, pivots = rref(aug, F)
    if n in pivots:
        return None
    x = [F.zero] * n
    for row, p in zip(R, pivots):
        x[p] = row[n]
    return x


def inverse(M, F):
    n = len(M)
    aug = [list(row) + e for row, e in zip(M, identity(F, n))]
    R, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return [list(row[n:]) for row in R]


def det(M, F):
    M = [list(r) for r in M]
    n = len(M)
    d = F.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c]), None)
        if piv is None:
            return F.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            d = -d
        d = d * M[c][c]
        inv = M[c][c].inv()
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return d


def charpoly(M, F):
    """``det(x I - M)``, coefficients lowest degree first, via Hessenberg form."""
    n = len(M)
    H = [list(r) for r in M]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = H[m][m - 1].inv()
        for k in range(m + 1, n):
            u = H[k][m - 1] * inv
            if u:
                H[k] = [a - u * b for a, b in zip(H[k], H[m])]
                for row in H:
                    row[m] = row[m] + u * row[k]
    p = [[F.one]]
    x = [F.zero, F.one]
    for m in range(1, n + 1):
        pm = P.mul(P.sub(x, [H[m - 1][m - 1]]), p[m - 1])
        t = F.one
        for i in range(m - 1, 0, -1):
            t = t * H[i][i - 1]
            coeff = H[i - 1][m - 1] * t
            if coeff:
                pm = P.sub(pm, P.scale(p[i - 1], coeff))
        p.append(pm)
    return p[n]
