"""Root finding and bounded factorization of univariate polynomials.

Supported fields:

* ``Q`` -- rational roots by the rational root theorem, full factorization
  by Kronecker's method (exact, exponential in the factor degree; fine for
  the degree <= 8 polynomials arising at desk scale);
* finite fields -- exhaustive search;
* degree-2 extensions in characteristic 0 -- roots via the norm
  ``f * conj(f)`` down to the base and square roots in the base.

Anything else raises :class:`~abgrad.errors.UnsupportedField`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

from . import polynomials as P
from .errors import UnsupportedField
from .scalars import QQ, Field, PrimeField, Rationals, Scalar, SimpleExtension, divisors

# exhaustive searches over finite fields stop being attempted past this size
MAX_EXHAUSTIVE = 200_000


def _check(F: Field, f):
    f = P.trim([F(c) for c in f])
    if not f:
        raise ValueError("the zero polynomial has no roots or factorization")
    return f


def _split_off(f, root):
    """Divide out (x - root) as often as possible; return (multiplicity, cofactor)."""
    m = 0
    lin = [-root, root.field.one]
    while len(f) > 1:
        q, r = P.divmod_poly(f, lin)
        if r:
            break
        f, m = q, m + 1
    return m, f


def _with_multiplicities(f, candidates):
    out = []
    seen = set()
    for r in sorted(candidates, key=Scalar.sort_key):
        if r in seen:
            continue
        seen.add(r)
        m, f = _split_off(f, r)
        if m:
            out.append((r, m))
    return out


# --- rationals ------------------------------------------------------------


def _to_monic_integer(f):
    """For monic rational f of degree n return (D, g) with g(x) = D^n f(x/D) in Z[x]."""
    n = len(f) - 1
    D = 1
    for c in f:
        D = D * c.value.denominator // math.gcd(D, c.value.denominator)
    g = [int(f[i].value * D ** (n - i)) for i in range(n + 1)]
    return D, g


def _int_eval(g, a):
    acc = 0
    for c in reversed(g):
        acc = acc * a + c
    return acc


def _int_divmod_monic(g, h):
    g = list(g)
    dh = len(h) - 1
    q = [0] * max(len(g) - dh, 0)
    for k in range(len(g) - 1, dh - 1, -1):
        c = g[k]
        if c:
            q[k - dh] = c
            for j in range(dh + 1):
                g[k - dh + j] -= c * h[j]
    rem = g[:dh]
    return q, any(rem)


def _integer_roots(g):
    """Integer roots of a monic integer polynomial (with repetition removed)."""
    out = []
    if g[0] == 0:
        out.append(0)
    a0 = next(c for c in g if c)
    for d in divisors(a0):
        for r in (d, -d):
            if _int_eval(g, r) == 0:
                out.append(r)
    return out


def _interpolate_monic(points, values, k):
    """Monic degree-k h with h(points[i]) = values[i]; integer coefficients or None."""
    # h = x^k + r, r of degree < k through (a, v - a^k)
    coeffs = [Fraction(0)] * k
    for i, a in enumerate(points):
        target = Fraction(values[i] - a**k)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, b in enumerate(points):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= b * basis[t + 1]
            denom *= a - b
        for t in range(k):
            coeffs[t] += target * basis[t] / denom
    if any(c.denominator != 1 for c in coeffs):
        return None
    return [int(c) for c in coeffs] + [1]


def _kronecker_factor(g, k):
    """A monic integer factor of degree k of monic integer g, or None."""
    scored = []
    for a in range(-12, 13):
        v = _int_eval(g, a)
        if v == 0:
            return [-a, 1] if k == 1 else None
        scored.append((len(divisors(v)), abs(a), a, v))
    scored.sort()
    chosen = scored[:k]
    points = [a for _, _, a, _ in chosen]
    options = [[s * d for d in divisors(v) for s in (1, -1)] for _, _, _, v in chosen]
    for vals in product(*options):
        h = _interpolate_monic(points, vals, k)
        if h is None:
            continue
        _, rem = _int_divmod_monic(g, h)
        if not rem:
            return h
    return None


def _factor_monic_integer(g):
    factors: dict[tuple, int] = {}
    for r in _integer_roots(g):
        while len(g) > 1:
            q, rem = _int_divmod_monic(g, [-r, 1])
            if rem:
                break
            g = q
            factors[(-r, 1)] = factors.get((-r, 1), 0) + 1
    k = 2
    while 2 * k <= len(g) - 1:
        h = _kronecker_factor(g, k)
        if h is None:
            k += 1
            continue
        g, _ = _int_divmod_monic(g, h)
        factors[tuple(h)] = factors.get(tuple(h), 0) + 1
    if len(g) > 1:
        factors[tuple(g)] = factors.get(tuple(g), 0) + 1
    return factors


def _factor_rational(f):
    lead = f[-1]
    f = P.monic(f)
    if len(f) == 1:
        return lead, []
    D, g = _to_monic_integer(f)
    out = []
    for h, m in _factor_monic_integer(g).items():
        k = len(h) - 1
        # undo x -> D x: D^-k h(D x)
        coeffs = [QQ(Fraction(h[i] * D**i, D**k)) for i in range(k + 1)]
        out.append((coeffs, m))
    out.sort(key=lambda fm: (len(fm[0]), [c.sort_key() for c in fm[0]]))
    return lead, out


def _rational_roots(f):
    f = P.monic(f)
    D, g = _to_monic_integer(f)
    cands = [QQ(Fraction(r, D)) for r in _integer_roots(g)]
    return _with_multiplicities(f, cands)


def _rational_sqrt(a: Scalar):
    q = a.value
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return QQ(Fraction(n, d))
    return None


# --- finite fields ----------------------------------------------------------


def _finite_elements(F):
    if F.order > MAX_EXHAUSTIVE:
        raise UnsupportedField(f"{F} has {F.order} elements; exhaustive search bound exceeded")
    return F.elements()


def _finite_roots(F, f):
    f = P.monic(f)
    if isinstance(F, PrimeField) and F.p > 64:
        # keep only the split part: gcd with x^p - x
        one = F.one
        xp = P.powmod([F.zero, one], F.p, f, one)
        g = P.gcd(f, P.sub(xp, [F.zero, one]))
        if len(g) <= 1:
            return []
        cands = [r for r in range(F.p) if not P.evaluate(g, F(r), F.zero)]
        return _with_multiplicities(f, [F(r) for r in cands])
    cands = [x for x in _finite_elements(F) if not P.evaluate(f, x, F.zero)]
    return _with_multiplicities(f, cands)


def _monic_polys(F, k):
    elems = _finite_elements(F)
    if len(elems) ** k > MAX_EXHAUSTIVE:
        raise UnsupportedField(f"exhaustive degree-{k} factor search over {F} too large")
    for tail in product(elems, repeat=k):
        yield list(tail) + [F.one]


def _factor_finite(F, f):
    lead = f[-1]
    f = P.monic(f)
    out = []
    for r, m in _finite_roots(F, f):
        out.append(([-r, F.one], m))
        for _ in range(m):
            f = P.divmod_poly(f, [-r, F.one])[0]
    k = 2
    while 2 * k <= len(f) - 1:
        found = None
        for h in _monic_polys(F, k):
            if not P.mod(f, h):
                found = h
                break
        if found is None:
            k += 1
            continue
        m = 0
        while len(f) > 1 and not P.mod(f, found):
            f = P.divmod_poly(f, found)[0]
            m += 1
        out.append((found, m))
    if len(f) > 1:
        out.append((f, 1))
    out.sort(key=lambda fm: (len(fm[0]), [c.sort_key() for c in fm[0]]))
    return lead, out


def _finite_irreducible(F, f):
    """Rabin's test over a finite field."""
    f = P.monic(f)
    n = len(f) - 1
    q = F.order
    one, x = F.one, [F.zero, F.one]

    def frob(k):
        r = x
        for _ in range(k):
            r = P.powmod(r, q, f, one)
        return r

    if P.sub(frob(n), x):
        return False
    for r in {p for p in range(2, n + 1) if n % p == 0 and all(p % s for s in range(2, p))}:
        g = P.gcd(f, P.sub(frob(n // r), x))
        if len(g) > 1:
            return False
    return True


# --- quadratic extensions in characteristic 0 --------------------------------


def _conjugate(K: SimpleExtension, a: Scalar) -> Scalar:
    # t -> -b - t for minpoly t^2 + b t + c
    b = K.minpoly[1]
    a0, a1 = a.value
    return Scalar(K, (a0 - b * a1, -a1))


def _quadratic_ext_roots(K: SimpleExtension, f):
    B = K.base
    c, b = K.minpoly[0], K.minpoly[1]
    norm = P.mul(f, [_conjugate(K, a) for a in f])
    norm_b = [a.value[0] for a in norm]
    cands = [K(r) for r, _ in roots(B, norm_b)]
    _, fac = factor(B, norm_b)
    disc = b * b - 4 * c
    t = K.generator
    for h, _ in fac:
        if len(h) != 3:
            continue
        v, u = h[0], h[1]
        s = sqrt(B, (u * u - 4 * v) / disc)
        if s is None:
            continue
        root_disc = K(s) * (2 * t + K(b))
        cands.append((-K(u) + root_disc) / 2)
        cands.append((-K(u) - root_disc) / 2)
    cands = [r for r in cands if not P.evaluate(f, r, K.zero)]
    return _with_multiplicities(P.monic(f), cands)


# --- dispatch -------------------------------------------------------------


def roots(F: Field, f) -> list[tuple[Scalar, int]]:
    """Roots of ``f`` lying in ``F`` with multiplicities, in canonical order."""
    f = _check(F, f)
    if len(f) == 1:
        return []
    if isinstance(F, Rationals):
        return _rational_roots(f)
    if F.is_finite:
        return _finite_roots(F, f)
    if isinstance(F, SimpleExtension) and F.degree == 2:
        return _quadratic_ext_roots(F, f)
    raise UnsupportedField(f"no root-finding algorithm over {F}")


def factor(F: Field, f):
    """Return ``(leading coefficient, [(monic irreducible factor, multiplicity)])``."""
    f = _check(F, f)
    if isinstance(F, Rationals):
        return _factor_rational(f)
    if F.is_finite:
        return _factor_finite(F, f)
    raise UnsupportedField(f"no factorization algorithm over {F}")


def is_irreducible(F: Field, f) -> bool:
    f = _check(F, f)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if isinstance(F, Rationals):
        _, fac = _factor_rational(f)
        return len(fac) == 1 and fac[0][1] == 1
    if F.is_finite:
        return _finite_irreducible(F, f)
    if n <= 3:
        # no roots <=> irreducible for degree 2 and 3
        return not roots(F, f)
    raise UnsupportedField(f"cannot certify irreducibility of a degree-{n} polynomial over {F}")


def sqrt(F: Field, a) -> Scalar | None:
    """A square root of ``a`` in ``F`` (the canonically smaller one), or None."""
    a = F(a)
    if not a:
        return F.zero
    if isinstance(F, Rationals):
        return _rational_sqrt(a)
    rs = roots(F, [-a, F.zero, F.one])
    return rs[0][0] if rs else None


def roots_of_unity(F: Field, n: int) -> list[Scalar]:
    """All ``n``-th roots of unity in ``F``."""
    f = [F(-1)] + [F.zero] * (n - 1) + [F.one]
    return [r for r, _ in roots(F, f)]


def multiplicative_order(a: Scalar, bound: int) -> int | None:
    x = a
    for k in range(1, bound + 1):
        if x == a.field.one:
            return k
        x = x * a
    return None


def primitive_roots_of_unity(F: Field, n: int) -> list[Scalar]:
    return [r for r in roots_of_unity(F, n) if multiplicative_order(r, n) == n]
