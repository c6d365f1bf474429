"""Dense univariate polynomials over an exact field.

A polynomial is a list of coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.  Coefficients are
:class:`~abgrad.scalars.Scalar` values (or anything with field arithmetic).
Functions that may need a zero to start from take ``zero`` explicitly.
"""

from __future__ import annotations


def trim(p):
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def degree(p):
    return len(p) - 1


def add(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def scale(p, c):
    return trim([c * a for a in p])


def mul(p, q):
    if not p or not q:
        return []
    out = [p[0] * 0 for _ in range(len(p) + len(q) - 1)]
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return trim(out)


def divmod_poly(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(p)
    lead_inv = q[-1].inv()
    dq = len(q) - 1
    if len(p) <= dq:
        return [], trim(p)
    quot = [q[0] * 0 for _ in range(len(p) - dq)]
    for k in range(len(p) - 1, dq - 1, -1):
        c = p[k]
        if not c:
            continue
        c = c * lead_inv
        quot[k - dq] = c
        for j in range(dq + 1):
            p[k - dq + j] = p[k - dq + j] - c * q[j]
    return trim(quot), trim(p[:dq])


def mod(p, q):
    return divmod_poly(p, q)[1]


def monic(p):
    if not p:
        return []
    inv = p[-1].inv()
    return [c * inv for c in p]


def gcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, mod(p, q)
    return monic(p)


def xgcd(p, q, one):
    """Return (g, s, t) with s*p + t*q = g, g monic."""
    r0, r1 = trim(p), trim(q)
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        quot, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quot, s1))
        t0, t1 = t1, sub(t0, mul(quot, t1))
    if not r0:
        return [], s0, t0
    inv = r0[-1].inv()
    return scale(r0, inv), scale(s0, inv), scale(t0, inv)


def evaluate(p, x, zero):
    acc = zero
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim([p[i] * i for i in range(1, len(p))])


def powmod(base, exponent, modulus, one):
    result = [one]
    base = mod(base, modulus)
    while exponent:
        if exponent & 1:
            result = mod(mul(result, base), modulus)
        base = mod(mul(base, base), modulus)
        exponent >>= 1
    return result


def from_roots(roots, one):
    p = [one]
    for r in roots:
        p = mul(p, [-r, one])
    return p


def format_poly(p, var="x"):
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        cs = str(c)
        if mono and cs == "1":
            terms.append(mono)
        elif mono and cs == "-1":
            terms.append("-" + mono)
        elif mono:
            terms.append(f"({cs})*{mono}" if " " in cs else f"{cs}*{mono}")
        else:
            terms.append(f"({cs})" if " " in cs else cs)
    return " + ".join(terms).replace("+ -", "- ")
