"""Exact fields and their elements.

Three kinds of field are available:

* :data:`QQ`, the rationals (backed by :class:`fractions.Fraction`);
* :class:`PrimeField` ``F_p``;
* :class:`SimpleExtension` ``B[t]/(m(t))`` for a monic irreducible ``m`` over
  a base field ``B``.  Towers are built by nesting.

Every element is a :class:`Scalar`, an immutable pair of its field and a raw
value.  Arithmetic between scalars of one tower embeds the smaller operand;
scalars of unrelated fields raise :class:`~abgrad.errors.FieldMismatch`.
Plain ``int`` and ``Fraction`` operands are coerced into the scalar's field.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian

from . import polynomials as P
from .errors import DivisionByZero, FieldMismatch, InvalidField, ZeroInput

# irreducibility of minimal polynomials is only checked (and hence only
# accepted) up to this degree
MAX_MINPOLY_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factor_integer(n: int) -> dict[int, int]:
    """Trial-division factorization of a nonzero integer's absolute value."""
    n = abs(n)
    if n == 0:
        raise ZeroInput("cannot factor 0")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Positive divisors of a nonzero integer, ascending."""
    divs = [1]
    for p, e in factor_integer(n).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def factor_rational_multiplicative(q) -> tuple[int, dict[int, int]]:
    """Write ``q = sign * prod(p**e)`` and return ``(sign, {p: e})``.

    Zero exponents are omitted.  Accepts ints, Fractions and rational scalars.
    """
    if isinstance(q, Scalar):
        if q.field != QQ:
            raise FieldMismatch("factor_rational_multiplicative needs a rational")
        q = q.value
    q = Fraction(q)
    if q == 0:
        raise ZeroInput("0 has no multiplicative factorization")
    sign = 1 if q > 0 else -1
    exps = dict(factor_integer(q.numerator)) if abs(q.numerator) != 1 else {}
    if q.denominator != 1:
        for p, e in factor_integer(q.denominator).items():
            exps[p] = exps.get(p, 0) - e
    return sign, dict(sorted(exps.items()))


class Scalar:
    """An element of an exact field."""

    __slots__ = ("field", "value")

    def __init__(self, field: "Field", value):
        self.field = field
        self.value = value

    def _pair(self, other):
        """Bring both operands into one field; None for foreign operand types."""
        if isinstance(other, Scalar):
            if other.field is self.field or other.field == self.field:
                return self, other
            if other.field in self.field.tower():
                return self, embed(other, self.field)
            if self.field in other.field.tower():
                return embed(self, other.field), other
            raise FieldMismatch(f"{self.field} vs {other.field}")
        if isinstance(other, (int, Fraction)):
            return self, self.field(other)
        return None

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, a.field._add(a.value, b.value))

    __radd__ = __add__

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, a.field._sub(a.value, b.value))

    def __rsub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, a.field._sub(b.value, a.value))

    def __mul__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Scalar(a.field, a.field._mul(a.value, b.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inv()

    def __rtruediv__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return b * a.inv()

    def __neg__(self):
        return Scalar(self.field, self.field._neg(self.value))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        if self.is_zero():
            raise DivisionByZero(f"{self} is not invertible in {self.field}")
        return Scalar(self.field, self.field._inv(self.value))

    def is_zero(self) -> bool:
        return self.field._is_zero(self.value)

    def __bool__(self):
        return not self.field._is_zero(self.value)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.field is not self.field and other.field != self.field:
            return False
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def sort_key(self):
        return self.field._key(self.value)

    def __str__(self):
        return self.field._str(self.value)

    def __repr__(self):
        return f"Scalar({self.field!r}, {self})"

    def to_json(self):
        return self.field._to_json(self.value)


class Field:
    """Common interface of the exact fields."""

    characteristic: int = 0

    def __call__(self, x) -> Scalar:  # pragma: no cover - overridden
        raise NotImplementedError

    @property
    def zero(self) -> Scalar:
        z = self.__dict__.get("_zero")
        if z is None:
            z = self(0)
            object.__setattr__(self, "_zero", z)
        return z

    @property
    def one(self) -> Scalar:
        o = self.__dict__.get("_one")
        if o is None:
            o = self(1)
            object.__setattr__(self, "_one", o)
        return o

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def tower(self) -> list["Field"]:
        """This field followed by its successive bases."""
        out = [self]
        while isinstance(out[-1], SimpleExtension):
            out.append(out[-1].base)
        return out

    def degree_over(self, sub: "Field") -> int:
        d = 1
        for f in self.tower():
            if f == sub:
                return d
            d *= f.degree if isinstance(f, SimpleExtension) else 1
        raise FieldMismatch(f"{sub} is not a subfield of {self} in its tower")

    def _str(self, v):
        return str(v)

    def __eq__(self, other):  # pragma: no cover - overridden
        raise NotImplementedError


class Rationals(Field):
    characteristic = 0

    def __call__(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"cannot coerce {x.field} element into Q")
            return x
        if isinstance(x, str):
            x = Fraction(x.strip())
        elif isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            raise TypeError(f"cannot coerce {type(x).__name__} into Q")
        return Scalar(self, Fraction(x))

    _add = staticmethod(lambda a, b: a + b)
    _sub = staticmethod(lambda a, b: a - b)
    _mul = staticmethod(lambda a, b: a * b)
    _neg = staticmethod(lambda a: -a)
    _inv = staticmethod(lambda a: 1 / a)
    _is_zero = staticmethod(lambda a: a == 0)
    _key = staticmethod(lambda a: a)

    def _str(self, v):
        return str(v)

    def _to_json(self, v):
        return str(v)

    def from_json(self, obj) -> Scalar:
        if isinstance(obj, bool) or not isinstance(obj, (str, int)):
            raise ValueError("rational scalars are strings 'p/q' or 'n'")
        try:
            return self(Fraction(obj))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational {obj!r}") from exc

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"

    def elements(self):
        raise InvalidField("Q is infinite")


QQ = Rationals()


class PrimeField(Field):
    """The field of residues modulo a prime ``p``."""

    def __init__(self, p: int):
        if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
            raise InvalidField(f"{p!r} is not prime")
        self.p = p
        self.characteristic = p

    def __call__(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.field != self:
                raise FieldMismatch(f"cannot coerce {x.field} element into {self}")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise DivisionByZero(f"{x} has no image in {self}")
            return Scalar(self, x.numerator * pow(x.denominator, -1, self.p) % self.p)
        if isinstance(x, bool) or not isinstance(x, int):
            raise TypeError(f"cannot coerce {type(x).__name__} into {self}")
        return Scalar(self, x % self.p)

    @property
    def order(self) -> int:
        return self.p

    def _add(self, a, b):
        return (a + b) % self.p

    def _sub(self, a, b):
        return (a - b) % self.p

    def _mul(self, a, b):
        return a * b % self.p

    def _neg(self, a):
        return -a % self.p

    def _inv(self, a):
        return pow(a, -1, self.p)

    _is_zero = staticmethod(lambda a: a == 0)
    _key = staticmethod(lambda a: a)

    def _to_json(self, v):
        return v

    def from_json(self, obj) -> Scalar:
        if isinstance(obj, bool) or not isinstance(obj, int):
            raise ValueError("prime-field scalars are integers")
        return self(obj)

    def elements(self):
        return [Scalar(self, a) for a in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"F{self.p}"


class SimpleExtension(Field):
    """``base[t] / (minpoly(t))`` with ``minpoly`` monic and irreducible.

    ``minpoly`` lists coefficients lowest degree first, leading 1 included.
    Irreducibility is verified at construction; degrees above
    :data:`MAX_MINPOLY_DEGREE`, or bases without a usable irreducibility test,
    are rejected.
    """

    def __init__(self, base: Field, minpoly, name: str = "t", check: bool = True):
        self.base = base
        coeffs = tuple(base(c) for c in minpoly)
        if len(coeffs) < 3:
            raise InvalidField("minimal polynomial must have degree >= 2")
        if coeffs[-1] != base.one:
            raise InvalidField("minimal polynomial must be monic")
        if len(coeffs) - 1 > MAX_MINPOLY_DEGREE:
            raise InvalidField(
                f"degree {len(coeffs) - 1} exceeds the checkable bound {MAX_MINPOLY_DEGREE}"
            )
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.name = name
        self.characteristic = base.characteristic
        if check:
            from .factor import is_irreducible

            if not is_irreducible(base, list(coeffs)):
                raise InvalidField(f"{P.format_poly(list(coeffs))} is reducible over {base}")

    def __call__(self, x) -> Scalar:
        if isinstance(x, Scalar):
            if x.field == self:
                return x
            return embed(x, self)
        if isinstance(x, (list, tuple)):
            if len(x) != self.degree:
                raise ValueError(f"{self} elements have {self.degree} coordinates")
            return Scalar(self, tuple(self.base(c) for c in x))
        b = self.base(x)
        return Scalar(self, (b,) + (self.base.zero,) * (self.degree - 1))

    @property
    def generator(self) -> Scalar:
        z, o = self.base.zero, self.base.one
        return Scalar(self, (z, o) + (z,) * (self.degree - 2))

    @property
    def order(self) -> int:
        return self.base.order**self.degree

    def _reduce(self, poly):
        r = P.mod(poly, list(self.minpoly))
        return tuple(r) + (self.base.zero,) * (self.degree - len(r))

    def _add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        return tuple(-x for x in a)

    def _mul(self, a, b):
        return self._reduce(P.mul(P.trim(a), P.trim(b)))

    def _inv(self, a):
        g, s, _ = P.xgcd(P.trim(a), list(self.minpoly), self.base.one)
        # minpoly irreducible and a != 0 => g == 1
        return self._reduce(s)

    def _is_zero(self, a):
        return all(not c for c in a)

    def _key(self, a):
        return tuple(c.sort_key() for c in a)

    def _str(self, a):
        return P.format_poly(P.trim(a), self.name)

    def _to_json(self, a):
        return [c.to_json() for c in a]

    def from_json(self, obj) -> Scalar:
        if not isinstance(obj, list) or len(obj) != self.degree:
            raise ValueError(f"{self} scalars are arrays of {self.degree} base scalars")
        return Scalar(self, tuple(self.base.from_json(c) for c in obj))

    def elements(self):
        base_elems = self.base.elements()
        return [Scalar(self, tuple(t)) for t in _cartesian(base_elems, repeat=self.degree)]

    def __eq__(self, other):
        return (
            isinstance(other, SimpleExtension)
            and other.base == self.base
            and other.minpoly == self.minpoly
        )

    def __hash__(self):
        return hash(("ext", self.base, self.minpoly))

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({P.format_poly(list(self.minpoly), self.name)})"


def embed(a: Scalar, target: Field) -> Scalar:
    """Constant embedding of ``a`` into an extension of its field.

    The target may sit several levels above ``a.field`` in its tower.
    """
    if a.field == target:
        return a
    if not isinstance(target, SimpleExtension):
        raise FieldMismatch(f"{a.field} does not embed into {target}")
    inner = embed(a, target.base)
    return Scalar(target, (inner,) + (target.base.zero,) * (target.degree - 1))


def flatten(a: Scalar, sub: Field) -> list[Scalar]:
    """Coordinates of ``a`` over the subfield ``sub`` of its tower.

    The basis is the product basis ``t_1^i1 * t_2^i2 * ...`` ordered with the
    outermost generator's exponent varying slowest.
    """
    if a.field == sub:
        return [a]
    if not isinstance(a.field, SimpleExtension):
        raise FieldMismatch(f"{sub} is not below {a.field}")
    out = []
    for c in a.value:
        out.extend(flatten(c, sub))
    return out


def unflatten(coords, sub: Field, target: Field) -> Scalar:
    """Inverse of :func:`flatten`."""
    coords = list(coords)
    if target == sub:
        (c,) = coords
        return sub(c)
    step = target.base.degree_over(sub)
    parts = [
        unflatten(coords[i * step : (i + 1) * step], sub, target.base) for i in range(target.degree)
    ]
    return Scalar(target, tuple(parts))


def descend_scalar(a: Scalar, sub: Field):
    """Return ``a`` as an element of ``sub`` if it lies there, else None."""
    coords = flatten(a, sub)
    if any(coords[1:]):
        return None
    return coords[0]


# --- JSON ---------------------------------------------------------------


def field_to_json(F: Field):
    if isinstance(F, Rationals):
        return "Q"
    if isinstance(F, PrimeField):
        return {"prime": F.p}
    return {"base": field_to_json(F.base), "minpoly": [c.to_json() for c in F.minpoly]}


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"prime"}:
        return PrimeField(obj["prime"])
    if isinstance(obj, dict) and set(obj) == {"base", "minpoly"}:
        base = field_from_json(obj["base"])
        if not isinstance(obj["minpoly"], list):
            raise ValueError("minpoly must be an array of base scalars")
        return SimpleExtension(base, [base.from_json(c) for c in obj["minpoly"]])
    raise ValueError(f"unrecognised field descriptor {obj!r}")


def parse_field_spec(text: str) -> Field:
    """Parse the CLI field syntax.

    ``Q``, ``F7`` (or ``GF7``), and extensions written as
    ``BASE[c0,c1,...,1]`` with minimal-polynomial coefficients lowest degree
    first; extensions nest left to right, e.g. ``Q[-2,0,1][1,0,1]``.
    """
    text = text.strip()
    head, _, rest = text.partition("[")
    head = head.strip()
    if head.upper() == "Q":
        F: Field = QQ
    elif head.upper().startswith("GF") and head[2:].isdigit():
        F = PrimeField(int(head[2:]))
    elif head.upper().startswith("F") and head[1:].isdigit():
        F = PrimeField(int(head[1:]))
    else:
        raise ValueError(f"unknown base field {head!r}")
    if not rest:
        return F
    for chunk in ("[" + rest).split("]")[:-1]:
        chunk = chunk.strip()
        if not chunk.startswith("["):
            raise ValueError(f"malformed field spec {text!r}")
        coeffs = [c.strip() for c in chunk[1:].split(",")]
        F = SimpleExtension(F, [F(int(c)) if F.is_finite else F(Fraction(c)) for c in coeffs])
    if text.count("[") != text.count("]"):
        raise ValueError(f"malformed field spec {text!r}")
    return F
