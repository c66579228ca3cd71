"""Exact scalar fields: Q, GF(p) for odd p, and quadratic extensions k(sqrt d).

Every field is a small immutable object that knows how to do arithmetic on
*raw* values (``Fraction`` for Q, ``int`` in ``[0, p)`` for GF(p), and a pair
``(a, b)`` meaning ``a + b*sqrt(d)`` for a quadratic extension).  The algebra
code works on raw values for speed; :class:`FieldElement` wraps a raw value
together with its field for the public API.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from .errors import CharTwo, DivisionByZero, FieldError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    return all(p % q for q in range(3, math.isqrt(p) + 1, 2))


def tonelli_shanks(a: int, p: int) -> int | None:
    """Square root of ``a`` modulo an odd prime ``p``, or ``None``."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


class FieldDescriptor:
    """Common interface of the three field kinds.

    Subclasses implement arithmetic on raw values.  Descriptors are frozen
    dataclasses, so equality and hashing are structural.
    """

    kind: str

    # raw arithmetic -----------------------------------------------------
    def zero(self) -> Any: ...
    def one(self) -> Any: ...
    def add(self, x, y): ...
    def sub(self, x, y): ...
    def neg(self, x): ...
    def mul(self, x, y): ...
    def inv(self, x): ...
    def is_zero(self, x) -> bool: ...
    def from_int(self, k: int): ...
    def sqrt(self, x): ...
    def fmt(self, x) -> str: ...
    def parse(self, s) -> Any: ...
    def to_json(self) -> dict: ...

    @property
    def characteristic(self) -> int: ...

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    def div(self, x, y):
        return self.mul(x, self.inv(y))

    def is_one(self, x) -> bool:
        return self.is_zero(self.sub(x, self.one()))

    def half(self):
        return self.inv(self.from_int(2))

    def pow(self, x, k: int):
        if k < 0:
            return self.pow(self.inv(x), -k)
        result = self.one()
        while k:
            if k & 1:
                result = self.mul(result, x)
            x = self.mul(x, x)
            k >>= 1
        return result

    def coerce(self, v) -> Any:
        """Turn an int, Fraction, string or FieldElement into a raw value."""
        if isinstance(v, FieldElement):
            if v.field != self:
                raise FieldError(f"element of {v.field} used in {self}")
            return v.value
        if isinstance(v, bool):
            raise FieldError("booleans are not scalars")
        if isinstance(v, int):
            return self.from_int(v)
        if isinstance(v, Fraction):
            return self.div(self.from_int(v.numerator), self.from_int(v.denominator))
        if isinstance(v, str):
            return self.parse(v)
        return self._coerce_other(v)

    def _coerce_other(self, v):
        raise FieldError(f"cannot interpret {v!r} as an element of {self}")

    def element(self, v) -> FieldElement:
        return FieldElement(self, self.coerce(v))

    def elements(self) -> Iterator[Any]:
        raise FieldError(f"{self} is infinite")

    @property
    def order(self) -> int:
        raise FieldError(f"{self} is infinite")


@dataclass(frozen=True)
class RationalField(FieldDescriptor):
    kind = "rational"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, x, y):
        return x + y

    def sub(self, x, y):
        return x - y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / x

    def is_zero(self, x):
        return x == 0

    def from_int(self, k):
        return Fraction(k)

    @property
    def characteristic(self):
        return 0

    def sqrt(self, x):
        # a/b is a square iff a and b are both perfect squares (reduced form)
        if x < 0:
            return None
        a, b = x.numerator, x.denominator
        ra, rb = math.isqrt(a), math.isqrt(b)
        if ra * ra == a and rb * rb == b:
            return Fraction(ra, rb)
        return None

    def fmt(self, x):
        return str(x)

    def parse(self, s):
        try:
            return Fraction(str(s).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational {s!r}") from exc

    def to_json(self):
        return {"kind": "rational"}

    def __str__(self):
        return "Q"


@dataclass(frozen=True)
class PrimeField(FieldDescriptor):
    p: int
    kind = "prime"

    def __post_init__(self):
        if self.p == 2:
            raise CharTwo("characteristic 2 is not supported")
        if not _is_prime(self.p):
            raise FieldError(f"{self.p} is not an odd prime")

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, x, y):
        return (x + y) % self.p

    def sub(self, x, y):
        return (x - y) % self.p

    def neg(self, x):
        return -x % self.p

    def mul(self, x, y):
        return x * y % self.p

    def inv(self, x):
        if x == 0:
            raise DivisionByZero("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def is_zero(self, x):
        return x == 0

    def from_int(self, k):
        return k % self.p

    @property
    def characteristic(self):
        return self.p

    @property
    def order(self):
        return self.p

    def elements(self):
        return iter(range(self.p))

    def sqrt(self, x):
        return tonelli_shanks(x, self.p)

    def fmt(self, x):
        return str(x)

    def parse(self, s):
        try:
            q = Fraction(str(s).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad residue {s!r}") from exc
        return self.div(self.from_int(q.numerator), self.from_int(q.denominator))

    def to_json(self):
        return {"kind": "prime", "p": self.p}

    def __str__(self):
        return f"GF({self.p})"


_QUAD_RE = re.compile(
    r"^\s*(?:(?P<a>[-+]?[0-9/]+)\s*\+)?\s*(?P<b>[-+]?[0-9/]*)\s*\*?\s*sqrt\(\s*(?P<d>[-+]?[0-9/]+)\s*\)\s*$"
)


@dataclass(frozen=True)
class QuadraticField(FieldDescriptor):
    """``base(sqrt d)`` with ``d`` a non-square of ``base``; raw values are pairs."""

    base: FieldDescriptor
    d: Any
    kind = "quadratic"

    def __post_init__(self):
        if not isinstance(self.base, (RationalField, PrimeField)):
            raise FieldError("quadratic extensions must sit over Q or GF(p)")
        if self.base.is_zero(self.d) or self.base.sqrt(self.d) is not None:
            raise FieldError(f"{self.base.fmt(self.d)} is a square in {self.base}")

    def zero(self):
        z = self.base.zero()
        return (z, z)

    def one(self):
        return (self.base.one(), self.base.zero())

    def add(self, x, y):
        B = self.base
        return (B.add(x[0], y[0]), B.add(x[1], y[1]))

    def sub(self, x, y):
        B = self.base
        return (B.sub(x[0], y[0]), B.sub(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        B = self.base
        a, b = x
        c, e = y
        return (B.add(B.mul(a, c), B.mul(self.d, B.mul(b, e))), B.add(B.mul(a, e), B.mul(b, c)))

    def norm(self, x):
        B = self.base
        return B.sub(B.mul(x[0], x[0]), B.mul(self.d, B.mul(x[1], x[1])))

    def inv(self, x):
        if self.is_zero(x):
            raise DivisionByZero("inverse of zero")
        B = self.base
        ninv = B.inv(self.norm(x))
        return (B.mul(x[0], ninv), B.neg(B.mul(x[1], ninv)))

    def is_zero(self, x):
        return self.base.is_zero(x[0]) and self.base.is_zero(x[1])

    def from_int(self, k):
        return (self.base.from_int(k), self.base.zero())

    @property
    def characteristic(self):
        return self.base.characteristic

    @property
    def order(self):
        return self.base.order ** 2

    def elements(self):
        for a in self.base.elements():
            for b in self.base.elements():
                yield (a, b)

    def sqrt(self, x):
        # (u + v r)^2 = a + b r  <=>  u^2 + d v^2 = a,  2uv = b
        B = self.base
        a, b = x
        if B.is_zero(b):
            u = B.sqrt(a)
            if u is not None:
                return (u, B.zero())
            v = B.sqrt(B.div(a, self.d))
            if v is not None:
                return (B.zero(), v)
            return None
        n = B.sqrt(self.norm(x))
        if n is None:
            return None
        half = B.half()
        for cand in (B.mul(B.add(a, n), half), B.mul(B.sub(a, n), half)):
            u = B.sqrt(cand)
            if u is not None and not B.is_zero(u):
                v = B.div(b, B.mul(B.from_int(2), u))
                if self.mul((u, v), (u, v)) == x:
                    return (u, v)
        return None

    def fmt(self, x):
        B = self.base
        a, b = x
        if B.is_zero(b):
            return B.fmt(a)
        tail = f"{B.fmt(b)}*sqrt({B.fmt(self.d)})"
        if B.is_zero(a):
            return tail
        return f"{B.fmt(a)}+{tail}"

    def parse(self, s):
        s = str(s)
        if "sqrt" not in s:
            return (self.base.parse(s), self.base.zero())
        m = _QUAD_RE.match(s)
        if not m:
            raise FieldError(f"bad quadratic scalar {s!r}")
        if self.base.parse(m.group("d")) != self.d:
            raise FieldError(f"{s!r} uses a different radicand than {self}")
        a = self.base.parse(m.group("a")) if m.group("a") else self.base.zero()
        bs = m.group("b")
        if bs in ("", "+"):
            b = self.base.one()
        elif bs == "-":
            b = self.base.neg(self.base.one())
        else:
            b = self.base.parse(bs)
        return (a, b)

    def _coerce_other(self, v):
        if isinstance(v, (tuple, list)) and len(v) == 2:
            return (self.base.coerce(v[0]), self.base.coerce(v[1]))
        return super()._coerce_other(v)

    def to_json(self):
        return {"kind": "quadratic", "base": self.base.to_json(), "d": self.base.fmt(self.d)}

    def __str__(self):
        return f"{self.base}(sqrt({self.base.fmt(self.d)}))"


QQ = RationalField()


def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def quadratic_field(base: FieldDescriptor, d) -> QuadraticField:
    return QuadraticField(base, base.coerce(d))


def field_from_json(obj) -> FieldDescriptor:
    """Parse ``{"kind": "rational"}`` and friends."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FieldError(f"field descriptor must be an object with 'kind': {obj!r}")
    kind = obj["kind"]
    extra = set(obj) - {"kind", "p", "base", "d"}
    if extra:
        raise FieldError(f"unknown field keys {sorted(extra)}")
    if kind == "rational":
        return QQ
    if kind == "prime":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError("prime field needs an integer 'p'")
        return PrimeField(p)
    if kind == "quadratic":
        base = field_from_json(obj.get("base"))
        if "d" not in obj:
            raise FieldError("quadratic field needs 'd'")
        return quadratic_field(base, obj["d"])
    raise FieldError(f"unknown field kind {kind!r}")


def parse_field(desc: str) -> FieldDescriptor:
    """Short textual field names for the command line: ``Q``, ``GF(7)``, ``7`` or JSON."""
    s = desc.strip()
    if s.upper() in ("Q", "QQ", "RATIONAL"):
        return QQ
    m = re.fullmatch(r"(?:GF\(\s*(\d+)\s*\)|(\d+))", s, flags=re.I)
    if m:
        return PrimeField(int(m.group(1) or m.group(2)))
    import json

    try:
        return field_from_json(json.loads(s))
    except json.JSONDecodeError as exc:
        raise FieldError(f"unrecognised field {desc!r}") from exc


@dataclass(frozen=True)
class FieldElement:
    """A scalar with its field attached.  Canonical raw form makes ``==`` structural."""

    field: FieldDescriptor
    value: Any

    def _other(self, o):
        if isinstance(o, FieldElement):
            if o.field != self.field:
                raise FieldError(f"mixing {self.field} and {o.field}")
            return o.value
        return self.field.coerce(o)

    def __add__(self, o):
        return FieldElement(self.field, self.field.add(self.value, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldElement(self.field, self.field.sub(self.value, self._other(o)))

    def __rsub__(self, o):
        return FieldElement(self.field, self.field.sub(self._other(o), self.value))

    def __mul__(self, o):
        return FieldElement(self.field, self.field.mul(self.value, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldElement(self.field, self.field.div(self.value, self._other(o)))

    def __rtruediv__(self, o):
        return FieldElement(self.field, self.field.div(self._other(o), self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, k))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def invert(self) -> FieldElement:
        return invert(self)

    def is_square(self) -> FieldElement | None:
        return is_square(self)

    def __str__(self):
        return self.field.fmt(self.value)

    def __repr__(self):
        return f"FieldElement({self.field}, {self})"


def invert(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises :class:`DivisionByZero` on zero."""
    return FieldElement(x.field, x.field.inv(x.value))


def is_square(x: FieldElement) -> FieldElement | None:
    """A square root of ``x`` inside its own field, or ``None`` when there is none."""
    r = x.field.sqrt(x.value)
    return None if r is None else FieldElement(x.field, r)
