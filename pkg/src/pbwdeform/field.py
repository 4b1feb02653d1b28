"""Exact scalars: the prime fields F_p and the rationals.

Arithmetic in the rest of the package is done on *raw* values (``int`` in
``[0, p)`` for F_p, :class:`fractions.Fraction` for Q) through the methods of a
:class:`Field`.  :class:`FieldScalar` wraps a raw value together with its field
for public use and refuses to mix fields.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatchError, ParseError

_MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


_SCALAR_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


@dataclass(frozen=True)
class Field:
    """F_p when ``char`` is a prime, the rationals when ``char == 0``."""

    char: int = 0

    def __post_init__(self):
        if self.char != 0 and not (_is_prime(self.char) and self.char < _MAX_PRIME):
            raise ValueError(f"field characteristic must be 0 or a prime < 2^31, got {self.char}")

    @property
    def is_finite(self) -> bool:
        return self.char != 0

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def __call__(self, x):
        """Coerce an int, Fraction, FieldScalar or string into a raw value."""
        if isinstance(x, FieldScalar):
            if x.field != self:
                raise FieldMismatchError(f"scalar from {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, bool):
            x = int(x)
        if self.char:
            if isinstance(x, Fraction):
                return self.div(x.numerator % self.char, x.denominator % self.char)
            return int(x) % self.char
        return Fraction(x)

    def elements(self):
        if not self.char:
            raise ValueError("the rationals cannot be enumerated")
        return range(self.char)

    # raw arithmetic -----------------------------------------------------
    def add(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sub(self, a, b):
        return (a - b) % self.char if self.char else a - b

    def mul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def neg(self, a):
        return (-a) % self.char if self.char else -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("division by zero in " + str(self))
        if self.char:
            return pow(a, self.char - 2, self.char)
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # text ---------------------------------------------------------------
    def parse(self, text: str):
        m = _SCALAR_RE.match(text)
        if not m:
            raise ParseError(f"malformed scalar {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0 or (self.char and den % self.char == 0):
            raise ParseError(f"zero denominator in scalar {text!r}")
        if self.char:
            return self.div(num % self.char, den % self.char)
        return Fraction(num, den)

    def render(self, a) -> str:
        if self.char:
            return str(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def __str__(self):
        return f"F_{self.char}" if self.char else "Q"


Q = Field(0)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class FieldScalar:
    """An immutable scalar tagged with its field."""

    field: Field
    value: object

    @classmethod
    def of(cls, field: Field, x) -> "FieldScalar":
        return cls(field, field(x))

    def _other(self, other):
        if isinstance(other, FieldScalar):
            if other.field != self.field:
                raise FieldMismatchError(f"cannot combine {self.field} and {other.field} scalars")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldScalar(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldScalar(self.field, self.field.neg(self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.field.render(self.value)

    def __repr__(self):
        return f"FieldScalar({self.field}, {self})"


def scalar_arith(a: FieldScalar, b: FieldScalar, op: str) -> FieldScalar:
    """Apply ``op`` in {"add", "sub", "mul", "div"} to two scalars of one field."""
    if a.field != b.field:
        raise FieldMismatchError(f"cannot combine {a.field} and {b.field} scalars")
    f = a.field
    fn = {"add": f.add, "sub": f.sub, "mul": f.mul, "div": f.div}.get(op)
    if fn is None:
        raise ValueError(f"unknown operation {op!r}")
    return FieldScalar(f, fn(a.value, b.value))
