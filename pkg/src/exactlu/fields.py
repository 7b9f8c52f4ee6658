"""Exact field arithmetic: arbitrary-precision rationals and prime fields GF(p).

A :class:`Field` canonicalizes and operates on *raw* values (``Fraction``
for the rationals, small non-negative ``int`` residues for GF(p)); a
:class:`Scalar` pairs a raw value with its field and provides the usual
operators.  Raw values are what the matrix kernels work on internally,
scalars are the public element type.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import FieldMismatchError, ParseError

MAX_MODULUS = 2**31

_RATIONAL_TOKEN = re.compile(r"[+-]?\d+(/\d+)?\Z")
_INTEGER_TOKEN = re.compile(r"[+-]?\d+\Z")
_FIELD_TOKEN = re.compile(r"F(\d+)\Z")


def _is_prime(n: int) -> bool:
    # Trial division; moduli are capped at 2**31 so this stays cheap.
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common interface of the supported coefficient fields."""

    token: str
    zero = None
    one = None

    def coerce(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, value) -> str:
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.coerce(value))

    def __str__(self):
        return self.token


class Rationals(Field):
    """The field of arbitrary-precision rational numbers.

    ``Fraction`` keeps every value reduced with a positive denominator, so
    canonical form is automatic.  Entry growth during elimination is
    unbounded, which is exactly why fixed-width integers are not used.
    """

    token = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"cannot coerce {value.field} scalar into Q")
            return value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into Q")

    def parse(self, text: str):
        token = text.strip().replace("−", "-")
        if not _RATIONAL_TOKEN.fullmatch(token):
            raise ParseError(f"malformed rational {text!r} (expected integer or a/b with b>0)")
        if "/" in token:
            num, den = token.split("/")
            if int(den) == 0:
                raise ParseError(f"zero denominator in {text!r}")
            return Fraction(int(num), int(den))
        return Fraction(int(token))

    def format(self, value) -> str:
        return str(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of 0 in Q")
        return 1 / a

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Rationals()"


class PrimeField(Field):
    """GF(p) for a prime p <= 2**31, with values as least residues in [0, p)."""

    zero = 0
    one = 1

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or isinstance(modulus, bool):
            raise TypeError("modulus must be an int")
        if modulus > MAX_MODULUS:
            raise ValueError(f"modulus {modulus} exceeds the 2**31 cap")
        if not _is_prime(modulus):
            raise ValueError(f"modulus {modulus} is not prime")
        self.modulus = modulus
        self.token = f"F{modulus}"

    def coerce(self, value):
        if isinstance(value, Scalar):
            if value.field != self:
                raise FieldMismatchError(f"cannot coerce {value.field} scalar into {self.token}")
            return value.value
        if isinstance(value, bool):
            raise TypeError("bool is not a field value")
        if isinstance(value, int):
            return value % self.modulus
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"cannot coerce non-integer {value} into {self.token}")
            return value.numerator % self.modulus
        if isinstance(value, str):
            return self.parse(value)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self.token}")

    def parse(self, text: str):
        token = text.strip().replace("−", "-")
        if "/" in token:
            raise ParseError(f"fraction syntax {text!r} is not allowed over {self.token}")
        if not _INTEGER_TOKEN.fullmatch(token):
            raise ParseError(f"malformed integer {text!r} over {self.token}")
        return int(token) % self.modulus

    def format(self, value) -> str:
        return str(value)

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return -a % self.modulus

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of 0 in {self.token}")
        return pow(a, -1, self.modulus)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("F", self.modulus))

    def __repr__(self):
        return f"PrimeField({self.modulus})"


RATIONALS = Rationals()


def field_from_token(token: str) -> Field:
    """Return the field named by a token such as ``Q`` or ``F7``."""
    token = token.strip()
    if token == "Q":
        return RATIONALS
    match = _FIELD_TOKEN.fullmatch(token)
    if match:
        try:
            return PrimeField(int(match.group(1)))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field token {token!r} (expected Q or F<p>)")


class Scalar:
    """An immutable field element: a field together with a canonical value."""

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.coerce(value))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _raw_operand(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatchError(
                    f"cannot combine {self.field} and {other.field} scalars"
                )
            return other.value
        return self.field.coerce(other)

    def __add__(self, other):
        return Scalar(self.field, self.field.add(self.value, self._raw_operand(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return Scalar(self.field, self.field.sub(self.value, self._raw_operand(other)))

    def __rsub__(self, other):
        return Scalar(self.field, self.field.sub(self._raw_operand(other), self.value))

    def __mul__(self, other):
        return Scalar(self.field, self.field.mul(self.value, self._raw_operand(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __truediv__(self, other):
        raw = self._raw_operand(other)
        return Scalar(self.field, self.field.mul(self.value, self.field.inv(raw)))

    def inv(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return not self.value

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            try:
                return self.value == self.field.coerce(other)
            except (ValueError, TypeError):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"Scalar({self} over {self.field.token})"


def parse_scalar(text: str, field: Field) -> Scalar:
    """Parse one scalar token (``-7/3``, ``9``, ...) over the given field."""
    return Scalar(field, field.parse(text))
