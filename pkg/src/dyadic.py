"""
Exact dyadic rationals.

Every coefficient that appears in an orbit of a finitely supported vector is
of the form m·2^e: the operator only multiplies by 2, 1, 2^-τ_n and -2^-δ_n.
Dyadic keeps such numbers exactly, with an unbounded integer mantissa and a
signed exponent that must fit in 64 bits.

Canonical form (unique, so equality is structural):
    value = sign · mantissa · 2^exponent
    mantissa odd, or mantissa = exponent = sign = 0

Rendering:
    |exponent| small → integer or finite decimal  ("3", "-0.75")
    otherwise        → "m*2^e"                    ("3*2^-100")

Example:
    >>> pow2(-4) * pow2(14)
    Dyadic(1024)
    >>> Dyadic.parse("1/4") + Dyadic.parse("1/4")
    Dyadic(0.5)
"""

import decimal
import re
import sys
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from .errors import DyadicOverflowError, MalformedInputError

EXPONENT_MIN = -(1 << 63)
EXPONENT_MAX = (1 << 63) - 1

# Largest |exponent| rendered as a plain integer / finite decimal
DECIMAL_RENDER_LIMIT = 64

_POW2_FORM = re.compile(r"^\s*([+-]?\d+)\s*\*\s*2\s*\^\s*\(?\s*([+-]?\d+)\s*\)?\s*$")

# Mantissas of exact distances run to millions of digits; the JSON form is decimal
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

Number = Union["Dyadic", int, Fraction]


class Ordering(Enum):
    """Result of an exact three-way comparison"""
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class Dyadic:
    """Exact number sign · mantissa · 2^exponent in canonical form"""

    sign: int
    mantissa: int
    exponent: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1) or self.mantissa < 0:
            raise MalformedInputError(f"Invalid dyadic fields: sign={self.sign}, mantissa={self.mantissa}")
        if self.mantissa == 0:
            if self.sign != 0 or self.exponent != 0:
                raise MalformedInputError("Zero dyadic must have sign 0 and exponent 0")
        elif self.mantissa % 2 == 0 or self.sign == 0:
            raise MalformedInputError(
                f"Dyadic not in canonical form (mantissa={self.mantissa}, sign={self.sign}).\n"
                f"Use Dyadic.of(n, e) to normalize."
            )
        if not EXPONENT_MIN <= self.exponent <= EXPONENT_MAX:
            raise DyadicOverflowError(f"Dyadic exponent {self.exponent} outside signed 64-bit range")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def of(cls, n: int, e: int = 0) -> "Dyadic":
        """
        Normalize the signed integer n times 2^e.

        Args:
            n: Signed integer numerator (any size)
            e: Power-of-two exponent

        Returns:
            Canonical Dyadic

        Raises:
            DyadicOverflowError: If the normalized exponent leaves 64-bit range
        """
        n = int(n)
        if n == 0:
            return ZERO
        sign = 1 if n > 0 else -1
        m = abs(n)
        tz = (m & -m).bit_length() - 1  # trailing zero bits
        return cls(sign, m >> tz, int(e) + tz)

    @classmethod
    def from_fraction(cls, value: Union[Fraction, int]) -> "Dyadic":
        """
        Convert a Fraction whose denominator is a power of two.

        Raises:
            MalformedInputError: If the denominator is not a power of two
        """
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise MalformedInputError(
                f"{value} is not a dyadic rational (denominator {den} is not a power of two)"
            )
        return cls.of(value.numerator, -(den.bit_length() - 1))

    @classmethod
    def coerce(cls, value: Number) -> "Dyadic":
        """Accept Dyadic, int or dyadic Fraction"""
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, bool):
            raise MalformedInputError("bool is not a number here")
        if isinstance(value, (int, Fraction)):
            return cls.from_fraction(value)
        raise MalformedInputError(f"Cannot interpret {value!r} as a dyadic rational")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """
        Parse any rendered form: "5", "-0.75", "3/4", "-3*2^-100".

        Raises:
            MalformedInputError: If the text is not a dyadic literal
        """
        if not isinstance(text, str):
            raise MalformedInputError(f"Expected a string dyadic literal, got {type(text).__name__}")
        match = _POW2_FORM.match(text)
        if match:
            return cls.of(int(match.group(1)), int(match.group(2)))
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise MalformedInputError(
                f"Cannot parse '{text}' as a dyadic rational.\n"
                f"Accepted forms: integer, finite decimal, a/b with b a power of two, m*2^e"
            ) from e
        return cls.from_fraction(value)

    @classmethod
    def from_json(cls, data: dict) -> "Dyadic":
        """Inverse of to_json: {"m": "<decimal>", "e": int, "s": -1|0|1}"""
        try:
            return cls(int(data["s"]), int(data["m"]), int(data["e"]))
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, MalformedInputError):
                raise
            raise MalformedInputError(f"Malformed dyadic JSON {data!r}: {e}") from e

    # ------------------------------------------------------------------
    # Views
    # ------------------------------------------------------------------

    @property
    def numerator(self) -> int:
        """Signed mantissa"""
        return self.sign * self.mantissa

    def is_zero(self) -> bool:
        return self.sign == 0

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.numerator << self.exponent)
        return Fraction(self.numerator, 1 << -self.exponent)

    def magnitude_bits(self) -> int:
        """floor(log2|x|) + 1, i.e. |x| lies in [2^(b-1), 2^b); 0 has no bits"""
        if self.sign == 0:
            raise ValueError("zero has no magnitude")
        return self.exponent + self.mantissa.bit_length()

    def to_json(self) -> dict:
        return {"m": str(self.mantissa), "e": self.exponent, "s": self.sign}

    def render(self) -> str:
        """Exact rendering; parse(render(x)) == x"""
        if self.sign == 0:
            return "0"
        if 0 <= self.exponent <= DECIMAL_RENDER_LIMIT:
            return str(self.numerator << self.exponent)
        if -DECIMAL_RENDER_LIMIT <= self.exponent < 0:
            k = -self.exponent
            digits = str(self.mantissa * 5 ** k).rjust(k + 1, "0")
            text = f"{digits[:-k]}.{digits[-k:]}".rstrip("0")
            return f"-{text}" if self.sign < 0 else text
        return f"{self.numerator}*2^{self.exponent}"

    def approx(self, digits: int = 12) -> str:
        """Rounded scientific-notation string; never goes through float"""
        if self.sign == 0:
            return "0"
        ctx = decimal.Context(prec=digits, Emin=decimal.MIN_EMIN, Emax=decimal.MAX_EMAX)
        value = ctx.multiply(decimal.Decimal(self.numerator), ctx.power(decimal.Decimal(2), self.exponent))
        return f"{value:.{digits - 1}e}"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Dyadic({self.render()})"

    def __bool__(self) -> bool:
        return self.sign != 0

    # ------------------------------------------------------------------
    # Arithmetic (exact, result always canonical)
    # ------------------------------------------------------------------

    def __add__(self, other: Number) -> "Dyadic":
        other = _as_dyadic(other)
        if other is None:
            return NotImplemented
        if self.sign == 0:
            return other
        if other.sign == 0:
            return self
        e = min(self.exponent, other.exponent)
        n = (self.numerator << (self.exponent - e)) + (other.numerator << (other.exponent - e))
        return Dyadic.of(n, e)

    __radd__ = __add__

    def __neg__(self) -> "Dyadic":
        if self.sign == 0:
            return self
        return Dyadic(-self.sign, self.mantissa, self.exponent)

    def __pos__(self) -> "Dyadic":
        return self

    def __abs__(self) -> "Dyadic":
        if self.sign >= 0:
            return self
        return Dyadic(1, self.mantissa, self.exponent)

    def __sub__(self, other: Number) -> "Dyadic":
        other = _as_dyadic(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Number) -> "Dyadic":
        other = _as_dyadic(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Number) -> "Dyadic":
        other = _as_dyadic(other)
        if other is None:
            return NotImplemented
        if self.sign == 0 or other.sign == 0:
            return ZERO
        # product of odd mantissas is odd: already canonical
        return _checked(self.sign * other.sign, self.mantissa * other.mantissa, self.exponent + other.exponent)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Dyadic":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if k == 0:
            return ONE
        if self.sign == 0:
            return ZERO
        sign = -1 if (self.sign < 0 and k % 2) else 1
        return _checked(sign, self.mantissa ** k, self.exponent * k)

    def shift(self, e: int) -> "Dyadic":
        """Multiply by 2^e (exact, O(1))"""
        if self.sign == 0:
            return ZERO
        return _checked(self.sign, self.mantissa, self.exponent + e)

    # ------------------------------------------------------------------
    # Ordering
    # ------------------------------------------------------------------

    def compare(self, other: Number) -> Ordering:
        """Exact three-way comparison against a Dyadic, int or Fraction"""
        if isinstance(other, Fraction) and not isinstance(other, Dyadic):
            if other.denominator & (other.denominator - 1):
                c = (self.to_fraction() > other) - (self.to_fraction() < other)
                return Ordering(c)
        other = Dyadic.coerce(other)
        if self.sign != other.sign:
            return Ordering.LESS if self.sign < other.sign else Ordering.GREATER
        if self.sign == 0:
            return Ordering.EQUAL
        # Same non-zero sign: compare magnitudes, cheap when bit sizes differ
        ba, bb = self.magnitude_bits(), other.magnitude_bits()
        if ba != bb:
            c = 1 if ba > bb else -1
        else:
            e = min(self.exponent, other.exponent)
            ma = self.mantissa << (self.exponent - e)
            mb = other.mantissa << (other.exponent - e)
            c = (ma > mb) - (ma < mb)
        return Ordering(c * self.sign)

    def __lt__(self, other: Number) -> bool:
        return self.compare(other) is Ordering.LESS

    def __le__(self, other: Number) -> bool:
        return self.compare(other) is not Ordering.GREATER

    def __gt__(self, other: Number) -> bool:
        return self.compare(other) is Ordering.GREATER

    def __ge__(self, other: Number) -> bool:
        return self.compare(other) is not Ordering.LESS


def _checked(sign: int, mantissa: int, exponent: int) -> Dyadic:
    if not EXPONENT_MIN <= exponent <= EXPONENT_MAX:
        raise DyadicOverflowError(f"Dyadic exponent {exponent} outside signed 64-bit range")
    return Dyadic(sign, mantissa, exponent)


def _as_dyadic(value) -> Optional[Dyadic]:
    if isinstance(value, Dyadic):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Dyadic.of(value)
    if isinstance(value, Fraction):
        return Dyadic.from_fraction(value)
    return None


ZERO = Dyadic(0, 0, 0)
ONE = Dyadic(1, 1, 0)


def pow2(e: int) -> Dyadic:
    """Return 2^e exactly"""
    return _checked(1, 1, int(e))


def arith(op: str, a: Dyadic, b: Optional[Dyadic] = None) -> Dyadic:
    """
    Named arithmetic entry point: add, sub, mul (binary) and neg, abs (unary).

    Example:
        >>> arith("add", Dyadic.parse("1/4"), Dyadic.parse("1/4"))
        Dyadic(0.5)
    """
    if op == "neg":
        return -a
    if op == "abs":
        return abs(a)
    if b is None:
        raise MalformedInputError(f"Operation '{op}' needs two operands")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise MalformedInputError(f"Unknown dyadic operation '{op}'. Valid: add, sub, mul, neg, abs")


def compare(a: Dyadic, b: Dyadic) -> Ordering:
    """Exact three-way comparison"""
    return a.compare(b)


def dyadic_sum(values) -> Dyadic:
    """Exact sum of an iterable of dyadics (ZERO when empty)"""
    total = ZERO
    for value in values:
        total = total + value
    return total
