"""Small helpers shared by the CLI and exporters"""

import decimal
import hashlib
from fractions import Fraction
from pathlib import Path
from typing import Union

from .dyadic import Dyadic
from .seqspace import NormValue


def calculate_file_hash(file_path_or_content: Union[str, Path, bytes]) -> str:
    """
    SHA-256 of a file or of raw bytes

    Examples:
        >>> calculate_file_hash(b"")
        'e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855'
    """
    if isinstance(file_path_or_content, bytes):
        content = file_path_or_content
    else:
        content = Path(file_path_or_content).read_bytes()
    return hashlib.sha256(content).hexdigest()


def exact_text(value: Union[Dyadic, Fraction, NormValue, int]) -> str:
    """Exact rendering of a scalar: dyadic form when possible, else a/b"""
    if isinstance(value, NormValue):
        return value.value.render()
    if isinstance(value, Fraction):
        if value.denominator & (value.denominator - 1) == 0:
            return Dyadic.from_fraction(value).render()
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, Dyadic):
        return value.render()
    return str(value)


def approx_text(value: Union[Dyadic, Fraction, NormValue, int], digits: int = 12) -> str:
    """Decimal approximation for human-readable columns"""
    if isinstance(value, NormValue):
        return value.value.approx(digits)
    if isinstance(value, Dyadic):
        return value.approx(digits)
    value = Fraction(value)
    if value.denominator & (value.denominator - 1) == 0:
        return Dyadic.from_fraction(value).approx(digits)
    ctx = decimal.Context(prec=digits)
    quotient = ctx.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator))
    return f"{quotient:.{digits - 1}e}"
