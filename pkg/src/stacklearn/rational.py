"""Exact rational helpers shared across the package.

Everything user-facing is a ``fractions.Fraction``; floats never enter
any computation.  JSON numbers are converted through ``decimal.Decimal``
so that e.g. ``0.5`` means exactly 1/2 and ``0.1`` means exactly 1/10.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Union

Rational = Union[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(value) -> Fraction:
    """Convert an exact representation to Fraction, rejecting floats.

    Accepts int, Fraction, Decimal and strings like "3", "-2/7" or
    "0.25" (decimal expansions convert exactly).
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational value")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Decimal):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError(
            f"refusing float {value!r}: pass a string or Fraction for exactness"
        )
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


def format_fraction(q: Rational) -> str:
    """Render as "p/q" (or "p" for integers), the wire format used in
    every JSON/CSV output."""
    q = Fraction(q)
    return str(q)


def decimal_str(q: Rational, digits: int = 12) -> str:
    """Fixed-precision decimal rendering for human-readable columns."""
    q = Fraction(q)
    sign = "-" if q < 0 else ""
    q = abs(q)
    scaled = q * 10**digits
    whole = scaled.numerator // scaled.denominator
    text = str(whole).rjust(digits + 1, "0")
    return f"{sign}{text[:-digits]}.{text[-digits:]}"


def as_pairs(values: Iterable[Rational]) -> list:
    """Interleave Fractions into the kernel's flat (num, den) layout."""
    flat = []
    for v in values:
        f = Fraction(v)
        flat.append(f.numerator)
        flat.append(f.denominator)
    return flat


def from_pairs(flat: list) -> tuple:
    return tuple(
        Fraction(flat[2 * i], flat[2 * i + 1]) for i in range(len(flat) // 2)
    )


def log2_fixed(value: Rational, precision_bits: int = 64) -> Fraction:
    """Deterministic fixed-point approximation of log2(value).

    Returns k / 2**precision_bits computed by binary digit extraction
    with 16 guard bits; the absolute error is below 2**-precision_bits.
    Exact whenever value is a power of two.
    """
    q = Fraction(value)
    if q <= 0:
        raise ValueError("log2 requires a positive argument")
    a, b = q.numerator, q.denominator
    ipart = 0
    while a < b:
        a *= 2
        ipart -= 1
    while a >= 2 * b:
        b *= 2
        ipart += 1
    # now 1 <= a/b < 2; extract fractional bits in fixed point
    guard = precision_bits + 16
    x = (a << guard) // b  # in [2^guard, 2^(guard+1))
    frac = 0
    for _ in range(guard):
        x = (x * x) >> guard
        frac <<= 1
        if x >> (guard + 1):
            frac |= 1
            x >>= 1
    frac >>= 16
    return Fraction(ipart * (1 << precision_bits) + frac, 1 << precision_bits)
