"""Exact-number helpers shared across the package.

Scores, weights and totals are kept as fractions.Fraction everywhere so that
sums of decimal scores reproduce exactly and what-if deltas are exact. These
helpers translate between Fractions and the serialized forms: terminating
decimals travel as plain numbers, everything else as a "num/den" string.
"""

from __future__ import annotations

from fractions import Fraction


def parse_exact(value: int | float | str | Fraction) -> Fraction:
    """Parse a serialized number into a Fraction.

    Floats go through their shortest repr, so a YAML/JSON literal like 0.6
    becomes Fraction(3, 5) rather than the binary approximation. Strings may
    be decimal ("0.75") or rational ("1/74").
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a number: {value!r}") from exc
    raise ValueError(f"not a number: {value!r}")


def has_terminating_decimal(frac: Fraction) -> bool:
    den = frac.denominator
    for p in (2, 5):
        while den % p == 0:
            den //= p
    return den == 1


def exact_str(frac: Fraction) -> str:
    """Shortest exact string form: decimal when terminating, else num/den."""
    if frac.denominator == 1:
        return str(frac.numerator)
    if not has_terminating_decimal(frac):
        return f"{frac.numerator}/{frac.denominator}"
    sign = "-" if frac < 0 else ""
    frac = abs(frac)
    # Scale to an integer over a power of ten, then place the point.
    den = frac.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    digits = max(twos, fives)
    scaled = frac.numerator * 10**digits // frac.denominator
    text = str(scaled).rjust(digits + 1, "0")
    whole, part = text[:-digits], text[-digits:]
    part = part.rstrip("0")
    return f"{sign}{whole}.{part}" if part else f"{sign}{whole}"


def to_jsonable(frac: Fraction) -> int | float | str:
    """Serialized form for machine documents: lossless by construction."""
    if frac.denominator == 1:
        return frac.numerator
    if has_terminating_decimal(frac):
        value = float(exact_str(frac))
        # Shortest-repr floats round-trip; fall back to the string if not.
        if Fraction(str(value)) == frac:
            return value
    return f"{frac.numerator}/{frac.denominator}"


def display_str(frac: Fraction, places: int = 4) -> str:
    """Human rendering: exact trimmed decimal, or rounded when repeating."""
    if has_terminating_decimal(frac):
        return exact_str(frac)
    rounded = round(float(frac), places)
    return f"{rounded:.{places}f}".rstrip("0").rstrip(".")
