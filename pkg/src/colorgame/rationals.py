"""Small helpers for exact rational values and their wire format."""

from fractions import Fraction

from .errors import ValidationError


def parse_rational(text: str) -> Fraction:
    """Parse "p", "p/q" or a decimal literal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"not a rational number: {text!r}") from exc


def fmt_rational(value) -> str:
    """Serialize a rational as "p/q" (always with an explicit denominator)."""
    frac = Fraction(value)
    return f"{frac.numerator}/{frac.denominator}"
