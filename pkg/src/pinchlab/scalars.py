"""Scalar helpers shared by the rational and float arithmetic modes.

A value is "rational" when it is a Fraction or an int; everything else is
treated as a float.  Mixed-mode tensor operations are rejected at the tensor
level, but scalar formulas below are mode-agnostic: feeding Fractions in
gives exact Fractions out, feeding floats gives floats.
"""

from __future__ import annotations

from fractions import Fraction

RATIONAL = "rational"
FLOAT = "float"

MODES = (RATIONAL, FLOAT)


class ArithmeticModeError(TypeError):
    """Raised on mixed rational/float tensor operations or unknown modes."""


def check_mode(mode):
    if mode not in MODES:
        raise ArithmeticModeError(f"unknown arithmetic mode {mode!r}")
    return mode


def join_modes(*modes):
    modes = {check_mode(m) for m in modes}
    if len(modes) != 1:
        raise ArithmeticModeError(
            "mixed-mode operation rejected: " + ", ".join(sorted(modes))
        )
    return modes.pop()


def is_rational(x) -> bool:
    return isinstance(x, (Fraction, int))


def parse_scalar(text):
    """Parse a CLI scalar: "p/q" or a decimal string, converted exactly.

    Decimal strings are decimal rationals, so the conversion is exact
    ("0.125" -> 1/8, never a rounded binary float).
    """
    text = str(text).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}: {exc}") from exc


def exact_div(num, den):
    """num/den, staying exact when num is rational (den is a plain int)."""
    if is_rational(num):
        return Fraction(num, den) if isinstance(num, int) else num / den
    return num / den


def scalar_to_json(x):
    """Render a scalar for report emission: rationals as "p/q" strings."""
    if isinstance(x, bool):
        return x
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    if isinstance(x, int):
        return str(x)
    return float(x)
