"""Atom theories and atom values.

Two theories are supported: EQ (a countable set with equality only, atoms
named by integers) and DLO (the rationals with their dense order, atoms
are exact ``Fraction`` values kept in lowest terms).  Every other module
treats atom values as opaque except for equality (EQ) or order (DLO).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SchemaError, TheoryMismatch

EQ = "eq"
DLO = "dlo"

THEORIES = (EQ, DLO)


def check_theory(theory: str) -> str:
    if theory not in THEORIES:
        raise TheoryMismatch(f"unknown atom theory {theory!r}")
    return theory


def coerce_atom(theory: str, value):
    """Normalize a raw value into an atom of the given theory."""
    if theory == EQ:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TheoryMismatch(f"EQ atoms are integers, got {value!r}")
        return value
    if theory == DLO:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return Fraction(value)
        raise TheoryMismatch(f"DLO atoms are rationals, got {value!r}")
    raise TheoryMismatch(f"unknown atom theory {theory!r}")


def parse_atom(theory: str, text: str):
    """Parse an atom from its document form ("5" or "1/3")."""
    text = text.strip()
    try:
        if theory == EQ:
            return int(text)
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot parse {theory} atom from {text!r}") from exc


def format_atom(value) -> str:
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def format_rational(value: Fraction) -> str:
    return format_atom(Fraction(value))


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"cannot parse rational from {text!r}") from exc
