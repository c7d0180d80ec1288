"""Exact rational arithmetic backend.

Every number this package touches is an exact rational: mechanism
coefficients, taxes, LP pivots.  Equality-threshold results (feasibility
boundaries, zero optima) are only meaningful with exact arithmetic, so
floats are rejected outright.

Two interchangeable backends exist and one is picked at import time:

* ``gmpy2.mpq`` -- a GMP-backed compiled rational, roughly an order of
  magnitude faster on the small rationals that dominate grid scans and
  simplex pivots.  Used when gmpy2 is importable.
* ``fractions.Fraction`` -- the pure-Python fallback.

Set ``GROVES_RATIONAL=fraction`` to force the fallback.  Both backends
implement ``numbers.Rational`` with compatible hashing and comparison, so
results are bit-for-bit identical either way; ``scripts/benchmark_backends.py``
compares their speed.
"""

from __future__ import annotations

import numbers
import os
from fractions import Fraction

__all__ = ["BACKEND", "R", "Rational", "ZERO", "ONE", "rat_str", "parse_rational", "decimal_str"]

Rational = numbers.Rational

_forced = os.environ.get("GROVES_RATIONAL", "").strip().lower()
if _forced in {"fraction", "pure"}:
    _make = Fraction
    BACKEND = "fraction"
else:
    try:
        from gmpy2 import mpq as _make  # type: ignore[import-untyped]

        BACKEND = "gmpy2"
    except ImportError:
        _make = Fraction
        BACKEND = "fraction"


def R(value, denominator=None):
    """Build a backend rational from ints, rationals, or a 'p/q' string.

    Floats are rejected: silent binary rounding would poison every
    exact-equality result downstream.
    """
    if isinstance(value, float) or isinstance(denominator, float):
        raise TypeError("floats are not exact; pass an int, a rational, or a 'p/q' string")
    if denominator is not None:
        return _make(value) / _make(denominator)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, numbers.Rational):
        return _make(value)
    raise TypeError(f"cannot build an exact rational from {type(value).__name__}")


ZERO = R(0)
ONE = R(1)


def parse_rational(text: str):
    """Parse 'p/q' or 'p' (optionally signed) into a rational."""
    body = text.strip()
    if "/" in body:
        num, _, den = body.partition("/")
        p, q = int(num.strip()), int(den.strip())
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return _make(p) / _make(q)
    return _make(int(body))


def rat_str(value) -> str:
    """Canonical 'p/q' encoding (denominator always present, q >= 1)."""
    r = R(value)
    return f"{r.numerator}/{r.denominator}"


def decimal_str(value, places: int) -> str:
    """Round-half-even decimal rendering with exactly ``places`` digits.

    Convenience only; computed by exact integer scaling, never via float.
    """
    if places < 0:
        raise ValueError("places must be >= 0")
    r = Fraction(R(value))
    scaled = round(r * 10**places)
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
