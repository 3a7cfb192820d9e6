"""Exact continued fractions in the minus and plus conventions.

Rationals are :class:`fractions.Fraction` throughout.  The minus convention
``[a0, a1, ..., al]^-`` means ``a0 - 1/(a1 - 1/(... - 1/al))``; the plus
convention ``[c0, ..., ck]^+`` means ``c0 + 1/(c1 + 1/(... + 1/ck))``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence


class ContinuedFractionError(ValueError):
    pass


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"P/Q"`` (or an integer) into a reduced Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    try:
        if "/" in s:
            num, den = s.split("/", 1)
            value = Fraction(int(num), int(den))
        else:
            value = Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ContinuedFractionError(f"not a rational: {text!r}") from exc
    return value


def format_rational(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_coefficients(text: str) -> list[int]:
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise ContinuedFractionError("empty coefficient list")
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise ContinuedFractionError(f"bad coefficient list: {text!r}") from exc


def neg_cf_expand(x: Fraction) -> list[int]:
    """Expand ``x > 1`` as ``[a0, ..., al]^-`` with every tail entry >= 2.

    >>> neg_cf_expand(Fraction(107, 5))
    [22, 2, 3]
    """
    x = Fraction(x)
    if x <= 1:
        raise ContinuedFractionError(f"minus expansion needs x > 1, got {x}")
    coeffs = []
    while True:
        a = math.ceil(x)
        coeffs.append(a)
        rest = a - x
        if rest == 0:
            return coeffs
        x = 1 / rest


def _check_neg(coeffs: Sequence[int]) -> None:
    if not coeffs:
        raise ContinuedFractionError("empty continued fraction")
    if coeffs[0] < 1:
        raise ContinuedFractionError("leading coefficient must be >= 1")
    if any(a < 2 for a in coeffs[1:]):
        raise ContinuedFractionError("tail coefficients must be >= 2")


def eval_neg_cf_relaxed(coeffs: Sequence[int]) -> Fraction:
    """Evaluate ``[b0, ..., bl]^-`` for arbitrary integers.

    Only nonvanishing intermediate denominators are required; used for
    tangle edge counts where ``b0`` may be 0 or 1.
    """
    if not coeffs:
        raise ContinuedFractionError("empty continued fraction")
    value = Fraction(coeffs[-1])
    for a in reversed(coeffs[:-1]):
        if value == 0:
            raise ContinuedFractionError(
                f"zero denominator while evaluating {list(coeffs)}")
        value = a - 1 / value
    return value


def eval_neg_cf(coeffs: Sequence[int]) -> Fraction:
    _check_neg(coeffs)
    return eval_neg_cf_relaxed(coeffs)


def _check_pos(coeffs: Sequence[int]) -> None:
    if not coeffs:
        raise ContinuedFractionError("empty continued fraction")
    if coeffs[0] < 0 or any(c < 1 for c in coeffs[1:]):
        raise ContinuedFractionError(
            "plus coefficients must be positive (leading may be 0)")


def eval_pos_cf(coeffs: Sequence[int]) -> Fraction:
    _check_pos(coeffs)
    value = Fraction(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        value = c + 1 / value
    return value


def pos_cf_expand(x: Fraction) -> list[int]:
    """Ordinary (plus) expansion of ``x >= 0``."""
    x = Fraction(x)
    if x < 0:
        raise ContinuedFractionError("plus expansion needs x >= 0")
    coeffs = []
    while True:
        c = math.floor(x)
        coeffs.append(c)
        rest = x - c
        if rest == 0:
            return coeffs
        x = 1 / rest


def make_even(coeffs: Sequence[int]) -> list[int]:
    """Rewrite a plus fraction to even length without changing its value."""
    cs = list(coeffs)
    if len(cs) % 2 == 0:
        return cs
    if cs[-1] >= 2 or len(cs) == 1:
        return cs[:-1] + [cs[-1] - 1, 1]
    # trailing 1 folds into its predecessor
    return cs[:-2] + [cs[-2] + 1]


def pos_to_neg(coeffs: Sequence[int]) -> list[int]:
    """Convert ``[c0, ..., c_{2d-1}]^+`` to the minus convention.

    The block rule is ``c0+1, 2^(c1-1), c2+2, 2^(c3-1), ..., c_{2d-2}+2,
    2^(c_{2d-1}-1)``.  Odd-length input is first made even.
    """
    if eval_pos_cf(coeffs) <= 0:
        raise ContinuedFractionError("minus expansion needs a positive value")
    cs = make_even(coeffs)
    out: list[int] = []
    for i in range(0, len(cs), 2):
        out.append(cs[i] + (1 if i == 0 else 2))
        out.extend([2] * (cs[i + 1] - 1))
    return out


def split_n_r(x: Fraction) -> tuple[int, int]:
    """Write ``x = p/q`` as ``n - r/q`` with ``0 < r < q``."""
    x = Fraction(x)
    if x.denominator == 1:
        raise ContinuedFractionError(f"{x} is integral; no split with 0 < r < q")
    n = math.ceil(x)
    r = n * x.denominator - x.numerator
    return n, r


def tridiagonal_det(diagonal: Iterable[int]) -> int:
    """Determinant of the tridiagonal matrix with -1 off the diagonal."""
    prev, cur = 1, 0
    first = True
    for a in diagonal:
        if first:
            prev, cur = 1, a
            first = False
        else:
            prev, cur = cur, a * cur - prev
    return cur if not first else 1
