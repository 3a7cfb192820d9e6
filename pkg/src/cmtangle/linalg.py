"""Small exact integer/rational linear algebra helpers."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


def norm(x: Sequence[int]) -> int:
    return sum(a * a for a in x)


def add(x: Sequence[int], y: Sequence[int]) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Sequence[int], y: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def neg(x: Sequence[int]) -> Vector:
    return tuple(-a for a in x)


def scale(c: int, x: Sequence[int]) -> Vector:
    return tuple(c * a for a in x)


def vsum(vectors, dim: int) -> Vector:
    total = [0] * dim
    for v in vectors:
        for i, a in enumerate(v):
            total[i] += a
    return tuple(total)


def gram(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[dot(u, v) for v in vectors] for u in vectors]


def int_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    m = [list(row) for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def solve(matrix: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[Fraction] | None:
    """Solve a square system exactly; ``None`` if singular."""
    n = len(matrix)
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        piv = aug[col][col]
        aug[col] = [v / piv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [row[n] for row in aug]


def coordinates(basis: Sequence[Sequence[int]], x: Sequence[int]) -> list[Fraction] | None:
    """Coordinates of ``x`` in a linearly independent ``basis``.

    Returns ``None`` when ``x`` is not in the rational span.
    """
    if not basis:
        return [] if not any(x) else None
    g = gram(basis)
    c = solve(g, [dot(b, x) for b in basis])
    if c is None:
        raise ValueError("basis vectors are linearly dependent")
    recon = [sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(len(x))]
    if any(r != xi for r, xi in zip(recon, x)):
        return None
    return c


def integer_coordinates(basis, x) -> list[int] | None:
    c = coordinates(basis, x)
    if c is None or any(ci.denominator != 1 for ci in c):
        return None
    return [int(ci) for ci in c]


def is_positive_definite(matrix: Sequence[Sequence[int]]) -> bool:
    """Leading principal minors all positive."""
    n = len(matrix)
    return all(int_det([row[:k] for row in matrix[:k]]) > 0 for k in range(1, n + 1))


def vectors_of_norm(dim: int, target: int, exact: bool = True):
    """Yield all integer vectors in Z^dim of norm ``target`` (or <= if not exact).

    Output is in increasing lexicographic order.
    """
    out = [0] * dim

    def rec(i: int, budget: int):
        if i == dim:
            if not exact or budget == 0:
                yield tuple(out)
            return
        # remaining coordinates can absorb at most budget
        bound = int(budget ** 0.5)
        while (bound + 1) ** 2 <= budget:
            bound += 1
        for a in range(-bound, bound + 1):
            out[i] = a
            yield from rec(i + 1, budget - a * a)
        out[i] = 0

    yield from rec(0, target)
