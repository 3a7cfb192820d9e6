"""p/q-changemaker lattices, their fractional bases and irreducibility tests.

Ambient vectors are integer tuples ordered ``(f1, ..., ft, e0, ..., es)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .contfrac import ContinuedFractionError, neg_cf_expand, split_n_r
from .linalg import Vector, dot, norm


class ChangemakerError(ValueError):
    pass


def is_changemaker(sigma: Sequence[int]) -> bool:
    """True iff ``sigma`` satisfies the changemaker condition.

    ``sigma`` must be nondecreasing and nonnegative.
    """
    sigma = list(sigma)
    if any(x < 0 for x in sigma):
        raise ChangemakerError("sigma entries must be nonnegative")
    if any(a > b for a, b in zip(sigma, sigma[1:])):
        raise ChangemakerError("sigma must be nondecreasing")
    total = 0
    for x in sigma:
        if x > total + 1:
            return False
        total += x
    return True


def realize_subset(sigma: Sequence[int], k: int) -> frozenset[int]:
    """1-based index set ``A`` with ``sum(sigma[i] for i in A) == k``."""
    total = sum(sigma)
    if not 0 <= k <= total:
        raise ChangemakerError(f"k={k} outside [0, {total}]")
    chosen = []
    remaining = k
    for i in range(len(sigma), 0, -1):
        if sigma[i - 1] <= remaining and sigma[i - 1] > 0:
            chosen.append(i)
            remaining -= sigma[i - 1]
    if remaining:
        raise ChangemakerError(f"{k} is not a subset sum of {tuple(sigma)}")
    return frozenset(chosen)


def enumerate_sigma(n: int, length: int | None = None) -> list[tuple[int, ...]]:
    """All changemaker tails with positive entries and ``1 + sum(s^2) == n``.

    Lexicographic order.  ``length`` restricts the number of entries.
    """
    if n < 1:
        raise ChangemakerError("n must be >= 1")
    found: list[tuple[int, ...]] = []

    def rec(prefix: list[int], total: int, budget: int):
        if budget == 0:
            if length is None or len(prefix) == length:
                found.append(tuple(prefix))
            return
        if length is not None and len(prefix) >= length:
            return
        lo = prefix[-1] if prefix else 1
        hi = total + 1
        for x in range(lo, hi + 1):
            if x * x > budget:
                break
            prefix.append(x)
            rec(prefix, total + x, budget - x * x)
            prefix.pop()

    rec([], 0, n - 1)
    found.sort()
    return found


@dataclass(frozen=True)
class ChangemakerLattice:
    """The lattice ``<w0, ..., wl>^perp`` inside ``Z^(t+s+1)``."""

    pq: Fraction
    n: int
    r: int
    a: tuple[int, ...]
    m: tuple[int, ...]
    sigma: tuple[int, ...]
    w: tuple[Vector, ...] = field(repr=False)

    @property
    def p(self) -> int:
        return self.pq.numerator

    @property
    def q(self) -> int:
        return self.pq.denominator

    @property
    def t(self) -> int:
        return len(self.sigma)

    @property
    def s(self) -> int:
        return self.m[-1]

    @property
    def l(self) -> int:  # noqa: E743
        return len(self.a) - 1

    @property
    def dim(self) -> int:
        return self.t + self.s + 1

    @property
    def rank(self) -> int:
        return self.dim - len(self.w)

    def f(self, i: int) -> int:
        """Coordinate index of ``f_i`` (1-based)."""
        return i - 1

    def e(self, j: int) -> int:
        """Coordinate index of ``e_j`` (0-based)."""
        return self.t + j

    def unit(self, index: int) -> Vector:
        v = [0] * self.dim
        v[index] = 1
        return tuple(v)

    def vector(self, f: Sequence[int] = (), e: Sequence[int] = ()) -> Vector:
        f = list(f) + [0] * (self.t - len(f))
        e = list(e) + [0] * (self.s + 1 - len(e))
        return tuple(f) + tuple(e)

    def f_part(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(x[: self.t])

    def e_part(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(x[self.t:])

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.dim and all(dot(x, wk) == 0 for wk in self.w)

    def fractional_part(self, x: Sequence[int]) -> Vector:
        """``x_F``: the e-coordinates of ``x`` (zero on f)."""
        return (0,) * self.t + tuple(x[self.t:])

    def integer_part(self, x: Sequence[int]) -> Vector:
        """``x_I``: the f- and e0-coordinates of ``x``."""
        e0 = self.t
        return tuple(x[:e0 + 1]) + (0,) * self.s

    def gram_w(self) -> list[list[int]]:
        return linalg.gram(self.w)

    @cached_property
    def coordinate_classes(self) -> tuple[tuple[int, ...], ...]:
        """Coordinates grouped by identical columns of ``(w0, ..., wl)``.

        Permuting coordinates inside one class fixes every ``w_k``; these
        permutations generate the symmetry group used for canonical forms.
        """
        groups: dict[tuple[int, ...], list[int]] = {}
        for c in range(self.dim):
            groups.setdefault(tuple(wk[c] for wk in self.w), []).append(c)
        return tuple(sorted(tuple(g) for g in groups.values()))

    def to_json(self) -> dict:
        return {
            "pq": f"{self.p}/{self.q}",
            "n": self.n,
            "r": self.r,
            "a": list(self.a),
            "m": list(self.m),
            "s": self.s,
            "t": self.t,
            "sigma": list(self.sigma),
            "w": [self.vector_json(wk) for wk in self.w],
        }

    def vector_json(self, x: Sequence[int]) -> dict:
        return {"f": list(x[: self.t]), "e": list(x[self.t:])}

    def vector_from_json(self, obj) -> Vector:
        if isinstance(obj, dict):
            f, e = list(obj.get("f", [])), list(obj.get("e", []))
            if len(f) != self.t or len(e) != self.s + 1:
                raise ChangemakerError("vector has wrong shape for this lattice")
            return tuple(f) + tuple(e)
        x = tuple(int(v) for v in obj)
        if len(x) != self.dim:
            raise ChangemakerError("vector has wrong length for this lattice")
        return x


def build_cm_lattice(pq: Fraction, sigma: Sequence[int]) -> ChangemakerLattice:
    """Construct the p/q-changemaker lattice for ``q >= 2`` and tail ``sigma``."""
    pq = Fraction(pq)
    if pq <= 1:
        raise ChangemakerError("degenerate slope p/q <= 1")
    if pq.denominator < 2:
        raise ChangemakerError("integer changemaker lattices are not supported")
    sigma = tuple(int(x) for x in sigma)
    if not is_changemaker(sigma):
        raise ChangemakerError(f"{sigma} fails the changemaker condition")
    n, r = split_n_r(pq)
    if 1 + sum(x * x for x in sigma) != n:
        raise ChangemakerError(
            f"|w0| = {1 + sum(x * x for x in sigma)} but n = {n} for {pq}")
    a = tuple(neg_cf_expand(pq))
    if a[0] != n:
        raise ContinuedFractionError("leading coefficient differs from n")
    m = [0]
    for k in range(1, len(a)):
        m.append(sum(a[1:k + 1]) - k)
    t, s = len(sigma), m[-1]
    dim = t + s + 1
    w = []
    w0 = [0] * dim
    w0[:t] = sigma
    w0[t] = 1
    w.append(tuple(w0))
    for k in range(1, len(a)):
        wk = [0] * dim
        wk[t + m[k - 1]] = -1
        for j in range(m[k - 1] + 1, m[k] + 1):
            wk[t + j] = 1
        w.append(tuple(wk))
    return ChangemakerLattice(pq=pq, n=n, r=r, a=a, m=tuple(m), sigma=sigma, w=tuple(w))


def half_integer_lattice(spec: ChangemakerLattice) -> ChangemakerLattice:
    """The (n - 1/2)-changemaker lattice with the same tail."""
    return build_cm_lattice(Fraction(2 * spec.n - 1, 2), spec.sigma)


@dataclass(frozen=True)
class FractionalBasis:
    spec: ChangemakerLattice
    v: tuple[Vector, ...]

    @property
    def m(self) -> int:
        return len(self.v) - 1

    def coordinates(self, x: Sequence[int]) -> list[int]:
        """Integer coordinates of ``x`` (supported on e) in this basis."""
        if any(x[: self.spec.t]):
            raise ChangemakerError("vector has nonzero f-coordinates; not in L_F")
        c = linalg.integer_coordinates(self.v, x)
        if c is None:
            raise ChangemakerError("vector is not in the fractional lattice")
        return c

    def chain(self, a: int, b: int, sign: int = 1) -> Vector:
        """``sign * (v_a + ... + v_b)``."""
        return linalg.scale(sign, linalg.vsum(self.v[a:b + 1], self.spec.dim))

    def to_json(self) -> list[dict]:
        return [self.spec.vector_json(x) for x in self.v]


def fractional_basis(spec: ChangemakerLattice) -> FractionalBasis:
    """Basis ``v0, ..., vm`` of the fractional part, with ``m = |M|``."""
    s, t = spec.s, spec.t
    marks = set(spec.m)
    M = [k for k in range(s + 1) if k not in marks]

    def e_range(lo: int, hi: int, head: int = 1) -> Vector:
        x = [0] * spec.dim
        for j in range(lo, hi + 1):
            x[t + j] = 1
        if head != 1:
            x[t + lo] = head
        return tuple(x)

    v0 = e_range(0, M[0] if M else s)
    vs = [v0]
    for i, k in enumerate(M):
        k_next = M[i + 1] if i + 1 < len(M) else s
        vs.append(e_range(k, k_next, head=-1))
    return FractionalBasis(spec=spec, v=tuple(vs))


def is_indecomposable(spec: ChangemakerLattice) -> bool:
    return all(x >= 1 for x in spec.sigma)


def is_irreducible_LF(x: Sequence[int], basis: FractionalBasis) -> bool:
    """True iff ``x = +-(v_a + ... + v_b)`` in the fractional basis."""
    c = basis.coordinates(x)
    nz = [i for i, ci in enumerate(c) if ci != 0]
    if not nz:
        return False
    sign = c[nz[0]]
    if sign not in (1, -1):
        return False
    return nz == list(range(nz[0], nz[-1] + 1)) and all(c[i] == sign for i in nz)


def brute_force_irreducible(x: Sequence[int], lattice_basis: Sequence[Sequence[int]],
                            max_norm: int = 16) -> bool:
    """Exhaustive irreducibility test of ``x`` in the lattice spanned by a basis.

    A decomposition ``x = y + z`` with ``y.z >= 0`` forces ``|y| <= |x|``, so
    every ambient vector with norm at most ``|x|`` is tried as ``y``.
    """
    nx = norm(x)
    if nx == 0:
        return False
    if nx > max_norm:
        raise ChangemakerError(f"norm {nx} above oracle bound {max_norm}")
    if linalg.integer_coordinates(lattice_basis, x) is None:
        raise ChangemakerError("x is not in the lattice")
    for y in linalg.vectors_of_norm(len(x), nx, exact=False):
        if not any(y) or tuple(y) == tuple(x):
            continue
        z = linalg.sub(x, y)
        if dot(y, z) < 0:
            continue
        if linalg.integer_coordinates(lattice_basis, y) is not None:
            return False
    return True


def lattice_basis(spec: ChangemakerLattice) -> list[Vector]:
    """An integral basis of the changemaker lattice ``L``.

    Built from the fractional basis ``v1..vm`` and, for each ``f_k``, a
    vector ``-f_k + sum_{A} f_i (+ v0)`` from the changemaker subset sums.
    """
    basis = fractional_basis(spec)
    out: list[Vector] = []
    for k in range(1, spec.t + 1):
        sk = spec.sigma[k - 1]
        x = [0] * spec.dim
        if sk == 0:
            x[spec.f(k)] = 1
        else:
            prefix = spec.sigma[: k - 1]
            if sk == 1 + sum(prefix):
                A = range(1, k)
                x = list(basis.v[0])
            else:
                A = realize_subset(prefix, sk)
            x[spec.f(k)] = -1
            for i in A:
                x[spec.f(i)] += 1
        out.append(tuple(x))
    out.extend(basis.v[1:])
    return out


def subset_sum_oracle(sigma: Sequence[int]) -> bool:
    """Every ``0 <= k <= sum(sigma)`` is a subset sum (exhaustive)."""
    sums = {0}
    for x in sigma:
        sums |= {s + x for s in sums}
    return all(k in sums for k in range(sum(sigma) + 1))
