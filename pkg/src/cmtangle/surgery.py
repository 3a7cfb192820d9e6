"""Surgery slope bookkeeping and d-invariant vanishing counts.

The correction terms of a p/q surgery on a knot are determined by the
knot's V-sequence.  Only the first index at which it vanishes matters for
the counts below, so V-sequences are taken as inputs and never computed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .contfrac import split_n_r
from .graphlat import GoeritzMatrix


class SurgeryError(ValueError):
    pass


@dataclass(frozen=True)
class VSequence:
    """Non-increasing, eventually zero; entries past the end are zero."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if any(v < 0 for v in vals):
            raise SurgeryError("V-sequence entries must be nonnegative")
        if any(a < b for a, b in zip(vals, vals[1:])):
            raise SurgeryError("V-sequence must be non-increasing")
        object.__setattr__(self, "values", vals)

    @classmethod
    def canonical(cls, gtilde: int) -> VSequence:
        """``V_j = max(0, gtilde - j)``."""
        if gtilde < 0:
            raise SurgeryError("gtilde must be nonnegative")
        return cls(tuple(range(gtilde, -1, -1)))

    @property
    def gtilde(self) -> int:
        for j, v in enumerate(self.values):
            if v == 0:
                return j
        return len(self.values)

    def __getitem__(self, j: int) -> int:
        if j < 0:
            raise IndexError("negative V index")
        return self.values[j] if j < len(self.values) else 0


def _check_pq(p: int, q: int) -> None:
    if p <= 0 or q <= 0:
        raise SurgeryError("p and q must be positive")
    if gcd(p, q) != 1:
        raise SurgeryError(f"p={p} and q={q} are not coprime")


def d_tilde(V: VSequence, p: int, q: int, i: int) -> int:
    """Shifted correction term at spin^c index ``i``."""
    _check_pq(p, q)
    if not 0 <= i <= p - 1:
        raise SurgeryError(f"index {i} outside 0..{p - 1}")
    # ceil((p - i)/q) with integers
    j = min(i // q, -((i - p) // q))
    return -2 * V[j]


def z_count(gtilde: int, p: int, q: int) -> int:
    """Number of indices where the shifted correction term vanishes."""
    _check_pq(p, q)
    if gtilde < 0:
        raise SurgeryError("gtilde must be nonnegative")
    if gtilde == 0:
        return p
    k = 2 * gtilde - 1
    if p > k * q:
        return p - k * q
    return 0


def z_count_enumerated(V: VSequence, p: int, q: int) -> int:
    return sum(1 for i in range(p) if d_tilde(V, p, q, i) == 0)


def greene_bound_ok(gtilde: int, p: int, q: int) -> bool:
    """``2 gtilde <= n - sqrt(n)`` for ``n = ceil(p/q)``, in integers."""
    _check_pq(p, q)
    n = -(-p // q)
    d = n - 2 * gtilde
    return d >= 0 and d * d >= n


def gibbons_hypothesis_ok(gtilde: int, p: int, q: int) -> bool:
    return z_count(gtilde, p, q) > min(p - 1, q)


def montesinos_slope(tangle_slope: Fraction, mu0: int) -> Fraction:
    """Surgery slope after replacing the marked crossing by a tangle.

    ``tangle_slope`` is ``a/b``; the result is ``-(mu0 + a/(a+b))``.
    """
    tangle_slope = Fraction(tangle_slope)
    if tangle_slope < 0:
        raise SurgeryError("tangle slope must be nonnegative")
    if mu0 < 0:
        raise SurgeryError("mu0 must be nonnegative")
    a, b = tangle_slope.numerator, tangle_slope.denominator
    return -(mu0 + Fraction(a, a + b))


def theorem_slope(n: int, r: int, q: int) -> tuple[int, Fraction]:
    """``(p, -p/q)`` with ``p = qn - r``, checked against the tangle slope."""
    if not 0 < r < q:
        raise SurgeryError(f"r={r} must satisfy 0 < r < q={q}")
    if n < 1:
        raise SurgeryError("n must be at least 1")
    p = q * n - r
    slope = Fraction(-p, q)
    if montesinos_slope(Fraction(q - r, r), n - 1) != slope:
        raise SurgeryError(f"tangle slope {q - r}/{r} does not give {slope}")
    return p, slope


def small_slope_verdict(pq: Fraction) -> dict:
    """For ``0 < p/q < 1`` the genus bound forces the unknot."""
    pq = Fraction(pq)
    if not 0 < pq < 1:
        raise SurgeryError(f"{pq} is not strictly between 0 and 1")
    return {
        "slope": f"{pq.numerator}/{pq.denominator}",
        "knot": "unknot",
        "manifold": "lens space",
        "link": "2-bridge",
    }


def det_check(gm: GoeritzMatrix, p: int) -> bool:
    return abs(gm.det()) == p


@dataclass
class SurgeryVerdict:
    p: int
    q: int
    gtilde: int
    slope: Fraction = field(init=False)
    z: int = field(init=False)
    z_branch: str = field(init=False)
    greene: bool = field(init=False)
    gibbons: bool = field(init=False)
    det_ok: bool | None = None

    def __post_init__(self):
        self.slope = Fraction(-self.p, self.q)
        self.z = z_count(self.gtilde, self.p, self.q)
        if self.gtilde == 0:
            self.z_branch = "gtilde=0"
        elif self.p > (2 * self.gtilde - 1) * self.q:
            self.z_branch = "p/q>2gtilde-1"
        else:
            self.z_branch = "p/q<=2gtilde-1"
        self.greene = greene_bound_ok(self.gtilde, self.p, self.q)
        self.gibbons = self.z > min(self.p - 1, self.q)

    @property
    def obstructed(self) -> bool:
        return not (self.greene and self.gibbons) or self.det_ok is False

    def to_json(self) -> dict:
        out = {
            "p": self.p,
            "q": self.q,
            "gtilde": self.gtilde,
            "slope": f"{self.slope.numerator}/{self.slope.denominator}",
            "z_count": self.z,
            "z_branch": self.z_branch,
            "greene_bound": self.greene,
            "z_hypothesis": self.gibbons,
            "obstructed": self.obstructed,
        }
        if self.det_ok is not None:
            out["det_ok"] = self.det_ok
        return out


def slope_from_lattice(pq: Fraction) -> tuple[int, int, int, Fraction]:
    """``(n, r, p, surgery slope)`` for a lattice parameter ``p/q``."""
    pq = Fraction(pq)
    n, r = split_n_r(pq)
    p, slope = theorem_slope(n, r, pq.denominator)
    return n, r, p, slope


def window(gtilde: int, p: int, q: int) -> range:
    """Indices where the shifted correction term vanishes (possibly empty)."""
    return range(gtilde * q, p + q - gtilde * q) if gtilde else range(p)

