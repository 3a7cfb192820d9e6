"""Recognizing changemaker Goeritz lattices and extracting the fractional tangle.

The search labels each vertex of a white graph by a vector of a
p/q-changemaker lattice so that the labels realize the graph pairing.
From such a labeling, flypes bring the fractional basis vectors onto
vertices, the two marker regions are located, the rational tangle they
bound is read off, and finally that tangle is collapsed to one crossing,
giving a labeling by the (n - 1/2)-changemaker lattice.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .changemaker import (ChangemakerLattice, FractionalBasis, build_cm_lattice,
                          enumerate_sigma, fractional_basis, half_integer_lattice)
from .contfrac import eval_neg_cf_relaxed, neg_cf_expand, split_n_r
from .graphlat import (GraphError, WhiteGraph, cut_edge_structure, goeritz_matrix,
                       graph_from_gram, is_2_connected)
from .linalg import Vector, dot, norm

log = logging.getLogger(__name__)


class RecognitionError(Exception):
    """A pipeline stage failed; ``stage`` names it."""

    stage = "recognition"

    def __init__(self, message: str, stage: str | None = None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage


class InvalidInput(RecognitionError, ValueError):
    stage = "input"


class LabelingError(RecognitionError):
    stage = "labeling"


class FlypeError(RecognitionError):
    stage = "flype"


class MarkerError(RecognitionError):
    stage = "markers"


class TangleError(RecognitionError):
    stage = "tangle"


class ReductionError(RecognitionError):
    stage = "reduce"


# --------------------------------------------------------------------------
# labelings


@dataclass(frozen=True)
class VertexLabeling:
    """Vertex ``i`` of the white graph is labeled by ``labels[i]``.

    ``origin`` records, for labelings derived by reduction, the vertex id
    each label came from.
    """

    spec: ChangemakerLattice
    labels: tuple[Vector, ...]
    origin: tuple[int, ...] | None = None

    def __len__(self) -> int:
        return len(self.labels)

    def gram(self) -> list[list[int]]:
        return linalg.gram(self.labels)

    @property
    def graph(self) -> WhiteGraph:
        try:
            return graph_from_gram(self.gram())
        except GraphError as exc:
            raise LabelingError(str(exc)) from exc

    def vertex_of(self, x: Sequence[int]) -> int | None:
        x = tuple(x)
        for i, lab in enumerate(self.labels):
            if lab == x:
                return i
        return None

    def coordinates(self, x: Sequence[int]) -> list[int]:
        """Vertex coordinates of a lattice vector (last vertex omitted)."""
        c = linalg.integer_coordinates(self.labels[:-1], x)
        if c is None:
            raise LabelingError("vector is not in the span of the vertex labels")
        return c + [0]

    def to_json(self) -> list[dict]:
        return [self.spec.vector_json(x) for x in self.labels]


def labeling_violations(lab: VertexLabeling, graph: WhiteGraph | None = None) -> list[str]:
    """Independently recompute every labeling invariant; empty when valid."""
    spec = lab.spec
    problems = []
    for i, x in enumerate(lab.labels):
        if len(x) != spec.dim:
            problems.append(f"label {i} has length {len(x)} != {spec.dim}")
            return problems
        for k, wk in enumerate(spec.w):
            if dot(x, wk):
                problems.append(f"label {i} not orthogonal to w{k}")
    if any(linalg.vsum(lab.labels, spec.dim)):
        problems.append("labels do not sum to zero")
    g = lab.gram()
    nv = len(lab.labels)
    for i in range(nv):
        for j in range(i + 1, nv):
            if g[i][j] > 0:
                problems.append(f"labels {i},{j} pair positively")
    if graph is not None:
        if graph.vertex_count != nv:
            problems.append("labeling size differs from graph")
        else:
            mult = graph.multiplicity()
            for i in range(nv):
                if g[i][i] != sum(mult[i]):
                    problems.append(f"label {i} norm {g[i][i]} != degree {sum(mult[i])}")
                for j in range(nv):
                    if i != j and g[i][j] != -mult[i][j]:
                        problems.append(f"labels {i},{j} pair to {g[i][j]} != {-mult[i][j]}")
    if nv - 1 != spec.rank:
        problems.append(f"{nv - 1} independent labels but lattice rank {spec.rank}")
    elif not problems:
        det = linalg.int_det([row[:-1] for row in g[:-1]])
        if det != spec.p:
            problems.append(f"labels span a sublattice of determinant {det} != {spec.p}")
    if not problems:
        gg = graph_from_gram(g)
        if not is_2_connected(gg):
            problems.append("graph not 2-connected: some vertex label is reducible")
    return problems


def check_labeling(lab: VertexLabeling, graph: WhiteGraph | None = None) -> None:
    problems = labeling_violations(lab, graph)
    if problems:
        raise LabelingError("; ".join(problems))


# --------------------------------------------------------------------------
# candidate vectors


def _fractional_chains(basis: FractionalBasis) -> set[tuple[int, ...]]:
    """e-parts allowed for irreducible vectors: 0 and +-(v_a + ... + v_b)."""
    spec = basis.spec
    out = {(0,) * (spec.s + 1)}
    for a in range(basis.m + 1):
        for b in range(a, basis.m + 1):
            for sign in (1, -1):
                out.add(spec.e_part(basis.chain(a, b, sign)))
    return out


def _f_parts(sigma: Sequence[int], target: int, budget: int) -> Iterator[tuple[int, ...]]:
    """f-vectors with ``sigma . f == target`` and ``|f| == budget``."""
    t = len(sigma)
    out = [0] * t
    # suffix bound on |sigma . f| given a norm budget b is sqrt(b * sum sigma^2)
    tail_sq = [sum(x * x for x in sigma[i:]) for i in range(t + 1)]

    def rec(i: int, target: int, budget: int):
        if i == t:
            if target == 0 and budget == 0:
                yield tuple(out)
            return
        if target * target > budget * tail_sq[i]:
            return
        bound = int(budget ** 0.5)
        for a in range(-bound, bound + 1):
            out[i] = a
            yield from rec(i + 1, target - sigma[i] * a, budget - a * a)
        out[i] = 0

    yield from rec(0, target, budget)


@lru_cache(maxsize=4096)
def lattice_vectors(spec: ChangemakerLattice, d: int, prune: bool = True) -> np.ndarray:
    """All vectors of norm ``d`` in the changemaker lattice, lexicographically.

    With ``prune`` only vectors that can label a vertex of a 2-connected
    white graph are kept: the e-part must be 0 or a signed chain of
    fractional basis vectors, and ``|x.f1| <= 1`` whenever ``x.e0 != 0``.
    """
    allowed = _fractional_chains(fractional_basis(spec)) if prune else None
    found = []
    for e in linalg.vectors_of_norm(spec.s + 1, d, exact=False):
        if any(dot(spec.e_part(wk), e) for wk in spec.w[1:]):
            continue
        if allowed is not None and e not in allowed:
            continue
        for f in _f_parts(spec.sigma, -e[0], d - norm(e)):
            if prune and spec.t and e[0] != 0 and abs(f[0]) > 1:
                continue
            if prune and spec.t and abs(f[0]) > 2:
                continue
            found.append(f + e)
    found.sort()
    return np.array(found, dtype=np.int64).reshape(len(found), spec.dim)


# --------------------------------------------------------------------------
# search


def required_t(g: WhiteGraph, pq: Fraction) -> int:
    """Length of the changemaker tail forced by the rank of the graph lattice."""
    a = neg_cf_expand(pq)
    s = sum(a[1:]) - (len(a) - 1)
    return (g.vertex_count - 1) - s + (len(a) - 1)


def _check_inputs(g: WhiteGraph, pq: Fraction) -> None:
    pq = Fraction(pq)
    if pq.denominator < 2 or pq <= 1:
        raise InvalidInput(f"slope {pq} must satisfy p > q >= 2")
    if not g.is_connected():
        raise InvalidInput("white graph is disconnected")
    if g.cut_edges():
        raise InvalidInput("white graph has a cut-edge (nugatory crossing)")


def fast_reject_reason(g: WhiteGraph, pq: Fraction) -> str | None:
    """Cheap obstructions, or ``None`` when a search is needed."""
    _check_inputs(g, pq)
    pq = Fraction(pq)
    det = goeritz_matrix(g).det()
    if det != pq.numerator:
        return f"det(Goeritz) = {det} != p = {pq.numerator}"
    if not is_2_connected(g):
        return "white graph is not 2-connected, so its lattice is decomposable"
    t = required_t(g, pq)
    n, _ = split_n_r(pq)
    if t < 0:
        return f"rank |V|-1 = {g.vertex_count - 1} is below t+s-l for every t >= 0"
    if not enumerate_sigma(n, t):
        return f"no changemaker tail of length {t} with 1 + sum(sigma^2) = {n}"
    return None


def _search_order(g: WhiteGraph) -> list[int]:
    mult = g.multiplicity()
    deg = [sum(row) for row in mult]
    order = [min(g.vertices, key=lambda v: (-deg[v], v))]
    rest = set(g.vertices) - set(order)
    while rest:
        nxt = min(rest, key=lambda v: (-sum(mult[v][u] for u in order), -deg[v], v))
        order.append(nxt)
        rest.remove(nxt)
    return order


def _refine(classes: list[tuple[int, ...]], x: np.ndarray) -> list[tuple[int, ...]]:
    out = []
    for cls in classes:
        if len(cls) == 1:
            out.append(cls)
            continue
        groups: dict[int, list[int]] = {}
        for c in cls:
            groups.setdefault(int(x[c]), []).append(c)
        out.extend(tuple(v) for _, v in sorted(groups.items()))
    return out


def _search(g: WhiteGraph, spec: ChangemakerLattice,
            prune: bool) -> Iterator[tuple[Vector, ...]]:
    """Yield labelings (as label tuples in vertex order), lex-first first."""
    order = _search_order(g)
    mult = g.multiplicity()
    nv = g.vertex_count
    cands = {v: lattice_vectors(spec, sum(mult[v]), prune) for v in order[:-1]}
    f1 = 0 if spec.t else None
    placed: list[np.ndarray] = []

    def rec(depth: int, classes: list[tuple[int, ...]], partial: np.ndarray):
        if depth == nv - 1:
            last = -partial
            labels: list = [None] * nv
            for v, x in zip(order, placed):
                labels[v] = tuple(int(a) for a in x)
            labels[order[-1]] = tuple(int(a) for a in last)
            yield tuple(labels)
            return
        u = order[depth]
        C = cands[u]
        if len(C) == 0:
            return
        mask = np.ones(len(C), dtype=bool)
        if placed:
            P = np.stack(placed)
            need = np.array([-mult[u][order[k]] for k in range(depth)], dtype=np.int64)
            mask &= (C @ P.T == need).all(axis=1)
        for cls in classes:
            for a, b in zip(cls, cls[1:]):
                mask &= C[:, a] <= C[:, b]
        if prune and f1 is not None:
            mask &= np.abs(C[:, f1] + partial[f1]) <= 2
        for idx in np.nonzero(mask)[0]:
            x = C[idx]
            placed.append(x)
            yield from rec(depth + 1, _refine(classes, x), partial + x)
            placed.pop()

    yield from rec(0, list(spec.coordinate_classes), np.zeros(spec.dim, dtype=np.int64))


def find_embeddings(g: WhiteGraph, pq: Fraction, prune: bool = True) -> Iterator[VertexLabeling]:
    """Every labeling up to ambient symmetry, in certificate order."""
    pq = Fraction(pq)
    if fast_reject_reason(g, pq) is not None:
        return
    n, _ = split_n_r(pq)
    for sigma in enumerate_sigma(n, required_t(g, pq)):
        spec = build_cm_lattice(pq, sigma)
        for labels in _search(g, spec, prune):
            yield VertexLabeling(spec, labels)


def find_embedding(g: WhiteGraph, pq: Fraction, prune: bool = True) -> VertexLabeling | None:
    """The lexicographically first changemaker labeling of ``g``, if any.

    Tails are tried in lexicographic order; within a tail the label
    sequence (in search order, coordinates ``f`` then ``e``) is minimal
    among all labelings related by coordinate permutations fixing every
    ``w_k``.
    """
    for lab in find_embeddings(g, pq, prune):
        return lab
    return None


# --------------------------------------------------------------------------
# flypes


@dataclass(frozen=True)
class Flype1:
    v: int
    x: Vector
    y: Vector
    u1: int
    u2: int

    def to_json(self, spec: ChangemakerLattice) -> dict:
        return {"move": "flype1", "v": self.v, "x": spec.vector_json(self.x),
                "y": spec.vector_json(self.y), "u1": self.u1, "u2": self.u2}


@dataclass(frozen=True)
class Flype2:
    v: int
    w: int
    G1: tuple[int, ...]

    def to_json(self, spec: ChangemakerLattice) -> dict:
        return {"move": "flype2", "v": self.v, "w": self.w, "G1": list(self.G1)}


@dataclass
class FlypeTrace:
    moves: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self, lab: VertexLabeling) -> VertexLabeling:
        for mv in self.moves:
            if isinstance(mv, Flype1):
                lab = flype1(lab, mv.v, mv.x, mv.y)
            else:
                lab = flype2(lab, mv.v, mv.w, mv.G1)
        return lab

    def to_json(self, spec: ChangemakerLattice) -> list[dict]:
        return [mv.to_json(spec) for mv in self.moves]


def flype1_partners(lab: VertexLabeling, v: int, x: Sequence[int],
                    y: Sequence[int]) -> tuple[int, int]:
    """The vertices ``u1, u2`` of a splitting ``v = x + y``, via the cut edge."""
    spec = lab.spec
    x, y = tuple(x), tuple(y)
    if not any(x) or not any(y):
        raise FlypeError("x and y must be nonzero")
    if not (spec.contains(x) and spec.contains(y)):
        raise FlypeError("x and y must lie in the lattice")
    if linalg.add(x, y) != lab.labels[v]:
        raise FlypeError(f"x + y is not the label of vertex {v}")
    if dot(x, y) != -1:
        raise FlypeError("x . y != -1")
    g = lab.graph
    try:
        st = cut_edge_structure(g, v, lab.coordinates(x), lab.coordinates(y))
    except GraphError as exc:
        raise FlypeError(str(exc)) from exc
    return st.u1, st.u2


def flype1(lab: VertexLabeling, v: int, x: Sequence[int], y: Sequence[int]) -> VertexLabeling:
    """Replace the labels of ``v, u1, u2`` by ``x, u1 + u2, y``."""
    u1, u2 = flype1_partners(lab, v, x, y)
    labels = list(lab.labels)
    labels[v] = tuple(x)
    labels[u1] = linalg.add(lab.labels[u1], lab.labels[u2])
    labels[u2] = tuple(y)
    new = VertexLabeling(lab.spec, tuple(labels))
    problems = labeling_violations(new)
    if problems:
        raise FlypeError("flype broke the labeling: " + "; ".join(problems))
    return new


def flype2(lab: VertexLabeling, v: int, w: int, G1: Sequence[int]) -> VertexLabeling:
    """Flype the tangle of a component ``G1`` of ``G - {v, w}``.

    Each label in ``G1`` is negated and ``[G1]`` is added to ``v`` and ``w``.
    """
    G1 = sorted(set(G1))
    if not G1:
        return lab
    g = lab.graph
    if v == w or v in G1 or w in G1:
        raise FlypeError("v, w must be distinct and outside G1")
    if g.edge_count(v, w) < 1:
        raise FlypeError(f"no edge between {v} and {w}")
    rest = [u for u in g.vertices if u not in (v, w)]
    comps = g.components(rest)
    if len(comps) < 2:
        raise FlypeError(f"{{{v}, {w}}} is not a cut set")
    if frozenset(G1) not in comps:
        raise FlypeError("G1 is not a component of G - {v, w}")
    block = linalg.vsum((lab.labels[z] for z in G1), lab.spec.dim)
    vw = linalg.add(lab.labels[v], lab.labels[w])
    for z in G1:
        if dot(vw, lab.labels[z]) != -dot(lab.labels[z], block):
            raise FlypeError(f"(v + w).z != -z.[G1] at z = {z}")
    labels = list(lab.labels)
    for z in G1:
        labels[z] = linalg.neg(labels[z])
    labels[v] = linalg.add(labels[v], block)
    labels[w] = linalg.add(labels[w], block)
    new = VertexLabeling(lab.spec, tuple(labels))
    problems = labeling_violations(new)
    if problems:
        raise FlypeError("flype broke the labeling: " + "; ".join(problems))
    return new


def flype1_moves(lab: VertexLabeling) -> list[tuple[int, Vector, Vector]]:
    """All applicable ``(v, x, y)`` splittings: one per cut edge of ``G - v``."""
    g = lab.graph
    out = []
    for v in g.vertices:
        rest = [u for u in g.vertices if u != v]
        for k in g.cut_edges(rest):
            comps = g.components(rest, skip_edge=k)
            if len(comps) != 2:
                continue
            R, S = sorted(comps, key=min)
            x = linalg.neg(linalg.vsum((lab.labels[u] for u in S), lab.spec.dim))
            y = linalg.neg(linalg.vsum((lab.labels[u] for u in R), lab.spec.dim))
            out.append((v, x, y))
    return out


def flype2_moves(lab: VertexLabeling) -> list[tuple[int, int, tuple[int, ...]]]:
    """All applicable ``(v, w, G1)`` triples."""
    g = lab.graph
    out = []
    for v in g.vertices:
        for w in range(v + 1, g.vertex_count):
            if g.edge_count(v, w) < 1:
                continue
            comps = g.components([u for u in g.vertices if u not in (v, w)])
            if len(comps) < 2:
                continue
            out.extend((v, w, tuple(sorted(c))) for c in comps)
    return out


# --------------------------------------------------------------------------
# fractional tangle


def _chain_coordinates(basis: FractionalBasis, x: Sequence[int]) -> list[int]:
    return basis.coordinates(basis.spec.fractional_part(x))


def normalize_fractional(lab: VertexLabeling) -> tuple[VertexLabeling, FlypeTrace]:
    """Flype until each fractional basis vector ``v1, ..., vm`` is a vertex label."""
    basis = fractional_basis(lab.spec)
    trace = FlypeTrace()
    last_c = basis.m + 1
    while True:
        present = set(lab.labels)
        missing = [c for c in range(1, basis.m + 1) if basis.v[c] not in present]
        if not missing:
            return lab, trace
        c = max(missing)
        if c >= last_c:
            raise FlypeError(f"normalization did not progress (c = {c})")
        last_c = c
        target = None
        for u, x in enumerate(lab.labels):
            coords = _chain_coordinates(basis, x)
            nz = [i for i, ci in enumerate(coords) if ci]
            if (nz and nz[-1] == c and nz[0] < c
                    and nz == list(range(nz[0], c + 1)) and all(coords[i] == 1 for i in nz)):
                target = u
                break
        if target is None:
            raise FlypeError(f"no vertex has fractional part v_a + ... + v_{c}")
        y = basis.v[c]
        x = linalg.sub(lab.labels[target], y)
        u1, u2 = flype1_partners(lab, target, x, y)
        lab = flype1(lab, target, x, y)
        trace.moves.append(Flype1(target, x, y, u1, u2))
        log.debug("flype1 at vertex %d splits off v_%d", target, c)


def locate_markers(lab: VertexLabeling) -> tuple[int, int]:
    """The unique vertices with positive and negative ``e0`` coefficient."""
    spec = lab.spec
    basis = fractional_basis(spec)
    e0 = spec.e(0)
    pos = [i for i, x in enumerate(lab.labels) if x[e0] > 0]
    negs = [i for i, x in enumerate(lab.labels) if x[e0] < 0]
    if len(pos) != 1 or len(negs) != 1:
        raise MarkerError(f"expected one vertex of each e0 sign, found {len(pos)} and {len(negs)}")
    v, w = pos[0], negs[0]
    if spec.fractional_part(lab.labels[v]) != basis.v[0]:
        raise MarkerError("positive marker does not have fractional part v0")
    if spec.fractional_part(lab.labels[w]) != basis.chain(0, basis.m, -1):
        raise MarkerError("negative marker does not have fractional part -(v0 + ... + vm)")
    return v, w


@dataclass(frozen=True)
class TangleCertificate:
    v_marker: int
    w_marker: int
    path: tuple[int, ...]
    direct_edges: int
    b: tuple[int, ...]
    slope: Fraction
    reduced_labeling: VertexLabeling | None = None
    marked_crossing: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {
            "v": self.v_marker,
            "w": self.w_marker,
            "path": list(self.path),
            "direct_edges": self.direct_edges,
            "b": list(self.b),
            "slope": f"{self.slope.numerator}/{self.slope.denominator}",
        }


def extract_tangle(lab: VertexLabeling) -> TangleCertificate:
    """Read the rational tangle spanned by the markers and ``v1, ..., vm``."""
    spec = lab.spec
    basis = fractional_basis(spec)
    v, w = locate_markers(lab)
    path = []
    for c in range(1, basis.m + 1):
        u = lab.vertex_of(basis.v[c])
        if u is None:
            raise TangleError(f"v_{c} is not a vertex; normalize first")
        path.append(u)
    vF = spec.fractional_part(lab.labels[v])
    wF = spec.fractional_part(lab.labels[w])
    vw = dot(lab.labels[v], lab.labels[w])
    if vw > dot(vF, wF) + 1:
        raise TangleError(f"marker bound fails: v.w = {vw} > vF.wF + 1 = {dot(vF, wF) + 1}")
    direct = abs(dot(vF, wF)) - 1
    g = lab.graph
    chain = [v] + path + [w]
    # tangle regions: consecutive path vertices share one edge, every other
    # edge at a path vertex goes to w
    for i, u in enumerate(path, start=1):
        if g.edge_count(chain[i - 1], u) != 1:
            raise TangleError(f"path step into {u} is not a single edge")
        stray = g.neighbours(u) - {chain[i - 1], chain[i + 1], w}
        if stray:
            raise TangleError(f"path vertex {u} meets {sorted(stray)} outside the tangle")
    b0 = direct + (g.edge_count(v, path[0]) if path else 0)
    b = (b0,) + tuple(g.degree(u) for u in path)
    expected = (direct + (1 if path else 0),) + tuple(norm(basis.v[c]) for c in range(1, basis.m + 1))
    if b != expected:
        raise TangleError(f"edge counts {b} differ from fractional norms {expected}")
    ratio = eval_neg_cf_relaxed(list(b))
    slope = Fraction(ratio.denominator, ratio.numerator)
    _, r = split_n_r(spec.pq)
    if slope != Fraction(spec.q - r, r):
        raise TangleError(f"tangle slope {slope} != (q-r)/r = {Fraction(spec.q - r, r)}")
    return TangleCertificate(v, w, tuple(path), direct, b, slope)


def reduce_to_half_integer(lab: VertexLabeling, cert: TangleCertificate) -> VertexLabeling:
    """Collapse the fractional tangle to a single crossing.

    The path vertices are dropped, each marker keeps its integer part and
    gains ``+e1`` (for ``v``) or ``-e1`` (for ``w``).  The result labels
    the remaining vertices, in their original order, by the
    (n - 1/2)-changemaker lattice with the same tail.
    """
    spec = lab.spec
    half = half_integer_lattice(spec)
    t = spec.t
    keep = [u for u in range(len(lab)) if u not in set(cert.path)]
    labels = []
    for u in keep:
        x = lab.labels[u]
        f, x0 = x[:t], x[t]
        if u == cert.v_marker:
            e1 = 1
        elif u == cert.w_marker:
            e1 = -1
        else:
            if any(x[t:]):
                raise ReductionError(f"vertex {u} has a fractional part but is not a marker")
            e1 = 0
        labels.append(tuple(f) + (x0, e1))
    new = VertexLabeling(half, tuple(labels), origin=tuple(keep))
    problems = labeling_violations(new)
    if problems:
        raise ReductionError("; ".join(problems))
    vt, wt = keep.index(cert.v_marker), keep.index(cert.w_marker)
    e0 = half.e(0)
    if not (new.labels[vt][e0] == 1 == -new.labels[wt][e0]):
        raise ReductionError("markers do not carry e0 coefficients +1 and -1")
    if new.graph.edge_count(vt, wt) < 1:
        raise ReductionError("no crossing between the reduced markers")
    return new


def marked_crossing(reduced: VertexLabeling) -> tuple[int, int]:
    e0 = reduced.spec.e(0)
    pos = [i for i, x in enumerate(reduced.labels) if x[e0] > 0]
    negs = [i for i, x in enumerate(reduced.labels) if x[e0] < 0]
    if len(pos) != 1 or len(negs) != 1:
        raise ReductionError("half-integer labeling needs exactly two marked regions")
    return pos[0], negs[0]


def certify(lab: VertexLabeling) -> tuple[VertexLabeling, FlypeTrace, TangleCertificate]:
    """Normalize, extract the tangle and reduce; returns the filled certificate."""
    normal, trace = normalize_fractional(lab)
    cert = extract_tangle(normal)
    reduced = reduce_to_half_integer(normal, cert)
    cert = replace(cert, reduced_labeling=reduced, marked_crossing=marked_crossing(reduced))
    return normal, trace, cert


def coprime_slopes(p: int, qmax: int, qmin: int = 2) -> list[Fraction]:
    return [Fraction(p, q) for q in range(qmin, qmax + 1) if q < p and gcd(p, q) == 1]
