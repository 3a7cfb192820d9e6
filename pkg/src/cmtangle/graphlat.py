"""White graphs, Goeritz matrices and graph-lattice predicates.

A graph lattice vector is written in vertex coordinates: an integer list
``x`` of length ``|V|`` standing for ``sum x[v] * v``, taken modulo the
all-vertex sum ``[V]``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .linalg import int_det


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class WhiteGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        norm_edges = []
        for i, j in self.edges:
            i, j = int(i), int(j)
            if not (0 <= i < self.vertex_count and 0 <= j < self.vertex_count):
                raise GraphError(f"edge ({i}, {j}) out of range")
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            norm_edges.append((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", tuple(sorted(norm_edges)))

    @classmethod
    def from_multiplicities(cls, mult: Sequence[Sequence[int]]) -> WhiteGraph:
        n = len(mult)
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                edges.extend([(i, j)] * mult[i][j])
        return cls(n, tuple(edges))

    @classmethod
    def from_json(cls, obj: dict) -> WhiteGraph:
        try:
            return cls(int(obj["vertices"]), tuple(tuple(e) for e in obj["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GraphError):
                raise
            raise GraphError(f"malformed white-graph JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def multiplicity(self) -> list[list[int]]:
        m = [[0] * self.vertex_count for _ in self.vertices]
        for i, j in self.edges:
            m[i][j] += 1
            m[j][i] += 1
        return m

    def edge_count(self, u: int, v: int) -> int:
        return Counter(self.edges)[(min(u, v), max(u, v))]

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def neighbours(self, v: int, removed: Iterable[int] = ()) -> set[int]:
        removed = set(removed)
        out = set()
        for i, j in self.edges:
            if i == v and j not in removed:
                out.add(j)
            elif j == v and i not in removed:
                out.add(i)
        return out

    def laplacian(self) -> list[list[int]]:
        m = self.multiplicity()
        return [[sum(m[i]) if i == j else -m[i][j] for j in self.vertices]
                for i in self.vertices]

    def components(self, vertices: Iterable[int] | None = None,
                   skip_edge: int | None = None) -> list[frozenset[int]]:
        """Connected components of the subgraph induced on ``vertices``.

        ``skip_edge`` is an index into ``self.edges`` to delete first.
        """
        verts = set(self.vertices if vertices is None else vertices)
        adj: dict[int, set[int]] = {v: set() for v in verts}
        for k, (i, j) in enumerate(self.edges):
            if k == skip_edge:
                continue
            if i in verts and j in verts:
                adj[i].add(j)
                adj[j].add(i)
        seen: set[int] = set()
        comps = []
        for start in sorted(verts):
            if start in seen:
                continue
            stack, comp = [start], set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(adj[u] - comp)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self, vertices: Iterable[int] | None = None) -> bool:
        return len(self.components(vertices)) <= 1

    def cut_edges(self, vertices: Iterable[int] | None = None) -> list[int]:
        """Indices of edges whose removal disconnects the induced subgraph."""
        verts = set(self.vertices if vertices is None else vertices)
        base = len(self.components(verts))
        counts = Counter(self.edges)
        out = []
        for k, e in enumerate(self.edges):
            if counts[e] > 1 or not (e[0] in verts and e[1] in verts):
                continue
            if len(self.components(verts, skip_edge=k)) > base:
                out.append(k)
        return out

    def relabel(self, perm: Sequence[int]) -> WhiteGraph:
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return WhiteGraph(self.vertex_count, tuple((perm[i], perm[j]) for i, j in self.edges))


@dataclass(frozen=True)
class GoeritzMatrix:
    deleted: int
    matrix: tuple[tuple[int, ...], ...]

    def det(self) -> int:
        return int_det(self.matrix)

    def to_json(self) -> dict:
        return {"deleted": self.deleted, "matrix": [list(r) for r in self.matrix]}


def goeritz_matrix(g: WhiteGraph, deleted: int | None = None) -> GoeritzMatrix:
    """Goeritz matrix with all incidence numbers -1: the reduced Laplacian."""
    if not g.is_connected():
        raise GraphError("white graph is disconnected")
    if deleted is None:
        deleted = g.vertex_count - 1
    lap = g.laplacian()
    keep = [v for v in g.vertices if v != deleted]
    return GoeritzMatrix(deleted, tuple(tuple(lap[i][j] for j in keep) for i in keep))


def graph_from_gram(gram: Sequence[Sequence[int]]) -> WhiteGraph:
    """Graph whose vertex pairing is ``gram``: ``e(u, v) = -gram[u][v]``.

    Raises if some off-diagonal entry is positive or a diagonal entry
    disagrees with the resulting degree.
    """
    n = len(gram)
    mult = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                if gram[i][j] > 0:
                    raise GraphError(f"positive pairing between vertices {i} and {j}")
                mult[i][j] = -gram[i][j]
    for i in range(n):
        if gram[i][i] != sum(mult[i]):
            raise GraphError(f"vertex {i}: norm {gram[i][i]} != degree {sum(mult[i])}")
    return WhiteGraph.from_multiplicities(mult)


def pair(g: WhiteGraph, x: Sequence[int], y: Sequence[int]) -> int:
    """The graph-lattice pairing of two vertex-coordinate vectors."""
    lap = g.laplacian()
    return sum(x[i] * lap[i][j] * y[j] for i in g.vertices for j in g.vertices if lap[i][j])


def indicator(g: WhiteGraph, R: Iterable[int]) -> list[int]:
    R = set(R)
    return [1 if v in R else 0 for v in g.vertices]


def pairing(g: WhiteGraph, v: int, R: Iterable[int]) -> int:
    """``v . [R]``: ``e(v, V - R)`` if ``v in R`` else ``-e(v, R)``."""
    R = set(R)
    if v in R:
        return sum(1 for i, j in g.edges if (i == v and j not in R) or (j == v and i not in R))
    return -sum(1 for i, j in g.edges if (i == v and j in R) or (j == v and i in R))


def is_2_connected(g: WhiteGraph) -> bool:
    if not g.is_connected():
        return False
    if g.vertex_count <= 2:
        return True
    return all(g.is_connected([u for u in g.vertices if u != v]) for v in g.vertices)


def is_irreducible_sum(g: WhiteGraph, R: Iterable[int]) -> bool:
    """``[R]`` is irreducible iff ``R`` and its complement are connected."""
    R = set(R)
    rest = set(g.vertices) - R
    if not R or not rest:
        raise GraphError("R must be a proper nonempty vertex subset")
    return g.is_connected(R) and g.is_connected(rest)


def congruent(g: WhiteGraph, x: Sequence[int], y: Sequence[int]) -> bool:
    """``x == y`` in the graph lattice (differ by a multiple of ``[V]``)."""
    diff = [a - b for a, b in zip(x, y)]
    return len(set(diff)) <= 1


@dataclass(frozen=True)
class CutEdgeStructure:
    edge: tuple[int, int]
    R: frozenset[int]
    S: frozenset[int]
    u1: int
    u2: int


def cut_edge_structure(g: WhiteGraph, v: int, x: Sequence[int],
                       y: Sequence[int]) -> CutEdgeStructure:
    """Locate the cut edge of ``G - v`` behind a splitting ``v = x + y``.

    ``x`` and ``y`` are vertex-coordinate vectors with ``x.y = -1``.  On
    return ``x == [R] + v`` and ``y == [S] + v``; ``u1`` in ``R`` and ``u2``
    in ``S`` are the ends of the cut edge, the only vertices other than
    ``v`` pairing positively with ``x`` and ``y`` respectively.
    """
    if not is_2_connected(g) or g.cut_edges():
        raise GraphError("graph must be 2-connected without cut-edges")
    vv = indicator(g, [v])
    if not congruent(g, [a + b for a, b in zip(x, y)], vv):
        raise GraphError("x + y is not the vertex v")
    if pair(g, x, y) != -1:
        raise GraphError("x . y != -1")
    rest = [u for u in g.vertices if u != v]
    for k in g.cut_edges(rest):
        comps = g.components(rest, skip_edge=k)
        if len(comps) != 2:
            continue
        A, B = comps
        xa = [a + b for a, b in zip(indicator(g, A), vv)]
        xb = [a + b for a, b in zip(indicator(g, B), vv)]
        if congruent(g, x, xa) and congruent(g, y, xb):
            R, S = A, B
        elif congruent(g, x, xb) and congruent(g, y, xa):
            R, S = B, A
        else:
            continue
        i, j = g.edges[k]
        u1, u2 = (i, j) if i in R else (j, i)
        others = [u for u in g.vertices if u not in (v, u1, u2)]
        ok = (pair(g, x, indicator(g, [u1])) == 1 and pair(g, y, indicator(g, [u2])) == 1
              and all(pair(g, x, indicator(g, [u])) <= 0 and pair(g, y, indicator(g, [u])) <= 0
                      for u in others))
        if not ok:
            raise GraphError("cut-edge structure violates the positivity pattern")
        return CutEdgeStructure((i, j), frozenset(R), frozenset(S), u1, u2)
    raise GraphError(f"no cut edge of G - {v} realizes the given splitting")


def useful_bound_check(g: WhiteGraph, R: Iterable[int], z: Sequence[int]) -> bool:
    """Whether ``([R] - z) . z <= 0``; always true in a graph lattice."""
    r = indicator(g, R)
    return pair(g, [a - b for a, b in zip(r, z)], z) <= 0
