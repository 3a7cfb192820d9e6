"""Input formats: PD codes, white-graph JSON and knot-table CSV."""
from __future__ import annotations

import csv
import json
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from .graphlat import GraphError, WhiteGraph


class PDError(ValueError):
    pass


class NonAlternatingError(PDError):
    pass


class NugatoryCrossingError(PDError):
    pass


PDCode = list[tuple[int, int, int, int]]


def parse_pd(obj) -> PDCode:
    """Accept ``[[a,b,c,d], ...]``, ``{"pd": [...]}`` or a JSON string."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise PDError(f"PD code is not valid JSON: {exc}") from exc
    if isinstance(obj, dict):
        obj = obj.get("pd")
    try:
        pd = [tuple(int(a) for a in x) for x in obj]
    except (TypeError, ValueError) as exc:
        raise PDError(f"malformed PD code: {exc}") from exc
    if not pd or any(len(x) != 4 for x in pd):
        raise PDError("every crossing needs exactly four arc labels")
    counts = Counter(a for x in pd for a in x)
    bad = sorted(a for a, c in counts.items() if c != 2)
    if bad:
        raise PDError(f"arc labels {bad} do not appear exactly twice")
    return pd


def trace_faces(pd: PDCode) -> list[list[tuple[int, int]]]:
    """Faces of the planar 4-valent map as cycles of corners.

    Corner ``(c, i)`` is the region at crossing ``c`` between positions
    ``i`` and ``i+1`` (counterclockwise).  Leaving along the arc at position
    ``i+1`` and arriving at position ``j`` of the next crossing, the same
    region continues as corner ``(c', j)``.
    """
    where: dict[int, list[tuple[int, int]]] = {}
    for c, x in enumerate(pd):
        for i, a in enumerate(x):
            where.setdefault(a, []).append((c, i))

    def other_end(c: int, i: int) -> tuple[int, int]:
        ends = where[pd[c][i]]
        return ends[1] if ends[0] == (c, i) else ends[0]

    seen: set[tuple[int, int]] = set()
    faces = []
    for c in range(len(pd)):
        for i in range(4):
            if (c, i) in seen:
                continue
            face = []
            cur = (c, i)
            while cur not in seen:
                seen.add(cur)
                face.append(cur)
                cc, ii = cur
                cur = other_end(cc, (ii + 1) % 4)
            faces.append(face)
    return faces


def _connected(pd: PDCode) -> bool:
    adj: dict[int, set[int]] = {c: set() for c in range(len(pd))}
    where: dict[int, list[int]] = {}
    for c, x in enumerate(pd):
        for a in x:
            where.setdefault(a, []).append(c)
    for cs in where.values():
        adj[cs[0]].add(cs[1])
        adj[cs[1]].add(cs[0])
    stack, seen = [0], set()
    while stack:
        c = stack.pop()
        if c not in seen:
            seen.add(c)
            stack.extend(adj[c] - seen)
    return len(seen) == len(pd)


def pd_to_white_graph(pd: PDCode | Sequence, check_nugatory: bool = True) -> WhiteGraph:
    """White graph of an alternating diagram with every incidence number -1.

    The white regions are those at corners 1 and 3 of each crossing: the
    regions swept when the over-strand is turned counterclockwise onto the
    under-strand.  Alternating diagrams are exactly those where this rule
    colours every face consistently.
    """
    pd = parse_pd(pd)
    if not _connected(pd):
        raise PDError("diagram is split or disconnected")
    faces = trace_faces(pd)
    if len(faces) != len(pd) + 2:
        raise PDError(f"{len(faces)} faces for {len(pd)} crossings: not a planar diagram code")
    face_of = {corner: k for k, face in enumerate(faces) for corner in face}
    colour: dict[int, bool] = {}
    for c in range(len(pd)):
        for i in range(4):
            white = i % 2 == 1
            k = face_of[(c, i)]
            if colour.setdefault(k, white) != white:
                raise NonAlternatingError(
                    "no checkerboard colouring has every incidence number -1: diagram is not alternating")
    white_faces = sorted(k for k, w in colour.items() if w)
    index = {k: n for n, k in enumerate(white_faces)}
    edges = []
    for c in range(len(pd)):
        a, b = face_of[(c, 1)], face_of[(c, 3)]
        if a == b:
            raise NugatoryCrossingError(f"crossing {c} is nugatory (white self-loop)")
        edges.append((index[a], index[b]))
    try:
        g = WhiteGraph(len(white_faces), tuple(edges))
    except GraphError as exc:
        raise PDError(str(exc)) from exc
    if check_nugatory:
        bridges = g.cut_edges()
        if bridges:
            raise NugatoryCrossingError(
                f"crossing(s) {sorted(bridges)} are nugatory (cut-edges of the white graph)")
    return g


def mirror_pd(pd: PDCode) -> PDCode:
    """Mirror image: every crossing read from the other strand."""
    return [(x[1], x[2], x[3], x[0]) for x in parse_pd(pd)]


def load_graph(path: str | Path) -> WhiteGraph:
    with open(path, encoding="utf-8") as fh:
        return WhiteGraph.from_json(json.load(fh))


def load_pd(path: str | Path) -> PDCode:
    with open(path, encoding="utf-8") as fh:
        return parse_pd(json.load(fh))


@dataclass
class ScanRow:
    name: str
    graph: WhiteGraph | None = None
    pd: PDCode | None = None
    det: int | None = None
    signature: int | None = None
    error: str | None = None

    def white_graph(self) -> WhiteGraph:
        if self.graph is not None:
            return self.graph
        return pd_to_white_graph(self.pd)


def read_table(path: str | Path) -> list[ScanRow]:
    """Read a knot table CSV.

    Columns: ``name`` plus ``graph`` (white-graph JSON) or ``pd`` (PD JSON),
    and optional ``det`` and ``signature``.  Unparseable rows are kept with
    ``error`` set so a batch never aborts.
    """
    rows = []
    with open(path, newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            row = ScanRow(name=(rec.get("name") or "").strip())
            try:
                if rec.get("graph"):
                    row.graph = WhiteGraph.from_json(json.loads(rec["graph"]))
                elif rec.get("pd"):
                    row.pd = parse_pd(rec["pd"])
                else:
                    raise PDError("row has neither graph nor pd")
                if rec.get("det"):
                    row.det = int(rec["det"])
                if rec.get("signature"):
                    row.signature = int(rec["signature"])
            except (ValueError, json.JSONDecodeError) as exc:
                row.error = str(exc)
            rows.append(row)
    return rows


def corpus() -> dict[str, dict]:
    """Bundled knot diagrams (PD codes from the KnotInfo table)."""
    text = resources.files("cmtangle").joinpath("data/corpus.json").read_text(encoding="utf-8")
    return json.loads(text)
