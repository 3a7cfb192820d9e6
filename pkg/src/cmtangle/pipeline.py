"""End-to-end recognition: labeling, flypes, tangle, reduction and slope."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from fractions import Fraction
from math import gcd
from typing import Sequence

from .contfrac import format_rational, split_n_r
from .graphlat import GraphError, WhiteGraph, goeritz_matrix
from .ingest import PDError, ScanRow, mirror_pd, pd_to_white_graph
from .recognition import (RecognitionError, VertexLabeling, certify, extract_tangle,
                          fast_reject_reason, find_embeddings, labeling_violations)
from .surgery import SurgeryError, montesinos_slope, theorem_slope

SCHEMA = 1


def _surgery_json(pq: Fraction, tangle_slope: Fraction) -> dict:
    n, r = split_n_r(pq)
    p, slope = theorem_slope(n, r, pq.denominator)
    if montesinos_slope(tangle_slope, n - 1) != slope:
        raise SurgeryError(f"tangle slope {tangle_slope} does not give surgery slope {slope}")
    return {"n": n, "r": r, "p": p, "slope": format_rational(slope)}


def certificate(g: WhiteGraph, lab: VertexLabeling) -> dict:
    """Run every stage after the search; raises ``RecognitionError`` with a stage tag."""
    spec = lab.spec
    normal, trace, cert = certify(lab)
    reduced = cert.reduced_labeling
    try:
        surgery = _surgery_json(spec.pq, cert.slope)
    except SurgeryError as exc:
        raise RecognitionError(str(exc), stage="slope") from exc
    return {
        "lattice": spec.to_json(),
        "sigma": list(spec.sigma),
        "labels": lab.to_json(),
        "trace": trace.to_json(spec),
        "normalized_labels": normal.to_json(),
        "tangle": cert.to_json(),
        "reduced": {
            "lattice": reduced.spec.to_json(),
            "labels": reduced.to_json(),
            "origin": list(reduced.origin),
            "marked_crossing": list(cert.marked_crossing),
        },
        "surgery": surgery,
    }


def verify_certificate(g: WhiteGraph, pq: Fraction, lab: VertexLabeling) -> list[str]:
    """Recompute every invariant of the chain from the labeling alone."""
    problems = [f"labeling: {p}" for p in labeling_violations(lab, g)]
    if problems:
        return problems
    try:
        normal, trace, cert = certify(lab)
    except RecognitionError as exc:
        return [f"{exc.stage}: {exc}"]
    if trace.replay(lab) != normal:
        problems.append("flype trace does not replay to the normalized labeling")
    problems += [f"normalized: {p}" for p in labeling_violations(normal)]
    again = extract_tangle(normal)
    if replace(cert, reduced_labeling=None, marked_crossing=None) != again:
        problems.append("tangle extraction is not reproducible")
    reduced = cert.reduced_labeling
    problems += [f"reduced: {p}" for p in labeling_violations(reduced)]
    n, r = split_n_r(pq)
    if reduced.spec.pq != Fraction(2 * n - 1, 2):
        problems.append(f"reduced lattice is {reduced.spec.pq}, not {n} - 1/2")
    if tuple(reduced.spec.sigma) != tuple(lab.spec.sigma):
        problems.append("reduction changed the changemaker tail")
    if cert.slope != Fraction(pq.denominator - r, r):
        problems.append(f"tangle slope {cert.slope} != (q-r)/r")
    if montesinos_slope(cert.slope, n - 1) != -pq:
        problems.append("surgery slope identity fails")
    det = goeritz_matrix(g).det()
    if det != pq.numerator:
        problems.append(f"det(Goeritz) = {det} != p")
    return problems


def run_pipeline(g: WhiteGraph, pq: Fraction, verify: bool = False, all_mode: bool = False,
                 signature: int | None = None, prune: bool = True) -> dict:
    """Recognize ``g`` as a ``p/q``-changemaker lattice and certify the result.

    The returned dict always has ``schema``, ``found`` and ``slope``; on
    failure it has ``stage`` and ``reason``.  An invariant failing after a
    labeling was found sets ``stage`` and ``invariant_violation``.
    """
    pq = Fraction(pq)
    out: dict = {"schema": SCHEMA, "slope": format_rational(pq), "graph": g.to_json()}
    if signature is not None:
        out["signature"] = signature
    try:
        reason = fast_reject_reason(g, pq)
    except RecognitionError as exc:
        out.update(found=False, stage=exc.stage, reason=str(exc))
        return out
    except GraphError as exc:
        out.update(found=False, stage="input", reason=str(exc))
        return out
    if reason is not None:
        out.update(found=False, stage="find_embedding", reason=reason)
        return out
    certs = []
    for lab in find_embeddings(g, pq, prune):
        try:
            cert = certificate(g, lab)
            if verify:
                problems = verify_certificate(g, pq, lab)
                cert["verified"] = not problems
                if problems:
                    raise RecognitionError("; ".join(problems), stage="verify")
        except RecognitionError as exc:
            out.update(found=True, stage=exc.stage, reason=str(exc), invariant_violation=True,
                       labels=lab.to_json(), sigma=list(lab.spec.sigma))
            return out
        certs.append(cert)
        if not all_mode:
            break
    if not certs:
        out.update(found=False, stage="find_embedding",
                   reason="no changemaker labeling of this graph exists")
        return out
    out["found"] = True
    if all_mode:
        out["count"] = len(certs)
        out["certificates"] = certs
    else:
        out.update(certs[0])
    return out


# --------------------------------------------------------------------------
# batch scan


def scan_slopes(det: int, pmax: int, qmax: int) -> list[Fraction]:
    """Slopes worth trying: ``p`` is pinned to the determinant."""
    p = det
    if p > pmax:
        return []
    return [Fraction(p, q) for q in range(2, qmax + 1) if q < p and gcd(p, q) == 1]


def _scan_graph(g: WhiteGraph, det: int, row: ScanRow, pmax: int, qmax: int,
                mirror: bool, tried: list, hits: list) -> str | None:
    """Try every slope on one white graph; returns an error string on an invariant failure."""
    for pq in scan_slopes(det, pmax, qmax):
        tried.append(format_rational(pq) + (" (mirror)" if mirror else ""))
        res = run_pipeline(g, pq, signature=row.signature)
        if res.get("invariant_violation"):
            return f"{res['slope']}: {res['stage']}: {res['reason']}"
        if res["found"]:
            hit = {
                "slope": res["slope"],
                "sigma": res["sigma"],
                "tangle_slope": res["tangle"]["slope"],
                "surgery_slope": res["surgery"]["slope"],
            }
            if mirror:
                hit["mirror"] = True
            hits.append(hit)
    return None


def scan_row(row: ScanRow, pmax: int, qmax: int, mirrors: bool = False) -> dict:
    """Scan one row.  With ``mirrors`` a PD row is also tried as its mirror image."""
    out: dict = {"name": row.name}
    if row.signature is not None:
        out["signature"] = row.signature
    if row.error:
        out.update(status="error", error=row.error)
        return out
    try:
        graphs = [(row.white_graph(), False)]
        if mirrors and row.pd is not None:
            graphs.append((pd_to_white_graph(mirror_pd(row.pd)), True))
        det = abs(goeritz_matrix(graphs[0][0]).det())
    except (PDError, GraphError) as exc:
        out.update(status="error", error=str(exc))
        return out
    out["det"] = det
    if row.det is not None and abs(row.det) != det:
        out.update(status="flagged", error=f"det metadata {row.det} != det(Goeritz) {det}")
        return out
    hits, tried = [], []
    for g, mirror in graphs:
        error = _scan_graph(g, det, row, pmax, qmax, mirror, tried, hits)
        if error:
            out.update(status="error", error=error)
            return out
    out.update(status="hit" if hits else "miss", tried=tried, hits=hits)
    return out


def _scan_row_args(args: tuple[ScanRow, int, int, bool]) -> dict:
    return scan_row(*args)


def scan(rows: Sequence[ScanRow], pmax: int, qmax: int, jobs: int = 1,
         mirrors: bool = False) -> dict:
    """Try every admissible slope on every row; results keep input order."""
    work = [(row, pmax, qmax, mirrors) for row in rows]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_scan_row_args, work))
    else:
        results = [_scan_row_args(w) for w in work]
    counts = {"rows": len(results)}
    for status in ("hit", "miss", "flagged", "error"):
        counts[status] = sum(1 for r in results if r["status"] == status)
    counts["hits"] = sum(len(r.get("hits", ())) for r in results)
    return {"schema": SCHEMA, "pmax": pmax, "qmax": qmax, "mirrors": mirrors, "summary": counts, "rows": results}

