"""Embeddedness verification: a complete scan over all (edge, face) pairs.

Each pair is classified by exact (or epsilon-guarded) sign tests; detected
intersections land in out2, configurations the sign tests cannot settle land
in out1 as "requires additional study" entries, unless the exact resolver is
asked to settle them.  The result is deterministic: entries are sorted and
independent of any parallel execution schedule.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass, field

from .geom import PairTag, Resolution, classify_segment_triangle, resolve_needs_study
from .mesh import Realization

EMBEDDED = "Embedded"
NOT_EMBEDDED = "NotEmbedded"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CheckReport:
    """Outcome of a full edge-by-face scan.

    verdict is Embedded iff out1 and out2 are both empty, NotEmbedded iff
    out2 is nonempty, and Inconclusive otherwise.  Entries are sorted by
    (edge ids, face ids).
    """

    verdict: str
    out1: tuple          # (edge, face, reason)
    out2: tuple          # (edge, face)
    pairs_scanned: int
    resolutions: tuple = ()   # (edge, face, reason, resolution)

    def out1_lines(self):
        return [out1_line(e, f) for e, f, _ in self.out1]

    def out2_lines(self):
        return [out2_line(e, f) for e, f in self.out2]

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "pairs_scanned": self.pairs_scanned,
            "out1": [{"edge": list(e), "face": list(f), "reason": r}
                     for e, f, r in self.out1],
            "out2": [{"edge": list(e), "face": list(f)} for e, f in self.out2],
            "resolutions": [{"edge": list(e), "face": list(f),
                             "reason": r, "resolution": res}
                            for e, f, r, res in self.resolutions],
        }


def out1_line(edge, face) -> str:
    e = ",".join(str(i) for i in edge)
    f = ",".join(str(i) for i in face)
    return f"The case of (edge {{{e}}}, face {{{f}}}) requires additional study"


def out2_line(edge, face) -> str:
    e = ",".join(str(i) for i in edge)
    f = ",".join(str(i) for i in face)
    return f"The edge {{{e}}} intersects the face {{{f}}}"


def shared_classification(edge, face):
    """Combinatorial sharing of an edge and a face.

    Returns ("subset", None) if both endpoints are face vertices,
    ("one_point", v) if exactly one is, ("disjoint", None) otherwise.
    """
    common = set(edge) & set(face)
    if len(common) == 2:
        return ("subset", None)
    if len(common) == 1:
        return ("one_point", next(iter(common)))
    return ("disjoint", None)


def _scan_pair(r: Realization, edge, face, resolve: bool):
    kind, shared_vertex = shared_classification(edge, face)
    if kind == "subset":
        return None
    z1, z2 = r.coords[edge[0]], r.coords[edge[1]]
    y1, y2, y3 = (r.coords[v] for v in face)
    sign = r.sign_fn
    if kind == "one_point":
        shared = (edge.index(shared_vertex), face.index(shared_vertex))
    else:
        shared = None
    verdict = classify_segment_triangle(z1, z2, y1, y2, y3,
                                        shared=shared, sign=sign)
    if verdict.tag is PairTag.INTERSECTING:
        return ("out2", edge, face)
    if verdict.tag is PairTag.NEEDS_STUDY:
        if resolve:
            endpoints = (shared[0],) if shared is not None else ()
            res = resolve_needs_study(z1, z2, y1, y2, y3,
                                      shared=endpoints, sign=sign)
            return ("resolved", edge, face, verdict.detail, res.value)
        return ("out1", edge, face, verdict.detail)
    return None


def _scan_chunk(args):
    r, pairs, resolve = args
    return [_scan_pair(r, e, f, resolve) for e, f in pairs]


def check_embedded(r: Realization, resolve_degenerate: bool = False,
                   workers: int = 1) -> CheckReport:
    """Scan every edge x face pair of the realization.

    Pairs whose edge is a sub-simplex of the face contribute nothing; pairs
    sharing one vertex are tested for intersections beyond the shared point;
    all other pairs go through the sign classifier.  With
    `resolve_degenerate`, needs-study entries are settled by the exact
    resolver: proper intersections move to out2, touch-only or disjoint
    configurations are dropped, and every resolution is recorded.

    The scan may run on several workers; the report is identical regardless.
    """
    c = r.complex
    pairs = [(e, f) for e in c.edges for f in c.faces]

    if workers <= 1 or len(pairs) < 2:
        results = _scan_chunk((r, pairs, resolve_degenerate))
    else:
        chunks = [pairs[i::workers] for i in range(workers)]
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as pool:
            mapped = pool.map(_scan_chunk,
                              [(r, chunk, resolve_degenerate) for chunk in chunks])
        results = [item for chunk in mapped for item in chunk]

    out1, out2, resolutions = [], [], []
    for item in results:
        if item is None:
            continue
        if item[0] == "out2":
            out2.append((item[1], item[2]))
        elif item[0] == "out1":
            out1.append((item[1], item[2], item[3]))
        else:
            _, edge, face, reason, res = item
            resolutions.append((edge, face, reason, res))
            if res == Resolution.PROPER_INTERSECTION.value:
                out2.append((edge, face))

    out1.sort(key=lambda t: (t[0], t[1]))
    out2.sort()
    resolutions.sort(key=lambda t: (t[0], t[1]))

    if out2:
        verdict = NOT_EMBEDDED
    elif out1:
        verdict = INCONCLUSIVE
    else:
        verdict = EMBEDDED
    return CheckReport(verdict=verdict, out1=tuple(out1), out2=tuple(out2),
                       pairs_scanned=len(pairs), resolutions=tuple(resolutions))
