"""Numerical exploration of the flex: v9 moves along its circle.

The vertex v9 travels on the circle of radius 3*sqrt(31)/2 in the plane
x = 0 (the intersection of the two radius-10 spheres around v3 and v4);
v1..v4 stay fixed and v5..v8 are re-trilaterated in floating point for each
parameter value, with the mirror branch chosen by continuity from the
previous frame.  Everything here is float arithmetic with an epsilon-guarded
sign policy; the exact model seeds the branch choices at t = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .checker import EMBEDDED, CheckReport, check_embedded
from .geom import Point3, cross, dot, scale
from .mesh import FLOAT, Realization, realize
from .steffen import TRILATERATION_TRIPLES, build_steffen, load_complex_data


class FlexError(Exception):
    pass


class DiscriminantNegative(FlexError, ValueError):
    """The flex has left the geometrically realizable range."""

    def __init__(self, vertex, t):
        super().__init__(f"trilateration of v{vertex} fails at t={t}")
        self.vertex = vertex
        self.t = t


class BracketInvalid(FlexError, ValueError):
    pass


CIRCLE_RADIUS = 3.0 * math.sqrt(31.0) / 2.0


def v9_of_t(t: float) -> Point3:
    """Position of v9 after rotating by t radians along its circle.

    Positive t moves v9 toward positive y; t = 0 is the straight-down
    position (0, 0, -3*sqrt(31)/2).
    """
    return Point3(0.0, CIRCLE_RADIUS * math.sin(t), -CIRCLE_RADIUS * math.cos(t))


@lru_cache(maxsize=1)
def _base():
    """The exact model, its float coordinates, and the combinatorial data."""
    model = build_steffen()
    coords = {vid: Point3(*(float(c) for c in p))
              for vid, p in model.coords.items()}
    return model, coords


def base_float_coords() -> dict:
    return dict(_base()[1])


def _trilaterate_float(c1, r1sq, c2, r2sq, c3, r3sq):
    """Float version of the three-sphere solver; both mirror candidates."""
    n1 = scale(c2 - c1, 2.0)
    b1 = r1sq - r2sq - dot(c1, c1) + dot(c2, c2)
    n2 = scale(c3 - c1, 2.0)
    b2 = r1sq - r3sq - dot(c1, c1) + dot(c3, c3)
    w = cross(n1, n2)
    det = dot(n1, cross(n2, w))
    x0 = scale(cross(n2, w), b1 / det) + scale(cross(w, n1), b2 / det)
    u = x0 - c1
    qa = dot(w, w)
    qb = 2.0 * dot(w, u)
    qc = dot(u, u) - r1sq
    disc = qb * qb - 4.0 * qa * qc
    if disc < 0.0:
        return None
    root = math.sqrt(disc)
    lam1 = (-qb + root) / (2.0 * qa)
    lam2 = (-qb - root) / (2.0 * qa)
    return (x0 + scale(w, lam1), x0 + scale(w, lam2))


def _dist2_float(p: Point3, q: Point3) -> float:
    d = p - q
    return d.x * d.x + d.y * d.y + d.z * d.z


@dataclass(frozen=True)
class FlexFrame:
    t: float
    realization: Realization
    branch_record: dict     # folded vertex id -> chosen candidate index

    @property
    def coords(self) -> dict:
        return self.realization.coords


def realize_flex(t: float, epsilon: float = 1e-9,
                 prev: FlexFrame | None = None) -> FlexFrame:
    """The frame S_t: v1..v4 fixed, v9 on its circle, v5..v8 trilaterated.

    The mirror branch of each folded vertex is the candidate nearer to its
    position in `prev` (or in the exact base model when prev is omitted), so
    a march in t follows the continuous flex.
    """
    model, base_coords = _base()
    ref = prev.coords if prev is not None else base_coords
    coords = {j: base_coords[j] for j in (1, 2, 3, 4)}
    coords[9] = v9_of_t(t)

    branch_record = {}
    for vid, triples in TRILATERATION_TRIPLES.items():
        centers = [coords[n] for n, _ in triples]
        radii_sq = [float(length * length) for _, length in triples]
        candidates = _trilaterate_float(centers[0], radii_sq[0],
                                        centers[1], radii_sq[1],
                                        centers[2], radii_sq[2])
        if candidates is None:
            raise DiscriminantNegative(vid, t)
        d0 = _dist2_float(candidates[0], ref[vid])
        d1 = _dist2_float(candidates[1], ref[vid])
        idx = 0 if d0 <= d1 else 1
        branch_record[vid] = idx
        coords[vid] = candidates[idx]

    realization = realize(model.complex, coords, mode=FLOAT, epsilon=epsilon)
    return FlexFrame(t=t, realization=realization, branch_record=branch_record)


def edge_length_residual(frame: FlexFrame) -> float:
    """Largest deviation of a realized edge length from the rigid one."""
    _, lengths = load_complex_data()
    worst = 0.0
    for (i, j), length in lengths.items():
        d = math.sqrt(_dist2_float(frame.coords[i], frame.coords[j]))
        worst = max(worst, abs(d - length))
    return worst


@dataclass(frozen=True)
class ScanSample:
    t: float
    verdict: str | None
    out2: tuple
    needs_study: tuple
    max_edge_residual: float | None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


def scan_embeddedness(t_from: float, t_to: float, steps: int,
                      epsilon: float = 1e-9) -> list:
    """Per-parameter embeddedness verdicts over an inclusive sample grid.

    Marches steps+1 samples from t_from to t_to, carrying the previous frame
    for branch continuity.  Trilateration failures are recorded per sample,
    not fatal.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    samples = []
    prev = None
    for i in range(steps + 1):
        t = t_from + (t_to - t_from) * i / steps
        try:
            frame = realize_flex(t, epsilon=epsilon, prev=prev)
        except DiscriminantNegative as exc:
            samples.append(ScanSample(t=t, verdict=None, out2=(),
                                      needs_study=(), max_edge_residual=None,
                                      error=str(exc)))
            continue
        prev = frame
        report = check_embedded(frame.realization)
        samples.append(ScanSample(
            t=t,
            verdict=report.verdict,
            out2=report.out2,
            needs_study=tuple((e, f) for e, f, _ in report.out1),
            max_edge_residual=edge_length_residual(frame),
        ))
    return samples


def _verdict_at(t: float, epsilon: float) -> str:
    frame = realize_flex(t, epsilon=epsilon)
    return check_embedded(frame.realization).verdict


def max_embedded_t(t_lo: float, t_hi: float, tolerance: float,
                   epsilon: float = 1e-9) -> tuple:
    """Bisection bracket for the last embedded flex parameter.

    Requires an embedded verdict at t_lo and a non-embedded one at t_hi;
    shrinks the bracket until it is narrower than `tolerance`.
    """
    if not _verdict_at(t_lo, epsilon) == EMBEDDED:
        raise BracketInvalid(f"no embedded verdict at t_lo={t_lo}")
    if _verdict_at(t_hi, epsilon) == EMBEDDED:
        raise BracketInvalid(f"embedded verdict at t_hi={t_hi}")
    lo, hi = t_lo, t_hi
    while hi - lo > tolerance:
        mid = (lo + hi) / 2.0
        if _verdict_at(mid, epsilon) == EMBEDDED:
            lo = mid
        else:
            hi = mid
    return (lo, hi)


def displacement_chord(t: float) -> float:
    """Straight-line distance between v9(t) and v9(-t)."""
    return 2.0 * CIRCLE_RADIUS * math.sin(abs(t))


def displacement_arc(t: float) -> float:
    """Arc length traveled by v9 between -t and t."""
    return 2.0 * CIRCLE_RADIUS * abs(t)
