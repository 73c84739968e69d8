"""Exact 3D primitives: oriented volumes, distances, segment-triangle tests.

Everything here is duck-typed over the coordinate type: exact field elements
(or plain Fractions) give exact verdicts, floats give tolerance-based ones.
Which is which is decided solely by the sign policy passed in -- the
classifier itself never compares against a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class GeomError(Exception):
    pass


class DegenerateSegment(GeomError, ValueError):
    pass


class DegenerateTriangle(GeomError, ValueError):
    pass


class SharedVertexMismatch(GeomError, ValueError):
    """Declared-shared vertices do not coincide geometrically (corrupt input)."""


@dataclass(frozen=True)
class Point3:
    """A point (or displacement) with coordinates over one common tower."""

    x: object
    y: object
    z: object

    def __sub__(self, other: "Point3") -> "Point3":
        return Point3(self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, other: "Point3") -> "Point3":
        return Point3(self.x + other.x, self.y + other.y, self.z + other.z)

    def __iter__(self):
        yield self.x
        yield self.y
        yield self.z


def scale(p: Point3, s) -> Point3:
    return Point3(p.x * s, p.y * s, p.z * s)


def lerp(p: Point3, q: Point3, t) -> Point3:
    return Point3(p.x + (q.x - p.x) * t,
                  p.y + (q.y - p.y) * t,
                  p.z + (q.z - p.z) * t)


def cross(a: Point3, b: Point3) -> Point3:
    return Point3(a.y * b.z - a.z * b.y,
                  a.z * b.x - a.x * b.z,
                  a.x * b.y - a.y * b.x)


def dot(a: Point3, b: Point3):
    return a.x * b.x + a.y * b.y + a.z * b.z


def orient6(x0: Point3, x1: Point3, x2: Point3, x3: Point3):
    """Six times the oriented volume of the tetrahedron (x0, x1, x2, x3).

    The determinant of the difference vectors x1-x0, x2-x0, x3-x0;
    antisymmetric under swapping any two arguments.
    """
    a = x1 - x0
    b = x2 - x0
    c = x3 - x0
    return (a.x * (b.y * c.z - b.z * c.y)
            - a.y * (b.x * c.z - b.z * c.x)
            + a.z * (b.x * c.y - b.y * c.x))


def mixed_product(a: Point3, b: Point3, c: Point3, origin: Point3):
    """((a-origin) x (b-origin)) . (c-origin); equals orient6(origin, a, b, c)."""
    return dot(cross(a - origin, b - origin), c - origin)


def dist2(p: Point3, q: Point3):
    d = p - q
    return d.x * d.x + d.y * d.y + d.z * d.z


# ---------------------------------------------------------------------------
# Sign policies
# ---------------------------------------------------------------------------

def exact_sign(v) -> int:
    """Exact sign for field elements, Fractions and ints."""
    s = getattr(v, "sign", None)
    if callable(s):
        return s()
    return (v > 0) - (v < 0)


@dataclass(frozen=True)
class EpsSign:
    """Float sign policy: magnitudes at most epsilon count as zero."""

    epsilon: float

    def __call__(self, v) -> int:
        if abs(v) <= self.epsilon:
            return 0
        return 1 if v > 0 else -1


def _points_coincide(p: Point3, q: Point3, sign) -> bool:
    d = p - q
    return sign(d.x) == 0 and sign(d.y) == 0 and sign(d.z) == 0


# ---------------------------------------------------------------------------
# Segment-triangle classifier
# ---------------------------------------------------------------------------

class PairTag(Enum):
    DISJOINT = "Disjoint"
    INTERSECTING = "Intersecting"
    SHARED_SUBSIMPLEX = "SharedSubsimplex"
    NEEDS_STUDY = "NeedsStudy"


@dataclass(frozen=True)
class PairVerdict:
    tag: PairTag
    rule: str = ""
    detail: str = ""


class Resolution(Enum):
    TOUCH_ONLY = "TouchOnly"
    PROPER_INTERSECTION = "ProperIntersection"
    DISJOINT = "Disjoint"


def classify_segment_triangle(z1: Point3, z2: Point3,
                              y1: Point3, y2: Point3, y3: Point3,
                              shared=None, sign=exact_sign) -> PairVerdict:
    """Classify a closed segment against a closed triangle by sign tests only.

    Let g be the oriented-volume form.  With A = sign g(y1,y2,y3,z1) and
    B = sign g(y1,y2,y3,z2):

      * A*B > 0: both endpoints strictly on one side of the support plane,
        hence disjoint (rule "alpha").
      * A*B < 0: the segment pierces the plane; the three signs of
        g(z1,z2,.,.) over the directed triangle edges decide whether the
        triangle boundary winds around the segment line.  All equal and
        nonzero: crossing inside the triangle (rule "beta").  Nonzero but
        mixed: crossing outside (rule "gamma").  Any zero: the crossing hits
        the triangle boundary -- needs study.
      * A*B = 0: an endpoint lies on the plane -- needs study.

    ``shared=(seg_index, tri_index)`` declares one combinatorially shared
    vertex; the pair is then relabeled so the shared vertex is first, and the
    only question is whether the far endpoint leaves the support plane.
    """
    dz = z2 - z1
    if sign(dz.x) == 0 and sign(dz.y) == 0 and sign(dz.z) == 0:
        raise DegenerateSegment(f"segment endpoints coincide: {z1}")
    normal = cross(y2 - y1, y3 - y1)
    if sign(normal.x) == 0 and sign(normal.y) == 0 and sign(normal.z) == 0:
        raise DegenerateTriangle("triangle has (near-)zero area")

    if shared is not None:
        seg_index, tri_index = shared
        seg = (z1, z2)
        tri = (y1, y2, y3)
        if not _points_coincide(seg[seg_index], tri[tri_index], sign):
            raise SharedVertexMismatch(
                "declared shared vertices have different coordinates")
        ya = tri[tri_index]
        yb = tri[(tri_index + 1) % 3]
        yc = tri[(tri_index + 2) % 3]
        z_far = seg[1 - seg_index]
        if sign(orient6(ya, yb, yc, z_far)) != 0:
            return PairVerdict(PairTag.SHARED_SUBSIMPLEX, rule="shared-vertex")
        return PairVerdict(PairTag.NEEDS_STUDY, rule="shared-vertex",
                           detail="far endpoint lies on the face plane")

    a = sign(orient6(y1, y2, y3, z1))
    b = sign(orient6(y1, y2, y3, z2))
    if a * b > 0:
        return PairVerdict(PairTag.DISJOINT, rule="alpha")
    if a * b < 0:
        s1 = sign(orient6(z1, z2, y2, y3))
        s2 = sign(orient6(z1, z2, y3, y1))
        s3 = sign(orient6(z1, z2, y1, y2))
        if s1 != 0 and s2 != 0 and s3 != 0:
            if s1 == s2 == s3:
                return PairVerdict(PairTag.INTERSECTING, rule="beta")
            return PairVerdict(PairTag.DISJOINT, rule="gamma")
        return PairVerdict(PairTag.NEEDS_STUDY, rule="boundary",
                           detail="crossing point lies on the triangle boundary")
    return PairVerdict(PairTag.NEEDS_STUDY, rule="endpoint-on-plane",
                       detail="segment endpoint lies on the face plane")


def _in_closed_triangle(p: Point3, y1: Point3, y2: Point3, y3: Point3,
                        normal: Point3, sign) -> bool:
    """Membership of an on-plane point in the closed triangle."""
    for a, b in ((y1, y2), (y2, y3), (y3, y1)):
        if sign(dot(cross(b - a, p - a), normal)) < 0:
            return False
    return True


def resolve_needs_study(z1: Point3, z2: Point3,
                        y1: Point3, y2: Point3, y3: Point3,
                        shared=(), sign=exact_sign) -> Resolution:
    """Decide a configuration the sign classifier routed to NeedsStudy.

    Full exact case analysis: an endpoint on the support plane is tested for
    membership in the closed triangle; a coplanar segment is clipped against
    the triangle's three edge halfplanes.  ``shared`` lists the segment
    endpoint indices (0 and/or 1) declared to coincide with triangle
    vertices; intersections confined to the simplex they span are TouchOnly.
    """
    shared_pts = tuple((z1, z2)[i] for i in shared)

    def is_shared_point(p):
        return any(_points_coincide(p, s, sign) for s in shared_pts)

    normal = cross(y2 - y1, y3 - y1)
    d1 = orient6(y1, y2, y3, z1)
    d2 = orient6(y1, y2, y3, z2)
    s1, s2 = sign(d1), sign(d2)

    if s1 * s2 > 0:
        return Resolution.DISJOINT

    if s1 * s2 < 0:
        lam = d1 / (d1 - d2)
        p = lerp(z1, z2, lam)
        if _in_closed_triangle(p, y1, y2, y3, normal, sign):
            return Resolution.TOUCH_ONLY if is_shared_point(p) \
                else Resolution.PROPER_INTERSECTION
        return Resolution.DISJOINT

    if s1 == 0 and s2 == 0:
        # coplanar: clip the segment parameter range against the three
        # edge halfplanes; each constraint is affine in the parameter
        zero = d1 - d1  # exact 0 and 1 in the coordinate type
        lo_val, hi_val = zero, zero + 1
        for edge_a, edge_b in ((y1, y2), (y2, y3), (y3, y1)):
            ha = dot(cross(edge_b - edge_a, z1 - edge_a), normal)
            hb = dot(cross(edge_b - edge_a, z2 - edge_a), normal)
            sa, sb = sign(ha), sign(hb)
            if sa >= 0 and sb >= 0:
                continue
            if sa < 0 and sb < 0:
                return Resolution.DISJOINT
            root = ha / (ha - hb)
            if sa < 0:
                if sign(root - lo_val) > 0:
                    lo_val = root
            else:
                if sign(root - hi_val) < 0:
                    hi_val = root
        if sign(hi_val - lo_val) < 0:
            return Resolution.DISJOINT
        p_lo = lerp(z1, z2, lo_val)
        p_hi = lerp(z1, z2, hi_val)
        if _points_coincide(p_lo, p_hi, sign):
            return Resolution.TOUCH_ONLY if is_shared_point(p_lo) \
                else Resolution.PROPER_INTERSECTION
        # positive-length overlap: contained in the shared simplex only if
        # both endpoints are declared shared (the segment is the shared edge)
        if len(shared_pts) == 2:
            return Resolution.TOUCH_ONLY
        return Resolution.PROPER_INTERSECTION

    # exactly one endpoint on the plane
    p = z1 if s1 == 0 else z2
    if _in_closed_triangle(p, y1, y2, y3, normal, sign):
        return Resolution.TOUCH_ONLY if is_shared_point(p) \
            else Resolution.PROPER_INTERSECTION
    return Resolution.DISJOINT
