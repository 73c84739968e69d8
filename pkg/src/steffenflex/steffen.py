"""Construction of the Steffen flexible polyhedron in exact radicals.

Five vertices are pinned by symmetry; the remaining four are recovered by
exact trilateration from their three neighbors, with the mirror ambiguity
settled by the fold-sign rule: each new vertex lies on the opposite side of
its crease plane from the matching base vertex.  The construction
re-derives all 21 edge lengths and the symmetries of the model and fails
loudly on any mismatch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import NamedTuple

from .geom import Point3, cross, dot, exact_sign, lerp, mixed_product, orient6, scale
from .mesh import (
    EXACT,
    NotClosed,
    Realization,
    SurfaceComplex,
    check_edge_lengths,
    orient_faces,
    realize,
)
from .numfield import QQ, AlreadySquare, FieldElem, FieldTower


class SteffenError(Exception):
    pass


class CollinearCenters(SteffenError, ValueError):
    pass


class NegativeDiscriminant(SteffenError, ValueError):
    """The three spheres have no common point (inconsistent input lengths)."""


class ReferenceOnPlane(SteffenError, ValueError):
    pass


class AmbiguousBranch(SteffenError, ValueError):
    pass


class InvariantViolation(SteffenError, AssertionError):
    pass


# neighbor -> edge length triples used to trilaterate each folded vertex,
# plus the crease plane, the base reference vertex and the side to take.
# The side assignments are pinned by the published coordinates and by the
# length-11 edges {5,6} and {7,8}; the all-opposite pattern fails both.
TRILATERATION_TRIPLES = {
    5: ((1, 10), (3, 5), (9, 12)),
    6: ((1, 10), (4, 5), (9, 12)),
    7: ((2, 10), (3, 5), (9, 12)),
    8: ((2, 10), (4, 5), (9, 12)),
}
BRANCH_RULE = {
    5: ((1, 2, 3), 4, "same"),
    6: ((1, 2, 4), 3, "opposite"),
    7: ((1, 2, 3), 4, "opposite"),
    8: ((1, 2, 4), 3, "same"),
}

HALF_TURN_RELABEL = {1: 2, 2: 1, 3: 4, 4: 3, 5: 8, 8: 5, 6: 7, 7: 6, 9: 9}


def load_complex_data():
    """The checked-in combinatorial tables: complex and edge-length map."""
    text = resources.files("steffenflex.data").joinpath("steffen_complex.json").read_text()
    data = json.loads(text)
    edges = [tuple(sorted((i, j))) for i, j, _ in data["edges"]]
    lengths = {tuple(sorted((i, j))): length for i, j, length in data["edges"]}
    complex_ = SurfaceComplex(vertex_ids=tuple(data["vertices"]),
                              edges=tuple(edges),
                              faces=tuple(tuple(f) for f in data["faces"]))
    return complex_, lengths


def canonical_tower() -> FieldTower:
    """Q(sqrt(31), sqrt(166)); note sqrt(5146) = sqrt(31)*sqrt(166)."""
    return QQ.adjoin(31).adjoin(166)


def base_vertices(tower: FieldTower | None = None) -> dict:
    """The five symmetry-pinned vertices over Q(sqrt(31), sqrt(166))."""
    tower = tower if tower is not None else canonical_tower()
    r31 = tower.radical(0)
    r166 = tower.radical(1)
    q = tower.elem
    half17 = q(Fraction(17, 2))
    half11 = q(Fraction(11, 2))
    return {
        1: Point3(q(0), -half17, r166 / 2),
        2: Point3(q(0), half17, r166 / 2),
        3: Point3(-half11, q(0), q(0)),
        4: Point3(half11, q(0), q(0)),
        9: Point3(q(0), q(0), -3 * r31 / 2),
    }


class Trilateration(NamedTuple):
    points: tuple            # two Point3 candidates (equal when tangent)
    tower: FieldTower        # tower the candidates live on
    tangent: bool            # discriminant was exactly zero


def _is_zero_vector(v: Point3) -> bool:
    return exact_sign(v.x) == 0 and exact_sign(v.y) == 0 and exact_sign(v.z) == 0


def trilaterate(c1: Point3, r1sq, c2: Point3, r2sq, c3: Point3, r3sq) -> Trilateration:
    """Exact intersection of three spheres.

    Subtracting the sphere equations pairwise gives two planes; their
    intersection line is parameterized and substituted into the first sphere,
    a quadratic whose discriminant root is adjoined to the tower (reusing an
    in-field root when the discriminant is already a square).  Both mirror
    solutions are returned; each satisfies all three sphere equations with a
    structurally zero residual.
    """
    n1 = scale(c2 - c1, 2)
    b1 = r1sq - r2sq - dot(c1, c1) + dot(c2, c2)
    n2 = scale(c3 - c1, 2)
    b2 = r1sq - r3sq - dot(c1, c1) + dot(c3, c3)
    w = cross(n1, n2)
    if _is_zero_vector(w):
        raise CollinearCenters("sphere centers are collinear")

    # base point on both planes with w . x0 = 0, by Cramer's rule
    det = dot(n1, cross(n2, w))   # equals |w|^2 > 0
    x0 = scale(cross(n2, w), b1 / det) + scale(cross(w, n1), b2 / det)

    u = x0 - c1
    qa = dot(w, w)
    qb = 2 * dot(w, u)
    qc = dot(u, u) - r1sq
    disc = qb * qb - 4 * qa * qc

    s = exact_sign(disc)
    if s < 0:
        raise NegativeDiscriminant("spheres have no common point")
    if s == 0:
        lam = -qb / (2 * qa)
        p = x0 + scale(w, lam)
        tower = _tower_of(p)
        return Trilateration((p, p), tower, tangent=True)

    tower = _tower_of(x0)
    if not isinstance(disc, FieldElem):
        disc = tower.elem(disc)
    try:
        tower2 = tower.adjoin(disc)
        root = tower2.radical(tower2.depth - 1)
    except AlreadySquare as already:
        tower2 = tower
        root = abs(already.root)

    def lift_point(p):
        return Point3(*(tower2.elem(comp) for comp in p))

    x0 = lift_point(x0)
    w = lift_point(w)
    qa = tower2.elem(qa)
    qb = tower2.elem(qb)
    lam_plus = (-qb + root) / (2 * qa)
    lam_minus = (-qb - root) / (2 * qa)
    return Trilateration((x0 + scale(w, lam_plus), x0 + scale(w, lam_minus)),
                         tower2, tangent=False)


def _tower_of(p: Point3) -> FieldTower:
    tower = QQ
    for comp in p:
        if isinstance(comp, FieldElem) and tower.is_prefix_of(comp.tower):
            tower = comp.tower
    return tower


def select_branch(candidates, plane, reference: Point3,
                  side: str = "opposite") -> Point3:
    """Pick the candidate on the given side of the plane relative to `reference`.

    The plane is given by three points (origin, a, b); sides are read off the
    mixed product ((a-origin) x (b-origin)) . (x-origin).  With the default
    side="opposite" the selected candidate's mixed product has the sign
    opposite to the reference's.
    """
    origin, pa, pb = plane
    ref_sign = exact_sign(mixed_product(pa, pb, reference, origin))
    if ref_sign == 0:
        raise ReferenceOnPlane("reference point lies on the fold plane")
    want = -ref_sign if side == "opposite" else ref_sign
    chosen = [p for p in candidates
              if exact_sign(mixed_product(pa, pb, p, origin)) == want]
    if len(chosen) != 1:
        raise AmbiguousBranch(
            f"{len(chosen)} candidates lie on the {side} side of the fold plane")
    return chosen[0]


@dataclass(frozen=True)
class SteffenModel:
    complex: SurfaceComplex
    realization: Realization
    tower: FieldTower
    lengths: dict

    @property
    def coords(self) -> dict:
        return self.realization.coords


def build_steffen() -> SteffenModel:
    """Assemble the polyhedron exactly and verify every model invariant."""
    complex_, lengths = load_complex_data()
    tower = canonical_tower()
    coords = dict(base_vertices(tower))

    for vid in (5, 6, 7, 8):
        centers = []
        radii_sq = []
        for neighbor, length in TRILATERATION_TRIPLES[vid]:
            centers.append(coords[neighbor])
            radii_sq.append(tower.elem(length * length))
        tri = trilaterate(centers[0], radii_sq[0], centers[1], radii_sq[1],
                          centers[2], radii_sq[2])
        if tri.tangent:
            raise InvariantViolation(f"trilateration of v{vid} is tangent")
        if tower != tri.tower:
            tower = tri.tower
            coords = {k: Point3(*(comp.lift_to(tower) for comp in p))
                      for k, p in coords.items()}
        plane_ids, ref_id, side = BRANCH_RULE[vid]
        plane = tuple(coords[i] for i in plane_ids)
        coords[vid] = select_branch(tri.points, plane, coords[ref_id], side=side)

    realization = realize(complex_, coords, mode=EXACT)
    coords = realization.coords
    _verify_invariants(coords, lengths, realization)
    return SteffenModel(complex=complex_, realization=realization,
                        tower=tower, lengths=lengths)


def _verify_invariants(coords, lengths, realization):
    mismatches = check_edge_lengths(realization, lengths)
    if mismatches:
        raise InvariantViolation(f"edge length mismatches: {mismatches}")

    from .geom import dist2
    if dist2(coords[3], coords[4]) != 121:
        raise InvariantViolation("dist(v3, v4) != 11")
    if dist2(coords[9], coords[3]) != 100 or dist2(coords[9], coords[4]) != 100:
        raise InvariantViolation("v9 is not at distance 10 from v3 and v4")

    v9 = coords[9]
    if not (v9.x.is_zero() and v9.y.is_zero() and v9.z.sign() < 0):
        raise InvariantViolation("v9 is not on the negative z-axis")

    for j, img in HALF_TURN_RELABEL.items():
        p, q = coords[j], coords[img]
        if not ((-p.x - q.x).is_zero() and (-p.y - q.y).is_zero()
                and (p.z - q.z).is_zero()):
            raise InvariantViolation(
                f"half-turn symmetry broken between v{j} and v{img}")


def volume(r: Realization, apex: Point3 | None = None):
    """Total volume as a sum of signed apex tetrahedra over all faces.

    The closed surface is oriented consistently, the sign is fixed so the
    total is positive, and the result is independent of the apex.
    """
    oriented = orient_faces(r.complex)   # raises NotClosed on open surfaces
    if apex is None:
        apex = Point3(0, 0, 0)
    total = None
    for a, b, c in oriented:
        term = orient6(apex, r.coords[a], r.coords[b], r.coords[c])
        total = term if total is None else total + term
    if total is None:
        raise NotClosed("no faces")
    if exact_sign(total) < 0:
        total = -total
    return total / 6
