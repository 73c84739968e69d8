"""Abstract simplicial surfaces, their realizations, and structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt as _fsqrt

from .geom import EpsSign, Point3, cross, dist2, exact_sign
from .numfield import FieldElem


class MeshError(Exception):
    pass


class InvalidComplex(MeshError, ValueError):
    def __init__(self, violations):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class MissingVertexCoordinates(MeshError, KeyError):
    pass


class DegenerateFace(MeshError, ValueError):
    def __init__(self, face):
        super().__init__(f"face {face} is geometrically degenerate")
        self.face = face


class UnknownEdge(MeshError, KeyError):
    pass


class NotClosed(MeshError, ValueError):
    pass


class NonOrientable(MeshError, ValueError):
    pass


EXACT = "exact"
FLOAT = "float"


@dataclass(frozen=True)
class SurfaceComplex:
    """A 2-dimensional simplicial complex: vertices, edge list, face list.

    Edges and faces are stored as sorted id tuples; `with_boundary` permits
    edges lying in a single face.
    """

    vertex_ids: tuple
    edges: tuple
    faces: tuple
    with_boundary: bool = False

    def __post_init__(self):
        object.__setattr__(self, "vertex_ids", tuple(self.vertex_ids))
        object.__setattr__(self, "edges",
                           tuple(tuple(sorted(e)) for e in self.edges))
        object.__setattr__(self, "faces",
                           tuple(tuple(sorted(f)) for f in self.faces))

    def edge_faces(self) -> dict:
        """Map each edge to the (indices of) faces containing it."""
        incidence = {e: [] for e in self.edges}
        for idx, f in enumerate(self.faces):
            for e in _face_edges(f):
                if e in incidence:
                    incidence[e].append(idx)
        return incidence


def _face_edges(face):
    a, b, c = face
    return (tuple(sorted((a, b))), tuple(sorted((b, c))), tuple(sorted((a, c))))


def validate_complex(c: SurfaceComplex) -> list:
    """All invariant violations, as sorted human-readable strings.

    Empty list means: unique simplices over known vertices, every face edge
    listed, each edge in exactly two faces (one allowed with `with_boundary`),
    connected, and Euler characteristic 2 for closed complexes.
    """
    violations = []
    known = set(c.vertex_ids)
    if len(known) != len(c.vertex_ids):
        violations.append("duplicate vertex ids")

    seen_edges = set()
    for e in c.edges:
        if len(set(e)) != 2:
            violations.append(f"edge {e} has repeated endpoints")
            continue
        if not set(e) <= known:
            violations.append(f"edge {e} references unknown vertices")
        if e in seen_edges:
            violations.append(f"duplicate edge {e}")
        seen_edges.add(e)

    seen_faces = set()
    for f in c.faces:
        if len(set(f)) != 3:
            violations.append(f"face {f} has repeated vertices")
            continue
        if not set(f) <= known:
            violations.append(f"face {f} references unknown vertices")
        if f in seen_faces:
            violations.append(f"duplicate face {f}")
        seen_faces.add(f)
        for e in _face_edges(f):
            if e not in seen_edges:
                violations.append(f"face {f} uses unlisted edge {e}")

    incidence = c.edge_faces()
    for e, face_idx in incidence.items():
        n = len(face_idx)
        if n == 0:
            violations.append(f"edge {e} belongs to no face")
        elif n > 2:
            violations.append(f"edge {e} belongs to {n} faces (non-manifold)")
        elif n == 1 and not c.with_boundary:
            violations.append(f"edge {e} belongs to 1 face only (open surface)")

    if c.vertex_ids and not violations:
        adjacency = {v: set() for v in c.vertex_ids}
        for a, b in c.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        stack = [c.vertex_ids[0]]
        seen = {c.vertex_ids[0]}
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if seen != known:
            violations.append("complex is not connected")
        elif not c.with_boundary:
            euler = len(c.vertex_ids) - len(c.edges) + len(c.faces)
            if euler != 2:
                violations.append(
                    f"Euler characteristic {euler} != 2 for a closed sphere-type complex")

    return sorted(violations)


@dataclass(frozen=True)
class Realization:
    """A geometric realization: coordinates for every vertex of a complex.

    In exact mode all sign decisions are exact; in float mode they go through
    a single epsilon (values of magnitude <= epsilon count as zero).
    """

    complex: SurfaceComplex
    coords: dict
    mode: str = EXACT
    epsilon: float = 1e-9

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT

    @property
    def sign_fn(self):
        return exact_sign if self.is_exact else EpsSign(self.epsilon)

    def point(self, vid) -> Point3:
        return self.coords[vid]


def _deepest_tower(coords):
    tower = None
    for p in coords.values():
        for comp in p:
            if isinstance(comp, FieldElem):
                if tower is None or tower.is_prefix_of(comp.tower):
                    tower = comp.tower
                elif not comp.tower.is_prefix_of(tower):
                    raise InvalidComplex(["coordinate towers are incompatible"])
    return tower


def realize(c: SurfaceComplex, coords: dict, mode: str = EXACT,
            epsilon: float = 1e-9) -> Realization:
    """Validate and assemble a realization.

    Checks the complex invariants, coordinate completeness and the geometric
    nondegeneracy of every face (cross product of edge vectors nonzero, or of
    norm > epsilon in float mode).  In exact mode all field-element
    coordinates are lifted to one common tower.
    """
    violations = validate_complex(c)
    if violations:
        raise InvalidComplex(violations)
    missing = [v for v in c.vertex_ids if v not in coords]
    if missing:
        raise MissingVertexCoordinates(f"no coordinates for vertices {missing}")

    if mode == EXACT:
        tower = _deepest_tower(coords)
        if tower is not None:
            coords = {
                vid: Point3(*(comp.lift_to(tower) if isinstance(comp, FieldElem)
                              else tower.elem(comp) for comp in p))
                for vid, p in coords.items()
            }
        sign = exact_sign
    elif mode == FLOAT:
        coords = {vid: Point3(float(p.x), float(p.y), float(p.z))
                  for vid, p in coords.items()}
        sign = EpsSign(epsilon)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    for f in c.faces:
        p1, p2, p3 = (coords[v] for v in f)
        n = cross(p2 - p1, p3 - p1)
        if mode == EXACT:
            if sign(n.x) == 0 and sign(n.y) == 0 and sign(n.z) == 0:
                raise DegenerateFace(f)
        else:
            if _fsqrt(n.x * n.x + n.y * n.y + n.z * n.z) <= epsilon:
                raise DegenerateFace(f)

    return Realization(complex=c, coords=coords, mode=mode, epsilon=epsilon)


@dataclass(frozen=True)
class LengthMismatch:
    edge: tuple
    expected: object
    actual_dist2: object


def check_edge_lengths(r: Realization, expected: dict) -> list:
    """Compare realized edge lengths against expected ones.

    Exact mode compares squared distances exactly; float mode compares the
    distance within the realization's epsilon.  Returns the mismatches.
    """
    edge_set = set(r.complex.edges)
    mismatches = []
    for e, length in expected.items():
        key = tuple(sorted(e))
        if key not in edge_set:
            raise UnknownEdge(f"{key} is not an edge of the complex")
        d2 = dist2(r.coords[key[0]], r.coords[key[1]])
        if r.is_exact:
            if d2 != length * length:
                mismatches.append(LengthMismatch(key, length, d2))
        else:
            if abs(_fsqrt(d2) - length) > r.epsilon:
                mismatches.append(LengthMismatch(key, length, d2))
    return mismatches


def orient_faces(c: SurfaceComplex):
    """Globally consistent face orientations for a closed surface.

    Propagates orientation across shared edges (each directed edge must be
    traversed once in each direction by its two faces).
    """
    incidence = c.edge_faces()
    for e, faces in incidence.items():
        if len(faces) != 2:
            raise NotClosed(f"edge {e} lies in {len(faces)} faces")

    oriented: list = [None] * len(c.faces)
    if not c.faces:
        return ()
    oriented[0] = c.faces[0]
    stack = [0]
    while stack:
        idx = stack.pop()
        a, b, cc = oriented[idx]
        for u, v in ((a, b), (b, cc), (cc, a)):
            e = tuple(sorted((u, v)))
            other = next(j for j in incidence[e] if j != idx)
            w = next(x for x in c.faces[other] if x not in e)
            want = (v, u, w)
            if oriented[other] is None:
                oriented[other] = want
                stack.append(other)
            else:
                x, y, z = oriented[other]
                if (v, u) not in ((x, y), (y, z), (z, x)):
                    raise NonOrientable(
                        f"faces {c.faces[idx]} and {c.faces[other]} disagree across {e}")
    if any(f is None for f in oriented):
        raise NotClosed("face adjacency graph is disconnected")
    return tuple(oriented)
