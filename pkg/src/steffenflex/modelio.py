"""Model file formats: JSON models, OBJ export, legacy split CSV lists.

The JSON model is the canonical format:

    {
      "mode": "exact" | "float",
      "epsilon": 1e-9,                  # float mode
      "with_boundary": false,           # optional
      "tower": [numexpr, ...],          # exact mode: radicands, in order
      "vertices": [{"id": 1, "coords": [numexpr, numexpr, numexpr]}, ...],
      "edges": [[i, j], ...],
      "faces": [[i, j, k], ...]
    }

where numexpr is {"rat": "p/q"} | {"sqrt": e} | {"add": [e...]} |
{"mul": [e...]} | {"neg": e}, or a plain decimal string in float mode.
The tower preamble lets a reader rebuild the exact same extension tower, so
exact models round-trip bit-exactly.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction

from .geom import Point3
from .mesh import EXACT, FLOAT, Realization, SurfaceComplex, orient_faces, realize
from .numfield import QQ, ExprBuilder, ExprError, FieldElem, to_expr, tower_exprs


class ParseError(Exception):
    pass


class ValidationError(Exception):
    pass


def model_to_dict(r: Realization) -> dict:
    doc: dict = {"mode": r.mode}
    if r.complex.with_boundary:
        doc["with_boundary"] = True
    if r.mode == FLOAT:
        doc["epsilon"] = r.epsilon
        coords = {vid: [repr(float(c)) for c in p] for vid, p in r.coords.items()}
    else:
        tower = QQ
        for p in r.coords.values():
            for comp in p:
                if isinstance(comp, FieldElem) and tower.is_prefix_of(comp.tower):
                    tower = comp.tower
        if tower.depth:
            doc["tower"] = tower_exprs(tower)
        coords = {}
        for vid, p in r.coords.items():
            row = []
            for comp in p:
                if not isinstance(comp, FieldElem):
                    comp = tower.elem(comp)
                row.append(to_expr(comp.lift_to(tower)))
            coords[vid] = row
    doc["vertices"] = [{"id": vid, "coords": coords[vid]}
                       for vid in sorted(r.coords)]
    doc["edges"] = [list(e) for e in r.complex.edges]
    doc["faces"] = [list(f) for f in r.complex.faces]
    return doc


def model_from_dict(doc: dict) -> Realization:
    try:
        mode = doc["mode"]
        vertices = doc["vertices"]
        edges = [tuple(e) for e in doc["edges"]]
        faces = [tuple(f) for f in doc["faces"]]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"model file is missing required fields: {exc}") from exc
    with_boundary = bool(doc.get("with_boundary", False))
    epsilon = float(doc.get("epsilon", 1e-9))

    coords = {}
    if mode == FLOAT:
        for entry in vertices:
            try:
                coords[entry["id"]] = Point3(*(float(c) for c in entry["coords"]))
            except (KeyError, TypeError, ValueError) as exc:
                raise ParseError(f"bad float vertex entry {entry!r}") from exc
    elif mode == EXACT:
        builder = ExprBuilder()
        try:
            for expr in doc.get("tower", []):
                radicand = builder.eval(expr).lift_to(builder.tower)
                builder.tower = builder.tower.adjoin(radicand)
            for entry in vertices:
                coords[entry["id"]] = Point3(*(builder.eval(c) for c in entry["coords"]))
        except ExprError as exc:
            raise ParseError(str(exc)) from exc
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad exact vertex entry: {exc}") from exc
        tower = builder.tower
        coords = {vid: Point3(*(c.lift_to(tower) for c in p))
                  for vid, p in coords.items()}
    else:
        raise ParseError(f"unknown mode {mode!r}")

    complex_ = SurfaceComplex(vertex_ids=tuple(e["id"] for e in vertices),
                              edges=tuple(edges), faces=tuple(faces),
                              with_boundary=with_boundary)
    return realize(complex_, coords, mode=mode, epsilon=epsilon)


def dump_model(r: Realization) -> str:
    return json.dumps(model_to_dict(r), indent=2, sort_keys=True)


def write_model(r: Realization, path) -> None:
    with open(path, "w") as fh:
        fh.write(dump_model(r))
        fh.write("\n")


def read_model(path) -> Realization:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return model_from_dict(doc)


def write_obj(r: Realization, path, precision: int = 9) -> None:
    """OBJ export; coordinates are decimal and therefore approximate."""
    ids = sorted(r.coords)
    index = {vid: i + 1 for i, vid in enumerate(ids)}
    try:
        faces = orient_faces(r.complex)
    except Exception:
        faces = r.complex.faces
    lines = [
        f"# approximate coordinates (rounded to {precision} decimal places)",
        "# exact values, if any, live in the JSON model this was exported from",
    ]
    for vid in ids:
        p = r.coords[vid]
        comps = []
        for c in p:
            if isinstance(c, FieldElem):
                comps.append(c.decimal_str(precision))
            else:
                comps.append(f"{float(c):.{precision}f}")
        lines.append("v " + " ".join(comps))
    for f in faces:
        lines.append("f " + " ".join(str(index[v]) for v in f))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# Legacy split inputs: four CSV lists (edge ids, edge coords, face ids,
# face coords).  Coordinates are decimal; the merged model is float mode.
# ---------------------------------------------------------------------------

def _read_rows(path):
    with open(path, newline="") as fh:
        return [row for row in csv.reader(fh) if row and not row[0].startswith("#")]


def read_split_inputs(s_path, ss_path, t_path, tt_path,
                      epsilon: float = 1e-9) -> Realization:
    """Merge the four legacy lists into one float-mode realization.

    The coordinate lists must agree wherever they mention the same vertex;
    conflicting coordinates for one id are a hard error.
    """
    try:
        edges = [tuple(sorted((int(a), int(b)))) for a, b in _read_rows(s_path)]
        faces = [tuple(sorted((int(a), int(b), int(c))))
                 for a, b, c in _read_rows(t_path)]
    except ValueError as exc:
        raise ParseError(f"bad simplex row: {exc}") from exc

    coords: dict = {}

    def assign(vid: int, xyz):
        p = Point3(*(float(v) for v in xyz))
        if vid in coords and coords[vid] != p:
            raise ValidationError(
                f"vertex {vid} has conflicting coordinates in the input lists")
        coords[vid] = p

    try:
        for row in _read_rows(ss_path):
            i, j = int(row[0]), int(row[1])
            assign(i, row[2:5])
            assign(j, row[5:8])
            if tuple(sorted((i, j))) not in set(edges):
                raise ValidationError(f"edge ({i},{j}) appears only in the coordinate list")
        for row in _read_rows(tt_path):
            i, j, k = int(row[0]), int(row[1]), int(row[2])
            assign(i, row[3:6])
            assign(j, row[6:9])
            assign(k, row[9:12])
            if tuple(sorted((i, j, k))) not in set(faces):
                raise ValidationError(f"face ({i},{j},{k}) appears only in the coordinate list")
    except (ValueError, IndexError) as exc:
        raise ParseError(f"bad coordinate row: {exc}") from exc

    complex_ = SurfaceComplex(vertex_ids=tuple(sorted(coords)),
                              edges=tuple(edges), faces=tuple(faces),
                              with_boundary=True)
    # flag the complex closed if every edge is in two faces
    if all(len(v) == 2 for v in complex_.edge_faces().values()):
        complex_ = SurfaceComplex(vertex_ids=complex_.vertex_ids,
                                  edges=complex_.edges, faces=complex_.faces,
                                  with_boundary=False)
    return realize(complex_, coords, mode=FLOAT, epsilon=epsilon)
