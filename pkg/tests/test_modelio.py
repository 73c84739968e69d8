"""Model file formats: JSON round-trips, OBJ export, legacy split lists."""

import json
from fractions import Fraction

import pytest

from steffenflex import modelio
from steffenflex.geom import Point3
from steffenflex.mesh import SurfaceComplex, realize

from support import piercing_fixture, unit_tetra_realization

F = Fraction


class TestJsonModel:
    def test_exact_round_trip_bit_exact(self, steffen_model, tmp_path):
        path = tmp_path / "model.json"
        modelio.write_model(steffen_model.realization, path)
        r2 = modelio.read_model(path)
        text1 = path.read_text()
        assert modelio.dump_model(r2) + "\n" == text1
        for vid, p in steffen_model.coords.items():
            q = r2.coords[vid]
            assert (p.x - q.x).is_zero()
            assert (p.y - q.y).is_zero()
            assert (p.z - q.z).is_zero()

    def test_rational_coordinate_encoding(self, steffen_model):
        doc = modelio.model_to_dict(steffen_model.realization)
        by_id = {v["id"]: v["coords"] for v in doc["vertices"]}
        assert by_id[4] == [{"rat": "11/2"}, {"rat": "0"}, {"rat": "0"}]
        assert doc["mode"] == "exact"
        assert len(doc["tower"]) == 3

    def test_float_round_trip(self, tmp_path):
        coords = {1: Point3(0.0, 0.0, 0.0), 2: Point3(1.25, 0.0, 0.0),
                  3: Point3(0.0, 1.0, 0.0), 4: Point3(0.0, 0.0, 1e-3)}
        c = SurfaceComplex(vertex_ids=(1, 2, 3, 4),
                           edges=((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)),
                           faces=((1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)))
        r = realize(c, coords, mode="float", epsilon=1e-7)
        path = tmp_path / "float.json"
        modelio.write_model(r, path)
        r2 = modelio.read_model(path)
        assert r2.mode == "float" and r2.epsilon == 1e-7
        assert r2.coords[2].x == 1.25
        assert r2.coords[4].z == 1e-3

    def test_parse_error_on_bad_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(modelio.ParseError):
            modelio.read_model(path)

    def test_parse_error_on_missing_fields(self):
        with pytest.raises(modelio.ParseError):
            modelio.model_from_dict({"mode": "exact"})

    def test_parse_error_on_negative_sqrt(self):
        doc = {
            "mode": "exact",
            "vertices": [{"id": 1, "coords": [
                {"sqrt": {"rat": "-1"}}, {"rat": "0"}, {"rat": "0"}]}],
            "edges": [], "faces": [],
        }
        with pytest.raises(modelio.ParseError):
            modelio.model_from_dict(doc)


class TestObjExport:
    def test_obj_content(self, tmp_path):
        r = unit_tetra_realization()
        path = tmp_path / "tetra.obj"
        modelio.write_obj(r, path, precision=4)
        text = path.read_text()
        assert "approximate" in text
        v_lines = [l for l in text.splitlines() if l.startswith("v ")]
        f_lines = [l for l in text.splitlines() if l.startswith("f ")]
        assert len(v_lines) == 4 and len(f_lines) == 4
        assert v_lines[1] == "v 1.0000 0.0000 0.0000"


class TestSplitInputs:
    @staticmethod
    def _write_lists(r, tmp_path):
        coords = {vid: tuple(float(c) for c in p) for vid, p in r.coords.items()}
        s = tmp_path / "s.csv"
        ss = tmp_path / "ss.csv"
        t = tmp_path / "t.csv"
        tt = tmp_path / "tt.csv"
        s.write_text("".join(f"{i},{j}\n" for i, j in r.complex.edges))
        t.write_text("".join(f"{i},{j},{k}\n" for i, j, k in r.complex.faces))
        ss.write_text("".join(
            "%d,%d,%r,%r,%r,%r,%r,%r\n" % ((i, j) + coords[i] + coords[j])
            for i, j in r.complex.edges))
        tt.write_text("".join(
            "%d,%d,%d,%r,%r,%r,%r,%r,%r,%r,%r,%r\n"
            % ((i, j, k) + coords[i] + coords[j] + coords[k])
            for i, j, k in r.complex.faces))
        return s, ss, t, tt

    def test_merge(self, tmp_path):
        r = piercing_fixture()
        paths = self._write_lists(r, tmp_path)
        merged = modelio.read_split_inputs(*paths)
        assert merged.mode == "float"
        assert set(merged.complex.edges) == set(r.complex.edges)
        assert set(merged.complex.faces) == set(r.complex.faces)
        assert merged.complex.with_boundary

    def test_conflicting_coordinates_rejected(self, tmp_path):
        r = piercing_fixture()
        s, ss, t, tt = self._write_lists(r, tmp_path)
        rows = tt.read_text().splitlines()
        parts = rows[0].split(",")
        parts[3] = repr(float(parts[3]) + 0.5)   # corrupt one vertex coordinate
        rows[0] = ",".join(parts)
        tt.write_text("\n".join(rows) + "\n")
        with pytest.raises(modelio.ValidationError):
            modelio.read_split_inputs(s, ss, t, tt)

    def test_closed_surface_detected(self, tmp_path):
        r = unit_tetra_realization()
        paths = self._write_lists(r, tmp_path)
        merged = modelio.read_split_inputs(*paths)
        assert not merged.complex.with_boundary
