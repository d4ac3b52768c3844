"""HTTP surface: request/response models, error mapping, payload contracts."""

import math

import pytest
from fastapi.testclient import TestClient

from galsurf.curve import frenet_frame
from galsurf.service import app

from conftest import load_scene_dict

client = TestClient(app)


def degenerate_scene() -> dict:
    scene = load_scene_dict("typeA")
    scene["curve"] = {"y": "0", "z": "0", "w": "0", "s_range": [0, 1]}
    return scene


class TestInfo:
    def test_root_lists_endpoints(self):
        body = client.get("/").json()
        assert body["name"] == "galsurf"
        assert "/validate" in body["endpoints"]


class TestFrenet:
    def test_matches_library_frames(self, example_curve):
        scene = load_scene_dict("typeA")
        s_values = [0.0, 1.0, math.pi]
        resp = client.post("/frenet", json={"scene": scene, "s_values": s_values})
        assert resp.status_code == 200
        frames = resp.json()["frames"]
        assert len(frames) == 3
        for out, s in zip(frames, s_values):
            f = frenet_frame(example_curve, s)
            assert out["kappa"] == pytest.approx(f.kappa, abs=1e-12)
            assert out["tau"] == pytest.approx(f.tau, abs=1e-12)
            assert out["sigma"] == pytest.approx(f.sigma, abs=1e-12)
            assert out["mu"] == f.mu
            assert out["det"] == pytest.approx(1.0, abs=1e-9)
            assert out["t"] == pytest.approx(list(f.t.components()), abs=1e-12)

    def test_default_sample_count(self):
        resp = client.post("/frenet", json={"scene": load_scene_dict("typeB")})
        assert resp.status_code == 200
        assert len(resp.json()["frames"]) == 5

    def test_out_of_range_s_is_a_config_error(self):
        resp = client.post("/frenet", json={"scene": load_scene_dict("typeA"),
                                            "s_values": [100.0]})
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "config"

    def test_degenerate_curve_reported_as_frame_error(self):
        resp = client.post("/frenet", json={"scene": degenerate_scene(),
                                            "s_values": [0.5]})
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "degenerate-frame"


class TestValidate:
    @pytest.mark.parametrize("name", ["typeA", "typeB", "typeC"])
    def test_bundled_scenes_pass(self, name):
        resp = client.post("/validate", json={"scene": load_scene_dict(name)})
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is True
        assert body["report"]["passed"] is True
        assert body["checker"]["passed"] is True
        assert body["checker"]["variant"] == name

    def test_generic_wrapper_gets_no_checker_but_same_verdict(self):
        scene = load_scene_dict("typeA")
        scene["marching"] = {
            "variant": "generic",
            "coeffs": {"t": "v*(u - 0)*(v - 0.5)", "n": "0",
                       "b": "v*(u - 0)", "e": "v - 0.5"}}
        resp = client.post("/validate", json={"scene": scene})
        assert resp.status_code == 200
        body = resp.json()
        assert body["checker"] is None
        assert body["passed"] is True

    def test_failing_scene_returns_report_with_200(self):
        scene = load_scene_dict("typeA")
        scene["marching"]["profile"] = {
            "t": "v*(u - 0)*(v - 0)", "n": "0", "b": "v*(u - 0)", "e": "v - 0"}
        scene["anchor"]["v0"] = 0.0
        resp = client.post("/validate", json={"scene": scene})
        assert resp.status_code == 200
        body = resp.json()
        assert body["passed"] is False
        failing = {c["name"] for c in body["report"]["clauses"] if not c["passed"]}
        assert "normal_n_nonzero" in failing

    def test_malformed_scene_is_rejected_by_the_model(self):
        resp = client.post("/validate", json={"scene": {"curve": {}}})
        assert resp.status_code == 422

    def test_bad_expression_is_a_config_error(self):
        scene = load_scene_dict("typeA")
        scene["curve"]["y"] = "cos(q)"
        resp = client.post("/validate", json={"scene": scene})
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "config"

    def test_identical_scenes_give_byte_identical_reports(self):
        payload = {"scene": load_scene_dict("typeB")}
        first = client.post("/validate", json=payload)
        second = client.post("/validate", json=payload)
        assert first.content == second.content


class TestProject:
    def test_obj_with_counts(self):
        resp = client.post("/project", json={"scene": load_scene_dict("typeB"),
                                             "format": "obj"})
        assert resp.status_code == 200
        assert resp.headers["x-vertex-count"] == "1024"   # 64 x 16
        assert resp.headers["x-face-count"] == "1890"     # 2*63*15
        assert resp.text.startswith("v ")

    def test_csv_format(self):
        resp = client.post("/project", json={"scene": load_scene_dict("typeC"),
                                             "format": "csv"})
        assert resp.status_code == 200
        assert resp.text.splitlines()[0] == "s,param,x,y,z"

    def test_missing_projection_section(self):
        scene = load_scene_dict("typeA")
        del scene["projection"]
        resp = client.post("/project", json={"scene": scene})
        assert resp.status_code == 400
        assert resp.json()["detail"]["kind"] == "config"

    def test_pinned_value_outside_box(self):
        scene = load_scene_dict("typeA")
        scene["projection"]["fixed_value"] = 5.0
        resp = client.post("/project", json={"scene": scene})
        assert resp.status_code == 400


class TestSample:
    def test_anchor_rows_trace_the_curve(self, example_curve):
        scene = load_scene_dict("typeA")
        scene["grid"] = {"n_s": 5, "n_u": 3, "n_v": 3}
        resp = client.post("/sample", json={"scene": scene})
        assert resp.status_code == 200
        lines = resp.text.splitlines()
        assert lines[0] == "s,u,v,x,y,z,w"
        assert len(lines) == 1 + 5 * 3 * 3
        assert resp.headers["x-vertex-count"] == "45"
        hits = 0
        for line in lines[1:]:
            s, u, v, x, y, z, w = (float(tok) for tok in line.split(","))
            if u == 0.0 and v == 0.5:  # the scene anchor, on this lattice
                point = example_curve.point(s).components()
                assert (x, y, z, w) == pytest.approx(point, abs=0.0)
                hits += 1
        assert hits == 5
