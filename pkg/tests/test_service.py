"""HTTP service endpoints via the in-process test client."""

import math

import pytest
from fastapi.testclient import TestClient

from amoebalab.service.app import app

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200 and r.json() == {"status": "ok"}


def test_tropical_line():
    r = client.post("/tropical", json={"polynomial": "1+z+w"})
    assert r.status_code == 200
    body = r.json()
    assert body["balanced"] is True
    assert len(body["curve"]["vertices"]) == 1
    assert len(body["subdivision"]["cells"]) == 1


def test_tropical_parse_error_422():
    r = client.post("/tropical", json={"polynomial": "1+z^"})
    assert r.status_code == 422


def test_amoeba_components():
    r = client.post("/amoeba", json={"polynomial": "1+z+w", "resolution": 128})
    assert r.status_code == 200
    assert r.json()["total"] == 3


def test_verify_solid():
    r = client.post("/verify-solid",
                    json={"polynomial": "1+z+w", "resolution": 128})
    assert r.status_code == 200
    body = r.json()
    assert body["solid"] is True and body["maximally_sparse"] is True


def test_resolution_bounds_enforced():
    r = client.post("/amoeba", json={"polynomial": "1+z+w", "resolution": 16})
    assert r.status_code == 422


def test_spine_constants():
    r = client.post("/spine", json={"polynomial": "1+z+w", "resolution": 128,
                                    "quad_n": 64})
    assert r.status_code == 200
    constants = r.json()["constants"]
    assert len(constants) == 3
    assert all(abs(c["c"]) < 1e-4 for c in constants)


def test_deform_trace():
    r = client.post("/deform", json={"polynomial": "1+z+w", "resolution": 128,
                                     "t_schedule": "e-1,e-2,e-3,e-4",
                                     "angle_samples": 64})
    assert r.status_code == 200
    rows = r.json()["rows"]
    assert len(rows) == 4
    assert all(row["solid"] for row in rows)


def test_coamoeba_volume():
    r = client.post("/coamoeba", json={"polynomial": "1+z+w", "resolution": 128})
    assert r.status_code == 200
    assert abs(r.json()["volume"] - math.pi ** 2) < 0.06 * math.pi ** 2


def test_standard_model():
    r = client.get("/standard-coamoeba/3")
    assert r.status_code == 200
    body = r.json()
    assert len(body["polyhedra"]) == 6
    assert abs(body["volume"] - 4 * math.pi ** 3) < 1e-9
    assert client.get("/standard-coamoeba/5").status_code == 422


def test_transform_matrix():
    r = client.post("/transform-coamoeba",
                    json={"matrix": [[3, 1], [2, 3]], "resolution": 256})
    assert r.status_code == 200
    body = r.json()
    assert body["transform"]["det"] == 7
    assert abs(body["volume"] - math.pi ** 2) < 0.05 * math.pi ** 2


def test_transform_needs_input():
    r = client.post("/transform-coamoeba", json={"resolution": 256})
    assert r.status_code == 422


def test_extra_pieces_self_zero():
    r = client.post("/extra-pieces",
                    json={"sparse": "z+w+z^2*w^2", "deformed": "z+w+z^2*w^2",
                          "resolution": 128})
    assert r.status_code == 200
    assert r.json()["piece_count"] == 0


def test_puiseux_roots():
    r = client.post("/puiseux/w-roots",
                    json={"k": 1, "terms": [{"exponent": "-1", "re": 1.0}]})
    assert r.status_code == 200
    body = r.json()
    assert body["val"] == 1.0
    (root,) = body["roots"]
    assert abs(root[0] + math.e) < 1e-9


def test_puiseux_bad_exponent_422():
    r = client.post("/puiseux/w-roots",
                    json={"k": 2, "terms": [{"exponent": "x", "re": 1.0}]})
    assert r.status_code == 422
