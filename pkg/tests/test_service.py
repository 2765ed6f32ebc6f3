"""HTTP service endpoints and error mapping."""
import pytest
from fastapi.testclient import TestClient

from addunique import service
from addunique.engine import UniquenessFailure

client = TestClient(service.app)


def test_health():
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok"}


def test_seeds_endpoint():
    resp = client.post("/seeds", json={"k": 4})
    assert resp.status_code == 200
    body = resp.json()
    assert body["k"] == 4
    assert body["solutions"] == [
        {
            "f2": {"num": "-2", "den": "1"},
            "f3": {"num": "-1", "den": "1"},
            "f5": {"num": "1", "den": "1"},
        },
        {
            "f2": {"num": "2", "den": "1"},
            "f3": {"num": "3", "den": "1"},
            "f5": {"num": "5", "den": "1"},
        },
    ]


def test_seeds_rejects_small_k():
    assert client.post("/seeds", json={"k": 2}).status_code == 422


def test_lemma_endpoint():
    resp = client.post("/lemma", json={"k": 5, "bound": 500})
    assert resp.status_code == 200
    assert resp.json() == {"k": 5, "bound": 500, "exceptional": [1, 2, 3, 4, 6, 8]}


def test_lemma_rejects_small_bound():
    # valid pydantic payload rejected by the core with a ValueError
    assert client.post("/lemma", json={"k": 5, "bound": 3}).status_code == 422


def test_representations_endpoint():
    resp = client.post("/representations", json={"n": 10, "k": 3})
    assert resp.status_code == 200
    assert resp.json() == {
        "n": 10,
        "k": 3,
        "count": 1,
        "representations": [[1, 3, 6]],
    }
    resp = client.post("/representations", json={"n": 10, "k": 3, "count_only": True})
    assert resp.json()["representations"] is None


def test_gauss_endpoint():
    resp = client.post("/gauss", json={"n": 12})
    assert resp.status_code == 200
    assert resp.json() == {"n": 12, "triple": [0, 6, 6]}


def test_certify_endpoint_directed():
    resp = client.post("/certify", json={"k": 4, "bound": 60})
    assert resp.status_code == 200
    body = resp.json()
    assert body["verdict"] == "unique"
    assert body["strategy"] == "directed"
    statuses = [b["status"] for b in body["branches"]]
    assert statuses == ["refuted", "certified"]


def test_certify_endpoint_generic():
    resp = client.post("/certify", json={"k": 3, "bound": 30, "strategy": "generic"})
    assert resp.status_code == 200
    assert resp.json()["verdict"] == "unique"


def test_certify_rejects_bad_strategy():
    resp = client.post("/certify", json={"k": 4, "bound": 60, "strategy": "magic"})
    assert resp.status_code == 422


def test_certify_rejects_small_directed_bound():
    resp = client.post("/certify", json={"k": 4, "bound": 10})
    assert resp.status_code == 422


def test_falsifying_exception_maps_to_409(monkeypatch):
    def boom(k, bound):
        raise UniquenessFailure("branch survived", stuck_n=7)

    monkeypatch.setattr(service.engine, "directed_certify", boom)
    resp = client.post("/certify", json={"k": 4, "bound": 60})
    assert resp.status_code == 409
    detail = resp.json()["detail"]
    assert detail["error"] == "UniquenessFailure"
    assert "survived" in detail["message"]


def test_handlers_work_in_process():
    resp = service.handle_gauss(service.GaussRequest(n=100))
    assert sum(resp.triple) == 100
    resp = service.handle_repr(service.ReprRequest(n=21, k=3))
    assert resp.count == len(resp.representations)
