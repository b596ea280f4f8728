import pytest
from fastapi.testclient import TestClient

from app.main import app
from app.routers import checks


@pytest.fixture
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert "is live" in response.json()["message"]


def test_health(client):
    body = client.get("/checks/health").json()
    assert body["status"] == "healthy"
    assert body["checks"] > 30


def test_catalogue(client):
    response = client.get("/checks/")
    assert response.status_code == 200
    names = [c["name"] for c in response.json()]
    assert "commweil" in names and "rmu-smu" in names


def test_run_check(client):
    response = client.post("/checks/run/dual-coxeter", json={"params": {"algebra": "B2"}, "seed": 4})
    assert response.status_code == 200
    body = response.json()
    assert body["pass"] is True
    assert body["seed"] == 4
    assert body["details"]["dual_coxeter"] == 3


def test_unknown_check_is_404(client):
    assert client.post("/checks/run/no-such-check", json={}).status_code == 404


def test_bad_parameters_are_422(client):
    response = client.post("/checks/run/clifford-relations", json={"params": {"dim": 5}})
    assert response.status_code == 422


def test_structural_error_is_500(client, monkeypatch, toy_registry):
    monkeypatch.setattr(checks, "registry", toy_registry)
    response = client.post("/checks/run/broken", json={})
    assert response.status_code == 500
    assert "boom" in response.json()["detail"]


def test_suite(client, monkeypatch, toy_registry):
    monkeypatch.setattr(checks, "registry", toy_registry)
    response = client.post("/checks/suite/quick", json={"seed": 1})
    assert response.status_code == 200
    body = response.json()
    assert body["pass"] is True
    assert len(body["reports"]) == 2


def test_unknown_profile(client):
    assert client.post("/checks/suite/nightly", json={}).status_code == 422
