from pathlib import Path

import pytest
import yaml
from fastapi.testclient import TestClient

ROOT = Path(__file__).resolve().parent.parent


@pytest.fixture(scope="session")
def client():
    from main import app

    with TestClient(app) as c:
        yield c


def load_spec():
    with open(ROOT / "docs" / "openapi.yaml", "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


def test_openapi_valid():
    spec = load_spec()
    assert "paths" in spec
    assert "/health" in spec["paths"]


def test_endpoints_from_spec(client):
    spec = load_spec()
    for path, operations in spec["paths"].items():
        for method, operation in operations.items():
            if method == "get":
                params = {p["name"]: p["example"] for p in operation.get("parameters", []) if "example" in p}
                response = client.get(path, params=params)
            elif method == "post":
                body = operation["requestBody"]["content"]["application/json"]["example"]
                response = client.post(path, json=body)
            else:
                continue
            assert response.status_code == 200, f"{method.upper()} {path}: {response.text}"


def test_health(client):
    data = client.get("/health").json()
    assert data["status"] == "ok"
    assert data["max_worlds"] >= 1


def test_eval(client):
    model = {"worlds": ["r", "a"], "root": "r", "order": [["r", "a"]], "valuation": {"a": ["p"]}}
    response = client.post("/eval", json={"model": model, "formula": "!p"})
    assert response.status_code == 200
    assert response.json() == {"formula": "!p", "worlds": {"a": True, "r": True}, "valid": True}


def test_eval_defective_model(client):
    response = client.post("/eval", json={"model": {"worlds": ["a", "b"]}, "formula": "p"})
    assert response.status_code == 422
    assert response.json()["detail"][0]["kind"] == "NoLeastRoot"


def test_eval_bad_formula(client):
    response = client.post("/eval", json={"model": {"worlds": ["r"]}, "formula": "p &"})
    assert response.status_code == 400


def test_valid(client):
    data = client.post("/valid", json={"formula": "p | !p", "max_worlds": 3, "max_height": 2}).json()
    assert data["valid"] is True
    assert data["models_checked"] == 9
    data = client.post("/valid", json={"formula": "!!p -> p"}).json()
    assert data["valid"] is False


@pytest.mark.parametrize("max_worlds", [0, 7])
def test_valid_rejects_world_limit_out_of_range(client, max_worlds):
    response = client.post("/valid", json={"formula": "p", "max_worlds": max_worlds})
    assert response.status_code == 422


def test_valid_rejects_negative_height(client):
    response = client.post("/valid", json={"formula": "p", "max_height": -1})
    assert response.status_code == 400


def test_verify_rejects_large_world_limit(client):
    response = client.post("/verify", json={"max_len": 1, "max_worlds": 8})
    assert response.status_code == 422


def test_countermodel(client):
    record = client.post("/countermodel", json={"formula": "!~~p -> !!~p"}).json()
    assert record["world"] == "r"
    assert len(record["model"]["worlds"]) == 3
    assert client.post("/countermodel", json={"formula": "p | !p"}).json() is None


def test_classify(client):
    data = client.get("/classify", params={"word": "!~~!~p"}).json()
    assert data == {
        "word": "!~~!~p",
        "normalized": "!~~!!p",
        "normalized_semantic": "!~~!!p",
        "signature": "+-----+++",
        "irreducible": True,
    }
    assert client.get("/classify", params={"word": "~x"}).status_code == 400


def test_census(client):
    data = client.get("/census", params={"max_len": 5}).json()
    assert data["count"] == 15
    assert data["classes"][0]["representative"] == "p"
    assert client.get("/census", params={"max_len": 13}).status_code == 422


def test_table(client):
    data = client.get("/table", params={"max_len": 1}).json()
    assert [row["word"] for row in data["rows"]] == ["p", "~p", "!p"]
    assert data["rows"][2]["m11"] == "-"


def test_errata(client):
    data = client.get("/errata").json()
    assert data["count"] == 7
    assert data["as_expected"] is True


def test_poset(client):
    data = client.get("/poset", params={"constants": True}).json()
    assert len(data["nodes"]) == 18 and len(data["covers"]) == 23
    dot = client.get("/poset", params={"format": "dot"})
    assert dot.headers["content-type"].startswith("text/plain")
    assert dot.text.startswith("digraph poset {")
    assert client.get("/poset", params={"format": "svg"}).status_code == 422


def test_verify_selected_suites(client):
    data = client.post("/verify", json={"max_len": 1, "suites": ["errata", "cardinality-bound"]}).json()
    assert data["ok"] is True
    assert [s["name"] for s in data["suites"]] == ["errata", "cardinality-bound"]


def test_dev_server_command_skips_output():
    from start_dev import build_command

    command = build_command(8001)
    assert command[:4] == ["uv", "run", "uvicorn", "main:app"]
    assert "output/*" in command
    assert command[-1] == "8001"
