"""Tests for the Flask REST API."""

from typing import Any, Iterator

import pytest
from flask.testing import FlaskClient

from main import MAX_OBSERVATIONS, MAX_SERIES_TERMS, app
from model.schemas import VolatilityCurve
from model.simulation import simulate_observations

REFERENCE_SPEC = "quartic:0.02,0.2,0.5"


@pytest.fixture
def client() -> Iterator[FlaskClient]:
    app.config["TESTING"] = True
    with app.test_client() as test_client:
        yield test_client


@pytest.fixture
def payload() -> dict[str, Any]:
    obs = simulate_observations(VolatilityCurve.shifted_quartic(0.02, 0.2, 0.5), 600, 0.01, 2)
    return {"values": obs.values.tolist(), "delta": 0.01, "blocks": 10}


def test_health(client: FlaskClient) -> None:
    response = client.get("/health")
    assert response.status_code == 200
    assert response.get_json() == {"status": "healthy", "service": "spectral-volatility"}


def test_unknown_route_keeps_its_status(client: FlaskClient) -> None:
    response = client.get("/api/nothing")
    assert response.status_code == 404
    assert "error" in response.get_json()


def test_curve_endpoint(client: FlaskClient) -> None:
    response = client.get("/api/curve", query_string={"spec": "quartic: 0.02, 0.2,0.5"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["spec"] == REFERENCE_SPEC
    assert data["kind"] == "shifted-quartic"
    assert data["integrated_variance"] == pytest.approx(5.17361e-4, rel=1e-5)
    assert data["sigma_max"] > 0.0

    at_zero = client.get("/api/curve", query_string={"spec": REFERENCE_SPEC, "t": "0"}).get_json()
    assert at_zero["t"] == 0.0
    assert at_zero["sigma2"] == pytest.approx(1.05625e-3, rel=1e-12)
    assert "t" not in data


def test_curve_endpoint_errors(client: FlaskClient) -> None:
    assert client.get("/api/curve").status_code == 400
    response = client.get("/api/curve", query_string={"spec": "wave:1"})
    assert response.status_code == 400
    assert "unknown curve kind" in response.get_json()["error"]
    assert client.get("/api/curve", query_string={"spec": "const:-1"}).status_code == 400
    assert client.get("/api/curve", query_string={"spec": "const:1", "t": "2"}).status_code == 400


def test_fisher_endpoint(client: FlaskClient) -> None:
    response = client.get("/api/fisher", query_string={"theta": "1", "h0": "10", "J": "100"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["J"] == 100
    assert 0.0 < data["relative_gap"] < 1e-3

    assert client.get("/api/fisher", query_string={"theta": "1"}).status_code == 400
    assert client.get("/api/fisher", query_string={"theta": "x", "h0": "1"}).status_code == 400
    assert client.get("/api/fisher", query_string={"theta": "0", "h0": "1"}).status_code == 400


def test_series_endpoint(client: FlaskClient) -> None:
    response = client.get("/api/series", query_string={"lambda": "1"})
    assert response.status_code == 200
    data = response.get_json()
    assert data["J"] == 10_000
    assert data["abs_diff"] < 1e-10


def test_estimate_with_curve(client: FlaskClient, payload: dict[str, Any]) -> None:
    response = client.post(
        "/api/estimate/iv", json={**payload, "curve": REFERENCE_SPEC, "weights": "oracle"}
    )
    assert response.status_code == 200
    data = response.get_json()
    assert data["true_value"] == pytest.approx(5.17361e-4, rel=1e-5)
    assert data["config"]["weight_mode"] == "oracle"
    assert isinstance(data["iv_hat"], float)


def test_estimate_with_explicit_cutoff(client: FlaskClient, payload: dict[str, Any]) -> None:
    response = client.post("/api/estimate/iv", json={**payload, "J": 6})
    assert response.status_code == 200
    assert response.get_json()["config"]["J"] == 6


def test_estimate_validation(client: FlaskClient, payload: dict[str, Any]) -> None:
    url = "/api/estimate/iv"
    missing_body = client.post(url, data="not json", content_type="text/plain")
    assert missing_body.status_code == 400
    assert missing_body.get_json()["error"] == "Missing request body"

    missing = client.post(url, json={"values": [1.0]})
    assert missing.status_code == 400
    assert "delta, blocks" in missing.get_json()["error"]

    assert client.post(url, json={**payload, "values": "1,2"}).status_code == 400
    assert client.post(url, json={**payload, "values": ["a"] * 600, "J": 6}).status_code == 400
    assert client.post(url, json=payload).status_code == 400
    assert client.post(url, json={**payload, "blocks": 7, "J": 6}).status_code == 400
    assert client.post(url, json={**payload, "J": 6, "weights": "best"}).status_code == 400


def test_estimate_rejects_non_numeric_options(
    client: FlaskClient, payload: dict[str, Any]
) -> None:
    url = "/api/estimate/iv"
    for bad in ({"J": "six"}, {"J": [6]}, {"J": 6, "spot_bandwidth": "wide"}):
        response = client.post(url, json={**payload, **bad})
        assert response.status_code == 400
        assert "integers" in response.get_json()["error"]
    assert client.post(url, json={**payload, "curve": 42}).status_code == 400


def test_table_curves_are_refused(client: FlaskClient, payload: dict[str, Any]) -> None:
    for response in (
        client.get("/api/curve", query_string={"spec": "table:/etc/passwd"}),
        client.post("/api/estimate/iv", json={**payload, "J": 6, "curve": "table:/etc/passwd"}),
    ):
        assert response.status_code == 400
        message = response.get_json()["error"]
        assert message.startswith("table curves are not accepted here")
        assert "passwd" not in message


def test_request_size_limits(client: FlaskClient, payload: dict[str, Any]) -> None:
    url = "/api/estimate/iv"
    too_many = {**payload, "values": [0.0] * (MAX_OBSERVATIONS + 1), "J": 1}
    response = client.post(url, json=too_many)
    assert response.status_code == 400
    assert "observations per request" in response.get_json()["error"]

    wide = {**payload, "values": [0.0] * 60_000, "blocks": 1, "J": 1_000}
    response = client.post(url, json=wide)
    assert response.status_code == 400
    assert "J·n" in response.get_json()["error"]

    over = str(MAX_SERIES_TERMS + 1)
    assert client.get("/api/series", query_string={"lambda": "1", "J": over}).status_code == 400
    fisher = {"theta": "1", "h0": "10", "J": over}
    assert client.get("/api/fisher", query_string=fisher).status_code == 400
