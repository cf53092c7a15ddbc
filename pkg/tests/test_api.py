"""HTTP API tests over the in-process test client.

The service must mirror the CLI exactly (same payload builders, same
serializer), return 400 for malformed requests, and 422 with the binding
constraint for infeasible overrides.
"""

import json

import pytest
from fastapi.testclient import TestClient

from econarch.api import create_app


@pytest.fixture(scope="module")
def client(stations):
    return TestClient(create_app(stations))


class TestEvaluate:
    def test_baseline_reproduces_station_numbers(self, client):
        response = client.post("/api/evaluate", json={})
        assert response.status_code == 200
        body = response.json()
        by_name = {a["name"]: a for a in body["architectures"]}
        free = by_name["free-flyer"]
        shared = by_name["shared-core"]
        assert free["totals"]["revenue"] == 1500.0
        assert free["totals"]["cost"] == pytest.approx(1854.42, abs=0.01)
        assert free["totals"]["profit"] == pytest.approx(-354.42, abs=0.01)
        assert shared["per_firm"]["profit"] == pytest.approx(77.25, abs=0.01)
        assert shared["rounded"]["per_firm"]["profit"] == 77
        assert free["sustainable_firms"] == 1
        assert shared["sustainable_firms"] == 2

    def test_demand_override(self, client):
        response = client.post("/api/evaluate", json={"market_revenue": 1000})
        body = response.json()
        free = next(a for a in body["architectures"] if a["name"] == "free-flyer")
        assert free["per_firm"]["profit"] == pytest.approx(72.79, abs=0.01)
        assert free["sustainable_firms"] >= 2
        assert body["resolved"]["market_revenue"] == 1000.0

    def test_malformed_body_is_400(self, client):
        response = client.post(
            "/api/evaluate", content=b"{not json", headers={"content-type": "application/json"}
        )
        assert response.status_code == 400
        assert "JSON" in response.json()["error"]

    def test_unknown_override_key_is_400(self, client):
        response = client.post("/api/evaluate", json={"markt_revenue": 1000})
        assert response.status_code == 400
        assert "markt_revenue" in response.json()["error"]

    def test_infeasible_override_is_422_with_constraint(self, client):
        response = client.post("/api/evaluate", json={"budget": 400})
        assert response.status_code == 422
        body = response.json()
        assert body["binding_constraint"] == "budget"
        assert "shared infrastructure" in body["error"]

    def test_resolved_parameters_round_trip(self, client):
        """Re-feeding the emitted resolved set reproduces identical bytes."""
        first = client.post("/api/evaluate", json={"market_revenue": 800})
        resolved = first.json()["resolved"]
        second = client.post("/api/evaluate", json=resolved)
        assert second.status_code == 200
        assert second.content == first.content


class TestRegion:
    def test_baseline_region(self, client):
        response = client.post("/api/region", json={})
        assert response.status_code == 200
        body = response.json()
        points = {p["label"]: p for p in body["points"]}
        assert points["free-flyer"]["sustainable_firms"] == 1
        assert points["shared-core"]["sustainable_firms"] == 2
        grid = body["grid"]
        assert len(grid["max_firms"]) == len(grid["cost"])
        assert len(grid["max_firms"][0]) == len(grid["purchases"])
        assert len(body["boundaries"]) == body["diagram"]["max_firms"]

    def test_custom_window(self, client):
        response = client.post(
            "/api/region",
            json={"diagram": {"purchases_range": [0, 10], "cost_range": [0, 10],
                              "resolution": [3, 3]}},
        )
        body = response.json()
        assert body["grid"]["purchases"] == [0, 5, 10]

    def test_degenerate_ranges_are_400(self, client):
        response = client.post(
            "/api/region",
            json={"diagram": {"purchases_range": [10, 10], "cost_range": [0, 5]}},
        )
        assert response.status_code == 400

    def test_override_moves_points(self, client):
        response = client.post("/api/region", json={"overrides": {"market_revenue": 1000}})
        points = {p["label"]: p for p in response.json()["points"]}
        assert points["free-flyer"]["sustainable_firms"] >= 2


class TestThreshold:
    def test_free_flyer_demand_threshold(self, client):
        response = client.post(
            "/api/threshold",
            json={
                "architecture": "free-flyer",
                "parameter": "market_revenue",
                "target_firms": 2,
                "bracket": [0, 2000],
            },
        )
        assert response.status_code == 200
        assert response.json()["value"] == pytest.approx(854.5, abs=0.15)

    def test_unknown_architecture_is_404(self, client):
        response = client.post(
            "/api/threshold",
            json={
                "architecture": "mega-station",
                "parameter": "market_revenue",
                "target_firms": 2,
                "bracket": [0, 2000],
            },
        )
        assert response.status_code == 404

    def test_missing_key_is_400(self, client):
        response = client.post("/api/threshold", json={"architecture": "free-flyer"})
        assert response.status_code == 400


class TestSweep:
    def test_sweep_endpoint(self, client):
        response = client.post(
            "/api/sweep", json={"parameter": "market_revenue", "values": [500, 1000]}
        )
        assert response.status_code == 200
        scenarios = response.json()["scenarios"]
        assert [s["label"] for s in scenarios] == [
            "market_revenue=500",
            "market_revenue=1000",
        ]


class TestConfigEndpoint:
    def test_config_payload(self, client):
        response = client.get("/api/config")
        body = response.json()
        assert body["program"] == "stations-baseline"
        assert body["architectures"] == ["free-flyer", "shared-core"]
        assert body["resolved"]["rate"]["annual_rate"] == 0.05
        assert body["diagram"]["purchases_range"] == [0, 1250]

    def test_responses_are_stateless(self, client):
        """An override in one request must not leak into the next."""
        client.post("/api/evaluate", json={"market_revenue": 1})
        baseline = client.post("/api/evaluate", json={})
        assert baseline.json()["resolved"]["market_revenue"] == 500.0
