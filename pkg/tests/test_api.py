import json
import xml.etree.ElementTree as ET

import pytest
from fastapi.testclient import TestClient

from src.api.main import app
from src.app.Viz.svg import SVG_NS
from src.config.settings import settings

AUTH = {"Authorization": f"Bearer {settings.API_KEY}"}


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def rpart_document(rpart_fixture_path):
    with open(rpart_fixture_path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def upload(path):
    with open(path, "rb") as handle:
        return {"file": ("data.csv", handle.read(), "text/csv")}


def test_health(client):
    response = client.get("/health/")
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "healthy"
    assert body["version"] == settings.API_VERSION

    detailed = client.get("/health/detailed").json()
    assert detailed["success"] is True
    assert detailed["data"]["default_svg_size"] == [settings.SVG_WIDTH, settings.SVG_HEIGHT]


def test_print_tree(client, rpart_document, rpart_expected_text):
    response = client.post("/api/print", json={"tree": rpart_document}, headers=AUTH)
    assert response.status_code == 200
    assert response.json()["data"]["text"] == rpart_expected_text


def test_print_rejects_invalid_document(client, rpart_document):
    rpart_document["nodes"][1]["n"] = 1
    response = client.post("/api/print", json={"tree": rpart_document}, headers=AUTH)
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "N_BOOKKEEPING"


def test_api_key_is_required(client, rpart_document):
    assert client.post("/api/print", json={"tree": rpart_document}).status_code == 401
    wrong = {"Authorization": "Bearer not-the-key"}
    assert client.post("/api/print", json={"tree": rpart_document}, headers=wrong).status_code == 401


def test_fit(client, step_csv):
    response = client.post(
        "/api/fit", files=upload(step_csv), data={"formula": "y ~ x1 + x2", "maxdepth": "1"}, headers=AUTH
    )
    assert response.status_code == 200
    data = response.json()["data"]
    assert data["terminal_nodes"] == 2
    assert data["tree"]["nodes"][0]["split"]["covariate"] == "x1"
    assert len(data["trace"]) == 3


def test_fit_names_the_bad_control(client, step_csv):
    response = client.post(
        "/api/fit", files=upload(step_csv), data={"formula": "y ~ x1", "minbucket": "0"}, headers=AUTH
    )
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["error"] == "INVALID_CONTROLS"
    assert detail["field"] == "minbucket"


def test_render_tree_document(client, rpart_document, intake_csv):
    response = client.post(
        "/api/render",
        files=upload(intake_csv),
        data={"tree": json.dumps(rpart_document), "color_type": "2", "width": "600", "height": "450"},
        headers=AUTH,
    )
    assert response.status_code == 200
    assert response.headers["content-type"].startswith("image/svg+xml")
    root = ET.fromstring(response.content)
    assert root.get("width") == "600"
    assert [g.get("id") for g in root.findall(f"{{{SVG_NS}}}g")] == ["node-3", "node-4", "node-5"]


def test_render_fits_on_the_spot(client, step_csv):
    response = client.post("/api/render", files=upload(step_csv), data={"formula": "y ~ x1 + x2"}, headers=AUTH)
    assert response.status_code == 200
    assert b"node-" in response.content


def test_render_rejects_bad_input(client, intake_csv):
    response = client.post("/api/render", files=upload(intake_csv), data={"tree": "{oops"}, headers=AUTH)
    assert response.status_code == 400
    response = client.post("/api/render", files=upload(intake_csv), headers=AUTH)
    assert response.status_code == 400
    response = client.post(
        "/api/render", files=upload(intake_csv), data={"formula": "kcal24h0 ~ liking", "color_type": "7"},
        headers=AUTH,
    )
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "INVALID_COLOR_TYPE"


def test_detailed_health_lists_defaults(client):
    data = client.get("/health/detailed").json()["data"]
    assert data["default_controls"]["alpha"] == 0.05
    assert data["default_controls"]["minbucket"] == 7
    assert data["default_render_options"]["color_type"] == 1
    assert data["palettes"]["5"] == "diverging"


def test_root_lists_tree_endpoints(client):
    assert "POST /api/render" in client.get("/").json()["endpoints"]
