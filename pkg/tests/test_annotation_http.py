import pytest
from fastapi.testclient import TestClient

from geceval.annotation.http import create_app
from geceval.annotation.service import AnnotationService, build_pool


@pytest.fixture
def client(small_pool_inputs):
    sentences, outputs = small_pool_inputs
    service = AnnotationService(build_pool(sentences, outputs))
    return TestClient(create_app(service))


def open_session(client, annotator="ann-1", seed=0):
    response = client.post("/sessions", json={"annotator_id": annotator, "seed": seed})
    assert response.status_code == 200
    return response.json()["session_id"]


def test_full_item_over_http(client):
    session = open_session(client)
    step1 = client.get(f"/sessions/{session}/next").json()
    assert step1["step"] == "post_edit"
    assert "reference" not in step1 and "source" not in step1
    item_id = step1["item_id"]

    step2 = client.post(f"/items/{item_id}/postedit",
                        json={"session_id": session, "text": "redigerad"}).json()
    assert step2["step"] == "meaning_check"
    assert "reference" in step2

    back = client.post(f"/items/{item_id}/meaning",
                       json={"session_id": session, "matches": False}).json()
    assert back["step"] == "post_edit"
    assert back["revisions"] == 1

    client.post(f"/items/{item_id}/postedit",
                json={"session_id": session, "text": "bättre text"})
    step3 = client.post(f"/items/{item_id}/meaning",
                        json={"session_id": session, "matches": True}).json()
    assert step3["step"] == "scoring"
    assert {"source", "output", "reference"} <= set(step3)

    done = client.post(
        f"/items/{item_id}/scores",
        json={"session_id": session, "grammaticality": 4, "fluency": 3,
              "meaning": "other"},
    ).json()
    assert done["step"] == "done"


def test_state_violation_maps_to_409(client):
    session = open_session(client)
    step1 = client.get(f"/sessions/{session}/next").json()
    response = client.post(
        f"/items/{step1['item_id']}/scores",
        json={"session_id": session, "grammaticality": 4, "fluency": 4,
              "meaning": 4},
    )
    assert response.status_code == 409
    assert "error" in response.json()


def test_validation_maps_to_422(client):
    session = open_session(client)
    step1 = client.get(f"/sessions/{session}/next").json()
    response = client.post(f"/items/{step1['item_id']}/postedit",
                           json={"session_id": session, "text": "   "})
    assert response.status_code == 422


def test_unknown_session_maps_to_400(client):
    response = client.get("/sessions/does-not-exist/next")
    assert response.status_code == 400


def test_export_endpoint(client):
    session = open_session(client)
    step1 = client.get(f"/sessions/{session}/next").json()
    item_id = step1["item_id"]
    client.post(f"/items/{item_id}/postedit",
                json={"session_id": session, "text": "klar"})
    client.post(f"/items/{item_id}/meaning",
                json={"session_id": session, "matches": True})
    client.post(f"/items/{item_id}/scores",
                json={"session_id": session, "grammaticality": 4, "fluency": 4,
                      "meaning": 4})
    response = client.get("/export", params={"annotator": "ann-1"})
    assert response.status_code == 200
    lines = response.text.splitlines()
    assert lines[0].startswith("#")
    assert len(lines) == 2


def test_agreement_endpoint(client):
    gramm = {"s1:sys-a": 1, "s1:sys-b": 2, "s2:sys-a": 3, "s2:sys-b": 4}
    for annotator in ("ann-a", "ann-b"):
        session = open_session(client, annotator, seed=4)
        for _ in range(4):
            step1 = client.get(f"/sessions/{session}/next").json()
            item_id = step1["item_id"]
            client.post(f"/items/{item_id}/postedit",
                        json={"session_id": session, "text": step1["output"]})
            client.post(f"/items/{item_id}/meaning",
                        json={"session_id": session, "matches": True})
            client.post(f"/items/{item_id}/scores",
                        json={"session_id": session, "grammaticality": gramm[item_id],
                              "fluency": 2, "meaning": 3})
    response = client.get("/agreement", params={"a": "ann-a", "b": "ann-b"})
    assert response.status_code == 200
    payload = response.json()
    assert payload["all"]["grammaticality"] == pytest.approx(1.0)


def test_static_ui_mounting(tmp_path, small_pool_inputs):
    (tmp_path / "index.html").write_text("<html><body>ui</body></html>",
                                         encoding="utf-8")
    (tmp_path / "main.js").write_text("export {};", encoding="utf-8")
    sentences, outputs = small_pool_inputs
    service = AnnotationService(build_pool(sentences, outputs))
    ui_client = TestClient(create_app(service, ui_dir=tmp_path))

    root = ui_client.get("/", follow_redirects=False)
    assert root.status_code == 307
    assert root.headers["location"] == "/ui/"
    index = ui_client.get("/ui/")
    assert index.status_code == 200 and "ui" in index.text
    assert ui_client.get("/ui/main.js").status_code == 200
    assert ui_client.get("/ui/missing.js").status_code == 404
    assert ui_client.get("/ui/%2e%2e/etc/passwd").status_code == 404


def test_completion_signal(client):
    session = open_session(client)
    for _ in range(4):
        step1 = client.get(f"/sessions/{session}/next").json()
        item_id = step1["item_id"]
        client.post(f"/items/{item_id}/postedit",
                    json={"session_id": session, "text": step1["output"]})
        client.post(f"/items/{item_id}/meaning",
                    json={"session_id": session, "matches": True})
        client.post(f"/items/{item_id}/scores",
                    json={"session_id": session, "grammaticality": 1, "fluency": 1,
                          "meaning": 1})
    final = client.get(f"/sessions/{session}/next").json()
    assert final["step"] == "complete"
