import logging
import math
import warnings

import pytest
from fastapi.testclient import TestClient

from app.controllers.http_errors import to_http_exception
from app.core.errors import OutOfRange
from app.main import app

SQRT2 = math.sqrt(2.0)
ELLIPSE = {"preset": "ellipse", "params": {"a": SQRT2, "b": 1 / SQRT2}}
DISK = {"preset": "disk"}

logger = logging.getLogger("app")


@pytest.fixture(scope="module")
def client():
    with TestClient(app) as test_client:
        yield test_client


def check_endpoint(client, method, endpoint, expected_status, json_data=None, description=""):
    """Llamar a un endpoint y verificar el código de estado"""
    logger.info(f"Testing {method} {endpoint} - {description}")
    response = client.request(method, endpoint, json=json_data)
    assert response.status_code == expected_status, f"Esperado {expected_status}, obtenido {response.status_code}: {response.text}"
    return response


def test_health(client):
    check_endpoint(client, "GET", "/health", 200, description="Health check")
    assert check_endpoint(client, "GET", "/", 200).json()["docs"] == "/docs"


def test_domain_info(client):
    info = check_endpoint(client, "POST", "/domains/info", 200, ELLIPSE, "Clasificar elipse").json()
    assert info["is_class_A"] is True
    assert info["kappa_max"] == pytest.approx(2 * SQRT2, rel=1e-9)


def test_domain_info_rejects_bad_spec(client):
    check_endpoint(client, "POST", "/domains/info", 422, {}, "Dominio sin preset ni coeficientes")


def test_domain_info_non_convex(client):
    response = check_endpoint(client, "POST", "/domains/info", 409, {"support_cos": [1.0, 0.0, 0.5]}, "No convexo")
    assert response.json()["detail"].startswith("NonConvex")


def test_domain_arcs(client):
    arcs = check_endpoint(client, "POST", "/domains/arcs?area=1.0", 200, DISK, "Arcos del disco").json()
    assert len(arcs) == 16


def test_domain_arcs_out_of_range(client):
    check_endpoint(client, "POST", "/domains/arcs?area=5.0", 422, ELLIPSE, "Área fuera de rango")


def test_symmetric_profile(client):
    table = check_endpoint(client, "POST", "/profiles/symmetric?n_samples=8", 200, DISK, "Perfil del disco").json()
    assert len(table["samples"]) == 8
    assert len(table["domain_id"]) == 16


def test_conjecture_rejects_disk(client):
    check_endpoint(client, "POST", "/profiles/conjecture?n_samples=16", 409, DISK, "Disco: caso de igualdad")


def test_conjecture_near_disk(client):
    spec = {"preset": "near_disk_ellipse", "params": {"epsilon": 0.1}}
    report = check_endpoint(client, "POST", "/profiles/conjecture?n_samples=32", 200, spec, "Elipse casi circular").json()
    assert report["passed"] is True


def test_oracle(client):
    body = {"domain": ELLIPSE, "area": math.pi / 2, "grid": 128}
    result = check_endpoint(client, "POST", "/profiles/oracle", 200, body, "Oráculo en media área").json()
    assert result["length"] == pytest.approx(SQRT2, abs=1e-8)


def test_mode_roots(client):
    roots = check_endpoint(client, "GET", "/perturbations/roots/4", 200, description="Raíces del modo 4").json()
    assert [r["b"] for r in roots] == pytest.approx([math.acos(1 / math.sqrt(6))], abs=1e-10)
    check_endpoint(client, "GET", "/perturbations/roots/1", 422, description="Modo demasiado bajo")


def test_first_variation(client):
    b = 0.9
    body = {"field": {"fourier_cos": [0.0, 1.0]}, "b": b, "nodes": 64}
    result = check_endpoint(client, "POST", "/perturbations/first-variation", 200, body, "l(u) del modo 2").json()
    assert len(result["l"]) == 64
    assert result["mean"] == pytest.approx(0.0, abs=1e-14)
    assert result["minimum"] == pytest.approx(-2 * math.sin(b) ** 2, rel=1e-5)


def test_experiment_rejects_zero_field(client):
    body = {"field": {"fourier_cos": [0.0]}, "area": 1.0}
    check_endpoint(client, "POST", "/perturbations/experiment", 422, body, "Campo nulo")


def test_config_errors_map_to_unprocessable_content():
    with warnings.catch_warnings():
        warnings.simplefilter("error", DeprecationWarning)
        exc = to_http_exception(OutOfRange("area must lie in (0, π)"), "al calcular el perfil")
    assert exc.status_code == 422
    assert exc.detail.startswith("OutOfRange")
