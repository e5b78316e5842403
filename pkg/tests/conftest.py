import math
import os
import tempfile

import pytest

# los logs de la API van a un directorio temporal durante las pruebas
os.environ.setdefault("ISOPERIM_LOG_DIR", tempfile.mkdtemp(prefix="isoperim-logs-"))

from app.core.config import Settings
from app.models.curve_model import SupportCurve
from app.services.arc_service import ArcService
from app.services.disk_service import DiskService
from app.services.geometry_service import GeometryService
from app.services.perturbation_service import PerturbationService
from app.services.profile_service import ProfileService

SQRT2 = math.sqrt(2.0)


@pytest.fixture(scope="session")
def settings():
    return Settings()


@pytest.fixture(scope="session")
def geometry(settings):
    return GeometryService(settings)


@pytest.fixture(scope="session")
def arcs(settings, geometry):
    return ArcService(settings, geometry)


@pytest.fixture(scope="session")
def disk(settings):
    return DiskService(settings)


@pytest.fixture(scope="session")
def profile(settings, geometry, arcs, disk):
    return ProfileService(settings, geometry, arcs, disk)


@pytest.fixture(scope="session")
def perturbation(settings, profile, disk):
    return PerturbationService(settings, profile, disk)


@pytest.fixture(scope="session")
def unit_disk():
    return SupportCurve.disk()


@pytest.fixture(scope="session")
def ellipse():
    """Elipse de semiejes √2 y 1/√2 (área π)"""
    return SupportCurve.ellipse(SQRT2, 1.0 / SQRT2)


@pytest.fixture(scope="session")
def quartic(geometry):
    """Dominio de clase 𝒜 no elíptico, h = 1 + 0.1 cos 2θ + 0.002 cos 4θ normalizado a área π"""
    return geometry.normalize_area(SupportCurve.quartic(1.0, 0.1, 0.002))


@pytest.fixture(scope="session")
def near_disk(geometry):
    def build(epsilon: float) -> SupportCurve:
        return geometry.normalize_area(SupportCurve.ellipse(1.0 + epsilon, 1.0))

    return build


@pytest.fixture(scope="session")
def six_vertex(geometry):
    """Convexo con seis vértices: fuera de la clase 𝒜"""
    return geometry.normalize_area(SupportCurve((1.0, 0.0, 0.0, 0.01), (0.0, 0.0, 0.0)))
