from fastapi import APIRouter, Depends, Query
import logging

from app.core.config import Settings, get_settings
from app.schemas.domain_schemas import DomainSpec
from app.schemas.profile_schemas import ConjectureReportResponse, OracleRequest, OracleResponse, ProfileTableResponse
from app.services.geometry_service import GeometryService
from app.services.profile_service import ProfileService
from app.controllers.http_errors import to_http_exception

# Logger para controladores
logger = logging.getLogger("app")

router = APIRouter(prefix="/profiles", tags=["profiles"])


@router.post("/symmetric", response_model=ProfileTableResponse)
def symmetric_profile(
    spec: DomainSpec,
    n_samples: int = Query(256, ge=2, le=8192, description="Número de muestras en θ"),
    settings: Settings = Depends(get_settings),
):
    """Perfil de la familia simétrica de un dominio de clase 𝒜"""
    try:
        service = ProfileService(settings)
        return service.symmetric_profile(service.geometry.resolve(spec), n_samples)
    except Exception as e:
        raise to_http_exception(e, "calculando perfil simétrico")


@router.post("/conjecture", response_model=ConjectureReportResponse)
def conjecture(
    spec: DomainSpec,
    n_samples: int = Query(256, ge=16, le=8192, description="Número de muestras en θ"),
    settings: Settings = Depends(get_settings),
):
    """Comparar L/L* con el disco unidad"""
    try:
        service = ProfileService(settings)
        return service.conjecture_check(service.geometry.resolve(spec), n_samples)
    except Exception as e:
        raise to_http_exception(e, "comprobando la conjetura")


@router.post("/oracle", response_model=OracleResponse)
def oracle(request: OracleRequest, settings: Settings = Depends(get_settings)):
    """Perfil isoperimétrico por enumeración de arcos perfectos"""
    try:
        geometry = GeometryService(settings)
        service = ProfileService(settings, geometry)
        length = service.general_profile_oracle(geometry.resolve(request.domain), request.area, request.grid)
        return OracleResponse(area=request.area, length=length)
    except Exception as e:
        raise to_http_exception(e, f"evaluando el oráculo en A = {request.area}")
