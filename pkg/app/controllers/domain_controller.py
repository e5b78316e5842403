from fastapi import APIRouter, Depends
import logging

from app.core.config import Settings, get_settings
from app.schemas.domain_schemas import DomainInfoResponse, DomainSpec
from app.schemas.profile_schemas import PerfectArcResponse
from app.services.arc_service import ArcService
from app.services.geometry_service import GeometryService
from app.controllers.http_errors import to_http_exception

# Logger para controladores
logger = logging.getLogger("app")

router = APIRouter(prefix="/domains", tags=["domains"])


@router.post("/info", response_model=DomainInfoResponse)
def domain_info(spec: DomainSpec, settings: Settings = Depends(get_settings)):
    """Clasificar un dominio: área, perímetro, curvaturas, vértices y clase 𝒜"""
    try:
        geometry = GeometryService(settings)
        return geometry.classify(geometry.resolve(spec))
    except Exception as e:
        raise to_http_exception(e, "clasificando dominio")


@router.post("/arcs", response_model=list[PerfectArcResponse])
def domain_arcs(spec: DomainSpec, area: float, grid: int | None = None, settings: Settings = Depends(get_settings)):
    """Todos los arcos perfectos contenidos que encierran el área dada"""
    try:
        geometry = GeometryService(settings)
        return ArcService(settings, geometry).arcs_at_area(geometry.resolve(spec), area, grid)
    except Exception as e:
        raise to_http_exception(e, f"buscando arcos de área {area}")
