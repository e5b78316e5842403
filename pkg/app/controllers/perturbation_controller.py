from fastapi import APIRouter, Depends, Path
from typing import List
import logging

import numpy as np

from app.core.config import Settings, get_settings
from app.schemas.perturbation_schemas import (
    ExperimentReportResponse,
    ExperimentRequest,
    FirstVariationRequest,
    FirstVariationResponse,
    ModeRootResponse,
)
from app.services.perturbation_service import PerturbationService
from app.controllers.http_errors import to_http_exception

# Logger para controladores
logger = logging.getLogger("app")

router = APIRouter(prefix="/perturbations", tags=["perturbations"])


@router.get("/roots/{n}", response_model=List[ModeRootResponse])
def mode_roots(n: int = Path(..., ge=2, le=1000, description="Modo de Fourier"), settings: Settings = Depends(get_settings)):
    """Raíces de la condición del modo n en (0, π/2)"""
    try:
        return PerturbationService(settings).find_mode_roots(n)
    except Exception as e:
        raise to_http_exception(e, f"buscando raíces del modo {n}")


@router.post("/first-variation", response_model=FirstVariationResponse)
def first_variation(request: FirstVariationRequest, settings: Settings = Depends(get_settings)):
    """Muestras de l(u) para un campo y un semiángulo dados"""
    try:
        service = PerturbationService(settings)
        field = request.field.to_field()
        u = 2.0 * np.pi * np.arange(request.nodes) / request.nodes
        values = service.first_variation_l(field, request.b, u)
        return FirstVariationResponse(
            b=request.b,
            u=u.tolist(),
            l=np.asarray(values).tolist(),
            mean=service.mean_l(field, request.b),
            minimum=service.min_l(field, request.b),
        )
    except Exception as e:
        raise to_http_exception(e, "evaluando la primera variación")


@router.post("/experiment", response_model=ExperimentReportResponse)
def experiment(request: ExperimentRequest, settings: Settings = Depends(get_settings)):
    """Ajuste del perfil de los dominios perturbados"""
    try:
        service = PerturbationService(settings)
        return service.profile_decrease_experiment(request.field.to_field(), request.area, request.s_grid)
    except Exception as e:
        raise to_http_exception(e, f"ejecutando el experimento en A = {request.area}")
