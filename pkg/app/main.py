from fastapi import FastAPI
import logging

from app.core.config import get_settings
from app.core.logging_config import setup_logging
from app.controllers import domain_controller, perturbation_controller, profile_controller

# Configurar logging
setup_logging(get_settings().log_dir)
logger = logging.getLogger("app")

# Crear aplicación FastAPI
app = FastAPI(
    title="Isoperim API",
    description="Perfiles isoperimétricos de dominios convexos planos",
    version="1.0.0"
)


@app.on_event("startup")
async def startup_event():
    """Evento al iniciar la aplicación"""
    settings = get_settings()
    logger.info(f"🚀 Isoperim API iniciada (malla {settings.quadrature_nodes}, hilos {settings.threads})")


@app.on_event("shutdown")
async def shutdown_event():
    """Evento al cerrar la aplicación"""
    logger.info("🛑 Isoperim API detenida")

# Incluir routers
app.include_router(domain_controller.router)
app.include_router(profile_controller.router)
app.include_router(perturbation_controller.router)


@app.get("/")
async def root():
    """Endpoint raíz"""
    return {
        "message": "Bienvenido a Isoperim API",
        "docs": "/docs",
        "redoc": "/redoc"
    }


@app.get("/health")
async def health_check():
    """Endpoint de salud"""
    return {"status": "healthy"}
