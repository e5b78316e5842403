import logging

from fastapi import HTTPException, status

from app.core.errors import ConfigError, DomainPreconditionError, IsoperimError

# Logger para controladores
logger = logging.getLogger("app")


def to_http_exception(exc: Exception, action: str) -> HTTPException:
    """Traducir las excepciones del dominio a respuestas HTTP"""
    if isinstance(exc, ConfigError):
        code = status.HTTP_422_UNPROCESSABLE_CONTENT
    elif isinstance(exc, DomainPreconditionError):
        code = status.HTTP_409_CONFLICT
    elif isinstance(exc, IsoperimError):
        code = status.HTTP_500_INTERNAL_SERVER_ERROR
    else:
        logger.error(f"Error inesperado {action}: {exc}")
        return HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail="Error interno del servidor")
    logger.error(f"Error {action}: {type(exc).__name__}: {exc}")
    return HTTPException(status_code=code, detail=f"{type(exc).__name__}: {exc}")
