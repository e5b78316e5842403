import logging
import os
import sys
from logging.handlers import RotatingFileHandler

LOGGER_NAMES = ("app", "services")


def setup_logging(log_dir: str = "logs", console_level: int | None = None):
    # Crear carpeta logs si no existe
    os.makedirs(log_dir, exist_ok=True)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    handlers = []
    for filename, level in (
        ("debug.log", logging.DEBUG),
        ("info.log", logging.INFO),
        ("error.log", logging.ERROR),
        ("all.log", logging.DEBUG),
    ):
        handler = RotatingFileHandler(
            os.path.join(log_dir, filename), maxBytes=10485760, backupCount=5
        )
        handler.setLevel(level)
        handler.setFormatter(formatter)
        handlers.append(handler)

    if console_level is not None:
        console = logging.StreamHandler(sys.stderr)
        console.setLevel(console_level)
        console.setFormatter(formatter)
        handlers.append(console)

    # "app" para las fachadas (CLI, API), "services" para la numérica
    for name in LOGGER_NAMES:
        logger = logging.getLogger(name)
        logger.setLevel(logging.DEBUG)
        for old in list(logger.handlers):
            logger.removeHandler(old)
            old.close()
        for handler in handlers:
            logger.addHandler(handler)
