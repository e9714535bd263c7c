"""Logging configuration for the fractal fidelity toolkit"""

import sys
from typing import Optional

from loguru import logger

from fractal_fidelity.utils.config import config


def setup_logger(name: Optional[str] = None):
    """Setup and configure logger"""

    # Remove default logger
    logger.remove()

    # Console handler; stderr so CSV written to stdout stays clean
    logger.add(
        sys.stderr,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | <level>{level: <8}</level> | <cyan>{name}</cyan>:<cyan>{function}</cyan>:<cyan>{line}</cyan> - <level>{message}</level>",
        level=config.log_level,
        colorize=True,
    )

    if config.environment == "production":
        logger.add(
            "logs/fractal_fidelity_{time}.log",
            rotation="500 MB",
            retention="7 days",
            level=config.log_level,
            format="{time:YYYY-MM-DD HH:mm:ss} | {level: <8} | {name}:{function}:{line} - {message}",
        )

    if name:
        return logger.bind(name=name)

    return logger


def set_level(level: str) -> None:
    """Re-point the console sink at a new level (CLI --log-level)"""
    config.log_level = level.upper()
    setup_logger()


default_logger = setup_logger()
