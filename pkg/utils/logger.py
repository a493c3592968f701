"""Logging setup for the experiment CLI."""

import logging
import sys


def setup_logger(log_level: str = "INFO", name: str = "anytime_ppm") -> logging.Logger:
    """
    Configure stderr logging and return the named logger.

    stdout is reserved for result tables, so records always go to stderr.
    Python warnings raised inside numerical libraries (quadrature accuracy,
    regression diagnostics) are routed through logging as well, under
    ``py.warnings``.

    Args:
        log_level: DEBUG, INFO, WARNING, ERROR or CRITICAL (any case)
        name: Logger name

    Returns:
        logging.Logger: Configured logger instance
    """
    numeric_level = getattr(logging, log_level.upper(), logging.INFO)

    logging.basicConfig(
        level=numeric_level,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S',
        stream=sys.stderr,
        force=True,  # Override any existing configuration
    )
    logging.captureWarnings(True)

    logger = logging.getLogger(name)
    logger.setLevel(numeric_level)

    return logger
