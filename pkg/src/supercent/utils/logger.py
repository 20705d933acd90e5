"""Logging setup."""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from rich.logging import RichHandler

DEFAULT_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def setup_logger(
    name: str = "supercent",
    log_file: Path | None = None,
    level: str = "INFO",
    fmt: str = DEFAULT_FORMAT,
    max_size_mb: int = 50,
    backup_count: int = 5,
) -> logging.Logger:
    """Set up logger with a rich console handler and optional rotating file handler.

    Repeated calls replace the handlers installed by a previous call instead of
    stacking duplicates.

    Args:
        name: Logger name
        log_file: Optional log file path
        level: Console level name
        fmt: File handler format string
        max_size_mb: Rotate the file after this many megabytes
        backup_count: Rotated files to keep
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)
    for handler in list(logger.handlers):
        if getattr(handler, "_supercent", False):
            logger.removeHandler(handler)
            handler.close()

    # Console handler
    console_handler = RichHandler(show_path=False, rich_tracebacks=False)
    console_handler.setLevel(level.upper())
    console_handler._supercent = True  # type: ignore[attr-defined]
    logger.addHandler(console_handler)

    # File handler (optional)
    if log_file:
        log_file = Path(log_file).expanduser()
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_file, maxBytes=max_size_mb * 1024 * 1024, backupCount=backup_count
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(fmt))
        file_handler._supercent = True  # type: ignore[attr-defined]
        logger.addHandler(file_handler)

    return logger
