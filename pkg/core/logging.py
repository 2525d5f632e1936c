import logging
import os

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = "mdst"

# Diagnostics go to stderr so result lines on stdout stay machine readable.
console = Console(stderr=True)


def setup_logging(verbose: bool) -> None:
    """Attach a Rich handler to the project logger; MDST_LOG_LEVEL overrides the default level"""
    default = "DEBUG" if verbose else "INFO"
    level = logging.getLevelName(os.getenv("MDST_LOG_LEVEL", default).upper())
    if not isinstance(level, int):
        level = logging.DEBUG if verbose else logging.INFO

    handler = RichHandler(
        console=console,
        show_time=True,
        show_path=False,
        markup=False,
        rich_tracebacks=True,
    )
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))

    root = logging.getLogger(ROOT_LOGGER)
    for old in list(root.handlers):
        root.removeHandler(old)
    root.addHandler(handler)
    root.setLevel(level)
    root.propagate = False


def get_logger(name: str) -> logging.Logger:
    """Get a logger instance under the project namespace"""
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
