"""
Diagnostic console for status messages.
Everything here goes to stderr so command results on stdout stay clean.
"""

import os
from typing import Optional

from rich.console import Console

_console: Optional[Console] = None


def get_console() -> Console:
    """Get the shared stderr console."""
    global _console
    if _console is None:
        _console = Console(stderr=True, highlight=False)
    return _console


def _verbose() -> bool:
    # Read directly so the console works before configuration is loaded
    return os.getenv("TORCLASS_VERBOSE", "true").lower() in ("true", "1", "yes")


def status(message: str) -> None:
    """Print a progress message when verbose output is enabled."""
    if _verbose():
        get_console().print(message)


def warn(message: str) -> None:
    """Print a warning regardless of the verbose setting."""
    get_console().print(f"⚠️  {message}", style="yellow")


def error(message: str) -> None:
    """Print an error regardless of the verbose setting."""
    get_console().print(f"❌ {message}", style="bold red")
