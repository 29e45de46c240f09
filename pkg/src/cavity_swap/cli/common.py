"""Shared CLI plumbing: config loading, logging, error → exit-code mapping."""

import functools
import logging
from pathlib import Path
from typing import Any, Callable, Optional

import click
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from cavity_swap.errors import CavitySwapError
from cavity_swap.models.config import RunConfig, resolve_config

console = Console()
err_console = Console(stderr=True)

EXIT_VERIFY_FAILED = 1
EXIT_INVALID = 2
EXIT_IO = 3


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def load_config(config_path: Optional[Path], verbosity: int = 0, **overrides: Any) -> RunConfig:
    cfg = resolve_config(config_path, verbosity=verbosity or None, **overrides)
    setup_logging(cfg.verbosity)
    return cfg


def handle_errors(fn: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except CavitySwapError as e:
            err_console.print(f"[red]{escape(str(e))}[/red]")
            raise SystemExit(EXIT_INVALID) from e
        except OSError as e:
            err_console.print(f"[red]I/O error: {escape(str(e))}[/red]")
            raise SystemExit(EXIT_IO) from e
    return wrapper


def config_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    fn = click.option("-v", "--verbose", "verbosity", count=True, help="-v info, -vv debug")(fn)
    fn = click.option("--config", "config_path", default=None,
                      type=click.Path(exists=True, dir_okay=False, path_type=Path),
                      help="key = value (or .json) config file; flags override it")(fn)
    return fn


def fmt(value: float) -> str:
    return f"{value:.6g}"
