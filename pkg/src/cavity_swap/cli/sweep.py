"""CLI: cavity-swap sweep"""

from pathlib import Path
from typing import Optional

import click

from cavity_swap.analysis import SweepRange, sweep
from cavity_swap.cli.common import config_options, err_console, handle_errors, load_config
from cavity_swap.export import render, write_plot, write_records
from cavity_swap.models.config import PRESETS
from cavity_swap.models.enums import Encoding, OutputFormat, Variant


@click.command("sweep")
@click.option("--preset", type=click.Choice(sorted(PRESETS)), default=None, help="named grid, e.g. figure1")
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=None)
@click.option("--encoding", type=click.Choice([e.value for e in Encoding]), default=None)
@click.option("--truncation", type=int, default=None)
@click.option("--b-start", type=float, default=None)
@click.option("--b-stop", type=float, default=None)
@click.option("--b-step", type=float, default=None)
@click.option("--k", "k_values", type=float, multiple=True, help="k value (repeatable)")
@click.option("--gt", "gt_values", type=float, multiple=True, help="g·t value (repeatable)")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="output file (stdout if omitted)")
@click.option("--format", "format", type=click.Choice([f.value for f in OutputFormat]), default=None)
@click.option("--plot", type=click.Path(dir_okay=False, path_type=Path), default=None, help="SVG plot path")
@config_options
@handle_errors
def sweep_cmd(config_path: Optional[Path], verbosity: int, k_values: tuple[float, ...],
              gt_values: tuple[float, ...], **flags):
    """Sweep b (× k × gt), comparing simulation with the closed forms."""
    cfg = load_config(config_path, verbosity, k_values=list(k_values) or None,
                      gt_values=list(gt_values) or None, **flags)
    records = sweep(
        cfg.variant,
        SweepRange(start=cfg.b_start, stop=cfg.b_stop, step=cfg.b_step),
        cfg.k_values,
        cfg.gt_values,
        encoding=cfg.encoding,
        truncation=cfg.truncation,
    )
    if cfg.out is None:
        click.echo(render(records, cfg.format), nl=False)
    else:
        write_records(records, cfg.out, cfg.format)
        err_console.print(f"[green]Wrote {len(records)} rows to {cfg.out}[/green]")
    if cfg.plot is not None:
        write_plot(records, cfg.plot)
        err_console.print(f"[green]Plot written to {cfg.plot}[/green]")
