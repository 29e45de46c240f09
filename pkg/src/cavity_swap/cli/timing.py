"""CLI: cavity-swap timing"""

import json
from pathlib import Path
from typing import Optional

import click
from rich.table import Table

from cavity_swap.analysis import timing_budget
from cavity_swap.cli.common import config_options, console, handle_errors, load_config


@click.command("timing")
@click.option("--g", "g", type=float, default=None, help="coupling constant in rad/s (default 2π×25 kHz)")
@click.option("--radiative-time", "radiative_time_s", type=float, default=None, help="atomic lifetime T_r in s")
@click.option("--cavity-decay-time", "cavity_decay_time_s", type=float, default=None, help="cavity lifetime T_c in s")
@click.option("--n-interactions", type=int, default=None)
@click.option("--budget-factor", type=float, default=None, help="total time in units of one interaction")
@click.option("--gt", "gt", type=float, default=None)
@click.option("--json-output", "--json", is_flag=True)
@config_options
@handle_errors
def timing_cmd(config_path: Optional[Path], verbosity: int, json_output: bool, **flags):
    """Estimate the scheme's duration against atom and cavity lifetimes."""
    cfg = load_config(config_path, verbosity, **flags)
    budget = timing_budget(
        cfg.g,
        cfg.radiative_time_s,
        cfg.cavity_decay_time_s,
        cfg.n_interactions,
        gt=cfg.gt,
        budget_factor=cfg.budget_factor,
    )
    if json_output:
        click.echo(json.dumps(budget.model_dump(), indent=2))
        return

    table = Table(title="Timing budget")
    table.add_column("Quantity", style="bold")
    table.add_column("Value", justify="right")
    for key, value in budget.model_dump().items():
        table.add_row(key, str(value) if isinstance(value, (bool, int)) else f"{value:.6g}")
    console.print(table)
    verdict = "[green]feasible[/green]" if budget.feasible else "[red]not feasible[/red]"
    console.print(f"Total {budget.total_time_s:.3g} s vs min(T_r, T_c) = "
                  f"{min(budget.radiative_time_s, budget.cavity_decay_time_s):.3g} s: {verdict}")
