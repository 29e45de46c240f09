"""CLI: cavity-swap run"""

import json
from pathlib import Path
from typing import Optional

import click
from rich.table import Table

from cavity_swap.cli.common import config_options, console, fmt, handle_errors, load_config
from cavity_swap.models.enums import Encoding, Variant
from cavity_swap.protocol import evolve, exact_branch_decomposition, herald, run_swap


@click.command("run")
@click.option("--b", "b", type=float, default=None, help="pair coefficient b, 0 < b < 1 (default 0.6)")
@click.option("--k", "k", type=float, default=None, help="cavity-pair coefficient error k (default 0)")
@click.option("--gt", "gt", type=float, default=None, help="Clare's interaction phase g·t (default 7π/4)")
@click.option("--variant", type=click.Choice([v.value for v in Variant]), default=None)
@click.option("--encoding", type=click.Choice([e.value for e in Encoding]), default=None)
@click.option("--truncation", type=int, default=None, help="cavity Fock levels kept (>= 3)")
@click.option("--bob-readout/--no-bob-readout", default=None, help="send Bob's atom through cavity 4")
@click.option("--gt-bob", type=float, default=None, help="Bob's interaction phase (default π/2)")
@click.option("--json-output", "--json", is_flag=True)
@config_options
@handle_errors
def run_cmd(config_path: Optional[Path], verbosity: int, json_output: bool, **flags):
    """Run one swap and print its probabilities, fidelity and branches."""
    cfg = load_config(config_path, verbosity, **flags)
    params = cfg.to_params()
    result = run_swap(params)
    detector, keep = herald(params)
    branches = exact_branch_decomposition(evolve(params), detector, result.target_state, keep)

    if json_output:
        click.echo(json.dumps({**result.summary(), "branches": [b.model_dump() for b in branches]}, indent=2))
        return

    table = Table(title=f"Swap ({params.variant} measurement, {params.encoding} encoding)")
    table.add_column("Quantity", style="bold")
    table.add_column("Value", justify="right")
    summary = result.summary()
    for key in ("b", "k", "gt", "outcome_probability", "fidelity", "useful_probability", "target_weight",
                "relative_phase", "bob_fidelity"):
        if key in summary:
            table.add_row(key, fmt(summary[key]))
    console.print(table)

    branch_table = Table(title=f"Branches of outcome {keep!r}")
    branch_table.add_column("Branch", style="bold")
    branch_table.add_column("Weight", justify="right")
    branch_table.add_column("Overlap with target", justify="right")
    for branch in branches:
        branch_table.add_row(branch.label, fmt(branch.weight), fmt(branch.overlap))
    console.print(branch_table)
