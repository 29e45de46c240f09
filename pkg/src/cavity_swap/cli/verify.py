"""CLI: cavity-swap verify"""

from pathlib import Path
from typing import Optional

import click
from rich.table import Table

from cavity_swap.cli.common import EXIT_VERIFY_FAILED, config_options, console, err_console, handle_errors, load_config
from cavity_swap.verify import run_verification


@click.command("verify")
@click.option("--tolerance", type=float, default=None, help="replace every check's tolerance")
@click.option("--seed", type=int, default=None, help="seed for the random oracle states")
@click.option("--json-output", "--json", is_flag=True)
@config_options
@handle_errors
def verify_cmd(config_path: Optional[Path], verbosity: int, json_output: bool, **flags):
    """Check the propagator, the closed forms and the reference numbers."""
    cfg = load_config(config_path, verbosity, **flags)
    with err_console.status("Verifying..."):
        report = run_verification(cfg.tolerance, seed=cfg.seed)

    if json_output:
        click.echo(report.model_dump_json(indent=2))
    else:
        table = Table(title="Verification")
        table.add_column("Check", style="bold")
        table.add_column("Value", justify="right")
        table.add_column("Expected", justify="right")
        table.add_column("Deviation", justify="right")
        table.add_column("Tolerance", justify="right")
        table.add_column("")
        for c in report.checks:
            status = "[green]ok[/green]" if c.passed else "[red]FAIL[/red]"
            table.add_row(c.name, f"{c.value:.6g}", f"{c.expected:.6g}", f"{c.deviation:.3g}",
                          f"{c.tolerance:.3g}", status)
        console.print(table)

    if not report.passed:
        failed = sum(not c.passed for c in report.checks)
        console.print(f"[red]{failed} check(s) failed[/red]")
        raise SystemExit(EXIT_VERIFY_FAILED)
