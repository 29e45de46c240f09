"""
cavity-swap CLI (`cavity-swap` command).

Commands:
  cavity-swap run       One swap: probabilities, fidelity, branch audit
  cavity-swap sweep     Parameter sweep to CSV/JSON, optional SVG plot
  cavity-swap verify    Oracle, closed-form and reference-number checks
  cavity-swap timing    Experimental timing budget

Exit codes: 0 success, 1 verification failed, 2 invalid input, 3 I/O failure.
"""

import click

from cavity_swap import __version__


@click.group()
@click.version_option(__version__)
def main():
    """Cavity-QED entanglement swapping simulator."""


# Register subcommands from separate modules
from cavity_swap.cli.run import run_cmd  # noqa: E402
from cavity_swap.cli.sweep import sweep_cmd  # noqa: E402
from cavity_swap.cli.timing import timing_cmd  # noqa: E402
from cavity_swap.cli.verify import verify_cmd  # noqa: E402

main.add_command(run_cmd)
main.add_command(sweep_cmd)
main.add_command(verify_cmd)
main.add_command(timing_cmd)


if __name__ == "__main__":
    main()
