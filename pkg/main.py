"""
MDST Stabilization Lab - Main Entry Point

A command-line interface for computing minimum diameter spanning trees and for
simulating the self-stabilizing protocol stack that builds them.
"""

import sys

import click
from rich import box
from rich.table import Table

from core.config import ScenarioPresets
from core.logging import console
from core.types import CheckArgs, GenArgs, SimulateArgs, SolveArgs
from graph.generators import FAMILIES
from netsim.scheduler import SCHEDULERS


def print_main_banner():
    """Display main application banner"""
    console.print("\n[bold cyan]MDST Stabilization Lab[/bold cyan]")
    console.print("[dim]Absolute centers, shortest path trees and self-stabilizing protocols[/dim]\n")


@click.group(invoke_without_command=True)
@click.pass_context
def cli(ctx):
    """Minimum diameter spanning trees: sequential solver and protocol simulator"""
    if ctx.invoked_subcommand is None:
        print_main_banner()

        table = Table(box=box.ROUNDED, show_header=False)
        table.add_column("Command", style="bold cyan", width=10)
        table.add_column("Description", style="white", width=60)
        table.add_row("solve", "Absolute center, MDST edges and its diameter for a graph file")
        table.add_row("simulate", "Run a scenario on the network simulator and check stabilization")
        table.add_row("gen", "Write a graph file from a generator family")
        table.add_row("check", "Re-run the scenario of a saved report and compare outcomes")
        console.print(table)

        presets = Table(title="Scenario presets", box=box.SIMPLE)
        presets.add_column("Preset", style="cyan")
        presets.add_column("Description", style="white")
        for name, description in ScenarioPresets.list_presets().items():
            presets.add_row(name, description)
        console.print(presets)
        console.print("\n[dim]Usage: python main.py [solve|simulate|gen|check] --help[/dim]\n")


@cli.command()
@click.option('--graph', 'graph_path', required=True, type=click.Path(), help='Path to a graph file')
@click.option('--no-skip', is_flag=True, help='Evaluate every edge instead of discarding dominated ones')
@click.option('--verbose', '-v', is_flag=True, help='Verbose output')
def solve(graph_path, no_skip, verbose):
    """Compute the absolute center and a minimum diameter spanning tree"""
    from cli.cli import run_solve

    sys.exit(run_solve(SolveArgs(graph_path=graph_path, skip_bound=not no_skip, verbose=verbose)))


@cli.command()
@click.option('--scenario', 'scenario_path', type=click.Path(), help='Path to a scenario JSON file')
@click.option('--graph', 'graph_path', type=click.Path(), help='Graph file (overrides the scenario graph)')
@click.option('--preset', type=click.Choice(sorted(ScenarioPresets.list_presets())), help='Scenario preset used with --graph')
@click.option('--seed', type=int, help='Scheduler seed')
@click.option('--horizon', type=int, help='Number of simulated time units')
@click.option('--scheduler', type=click.Choice(sorted(SCHEDULERS)), help='Delivery scheduler')
@click.option('--out', 'out_path', type=click.Path(), help='Where to write the report JSON')
@click.option('--trace', 'trace_path', type=click.Path(), help='Write the trace as JSON Lines')
@click.option('--dump-tables', is_flag=True, help='Record the full distance tables of every unit')
@click.option('--verbose', '-v', is_flag=True, help='Verbose output')
def simulate(scenario_path, graph_path, preset, seed, horizon, scheduler, out_path, trace_path, dump_tables, verbose):
    """Simulate a protocol stack and measure its stabilization"""
    from cli.cli import run_simulate

    args = SimulateArgs(
        scenario_path=scenario_path,
        graph_path=graph_path,
        preset=preset,
        seed=seed,
        horizon=horizon,
        scheduler=scheduler,
        out_path=out_path,
        trace_path=trace_path,
        dump_tables=dump_tables,
        verbose=verbose,
    )
    sys.exit(run_simulate(args))


@cli.command()
@click.argument('family', type=click.Choice(FAMILIES))
@click.option('--n', 'n', required=True, type=int, help='Number of vertices')
@click.option('--m', 'm', type=int, help='Number of edges (random-connected)')
@click.option('--wmax', default=1, type=int, help='Largest integer weight')
@click.option('--weights', help='Comma separated path weights, e.g. 1,2')
@click.option('--seed', default=0, type=int, help='Generator seed')
@click.option('--out', 'out_path', required=True, type=click.Path(), help='Where to write the graph file')
def gen(family, n, m, wmax, weights, seed, out_path):
    """Generate a graph file"""
    from cli.cli import run_gen

    sys.exit(run_gen(GenArgs(family=family, n=n, out_path=out_path, m=m, wmax=wmax, weights=weights, seed=seed)))


@cli.command()
@click.argument('report_path', type=click.Path())
@click.option('--verbose', '-v', is_flag=True, help='Verbose output')
def check(report_path, verbose):
    """Reproduce a saved run report"""
    from cli.cli import run_check

    sys.exit(run_check(CheckArgs(report_path=report_path, verbose=verbose)))


if __name__ == '__main__':
    try:
        cli()
    except KeyboardInterrupt:
        console.print("\n❌ [red]Operation cancelled by user[/red]")
        sys.exit(1)
