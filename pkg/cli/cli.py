from typing import Any, Dict, Optional

import click
from rich import box
from rich.console import Console
from rich.panel import Panel
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn
from rich.table import Table

from center.solver import absolute_center, mdst
from checker.report import RunReport, build_run_report
from core.config import ScenarioPresets, SimulationConfig, load_json_file, save_json_file
from core.errors import GraphError, ScenarioError
from core.logging import console, get_logger, setup_logging
from core.types import CheckArgs, GenArgs, SimulateArgs, SolveArgs
from graph.generators import generate
from graph.io import read_graph, write_graph
from netsim.scenario import Scenario, load_scenario, scenario_from_dict
from netsim.simulator import SimulationResult, run

logger = get_logger("cli")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_UNSTABLE = 3


def number(x: float) -> str:
    """Stable decimal rendering for result lines"""
    return str(round(float(x), 9))


def create_step_panel(title: str, description: str, status: str = "running") -> Panel:
    colors = {"running": "yellow", "success": "green", "failure": "red"}
    color = colors.get(status, "white")
    return Panel(f"[bold]{title}[/bold]\n{description}", border_style=color, box=box.ROUNDED, padding=(0, 2))


def print_report_table(report: RunReport, out: Console = console) -> None:
    table = Table(title="Stabilization", box=box.ROUNDED, header_style="bold magenta")
    table.add_column("Predicate", style="cyan")
    table.add_column("Outcome")
    table.add_column("Suffix from", justify="right")
    table.add_column("Held", justify="right")
    for name, predicate in report.predicates.items():
        style = "green" if predicate.stabilized else "red"
        held = f"{sum(predicate.truth)}/{len(predicate.truth)}"
        suffix = "-" if predicate.first_suffix_time is None else str(predicate.first_suffix_time)
        table.add_row(name, f"[{style}]{predicate.outcome}[/{style}]", suffix, held)
    out.print(table)

    metrics = Table(title="Run", box=box.SIMPLE)
    metrics.add_column("Metric", style="cyan")
    metrics.add_column("Value", style="white")
    for key, value in report.metrics.items():
        metrics.add_row(key, str(value))
    metrics.add_row("layered order", "ok" if report.layered_order else "violated")
    metrics.add_row("oracle separation", number(report.oracle["separation"]))
    if report.tree_diameter is not None:
        metrics.add_row("tree diameter", number(report.tree_diameter))
    if report.composition is not None:
        metrics.add_row("composition audit", "passed" if report.composition.passed else "failed")
    out.print(metrics)


def print_tables(result: SimulationResult) -> None:
    """Final distance tables, one row per node"""
    final = result.trace.tables[-1] if result.trace.tables else None
    if final is None:
        return
    table = Table(title=f"Distance tables at t={final['time']}", box=box.SIMPLE)
    table.add_column("node", style="cyan")
    table.add_column("id -> distance")
    for v, dist in final["dist"].items():
        table.add_row(str(v), ", ".join(f"{i}:{number(d)}" for i, d in dist.items()))
    console.print(table)


def run_solve(args: SolveArgs) -> int:
    setup_logging(args.verbose)
    try:
        graph = read_graph(args.graph_path)
    except GraphError as exc:
        console.print(f"[red]Invalid graph: {exc}[/red]")
        return EXIT_INPUT

    center = absolute_center(graph, use_skip_bound=args.skip_bound)
    tree, diameter = mdst(graph, use_skip_bound=args.skip_bound)
    if args.skip_bound:
        logger.info(f"Skipped {center.edges_skipped} of {graph.m} edges")
    click.echo(f"center {center.location.label()} sep {number(center.separation)} diameter {number(diameter)}")
    click.echo("tree " + " ".join(f"{u}-{v}" for u, v in tree.edge_list()))
    return EXIT_OK


def build_scenario(args: SimulateArgs, config: SimulationConfig) -> Scenario:
    """Scenario from a file or from a graph plus preset, with command-line overrides on top"""
    graph = read_graph(args.graph_path) if args.graph_path else None
    if args.scenario_path:
        scenario = load_scenario(args.scenario_path, graph, config)
        data = scenario.to_dict()
        data["graph"] = scenario.graph_path
        graph = scenario.graph
    else:
        if graph is None:
            raise ScenarioError("Either --scenario or --graph is required")
        data = ScenarioPresets.get_preset(args.preset or "clean")
        data["graph"] = args.graph_path
    for key, value in (("seed", args.seed), ("horizon", args.horizon), ("scheduler", args.scheduler)):
        if value is not None:
            data[key] = value
    return scenario_from_dict(data, None, graph, config)


def run_simulate(args: SimulateArgs) -> int:
    setup_logging(args.verbose)
    config = SimulationConfig.from_env()
    try:
        scenario = build_scenario(args, config)
    except (GraphError, ScenarioError) as exc:
        console.print(f"[red]Invalid scenario: {exc}[/red]")
        return EXIT_INPUT

    console.print(create_step_panel(
        "Simulation",
        f"{scenario.protocol} stack, n={scenario.graph.n}, horizon {scenario.horizon}, "
        f"{scenario.scheduler} scheduler, seed {scenario.seed}",
    ))
    try:
        with Progress(SpinnerColumn(), TextColumn("[progress.description]{task.description}"),
                      TimeElapsedColumn(), console=console, transient=True) as progress:
            progress.add_task("Simulating...", total=None)
            result = run(scenario, config, record_actions=True, dump_tables=args.dump_tables)
            progress.add_task("Checking predicates...", total=None)
            report = build_run_report(result)
    except ScenarioError as exc:
        console.print(f"[red]Scenario failed: {exc}[/red]")
        return EXIT_INPUT

    out_path = args.out_path or f"{config.output_dir}/run_report.json"
    report.save(out_path)
    if args.trace_path:
        result.trace.write_jsonl(args.trace_path)
    if args.dump_tables:
        save_json_file({"tables": result.trace.tables}, out_path.replace(".json", "") + "_tables.json")
        print_tables(result)

    print_report_table(report)
    for name, predicate in report.predicates.items():
        click.echo(f"{name} {predicate.outcome} {predicate.first_suffix_time}")
    if not report.stabilized:
        console.print(create_step_panel("Not stabilized", f"Report written to {out_path}", "failure"))
        return EXIT_UNSTABLE
    console.print(create_step_panel("Stabilized", f"Report written to {out_path}", "success"))
    return EXIT_OK


def run_gen(args: GenArgs) -> int:
    setup_logging(False)
    weights = None
    try:
        if args.weights:
            weights = [float(w) for w in args.weights.split(",")]
        graph = generate(args.family, args.n, args.m, args.wmax, weights, args.seed)
    except (GraphError, ValueError) as exc:
        console.print(f"[red]Cannot generate graph: {exc}[/red]")
        return EXIT_INPUT
    write_graph(graph, args.out_path)
    click.echo(f"wrote {args.out_path} n={graph.n} m={graph.m}")
    return EXIT_OK


def _comparable(report: Dict[str, Any]) -> Dict[str, Any]:
    return {
        "final_digest": report.get("final_digest"),
        "suffix": {name: p.get("first_suffix_time") for name, p in report.get("predicates", {}).items()},
    }


def run_check(args: CheckArgs) -> int:
    """Re-run the scenario a report was produced from and compare the outcome"""
    setup_logging(args.verbose)
    try:
        saved = load_json_file(args.report_path)
        scenario_data: Optional[Dict[str, Any]] = saved.get("scenario")
        if not scenario_data:
            raise ScenarioError(f"{args.report_path} holds no scenario")
        scenario = scenario_from_dict(scenario_data)
    except (GraphError, ScenarioError) as exc:
        console.print(f"[red]Cannot check report: {exc}[/red]")
        return EXIT_INPUT

    report = build_run_report(run(scenario))
    expected, actual = _comparable(saved), _comparable(report.to_dict())
    if expected != actual:
        console.print(create_step_panel("Mismatch", f"saved {expected}\nrerun {actual}", "failure"))
        click.echo("check mismatch")
        return EXIT_MISMATCH
    click.echo(f"check reproduced {actual['final_digest']}")
    return EXIT_OK if report.stabilized else EXIT_UNSTABLE
