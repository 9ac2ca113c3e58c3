#!/usr/bin/env python3
"""
flowscope command line

Subcommands run one stage each (ingest, sweep, communities, roles,
bridgeness, crosstab, synth); `run` executes the whole pipeline from a
configuration file.
"""

import argparse
import logging
import sys
from dataclasses import fields
from pathlib import Path
from typing import List, Optional

from .. import __version__
from ..analysis.bridgeness import edge_bridgeness
from ..analysis.crosstab import cross_tabulate
from ..dynamics.transition import TimeMode, build_transition, stationary_distribution
from ..errors import ConfigError, FlowscopeError, ParameterError, StageError
from ..graph.directed_graph import largest_component
from ..graph.edge_list import load_edge_list, load_partition, write_edge_list, write_partition
from ..graph.partition import restrict_partition
from ..reporting.report_writer import (
    write_bridgeness,
    write_component_report,
    write_crosstab,
    write_key_values,
    write_roles,
    write_sweep,
    write_windows,
)
from ..roles.extraction import extract_roles
from ..roles.profiles import profile_matrix, rbs_similarity
from ..roles.rmst import rmst
from ..stability.sweep import (
    choose_partition,
    run_ensemble,
    select_robust_partitions,
    stability_sweep,
    time_grid,
)
from ..synthetic.generators import directed_sbm, layered_flow_graph, write_planted
from .config import RunConfig, load_config, resolve_workers
from .pipeline import run_pipeline

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_STAGE_ERROR = 1
EXIT_CONFIG_ERROR = 2


def _sizes(text: str) -> List[int]:
    try:
        return [int(value) for value in text.split(",") if value.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("edge_list", help="edge-list file (source,target[,weight])")
    parser.add_argument("--weighted", action="store_true", default=None,
                        help="third column holds edge weights")


def _add_sweep_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--teleport-alpha", dest="teleport_alpha", type=float)
    parser.add_argument("--mode", choices=[m.value for m in TimeMode])
    parser.add_argument("--t-min", dest="t_min", type=float)
    parser.add_argument("--t-max", dest="t_max", type=float)
    parser.add_argument("--n-times", dest="n_times", type=int)
    parser.add_argument("--n-runs", dest="n_runs", type=int)
    parser.add_argument("--vi-threshold", dest="vi_threshold", type=float)


def _add_role_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rbs-alpha", dest="rbs_alpha", type=float)
    parser.add_argument("--k-max", dest="k_max", help="profile length, or 'auto'")
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--k-neighbor", dest="k_neighbor", type=int)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value run configuration file")
    common.add_argument("--output", dest="output_dir", help="output directory")
    common.add_argument("--workers", type=int, help="worker threads (default: FLOWSCOPE_WORKERS or CPU count)")
    common.add_argument("--seed", dest="base_seed", type=int, help="base random seed")
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")

    parser = argparse.ArgumentParser(prog="flowscope",
                                     description="Flow-based community and role analysis of directed networks")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    ingest = commands.add_parser("ingest", parents=[common], help="load a graph and keep its largest component")
    _add_graph_arguments(ingest)
    ingest.add_argument("--undirected", dest="directed", action="store_false", default=None)

    sweep = commands.add_parser("sweep", parents=[common], help="Markov Stability sweep over Markov time")
    _add_graph_arguments(sweep)
    _add_sweep_arguments(sweep)

    communities = commands.add_parser("communities", parents=[common],
                                      help="best partition at a single Markov time")
    _add_graph_arguments(communities)
    _add_sweep_arguments(communities)
    communities.add_argument("--time", dest="markov_time", type=float, required=True)

    roles = commands.add_parser("roles", parents=[common], help="flow roles from role-based similarity")
    _add_graph_arguments(roles)
    _add_sweep_arguments(roles)
    _add_role_arguments(roles)

    bridgeness = commands.add_parser("bridgeness", parents=[common],
                                     help="bridgeness of boundary edges for flow C1 -> C2")
    _add_graph_arguments(bridgeness)
    bridgeness.add_argument("partition", help="label,community_index file")
    bridgeness.add_argument("--source", dest="c_source", type=int, required=True,
                            help="community the information comes from")
    bridgeness.add_argument("--dest", dest="c_dest", type=int, required=True,
                            help="community the information reaches")

    crosstab = commands.add_parser("crosstab", parents=[common], help="cross-tabulate two partitions")
    crosstab.add_argument("partition_a")
    crosstab.add_argument("partition_b")

    synth = commands.add_parser("synth", parents=[common], help="generate a planted benchmark graph")
    synth.add_argument("generator", choices=["sbm", "layered"])
    synth.add_argument("--sizes", type=_sizes, required=True, help="block or layer sizes, e.g. 20,20,20")
    synth.add_argument("--p-in", dest="p_in", type=float, default=0.2)
    synth.add_argument("--p-out", dest="p_out", type=float, default=0.01)
    synth.add_argument("--p-forward", dest="p_forward", type=float, default=0.5)

    commands.add_parser("run", parents=[common], help="full pipeline from --config")
    return parser


def build_config(args: argparse.Namespace) -> RunConfig:
    """Config file (if any), then command-line overrides, validated."""
    config = load_config(args.config) if args.config else RunConfig()
    names = {f.name for f in fields(RunConfig)}
    overrides = {key: value for key, value in vars(args).items() if key in names}
    return config.with_overrides(overrides).validate()


def _output_dir(config: RunConfig) -> Path:
    path = Path(config.output_dir)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _load(config: RunConfig):
    return load_edge_list(config.edge_list, directed=config.directed, weighted=config.weighted)


def cmd_ingest(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    g = _load(config)
    kept, sizes = largest_component(g)
    write_component_report(out / "components.txt", g.n_nodes, g.n_edges, sizes, kept.n_nodes, kept.n_edges)
    write_edge_list(kept, out / "largest_component.csv", weighted=config.weighted)
    return EXIT_OK


def cmd_sweep(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    g = _load(config)
    mode = TimeMode.parse(config.mode)
    system = build_transition(g, config.teleport_alpha)
    pi = stationary_distribution(system)
    records = stability_sweep(system, pi, time_grid(config.t_min, config.t_max, config.n_times, mode),
                              n_runs=config.n_runs, mode=mode, base_seed=config.base_seed, workers=workers)
    write_sweep(out / "sweep.csv", records)
    write_windows(out / "windows.csv", select_robust_partitions(records, config.vi_threshold))
    partition, _ = choose_partition(records, config.vi_threshold)
    write_partition(out / "communities.csv", g.node_labels, partition.ranked_by_size())
    return EXIT_OK


def cmd_communities(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    g = _load(config)
    mode = TimeMode.parse(config.mode)
    system = build_transition(g, config.teleport_alpha)
    pi = stationary_distribution(system)
    runs = run_ensemble(system, pi, args.markov_time, config.n_runs, mode, config.base_seed, workers=workers)
    best = max(runs, key=lambda score: score.value)
    write_partition(out / "communities.csv", g.node_labels, best.partition.ranked_by_size())
    write_key_values(out / "communities_summary.txt", {
        "markov_time": best.markov_time,
        "stability": best.value,
        "n_communities": best.n_communities,
    })
    return EXIT_OK


def cmd_roles(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    g = _load(config)
    similarity = rbs_similarity(profile_matrix(g, config.rbs_alpha, config.k_max))
    report = extract_roles(g, rmst(similarity, config.gamma, config.k_neighbor),
                           times=time_grid(config.t_min, config.t_max, config.n_times),
                           n_runs=config.n_runs, vi_threshold=config.vi_threshold,
                           base_seed=config.base_seed, workers=workers)
    write_roles(out / "roles.csv", out / "roles_summary.txt", g.node_labels, report)
    return EXIT_OK


def cmd_bridgeness(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    g = _load(config)
    labels, partition = load_partition(args.partition)
    partition = restrict_partition(labels, partition, g.node_labels)
    report = edge_bridgeness(g, partition, args.c_source, args.c_dest)
    write_bridgeness(out / f"bridgeness_{args.c_source}_{args.c_dest}.csv", report)
    return EXIT_OK


def cmd_crosstab(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    labels_a, partition_a = load_partition(args.partition_a)
    labels_b, partition_b = load_partition(args.partition_b)
    write_crosstab(out / "crosstab.csv", cross_tabulate(partition_a, partition_b, labels_a, labels_b))
    return EXIT_OK


def cmd_synth(args, config: RunConfig, workers: int) -> int:
    out = _output_dir(config)
    if args.generator == "sbm":
        planted = directed_sbm(args.sizes, args.p_in, args.p_out, seed=config.base_seed)
    else:
        planted = layered_flow_graph(args.sizes, args.p_forward, seed=config.base_seed)
    write_planted(planted, out / f"{args.generator}_edges.csv", out / f"{args.generator}_planted.csv")
    return EXIT_OK


def cmd_run(args, config: RunConfig, workers: int) -> int:
    result = run_pipeline(config, workers=workers)
    print_run_summary(result)
    return result.exit_code


def print_run_summary(result) -> None:
    print("\n" + "=" * 80)
    print(f"FLOWSCOPE RUN: {'SUCCESS' if result.exit_code == 0 else 'FAILED'}")
    print("=" * 80)
    for stage, outputs in result.outputs.items():
        print(f"{stage:14} {len(outputs):3d} files")
    if result.failed_stage:
        print(f"\n{StageError(result.failed_stage, result.error)}")
    print(f"Manifest: {result.manifest_path}")


COMMANDS = {
    "ingest": cmd_ingest,
    "sweep": cmd_sweep,
    "communities": cmd_communities,
    "roles": cmd_roles,
    "bridgeness": cmd_bridgeness,
    "crosstab": cmd_crosstab,
    "synth": cmd_synth,
    "run": cmd_run,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format='%(asctime)s - %(levelname)s - %(message)s',
    )
    try:
        config = build_config(args)
        workers = resolve_workers(config.workers)
    except (ConfigError, ParameterError) as exc:
        logger.error(f"Invalid configuration: {exc}")
        return EXIT_CONFIG_ERROR

    try:
        return COMMANDS[args.command](args, config, workers)
    except (ConfigError, ParameterError) as exc:
        logger.error(f"{args.command}: {exc}")
        return EXIT_CONFIG_ERROR
    except (FlowscopeError, OSError) as exc:
        logger.error(str(StageError(args.command, exc)))
        return EXIT_STAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
