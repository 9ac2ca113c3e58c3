#!/usr/bin/env python3
"""
End-to-End Pipeline

ingest -> dynamics -> sweep -> roles -> bridgeness, plus the optional
conversation network (cross-tabulated against the interest communities) and
audience overlap. Each stage writes its own files; a failing stage has its
files renamed with a `.partial` suffix and earlier outputs stay untouched.
"""

import logging
import os
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path
from typing import Dict, List, Optional

from ..analysis.audience import audience_overlap, load_follower_sets
from ..analysis.bridgeness import edge_bridgeness
from ..analysis.crosstab import cross_tabulate
from ..analysis.friends import community_coverage
from ..dynamics.transition import TimeMode, build_transition, stationary_distribution
from ..errors import ConfigError, FlowscopeError
from ..graph.directed_graph import DirectedGraph, largest_component
from ..graph.edge_list import load_edge_list, write_partition
from ..graph.partition import Partition
from ..reporting.report_writer import (
    write_audience,
    write_bridgeness,
    write_component_report,
    write_crosstab,
    write_rows,
    write_roles,
    write_sweep,
    write_windows,
)
from ..roles.extraction import extract_roles
from ..roles.profiles import profile_matrix, rbs_similarity
from ..roles.rmst import rmst
from ..stability.sweep import choose_partition, select_robust_partitions, stability_sweep, time_grid
from ..tracing.stage_tracer import StageTracer
from .config import RunConfig

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
PARTIAL_SUFFIX = ".partial"


@dataclass
class PipelineResult:
    exit_code: int
    output_dir: Path
    manifest_path: Path
    failed_stage: Optional[str] = None
    error: Optional[str] = None
    outputs: Dict[str, List[str]] = field(default_factory=dict)


class Pipeline:
    """One run of every stage over a validated RunConfig."""

    def __init__(self, config: RunConfig, workers: int = 1):
        self.config = config
        self.workers = workers
        self.output_dir = Path(config.output_dir)
        self.tracer = StageTracer(run_name=Path(config.edge_list or "run").stem)
        self.current_stage: Optional[str] = None
        # results handed from stage to stage
        self.graph: Optional[DirectedGraph] = None
        self.communities: Optional[Partition] = None

    def output(self, name: str) -> Path:
        path = self.output_dir / name
        self.tracer.add_output(self.current_stage, str(path))
        return path

    def _run_stage(self, name: str, action) -> None:
        self.current_stage = name
        with self.tracer.stage(name):
            action()

    def ingest(self) -> None:
        g = load_edge_list(self.config.edge_list, directed=self.config.directed,
                           weighted=self.config.weighted)
        kept, sizes = largest_component(g)
        write_component_report(self.output("components.txt"), g.n_nodes, g.n_edges, sizes,
                               kept.n_nodes, kept.n_edges)
        self.graph = kept

    def sweep(self) -> None:
        config = self.config
        mode = TimeMode.parse(config.mode)
        system = build_transition(self.graph, config.teleport_alpha)
        pi = stationary_distribution(system)
        write_rows(self.output("pagerank.csv"), ["label", "pagerank"],
                   zip(self.graph.node_labels, pi.pi.tolist()))

        times = time_grid(config.t_min, config.t_max, config.n_times, mode)
        records = stability_sweep(system, pi, times, n_runs=config.n_runs, mode=mode,
                                  base_seed=config.base_seed, workers=self.workers,
                                  progress=lambda done, total: self.tracer.advance("sweep", done, total))
        windows = select_robust_partitions(records, config.vi_threshold)
        write_sweep(self.output("sweep.csv"), records)
        write_windows(self.output("windows.csv"), windows)
        for rank, window in enumerate(windows):
            write_partition(self.output(f"window_{rank}.csv"), self.graph.node_labels,
                            window.partition)

        communities, _ = choose_partition(records, config.vi_threshold)
        self.communities = communities.ranked_by_size()
        write_partition(self.output("communities.csv"), self.graph.node_labels, self.communities)
        logger.info(f"Interest communities: {self.communities.n_communities}, top "
                    f"{config.top_communities} cover "
                    f"{100 * community_coverage(self.communities, config.top_communities):.2f}%")

    def roles(self) -> None:
        config = self.config
        profiles = profile_matrix(self.graph, config.rbs_alpha, config.k_max)
        similarity_graph = rmst(rbs_similarity(profiles), config.gamma, config.k_neighbor)
        times = time_grid(config.t_min, config.t_max, config.n_times, TimeMode.CONTINUOUS)
        report = extract_roles(self.graph, similarity_graph, times=times, n_runs=config.n_runs,
                               vi_threshold=config.vi_threshold, base_seed=config.base_seed,
                               workers=self.workers, interest=self.communities)
        write_roles(self.output("roles.csv"), self.output("roles_summary.txt"),
                    self.graph.node_labels, report, friends_path=self.output("external_friends.csv"))

    def bridgeness(self) -> None:
        top = min(self.config.top_communities, self.communities.n_communities)
        for source, dest in permutations(range(top), 2):
            report = edge_bridgeness(self.graph, self.communities, source, dest)
            write_bridgeness(self.output(f"bridgeness_{source}_{dest}.csv"), report)

    def conversation(self) -> None:
        config = self.config
        retweets = load_edge_list(config.retweet_edge_list, weighted=config.retweet_weighted)
        system = build_transition(retweets, config.teleport_alpha)
        pi = stationary_distribution(system)
        mode = TimeMode.parse(config.mode)
        records = stability_sweep(system, pi, time_grid(config.t_min, config.t_max, config.n_times, mode),
                                  n_runs=config.n_runs, mode=mode, base_seed=config.base_seed,
                                  workers=self.workers)
        write_sweep(self.output("conversation_sweep.csv"), records)
        conversation, _ = choose_partition(records, config.vi_threshold)
        conversation = conversation.ranked_by_size()
        write_partition(self.output("conversation_communities.csv"), retweets.node_labels,
                        conversation)
        crosstab = cross_tabulate(conversation, self.communities, retweets.node_labels,
                                  self.graph.node_labels)
        write_crosstab(self.output("crosstab.csv"), crosstab)

    def audience(self) -> None:
        report = audience_overlap(load_follower_sets(self.config.follower_sets))
        write_audience(self.output("audience.csv"), self.output("audience_summary.txt"), report)

    def _mark_partial(self, stage: str) -> None:
        for name in self.tracer.stages[stage].outputs:
            path = Path(name)
            if path.exists():
                os.replace(path, path.with_name(path.name + PARTIAL_SUFFIX))

    def run(self) -> PipelineResult:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        stages = [("ingest", self.ingest), ("sweep", self.sweep), ("roles", self.roles),
                  ("bridgeness", self.bridgeness)]
        if self.config.retweet_edge_list:
            stages.append(("conversation", self.conversation))
        if self.config.follower_sets:
            stages.append(("audience", self.audience))

        failed = None
        error = None
        for name, action in stages:
            if failed is not None:
                self.tracer.skip_stage(name, f"after failure in {failed}")
                continue
            try:
                self._run_stage(name, action)
            except (FlowscopeError, OSError) as exc:
                failed = name
                error = str(exc)
                self._mark_partial(name)

        manifest_path = self.output_dir / MANIFEST_NAME
        self.tracer.export_manifest(str(manifest_path), parameters=self.config.to_dict(),
                                    seeds={"base_seed": self.config.base_seed})
        return PipelineResult(
            exit_code=0 if failed is None else 1,
            output_dir=self.output_dir,
            manifest_path=manifest_path,
            failed_stage=failed,
            error=error,
            outputs={name: trace.outputs for name, trace in self.tracer.stages.items()},
        )


def run_pipeline(config: RunConfig, workers: int = 1) -> PipelineResult:
    """Validate the config and run every stage; exit_code 0 on success, 1 on a stage failure."""
    config.validate()
    if not config.edge_list:
        raise ConfigError("edge_list is required")
    return Pipeline(config, workers=workers).run()
