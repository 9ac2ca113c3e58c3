#!/usr/bin/env python3
"""
Report Writers

Plain delimited and key-value text reports. Floats are written with repr()
so identical results give byte-identical files.
"""

import logging
from pathlib import Path
from typing import Any, Iterable, List, Mapping, Optional, Sequence, Union

import numpy as np

from ..analysis.audience import AudienceReport
from ..analysis.bridgeness import BridgenessReport
from ..analysis.crosstab import CrossTab
from ..graph.edge_list import write_partition
from ..roles.extraction import RoleReport
from ..stability.sweep import RobustWindow, SweepRecord

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (list, tuple)):
        return " ".join(format_value(item) for item in value)
    return str(value)


def write_rows(path: PathLike, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(format_value(value) for value in row) + "\n")
    logger.debug(f"Wrote {path}")


def write_key_values(path: PathLike, values: Mapping[str, Any]) -> None:
    """`key = value` lines, in the mapping's order."""
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        for key, value in values.items():
            f.write(f"{key} = {format_value(value)}\n")


def write_component_report(path: PathLike, n_nodes: int, n_edges: int, sizes: List[int],
                           kept_nodes: int, kept_edges: int) -> None:
    write_key_values(path, {
        "n_nodes": n_nodes,
        "n_edges": n_edges,
        "n_components": len(sizes),
        "largest_component_nodes": kept_nodes,
        "largest_component_edges": kept_edges,
        "component_sizes": sizes,
    })


def write_sweep(path: PathLike, sweep: Sequence[SweepRecord]) -> None:
    write_rows(path, ["markov_time", "n_communities", "best_value", "mean_pairwise_vi"],
               ([r.markov_time, r.n_communities, r.best_value, r.mean_pairwise_vi] for r in sweep))


def write_windows(path: PathLike, windows: Sequence[RobustWindow]) -> None:
    write_rows(path, ["rank", "t_start", "t_end", "n_communities", "persistence", "mean_vi"],
               ([rank, w.t_start, w.t_end, w.n_communities, w.persistence, w.mean_vi_in_window]
                for rank, w in enumerate(windows)))


def write_roles(partition_path: PathLike, summary_path: PathLike, node_labels: Sequence[str],
                report: RoleReport, friends_path: Optional[PathLike] = None) -> None:
    """Role partition file plus the key-value summary with the role flow matrix.

    With `friends_path` and friend proportions in the report, also one
    `label,role,external_friend_proportion` row per node that has friends.
    """
    write_partition(partition_path, node_labels, report.partition)
    summary = report.summary()
    for role, row in enumerate(report.flow_matrix):
        summary[f"flow_from_role_{role}"] = [float(value) for value in row]
    if report.friend_proportions is not None:
        for role, mean in enumerate(report.friend_proportions.means()):
            summary[f"role_{role}_mean_external_friends"] = mean
            summary[f"role_{role}_no_friends"] = report.friend_proportions.no_friends[role]
    write_key_values(summary_path, summary)
    if friends_path is not None and report.friend_proportions is not None:
        write_rows(friends_path, ["label", "role", "external_friend_proportion"],
                   ([node_labels[node], role, value]
                    for node, role, value in report.friend_proportions.per_node()))


def write_bridgeness(path: PathLike, report: BridgenessReport) -> None:
    write_rows(path, ["source_label", "target_label", "raw_mass", "bridgeness", "bridgeness_ratio",
                      "crossing_share", "target_followed_by_share", "source_following_share"],
               ([row.source, row.target, row.raw_mass, row.bridgeness, row.bridgeness_ratio,
                 row.crossing_share, row.target_followed_by_share, row.source_following_share]
                for row in report.rows))


def write_crosstab(path: PathLike, crosstab: CrossTab) -> None:
    """Counts with '+'/'-'/'=' flags per cell, then chi2, dof, p_value and the row flag."""
    flags = crosstab.flags()
    n_columns = crosstab.counts.shape[1]
    header = ["row"] + [f"col_{j}" for j in range(n_columns)] + ["chi2", "dof", "p_value", "flag"]
    rows = []
    for i, test in enumerate(crosstab.rows):
        cells = [f"{crosstab.counts[i, j]}{flags[i, j]}" for j in range(n_columns)]
        flag = test.marker + ("?" if test.unreliable else "")
        rows.append([i] + cells + [test.chi2, test.dof, test.p_value, flag])
    write_rows(path, header, rows)


def write_audience(path: PathLike, summary_path: PathLike, report: AudienceReport) -> None:
    write_rows(path, ["community", "unique_followers", "exclusive_followers", "exclusive_percent"],
               ([row.community, row.unique_followers, row.exclusive_followers, row.exclusive_percent]
                for row in report.rows))
    write_key_values(summary_path, {
        "n_communities": len(report.rows),
        "global_unique": report.global_unique,
    })
