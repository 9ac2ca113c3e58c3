"""
Edge-list and partition files.

Edge lists are UTF-8 text, one edge per line, `source,target[,weight]`, with a
tab or comma delimiter detected from the first data line. Lines starting with
'#' and blank lines are skipped.
"""

import logging
import math
from pathlib import Path
from typing import Dict, List, Sequence, Tuple, Union

from ..errors import EmptyGraphError, ParameterError, ParseError
from .directed_graph import DirectedGraph
from .partition import Partition

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _data_lines(path: PathLike):
    with open(path, "r", encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            yield line_number, line


def _detect_delimiter(line: str) -> str:
    return "\t" if "\t" in line else ","


def load_edge_list(path: PathLike, directed: bool = True, weighted: bool = False) -> DirectedGraph:
    """Read an edge list; nodes are indexed by first appearance and duplicate rows summed."""
    expected_fields = 3 if weighted else 2
    index: Dict[str, int] = {}
    labels: List[str] = []
    sources: List[int] = []
    targets: List[int] = []
    weights: List[float] = []
    delimiter = None

    def node(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for line_number, line in _data_lines(path):
        if delimiter is None:
            delimiter = _detect_delimiter(line)
        fields = [field.strip() for field in line.split(delimiter)]
        if len(fields) != expected_fields:
            raise ParseError(f"expected {expected_fields} fields, found {len(fields)}",
                             line_number=line_number, path=str(path))
        if not fields[0] or not fields[1]:
            raise ParseError("empty node label", line_number=line_number, path=str(path))
        weight = 1.0
        if weighted:
            try:
                weight = float(fields[2])
            except ValueError:
                raise ParseError(f"non-numeric weight {fields[2]!r}",
                                 line_number=line_number, path=str(path)) from None
            if not math.isfinite(weight) or weight <= 0:
                raise ParseError(f"weight must be a positive number, got {fields[2]!r}",
                                 line_number=line_number, path=str(path))
        s, t = node(fields[0]), node(fields[1])
        sources.append(s)
        targets.append(t)
        weights.append(weight)
        if not directed and s != t:
            sources.append(t)
            targets.append(s)
            weights.append(weight)

    if not labels:
        raise EmptyGraphError(f"{path}: no edges found")

    graph = DirectedGraph(labels, sources, targets, weights)
    logger.info(f"Loaded {path}: N={graph.n_nodes}, E={graph.n_edges} "
                f"({len(sources)} rows, {'directed' if directed else 'undirected'})")
    return graph


def write_edge_list(g: DirectedGraph, path: PathLike, weighted: bool = True,
                    delimiter: str = ",") -> None:
    """Write `g` in the edge-list format; weights are written with full precision."""
    for label in g.node_labels:
        if delimiter in label:
            raise ParameterError(f"node label {label!r} contains the delimiter")
    header = ["source", "target"] + (["weight"] if weighted else [])
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("# " + delimiter.join(header) + "\n")
        for s, t, w in g.edges():
            fields = [g.node_labels[s], g.node_labels[t]]
            if weighted:
                fields.append(repr(w))
            handle.write(delimiter.join(fields) + "\n")


def write_partition(path: PathLike, node_labels: Sequence[str], partition: Partition) -> None:
    """`label,community_index` per line, with a header."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("label,community_index\n")
        for label, community in zip(node_labels, partition.assignment):
            handle.write(f"{label},{int(community)}\n")


def load_partition(path: PathLike) -> Tuple[List[str], Partition]:
    """Read a partition file; returns labels in file order and their partition."""
    labels: List[str] = []
    communities: List[str] = []
    seen = set()
    with open(path, "r", encoding="utf-8") as handle:
        for line_number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [field.strip() for field in line.split(",")]
            if line_number == 1 and fields == ["label", "community_index"]:
                continue
            if len(fields) != 2 or not fields[0]:
                raise ParseError("expected label,community_index", line_number=line_number,
                                 path=str(path))
            if fields[0] in seen:
                raise ParseError(f"node {fields[0]!r} assigned twice", line_number=line_number,
                                 path=str(path))
            seen.add(fields[0])
            labels.append(fields[0])
            communities.append(fields[1])
    if not labels:
        raise EmptyGraphError(f"{path}: no partition rows found")
    # integer indices covering 0..c-1 are kept as written
    if all(value.isdigit() for value in communities):
        indices = [int(value) for value in communities]
        if set(indices) == set(range(max(indices) + 1)):
            return labels, Partition(indices)
    return labels, Partition.from_labels(communities)
