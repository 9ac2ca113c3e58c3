#!/usr/bin/env python3
"""
Markov Time Sweep

Seeded Louvain ensembles across a grid of Markov times, ensemble variation of
information per time, and selection of robust windows (plateaus of one
partition with low ensemble VI).
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..dynamics.transition import MarkovOperator, TimeMode
from ..errors import ParameterError
from ..graph.partition import Partition
from .information import mean_pairwise_vi
from .louvain import louvain_optimize
from .quality import DEFAULT_MAX_DENSE_QUALITY_NODES, PiLike, StabilityScore, quality_matrix

logger = logging.getLogger(__name__)

DEFAULT_N_RUNS = 100
DEFAULT_VI_THRESHOLD = 0.05
DEFAULT_TIME_MIN = 1e-2
DEFAULT_TIME_MAX = 1e2
DEFAULT_N_TIMES = 60


@dataclass(frozen=True)
class SweepRecord:
    """Best partition of one Louvain ensemble at one Markov time."""
    markov_time: float
    best_partition: Partition
    best_value: float
    n_communities: int
    mean_pairwise_vi: float
    n_runs: int


@dataclass(frozen=True)
class RobustWindow:
    """A run of consecutive sweep points sharing one partition with low ensemble VI."""
    t_start: float
    t_end: float
    partition: Partition
    persistence: float
    mean_vi_in_window: float
    start_index: int
    end_index: int

    @property
    def n_communities(self) -> int:
        return self.partition.n_communities

    @property
    def n_points(self) -> int:
        return self.end_index - self.start_index + 1


def time_grid(t_min: float = DEFAULT_TIME_MIN, t_max: float = DEFAULT_TIME_MAX,
              n_times: int = DEFAULT_N_TIMES,
              mode: Union[str, TimeMode] = TimeMode.CONTINUOUS) -> List[float]:
    """Logarithmically spaced Markov times; discrete mode rounds to distinct integers >= 1."""
    if not 0 < t_min <= t_max:
        raise ParameterError(f"need 0 < t_min <= t_max, got {t_min}, {t_max}")
    if n_times < 1:
        raise ParameterError("n_times must be >= 1")
    grid = np.logspace(math.log10(t_min), math.log10(t_max), n_times)
    if TimeMode.parse(mode) is TimeMode.DISCRETE:
        return sorted({float(max(1, round(t))) for t in grid})
    return [float(t) for t in grid]


def _validate_times(times: Sequence[float], mode: TimeMode) -> None:
    if len(times) == 0:
        raise ParameterError("times must be nonempty")
    for earlier, later in zip(times, times[1:]):
        if not later > earlier:
            raise ParameterError("times must be strictly increasing")
    if times[0] < 0:
        raise ParameterError("times must be >= 0")
    if mode is TimeMode.DISCRETE and not all(float(t).is_integer() for t in times):
        raise ParameterError("discrete mode needs integer Markov times")


def run_ensemble(system: MarkovOperator, pi: PiLike, t: float, n_runs: int,
                 mode: TimeMode, base_seed: int, workers: int = 1,
                 max_dense_nodes: int = DEFAULT_MAX_DENSE_QUALITY_NODES) -> List[StabilityScore]:
    """Louvain runs with seeds base_seed .. base_seed + n_runs - 1, in seed order."""
    quality = quality_matrix(system, pi, t, mode, max_dense_nodes=max_dense_nodes)

    def one_run(seed: int) -> StabilityScore:
        return louvain_optimize(system, pi, t, mode, seed=seed, quality=quality)

    seeds = range(base_seed, base_seed + n_runs)
    if workers > 1 and n_runs > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(one_run, seeds))
    return [one_run(seed) for seed in seeds]


def stability_sweep(system: MarkovOperator, pi: PiLike, times: Sequence[float],
                    n_runs: int = DEFAULT_N_RUNS,
                    mode: Union[str, TimeMode] = TimeMode.CONTINUOUS, base_seed: int = 0,
                    workers: int = 1,
                    max_dense_nodes: int = DEFAULT_MAX_DENSE_QUALITY_NODES,
                    progress: Optional[Callable[[int, int], None]] = None) -> List[SweepRecord]:
    """Optimize r(t, H) at every time; keep the best of n_runs and the ensemble VI."""
    mode = TimeMode.parse(mode)
    times = [float(t) for t in times]
    _validate_times(times, mode)
    if n_runs < 1:
        raise ParameterError("n_runs must be >= 1")

    records: List[SweepRecord] = []
    for index, t in enumerate(times):
        started = time.perf_counter()
        runs = run_ensemble(system, pi, t, n_runs, mode, base_seed, workers=workers,
                            max_dense_nodes=max_dense_nodes)
        # max() keeps the first of equal values, i.e. the lowest seed
        best = max(runs, key=lambda score: score.value)
        vi = mean_pairwise_vi([score.partition for score in runs], seed=base_seed)
        records.append(SweepRecord(
            markov_time=t,
            best_partition=best.partition,
            best_value=best.value,
            n_communities=best.partition.n_communities,
            mean_pairwise_vi=vi,
            n_runs=n_runs,
        ))
        logger.info(f"t={t:.4g} | communities: {best.partition.n_communities:4d} | "
                    f"r: {best.value:.6f} | VI: {vi:.4f} | {time.perf_counter() - started:.2f}s")
        if progress is not None:
            progress(index + 1, len(times))
    return records


def _persistence(times: Sequence[float]) -> float:
    positive = [t for t in times if t > 0]
    if len(positive) < 2:
        return 0.0
    return math.log(positive[-1] / positive[0])


def select_robust_partitions(sweep: Sequence[SweepRecord],
                             vi_threshold: float = DEFAULT_VI_THRESHOLD) -> List[RobustWindow]:
    """Maximal windows of identical best partitions with ensemble VI <= threshold, most persistent first."""
    if not sweep:
        raise ParameterError("sweep is empty")
    for earlier, later in zip(sweep, sweep[1:]):
        if not later.markov_time > earlier.markov_time:
            raise ParameterError("sweep must be sorted by Markov time")

    windows: List[RobustWindow] = []
    start = 0
    while start < len(sweep):
        if sweep[start].mean_pairwise_vi > vi_threshold:
            start += 1
            continue
        end = start
        while (end + 1 < len(sweep)
               and sweep[end + 1].mean_pairwise_vi <= vi_threshold
               and sweep[end + 1].best_partition.same_grouping(sweep[start].best_partition)):
            end += 1
        if end > start:
            members = sweep[start:end + 1]
            windows.append(RobustWindow(
                t_start=sweep[start].markov_time,
                t_end=sweep[end].markov_time,
                partition=sweep[start].best_partition,
                persistence=_persistence([record.markov_time for record in members]),
                mean_vi_in_window=float(np.mean([record.mean_pairwise_vi for record in members])),
                start_index=start,
                end_index=end,
            ))
        start = end + 1

    windows.sort(key=lambda window: (-window.persistence, window.t_start))
    return windows


def most_persistent_nontrivial(windows: Sequence[RobustWindow]) -> Optional[RobustWindow]:
    """The first window (windows are ranked) whose partition is not all-singletons."""
    for window in windows:
        if window.partition.n_communities < window.partition.n_nodes or window.partition.n_nodes == 1:
            return window
    return None


def choose_partition(sweep: Sequence[SweepRecord],
                     vi_threshold: float = DEFAULT_VI_THRESHOLD) -> Tuple[Partition, Optional[RobustWindow]]:
    """Partition of the most persistent non-singleton window, else the best one at the largest time."""
    window = most_persistent_nontrivial(select_robust_partitions(sweep, vi_threshold))
    if window is not None:
        return window.partition, window
    logger.warning("No robust non-singleton window; using the partition at the largest time")
    return sweep[-1].best_partition, None
