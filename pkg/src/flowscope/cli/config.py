#!/usr/bin/env python3
"""
Run Configuration

A flat `key = value` file with `#` comments; keys are RunConfig field names.
"""

import configparser
import logging
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from ..dynamics.transition import DEFAULT_TELEPORT_ALPHA, TimeMode
from ..errors import ConfigError
from ..roles.profiles import DEFAULT_RBS_ALPHA
from ..roles.rmst import DEFAULT_GAMMA, DEFAULT_K_NEIGHBOR
from ..stability.sweep import (
    DEFAULT_N_RUNS,
    DEFAULT_N_TIMES,
    DEFAULT_TIME_MAX,
    DEFAULT_TIME_MIN,
    DEFAULT_VI_THRESHOLD,
)

logger = logging.getLogger(__name__)

WORKERS_ENV = "FLOWSCOPE_WORKERS"
SECTION = "run"


@dataclass(frozen=True)
class RunConfig:
    """Every parameter of a pipeline run; defaults are the documented ones."""
    edge_list: Optional[str] = None
    weighted: bool = False
    directed: bool = True
    retweet_edge_list: Optional[str] = None
    retweet_weighted: bool = True
    follower_sets: Optional[str] = None
    output_dir: str = "flowscope_output"
    teleport_alpha: float = DEFAULT_TELEPORT_ALPHA
    mode: str = TimeMode.CONTINUOUS.value
    t_min: float = DEFAULT_TIME_MIN
    t_max: float = DEFAULT_TIME_MAX
    n_times: int = DEFAULT_N_TIMES
    n_runs: int = DEFAULT_N_RUNS
    base_seed: int = 0
    vi_threshold: float = DEFAULT_VI_THRESHOLD
    rbs_alpha: float = DEFAULT_RBS_ALPHA
    k_max: Optional[int] = None
    gamma: float = DEFAULT_GAMMA
    k_neighbor: int = DEFAULT_K_NEIGHBOR
    top_communities: int = 4
    workers: Optional[int] = None

    def validate(self) -> "RunConfig":
        """Range checks for every parameter; raises ConfigError before any computation."""
        checks = [
            (0.0 < self.teleport_alpha < 1.0, f"teleport_alpha must lie in (0, 1), got {self.teleport_alpha}"),
            (self.mode in {m.value for m in TimeMode}, f"mode must be discrete or continuous, got {self.mode!r}"),
            (0.0 < self.t_min <= self.t_max, f"need 0 < t_min <= t_max, got {self.t_min}, {self.t_max}"),
            (self.n_times >= 1, f"n_times must be >= 1, got {self.n_times}"),
            (self.n_runs >= 1, f"n_runs must be >= 1, got {self.n_runs}"),
            (self.base_seed >= 0, f"base_seed must be >= 0, got {self.base_seed}"),
            (0.0 <= self.vi_threshold <= 1.0, f"vi_threshold must lie in [0, 1], got {self.vi_threshold}"),
            (0.0 < self.rbs_alpha < 1.0, f"rbs_alpha must lie in (0, 1), got {self.rbs_alpha}"),
            (self.k_max is None or self.k_max >= 1, f"k_max must be >= 1 or auto, got {self.k_max}"),
            (self.gamma > 0.0, f"gamma must be > 0, got {self.gamma}"),
            (self.k_neighbor >= 1, f"k_neighbor must be >= 1, got {self.k_neighbor}"),
            (self.top_communities >= 2, f"top_communities must be >= 2, got {self.top_communities}"),
            (self.workers is None or self.workers >= 1, f"workers must be >= 1, got {self.workers}"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        return self

    def with_overrides(self, overrides: Mapping[str, Any]) -> "RunConfig":
        """Replace fields whose override is not None; values may be strings."""
        known = {f.name: f for f in fields(self)}
        changes = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in known:
                raise ConfigError(f"unknown configuration key {key!r}")
            changes[key] = _coerce(key, known[key].type, value) if isinstance(value, str) else value
        return replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _coerce(key: str, annotation: Any, text: str) -> Any:
    text = text.strip()
    kind = str(annotation)
    if "Optional" in kind or "None" in kind:
        if text.lower() in {"", "none", "auto"}:
            return None
    try:
        if "bool" in kind:
            if text.lower() in {"1", "true", "yes", "on"}:
                return True
            if text.lower() in {"0", "false", "no", "off"}:
                return False
            raise ValueError(text)
        if "int" in kind:
            return int(text)
        if "float" in kind:
            return float(text)
    except ValueError:
        raise ConfigError(f"invalid value for {key}: {text!r}") from None
    return text


def load_config(path: Union[str, Path]) -> RunConfig:
    """Read a flat key = value file into a RunConfig (not yet validated)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    try:
        parser.read_string(f"[{SECTION}]\n{text}", source=str(path))
    except configparser.Error as exc:
        raise ConfigError(f"malformed config {path}: {exc}") from exc
    config = RunConfig().with_overrides(dict(parser[SECTION]))
    logger.info(f"Loaded configuration from {path}")
    return config


def resolve_workers(requested: Optional[int]) -> int:
    """--workers, else FLOWSCOPE_WORKERS, else the number of CPUs."""
    if requested is not None:
        return requested
    env = os.environ.get(WORKERS_ENV)
    if env:
        try:
            workers = int(env)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be an integer, got {env!r}") from None
        if workers < 1:
            raise ConfigError(f"{WORKERS_ENV} must be >= 1, got {workers}")
        return workers
    return os.cpu_count() or 1
