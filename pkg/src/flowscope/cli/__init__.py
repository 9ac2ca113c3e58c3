"""Command line, run configuration and the end-to-end pipeline."""

from .config import RunConfig, load_config, resolve_workers
from .main import build_parser, main
from .pipeline import Pipeline, PipelineResult, run_pipeline

__all__ = [
    "Pipeline",
    "PipelineResult",
    "RunConfig",
    "build_parser",
    "load_config",
    "main",
    "resolve_workers",
    "run_pipeline",
]
