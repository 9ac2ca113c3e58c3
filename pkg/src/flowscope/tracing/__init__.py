"""Stage tracing and run manifests."""

from .stage_tracer import StageStatus, StageTrace, StageTracer, package_versions

__all__ = ["StageStatus", "StageTrace", "StageTracer", "package_versions"]
