"""Seeded benchmark graphs with planted ground truth."""

from .generators import PlantedGraph, directed_sbm, layered_flow_graph, write_planted

__all__ = ["PlantedGraph", "directed_sbm", "layered_flow_graph", "write_planted"]
