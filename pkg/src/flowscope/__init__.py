"""
flowscope: flow-based community and role analysis of directed networks.

Markov Stability with PageRank-style teleportation across Markov time,
role-based similarity with relaxed minimum spanning trees, and
between-community bridgeness.
"""

__version__ = "0.1.0"
