"""Flow roles: role-based similarity, relaxed MST and role extraction."""

from .extraction import RoleReport, RoleSummary, extract_roles, role_summaries
from .profiles import (
    DEFAULT_RBS_ALPHA,
    ProfileMatrix,
    SimilarityMatrix,
    leading_eigenvalue,
    profile_matrix,
    rbs_similarity,
)
from .rmst import DEFAULT_GAMMA, DEFAULT_K_NEIGHBOR, RmstGraph, minimum_spanning_tree, rmst

__all__ = [
    "DEFAULT_GAMMA",
    "DEFAULT_K_NEIGHBOR",
    "DEFAULT_RBS_ALPHA",
    "ProfileMatrix",
    "RmstGraph",
    "RoleReport",
    "RoleSummary",
    "SimilarityMatrix",
    "extract_roles",
    "leading_eigenvalue",
    "minimum_spanning_tree",
    "profile_matrix",
    "rbs_similarity",
    "rmst",
    "role_summaries",
]
