"""Community analysis: bridgeness, cross-tabulation, friend proportions, audience overlap."""

from .audience import AudienceReport, AudienceRow, audience_overlap, load_follower_sets
from .bridgeness import BridgeEdge, BridgenessReport, edge_bridgeness, endpoint_profile
from .crosstab import CrossTab, RowTest, cross_tabulate, row_chi_square
from .friends import FriendProportions, coarse_grain, community_coverage, external_friend_proportion

__all__ = [
    "AudienceReport",
    "AudienceRow",
    "BridgeEdge",
    "BridgenessReport",
    "CrossTab",
    "FriendProportions",
    "RowTest",
    "audience_overlap",
    "coarse_grain",
    "community_coverage",
    "cross_tabulate",
    "edge_bridgeness",
    "endpoint_profile",
    "external_friend_proportion",
    "load_follower_sets",
    "row_chi_square",
]
