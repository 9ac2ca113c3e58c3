#!/usr/bin/env python3
"""
Audience Overlap

Set arithmetic over the external followers of each community: how many
unique followers each has, and how many of them follow no other community.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Mapping, Set, Union

from ..errors import ParameterError, ParseError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AudienceRow:
    community: str
    unique_followers: int
    exclusive_followers: int

    @property
    def exclusive_percent(self) -> float:
        if self.unique_followers == 0:
            return 0.0
        return 100.0 * self.exclusive_followers / self.unique_followers


@dataclass(frozen=True)
class AudienceReport:
    rows: List[AudienceRow]
    global_unique: int


def audience_overlap(community_followers: Mapping[str, Set[str]]) -> AudienceReport:
    """Per community: unique followers and the share following only that community."""
    if not community_followers:
        raise ParameterError("no follower sets given")
    memberships = Counter()
    for followers in community_followers.values():
        memberships.update(set(followers))

    rows = []
    for community in sorted(community_followers):
        followers = set(community_followers[community])
        exclusive = sum(1 for follower in followers if memberships[follower] == 1)
        rows.append(AudienceRow(community=community, unique_followers=len(followers),
                                exclusive_followers=exclusive))
    logger.info(f"Audience overlap: {len(rows)} communities, {len(memberships)} unique followers")
    return AudienceReport(rows=rows, global_unique=len(memberships))


def load_follower_sets(path: Union[str, Path]) -> Dict[str, Set[str]]:
    """Read `community_label,follower_label` lines; '#' lines and blank lines are skipped."""
    path = Path(path)
    sets: Dict[str, Set[str]] = {}
    with open(path, "r", encoding="utf-8") as f:
        for line_number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [value.strip() for value in line.split(",")]
            if len(fields) != 2 or not all(fields):
                raise ParseError("expected community_label,follower_label", line_number, path)
            sets.setdefault(fields[0], set()).add(fields[1])
    if not sets:
        raise ParameterError(f"{path} holds no follower sets")
    return sets
