#!/usr/bin/env python3
"""
Random Walker Simulation

Discrete-event (SimPy) simulation of independent continuous-time walkers on a
MarkovOperator. Each walker waits an exponential holding time at rate
`system.rate`, then jumps according to one step of the kernel. The empirical
distribution of walker positions at Markov time t estimates a row of P(t).
"""

import logging
from dataclasses import dataclass
from typing import List

import numpy as np
import simpy

from ..errors import ParameterError
from .transition import MarkovOperator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WalkerSample:
    """Empirical position distribution of simulated walkers."""
    start_node: int
    markov_time: float
    n_walkers: int
    distribution: np.ndarray
    total_jumps: int

    @property
    def mean_jumps(self) -> float:
        return self.total_jumps / self.n_walkers if self.n_walkers else 0.0


class WalkerSimulation:
    """Walkers as SimPy processes sharing one seeded generator."""

    def __init__(self, system: MarkovOperator, seed: int = 0):
        self.system = system
        self.env = simpy.Environment()
        self.rng = np.random.Generator(np.random.Philox(seed))
        self.positions: List[int] = []
        self.jumps = 0

    def _walker(self, walker_id: int):
        while True:
            yield self.env.timeout(self.rng.exponential(1.0 / self.system.rate))
            self.positions[walker_id] = self.system.sample_next(self.positions[walker_id], self.rng)
            self.jumps += 1

    def run(self, start_node: int, markov_time: float, n_walkers: int) -> WalkerSample:
        self.positions = [start_node] * n_walkers
        for walker_id in range(n_walkers):
            self.env.process(self._walker(walker_id))
        self.env.run(until=markov_time)

        counts = np.bincount(np.asarray(self.positions, dtype=np.int64), minlength=self.system.n_nodes)
        return WalkerSample(
            start_node=start_node,
            markov_time=markov_time,
            n_walkers=n_walkers,
            distribution=counts / n_walkers,
            total_jumps=self.jumps,
        )


def simulate_walkers(system: MarkovOperator, start_node: int, t: float,
                     n_walkers: int = 1000, seed: int = 0) -> WalkerSample:
    """Monte Carlo estimate of row `start_node` of the continuous-time P(t)."""
    if not 0 <= start_node < system.n_nodes:
        raise ParameterError(f"start_node {start_node} outside 0..{system.n_nodes - 1}")
    if t <= 0:
        raise ParameterError(f"Markov time must be > 0 for a simulation, got {t}")
    if n_walkers < 1:
        raise ParameterError("n_walkers must be >= 1")
    sample = WalkerSimulation(system, seed=seed).run(start_node, t, n_walkers)
    logger.info(f"Simulated {n_walkers} walkers from node {start_node} to t={t}: "
                f"{sample.mean_jumps:.2f} jumps per walker")
    return sample
