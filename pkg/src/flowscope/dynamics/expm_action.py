"""
Action of exp(-t·rate·(I - M)) on a block of vectors for a stochastic M.

Scaled, truncated Taylor series in uniformized form:

    exp(-τ(I - M)) B = Σ_k e^{-τ} τ^k / k! · M^k B

The Markov time is split into steps of at most `max_step` so the Poisson
weights stay representable; each step truncates the series once the next
weight drops below `tol` and renormalizes the kept weights to sum to one, so
stochastic columns stay stochastic. Every term is a nonnegative combination
of M^k B, which avoids the cancellation of the plain Taylor series of -t(I - M).
"""

import math
from typing import Callable, List

import numpy as np

from ..errors import ParameterError

Apply = Callable[[np.ndarray], np.ndarray]

DEFAULT_MAX_STEP = 4.0
DEFAULT_TOL = 1e-16


def poisson_weights(tau: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Truncated, renormalized Poisson(tau) probabilities e^{-tau} tau^k / k!."""
    if tau < 0:
        raise ParameterError(f"tau must be >= 0, got {tau}")
    term = math.exp(-tau)
    weights: List[float] = [term]
    k = 0
    # past the mode the tail is bounded by twice the current term once k > 2·tau
    while k <= 2 * tau or term > tol:
        k += 1
        term *= tau / k
        weights.append(term)
        if k > 10000:
            break
    weights_array = np.asarray(weights)
    return weights_array / weights_array.sum()


def expm_action(apply: Apply, block: np.ndarray, t: float, rate: float = 1.0,
                max_step: float = DEFAULT_MAX_STEP, tol: float = DEFAULT_TOL) -> np.ndarray:
    """exp(-t·rate·(I - M)) @ block, where `apply(B)` returns M @ B."""
    if t < 0:
        raise ParameterError(f"Markov time must be >= 0, got {t}")
    result = np.array(block, dtype=np.float64, copy=True)
    total = t * rate
    if total == 0.0:
        return result
    n_steps = max(1, math.ceil(total / max_step))
    weights = poisson_weights(total / n_steps, tol=tol)
    for _ in range(n_steps):
        power = result
        accumulated = weights[0] * power
        for weight in weights[1:]:
            power = apply(power)
            accumulated += weight * power
        result = accumulated
    return result
