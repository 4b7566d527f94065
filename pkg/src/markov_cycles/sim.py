"""Gillespie trajectories and empirical currents.

Randomness: trajectory ``index`` under ``seed`` draws from
``numpy.random.default_rng(SeedSequence(seed, spawn_key=(index,)))``, in
blocks of :data:`BLOCK` exponentials followed by :data:`BLOCK` uniforms.  The
trajectory is therefore a function of ``(generator, start, horizon, seed,
index)`` only, identical with or without JIT.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .chain import Distribution, Generator
from .errors import BadHorizon, BadIndex, EmptyTrajectory

BLOCK = 1 << 15


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Visited states (1-based) and the time spent in each."""

    states: np.ndarray
    holding_times: np.ndarray
    total_time: float

    def __len__(self) -> int:
        return self.states.shape[0]


@dataclass(frozen=True, eq=False)
class CurrentEstimate:
    j_hat: np.ndarray
    stderr: np.ndarray
    total_time: float


def stream(seed: int, index: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def _jump_table(q: np.ndarray):
    rates = np.where(np.eye(q.shape[0], dtype=bool), 0.0, q)
    exit_rates = rates.sum(axis=1)
    cum = np.cumsum(rates, axis=1)
    # dividing by the row total makes every row end in exactly 1.0
    cum /= cum[:, -1:]
    return np.ascontiguousarray(cum), exit_rates


def simulate(g: Generator, start: int, horizon: float, seed: int, index: int = 0) -> Trajectory:
    """Sample a path from state ``start`` on ``[0, horizon]``; the last sojourn is truncated."""
    if not horizon > 0 or not np.isfinite(horizon):
        raise BadHorizon(f"horizon must be positive and finite, got {horizon}")
    if not (1 <= start <= g.n):
        raise BadIndex(f"start state {start} outside 1..{g.n}")
    cum, exit_rates = _jump_table(g.as_float().q)
    if np.any(exit_rates <= 0):
        raise BadIndex("every state needs a positive exit rate")
    rng = stream(seed, index)
    state, t = start - 1, 0.0
    states, times = [], []
    done = False
    while not done:
        expo = rng.standard_exponential(BLOCK)
        unif = rng.random(BLOCK)
        out_s = np.empty(BLOCK, dtype=np.int64)
        out_t = np.empty(BLOCK)
        m, state, t, done = _kernels.gillespie_block(cum, exit_rates, state, t, float(horizon), expo, unif, out_s, out_t)
        states.append(out_s[:m])
        times.append(out_t[:m])
    return Trajectory(np.concatenate(states) + 1, np.concatenate(times), float(horizon))


def _check(t: Trajectory, n: int) -> None:
    if len(t) == 0 or not t.total_time > 0:
        raise EmptyTrajectory("trajectory has no sojourns")
    if t.states.min() < 1 or t.states.max() > n:
        raise BadIndex(f"trajectory visits states outside 1..{n}")


def empirical_currents(t: Trajectory, n: int) -> CurrentEstimate:
    """Net jump counts per unit time, ``(#i->j - #j->i) / T``, with Poisson standard errors."""
    _check(t, n)
    counts = _kernels.transition_counts(np.ascontiguousarray(t.states - 1), n)
    j_hat = (counts - counts.T) / t.total_time
    stderr = np.sqrt(counts + counts.T) / t.total_time
    return CurrentEstimate(j_hat, stderr, t.total_time)


def empirical_occupation(t: Trajectory, n: int, burn_in: float = 0.0) -> Distribution:
    """Fraction of time spent in each state after discarding ``[0, burn_in)``."""
    _check(t, n)
    if not (0 <= burn_in < t.total_time):
        raise BadHorizon(f"burn-in {burn_in} must lie in [0, {t.total_time})")
    ends = np.cumsum(t.holding_times)
    kept = np.clip(ends - burn_in, 0.0, t.holding_times)
    occ = np.bincount(t.states - 1, weights=kept, minlength=n)
    return Distribution(occ / occ.sum())
