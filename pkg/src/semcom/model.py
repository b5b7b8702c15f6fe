"""Stochastic building blocks: Markov sources, erasure channels, actuation costs.

All types are immutable after construction (arrays are made read-only) and can
be shared freely across threads; random streams are owned by a single run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .rng import SplitMix64

ROW_SUM_TOL = 1e-12
STATIONARY_RESIDUAL_TOL = 1e-12
MAX_DIRECT_SOLVE_STATES = 1024


class NoStationaryError(ValueError):
    """The chain has no unique stationary distribution."""


def _readonly(a) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class MarkovSource:
    """Finite-state discrete-time Markov chain with a row-stochastic matrix.

    ``transitions[i][j]`` is the probability of moving from state ``i`` to
    state ``j`` in one slot.  The monitored process starts in
    ``initial_state``.
    """

    transitions: np.ndarray
    initial_state: int = 0

    def __post_init__(self):
        object.__setattr__(self, "transitions", _readonly(self.transitions))
        t = self.transitions
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise ValueError("transition matrix must be square")
        if t.shape[0] < 2:
            raise ValueError("a source needs at least 2 states")
        if np.any(t < 0.0) or np.any(t > 1.0):
            raise ValueError("transition probabilities must lie in [0, 1]")
        bad = np.max(np.abs(t.sum(axis=1) - 1.0))
        if bad > ROW_SUM_TOL:
            raise ValueError(f"transition rows must sum to 1 (off by {bad:.3g})")
        if not 0 <= int(self.initial_state) < t.shape[0]:
            raise ValueError("initial_state out of range")

    @property
    def n(self) -> int:
        return self.transitions.shape[0]


@dataclass(frozen=True)
class ErasureChannel:
    """Per-slot i.i.d. Bernoulli delivery: success with probability ``ps``."""

    ps: float

    def __post_init__(self):
        if not 0.0 <= self.ps <= 1.0:
            raise ValueError("ps must lie in [0, 1]")


@dataclass(frozen=True)
class CostMatrix:
    """Actuation penalty indexed ``costs[true_state][estimated_state]``.

    The diagonal is zero (no penalty when the reconstruction is right) and
    off-diagonal entries may be asymmetric: acting on one kind of wrong
    belief can be far more damaging than the other.
    """

    costs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "costs", _readonly(self.costs))
        c = self.costs
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("cost matrix must be square")
        if np.any(c < 0.0):
            raise ValueError("costs must be non-negative")
        if np.any(np.diag(c) != 0.0):
            raise ValueError("cost of a correct reconstruction must be 0")

    @property
    def n(self) -> int:
        return self.costs.shape[0]


def default_cost_matrix() -> CostMatrix:
    """Two-state default: penalty 1 when the truth is state 0 but the
    receiver believes state 1, penalty 5 in the opposite direction."""
    return CostMatrix(np.array([[0.0, 1.0], [5.0, 0.0]]))


def two_state_source(p: float, q: float) -> MarkovSource:
    """Two-state source where ``p`` and ``q`` are the *stay* probabilities of
    states 0 and 1.

    With this reading (0.95, 0.9) is a slowly changing source and (0.8, 0.3)
    a rapidly changing one.  The transition matrix is
    ``[[p, 1-p], [1-q, q]]`` and the process starts in state 0.
    """
    if not (0.0 <= p <= 1.0 and 0.0 <= q <= 1.0):
        raise ValueError("p and q must lie in [0, 1]")
    return MarkovSource(np.array([[p, 1.0 - p], [1.0 - q, q]]), initial_state=0)


def sample_transition(source: MarkovSource, state: int, rng: SplitMix64) -> int:
    """Draw the next state from row ``state``; consumes exactly one uniform."""
    n = source.n
    if not 0 <= state < n:
        raise ValueError("state out of range")
    u = rng.uniform()
    row = source.transitions[state]
    acc = 0.0
    for j in range(n - 1):
        acc += row[j]
        if u < acc:
            return j
    return n - 1


def attempt_transmission(channel: ErasureChannel, rng: SplitMix64) -> bool:
    """True (delivered) with probability ``ps``; consumes exactly one uniform."""
    return rng.uniform() < channel.ps


def _terminal_class_count(matrix: np.ndarray) -> tuple[int, int]:
    """(number of strongly connected components, number of terminal ones)."""
    graph = csr_matrix(matrix > 0.0)
    n_comp, labels = connected_components(graph, directed=True, connection="strong")
    leaky = set()
    rows, cols = (matrix > 0.0).nonzero()
    for i, j in zip(rows, cols):
        if labels[i] != labels[j]:
            leaky.add(labels[i])
    return n_comp, n_comp - len(leaky)


def stationary_of_matrix(matrix: np.ndarray, tol: float = STATIONARY_RESIDUAL_TOL) -> np.ndarray:
    """Unique pi with ``pi @ P = pi`` and ``sum(pi) = 1`` for a unichain.

    Direct dense solve: one balance equation is replaced by the
    normalization row, which is well posed whenever the chain has exactly
    one recurrent class (transient states receive mass 0).  Raises
    NoStationaryError when the recurrent class is not unique.
    """
    P = np.asarray(matrix, dtype=float)
    n = P.shape[0]
    if n > MAX_DIRECT_SOLVE_STATES:
        raise ValueError(f"direct solve limited to {MAX_DIRECT_SOLVE_STATES} states")
    _, terminal = _terminal_class_count(P)
    if terminal != 1:
        raise NoStationaryError("no unique stationary distribution")
    A = P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    pi = np.linalg.solve(A, b)
    pi[np.abs(pi) < 1e-13] = 0.0  # transient states carry exactly zero mass
    if np.any(pi < 0.0):
        raise NoStationaryError("stationary solve produced negative mass")
    pi = pi / pi.sum()
    residual = np.max(np.abs(pi @ P - pi))
    if residual > tol:
        raise NoStationaryError(f"stationary solve residual {residual:.3g} above {tol:.3g}")
    return pi


def stationary_distribution(source: MarkovSource) -> np.ndarray:
    """Stationary vector of an irreducible source chain.

    Reducible chains (including the frozen p = q = 1 source) are rejected:
    their long-run behaviour depends on the start state, so no unique
    stationary distribution exists.
    """
    n_comp, _ = _terminal_class_count(source.transitions)
    if n_comp != 1:
        raise NoStationaryError("no unique stationary distribution")
    return stationary_of_matrix(source.transitions)
