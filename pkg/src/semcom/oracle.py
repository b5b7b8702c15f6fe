"""Exact expected metrics via stationary analysis of the joint chain.

For each policy the reachable joint (source, estimate, policy-memory) state
space is enumerated and its one-slot transition kernel is built by composing
source step, decision, Bernoulli channel branch and receiver update in the
same order the simulator uses.  The stationary distribution of that chain
then yields the exact long-run value of every simulated metric, making this
module the ground truth the Monte Carlo engine is checked against.

State tuples always start with (source_state, estimate, ...); the policy
memory follows:

* EndToEnd:   (x, xhat)
* ChangeAware:(x, xhat, pending)
* AgeAware:   (x, xhat, capped_aoi)      AoI capped at the threshold, which
                                         is lossless because the decision
                                         only tests aoi >= threshold
* Uniform:    (x, xhat, phase, stored_value, unacked)
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import SimConfig
from .model import CostMatrix, NoStationaryError, stationary_of_matrix, _terminal_class_count
from .protocol import AgeAware, ChangeAware, EndToEnd, Uniform, map_predict

STATIONARY_TOL = 1e-12


@dataclass(frozen=True)
class JointChain:
    """Reachable joint chain plus per-state metric labels.

    ``mismatch`` and ``cost`` are evaluated on the (post-update) state
    itself; ``transmit`` and ``uninformative`` are the expected number of
    (uninformative) transmission attempts in the slot that *starts* from the
    state.  Under the stationary law both views are time averages over the
    same slot sequence, so exact_summary may mix them.
    """

    states: tuple
    matrix: np.ndarray
    mismatch: np.ndarray
    cost: np.ndarray
    transmit: np.ndarray
    uninformative: np.ndarray


def _row_support(row: np.ndarray):
    for j in range(row.shape[0]):
        if row[j] > 0.0:
            yield j, float(row[j])


def _branches_e2e(s, P, ps):
    x, xh = s
    for x2, px in _row_support(P[x]):
        if x2 == xh:
            yield px, (x2, xh), False, False
        else:
            if ps > 0.0:
                yield px * ps, (x2, x2), True, False
            if ps < 1.0:
                yield px * (1.0 - ps), (x2, xh), True, False


def _branches_change(s, P, ps):
    x, xh, pending = s
    for x2, px in _row_support(P[x]):
        armed = pending == 1 or x2 != x
        if not armed:
            yield px, (x2, xh, 0), False, False
        else:
            uninf = x2 == xh
            if ps > 0.0:
                yield px * ps, (x2, x2, 0), True, uninf
            if ps < 1.0:
                yield px * (1.0 - ps), (x2, xh, 1), True, uninf


def _branches_age(s, P, ps, threshold, cap, predict):
    x, xh, a = s
    for x2, px in _row_support(P[x]):
        a2 = min(a + 1, cap)
        if a2 < threshold:
            yield px, (x2, xh, a2), False, False
        else:
            uninf = x2 == xh
            if ps > 0.0:
                yield px * ps, (x2, x2, 0), True, uninf
            if ps < 1.0:
                yield px * (1.0 - ps), (x2, predict[xh], a2), True, uninf


def _branches_uniform(s, P, ps, period):
    x, xh, phase, v, unacked = s
    for x2, px in _row_support(P[x]):
        if phase == 0:
            v2, owe = x2, 1
        else:
            v2, owe = v, unacked
        phase2 = (phase + 1) % period
        if not owe:
            yield px, (x2, xh, phase2, v2, 0), False, False
        else:
            uninf = v2 == xh
            if ps > 0.0:
                yield px * ps, (x2, v2, phase2, v2, 0), True, uninf
            if ps < 1.0:
                yield px * (1.0 - ps), (x2, xh, phase2, v2, 1), True, uninf


def build_joint_chain(config: SimConfig, aoi_cap: int | None = None) -> JointChain:
    """Enumerate the reachable joint state space and its transition kernel.

    ``aoi_cap`` (AgeAware only) defaults to the threshold; any cap at or
    above the threshold produces the same stationary metrics.
    """
    P = config.source.transitions
    ps = config.channel.ps
    x0 = int(config.source.initial_state)
    policy = config.policy

    n_comp, _ = _terminal_class_count(P)
    if n_comp != 1:
        raise NoStationaryError("no unique stationary distribution (reducible source)")

    if isinstance(policy, EndToEnd):
        start = (x0, x0)
        branches = lambda s: _branches_e2e(s, P, ps)
    elif isinstance(policy, ChangeAware):
        start = (x0, x0, 0)
        branches = lambda s: _branches_change(s, P, ps)
    elif isinstance(policy, AgeAware):
        cap = policy.threshold if aoi_cap is None else aoi_cap
        if cap < policy.threshold:
            raise ValueError("aoi_cap below the threshold would change the dynamics")
        predict = tuple(map_predict(config.source, s) for s in range(config.source.n))
        start = (x0, x0, 0)
        branches = lambda s: _branches_age(s, P, ps, policy.threshold, cap, predict)
    elif isinstance(policy, Uniform):
        start = (x0, x0, 0, x0, 0)
        branches = lambda s: _branches_uniform(s, P, ps, policy.period)
    else:
        raise TypeError(f"unsupported policy {policy!r}")

    # breadth-first closure over reachable states
    index: dict[tuple, int] = {start: 0}
    states: list[tuple] = [start]
    rows: list[list[tuple[int, float]]] = []
    tx_label: list[float] = []
    uninf_label: list[float] = []
    frontier = 0
    while frontier < len(states):
        s = states[frontier]
        frontier += 1
        row: dict[int, float] = {}
        tx_mass = 0.0
        uninf_mass = 0.0
        for prob, s2, tx, uninf in branches(s):
            if s2 not in index:
                index[s2] = len(states)
                states.append(s2)
            j = index[s2]
            row[j] = row.get(j, 0.0) + prob
            if tx:
                tx_mass += prob
                if uninf:
                    uninf_mass += prob
        rows.append(sorted(row.items()))
        tx_label.append(tx_mass)
        uninf_label.append(uninf_mass)

    m = len(states)
    matrix = np.zeros((m, m))
    for i, row_items in enumerate(rows):
        for j, prob in row_items:
            matrix[i, j] = prob
    rowsum_err = np.max(np.abs(matrix.sum(axis=1) - 1.0))
    if rowsum_err > 1e-12:
        raise AssertionError(f"joint chain rows not stochastic (off by {rowsum_err:.3g})")

    mismatch = np.array([1.0 if s[0] != s[1] else 0.0 for s in states])
    cost = np.array([config.cost.costs[s[0], s[1]] for s in states])
    return JointChain(
        states=tuple(states),
        matrix=matrix,
        mismatch=mismatch,
        cost=cost,
        transmit=np.array(tx_label),
        uninformative=np.array(uninf_label),
    )


def stationary(chain: JointChain, tol: float = STATIONARY_TOL) -> np.ndarray:
    """Stationary vector of the joint chain (direct linear solve).

    Startup-only states (reachable but not recurrent, e.g. the synchronized
    start under ps = 0) carry zero mass; a chain without a unique recurrent
    class raises NoStationaryError.
    """
    return stationary_of_matrix(chain.matrix, tol=tol)


@dataclass(frozen=True)
class ExactSummary:
    """Exact long-run metrics, shaped like the engine's RunSummary."""

    recon_error: float
    actuation_cost: float
    tx_rate: float
    uninformative_frac: float


def exact_summary(chain: JointChain, pi: np.ndarray, cost: CostMatrix | None = None) -> ExactSummary:
    """Expected per-slot metrics under the stationary law ``pi``."""
    cost_label = chain.cost if cost is None else np.array(
        [cost.costs[s[0], s[1]] for s in chain.states]
    )
    tx_rate = float(pi @ chain.transmit)
    uninf_mass = float(pi @ chain.uninformative)
    return ExactSummary(
        recon_error=float(pi @ chain.mismatch),
        actuation_cost=float(pi @ cost_label),
        tx_rate=tx_rate,
        uninformative_frac=(uninf_mass / tx_rate) if tx_rate > 0.0 else 0.0,
    )


def oracle_summary(config: SimConfig, aoi_cap: int | None = None) -> ExactSummary:
    """Build, solve and summarize the joint chain for one scenario."""
    chain = build_joint_chain(config, aoi_cap=aoi_cap)
    pi = stationary(chain)
    return exact_summary(chain, pi)
