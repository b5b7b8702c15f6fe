"""Deterministic slotted-time simulation loop and seeded replication.

Per-slot schedule (slot t >= 1):

1. the source makes one transition (one RNG draw);
2. the receiver's AoI grows by one;
3. the transmitter observes the new source state and decides;
4. a transmission consumes one channel draw; on success the sample is
   delivered and acknowledged, on failure the transmitter is NACKed and,
   under AgeAware only, the receiver substitutes its map prediction;
5. metrics are recorded on the post-update pair (X_t, Xhat_t).

Slot 0 initializes both ends synchronized (Xhat_0 = X_0, aoi = 0) and
records no metrics.  A transmission is uninformative when its value equals
the receiver's estimate immediately before delivery; uninformative counting
is per attempt.

The inner loop is JIT-compiled (numba) so that the million-slot runs used
for oracle comparisons finish in milliseconds; a replay test pins its
behaviour slot-by-slot to the pure protocol functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
from numba import njit

from .model import CostMatrix, ErasureChannel, MarkovSource, default_cost_matrix
from .protocol import (
    IDLE,
    AgeAware,
    ChangeAware,
    Decision,
    EndToEnd,
    PolicyKind,
    Transmit,
    Uniform,
    map_predict,
    policy_from_name,
)
from .rng import GOLDEN, derive_seed  # noqa: F401  (derive_seed is part of this module's API)

_U64 = np.uint64
_MASK64 = (1 << 64) - 1

# policy codes used inside the kernel
_UNIFORM, _AGE, _CHANGE, _E2E = 0, 1, 2, 3


@dataclass(frozen=True)
class SimConfig:
    """One simulation scenario: source, channel, policy, horizon, seed."""

    source: MarkovSource
    channel: ErasureChannel
    policy: PolicyKind
    slots: int
    seed: int
    cost: CostMatrix = field(default_factory=default_cost_matrix)
    trace: bool = False

    def __post_init__(self):
        if self.slots < 1:
            raise ValueError("slots must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if self.cost.n != self.source.n:
            raise ValueError("cost matrix size must match the source state count")

    @classmethod
    def two_state(
        cls,
        p: float,
        q: float,
        ps: float,
        policy: str | PolicyKind,
        *,
        slots: int,
        seed: int,
        period: int = 3,
        threshold: int = 3,
        cost: Optional[CostMatrix] = None,
        trace: bool = False,
    ) -> "SimConfig":
        """Convenience constructor for the two-state source scenarios."""
        from .model import two_state_source

        if isinstance(policy, str):
            policy = policy_from_name(policy, period=period, threshold=threshold)
        return cls(
            source=two_state_source(p, q),
            channel=ErasureChannel(ps),
            policy=policy,
            slots=slots,
            seed=seed,
            cost=cost if cost is not None else default_cost_matrix(),
            trace=trace,
        )


@dataclass(frozen=True)
class RunSummary:
    """Exact time averages of one run (slot 0 excluded)."""

    recon_error: float
    actuation_cost: float
    tx_rate: float
    uninformative_frac: float
    slots: int
    seed: int


@dataclass(frozen=True)
class SlotTrace:
    """Post-update snapshot of one slot."""

    slot: int
    source_state: int
    estimate: int
    aoi: int
    decision: Decision
    delivered: Optional[bool]
    uninformative: Optional[bool]


@dataclass(frozen=True)
class SimResult:
    """Run summary plus RNG accounting (and the trace when requested)."""

    summary: RunSummary
    trace: Optional[list[SlotTrace]]
    source_draws: int
    channel_draws: int
    final_rng_state: int


@njit(cache=True)
def _kernel(
    transitions,
    x0,
    ps,
    policy_code,
    period,
    threshold,
    cost,
    predict_map,
    slots,
    seed,
    want_trace,
    tr_source,
    tr_estimate,
    tr_aoi,
    tr_txval,
    tr_txgen,
    tr_delivered,
    tr_uninf,
):
    GOLD = _U64(0x9E3779B97F4A7C15)
    M1 = _U64(0xBF58476D1CE4E5B9)
    M2 = _U64(0x94D049BB133111EB)
    S30 = _U64(30)
    S27 = _U64(27)
    S31 = _U64(31)
    S11 = _U64(11)
    INV53 = 1.0 / 9007199254740992.0

    state = seed
    n = transitions.shape[0]
    x = x0
    est = x0
    aoi = 0

    pending = False
    prev = x0
    counter = 0
    stored_value = 0
    stored_gen = 0
    stored_acked = True

    mism = 0
    cost_sum = 0.0
    tx_count = 0
    uninf_count = 0
    channel_draws = 0

    for t in range(1, slots + 1):
        # source transition, one draw
        state = state + GOLD
        z = state
        z = (z ^ (z >> S30)) * M1
        z = (z ^ (z >> S27)) * M2
        z = z ^ (z >> S31)
        u = (z >> S11) * INV53
        row = transitions[x]
        nxt = n - 1
        acc = 0.0
        for j in range(n - 1):
            acc += row[j]
            if u < acc:
                nxt = j
                break
        x = nxt

        aoi += 1

        do_tx = False
        tx_value = 0
        tx_gen = 0
        if policy_code == 3:  # end-to-end
            if x != est:
                do_tx = True
                tx_value = x
                tx_gen = t
        elif policy_code == 2:  # change-aware
            if x != prev:
                pending = True
            if pending:
                do_tx = True
                tx_value = x
                tx_gen = t
        elif policy_code == 1:  # age-aware
            if aoi >= threshold:
                do_tx = True
                tx_value = x
                tx_gen = t
        else:  # uniform
            if counter % period == 0:
                stored_value = x
                stored_gen = t
                stored_acked = False
                counter = 1
            else:
                counter += 1
            if not stored_acked:
                do_tx = True
                tx_value = stored_value
                tx_gen = stored_gen
        prev = x

        delivered_flag = -1
        uninf_flag = -1
        if do_tx:
            state = state + GOLD
            z = state
            z = (z ^ (z >> S30)) * M1
            z = (z ^ (z >> S27)) * M2
            z = z ^ (z >> S31)
            u2 = (z >> S11) * INV53
            channel_draws += 1
            tx_count += 1
            uninf = tx_value == est
            if uninf:
                uninf_count += 1
            uninf_flag = 1 if uninf else 0
            if u2 < ps:
                est = tx_value
                aoi = t - tx_gen
                if policy_code == 2:
                    pending = False
                elif policy_code == 0:
                    stored_acked = True
                delivered_flag = 1
            else:
                if policy_code == 1:
                    est = predict_map[est]
                delivered_flag = 0

        if x != est:
            mism += 1
        cost_sum += cost[x, est]

        if want_trace:
            i = t - 1
            tr_source[i] = x
            tr_estimate[i] = est
            tr_aoi[i] = aoi
            tr_txval[i] = tx_value if do_tx else -1
            tr_txgen[i] = tx_gen if do_tx else -1
            tr_delivered[i] = delivered_flag
            tr_uninf[i] = uninf_flag

    return mism, cost_sum, tx_count, uninf_count, channel_draws, state


def _policy_code(policy: PolicyKind) -> tuple[int, int, int]:
    if isinstance(policy, Uniform):
        return _UNIFORM, policy.period, 1
    if isinstance(policy, AgeAware):
        return _AGE, 1, policy.threshold
    if isinstance(policy, ChangeAware):
        return _CHANGE, 1, 1
    if isinstance(policy, EndToEnd):
        return _E2E, 1, 1
    raise TypeError(f"unknown policy kind {policy!r}")


def simulate(config: SimConfig, collect_trace: Optional[bool] = None) -> SimResult:
    """Run one seeded simulation and return summary plus RNG accounting."""
    want_trace = config.trace if collect_trace is None else collect_trace
    code, period, threshold = _policy_code(config.policy)
    n = config.source.n
    predict = np.array([map_predict(config.source, s) for s in range(n)], dtype=np.int64)

    size = config.slots if want_trace else 1
    tr_source = np.empty(size, dtype=np.int64)
    tr_estimate = np.empty(size, dtype=np.int64)
    tr_aoi = np.empty(size, dtype=np.int64)
    tr_txval = np.empty(size, dtype=np.int64)
    tr_txgen = np.empty(size, dtype=np.int64)
    tr_delivered = np.empty(size, dtype=np.int64)
    tr_uninf = np.empty(size, dtype=np.int64)

    mism, cost_sum, tx_count, uninf_count, channel_draws, final_state = _kernel(
        config.source.transitions,
        int(config.source.initial_state),
        float(config.channel.ps),
        code,
        period,
        threshold,
        config.cost.costs,
        predict,
        config.slots,
        _U64(config.seed),
        want_trace,
        tr_source,
        tr_estimate,
        tr_aoi,
        tr_txval,
        tr_txgen,
        tr_delivered,
        tr_uninf,
    )

    slots = config.slots
    summary = RunSummary(
        recon_error=mism / slots,
        actuation_cost=cost_sum / slots,
        tx_rate=tx_count / slots,
        uninformative_frac=(uninf_count / tx_count) if tx_count > 0 else 0.0,
        slots=slots,
        seed=config.seed,
    )

    trace = None
    if want_trace:
        trace = []
        for i in range(slots):
            if tr_txval[i] >= 0:
                decision: Decision = Transmit(int(tr_txval[i]), int(tr_txgen[i]))
                delivered = bool(tr_delivered[i])
                uninformative = bool(tr_uninf[i])
            else:
                decision = IDLE
                delivered = None
                uninformative = None
            trace.append(
                SlotTrace(
                    slot=i + 1,
                    source_state=int(tr_source[i]),
                    estimate=int(tr_estimate[i]),
                    aoi=int(tr_aoi[i]),
                    decision=decision,
                    delivered=delivered,
                    uninformative=uninformative,
                )
            )

    return SimResult(
        summary=summary,
        trace=trace,
        source_draws=slots,
        channel_draws=int(channel_draws),
        final_rng_state=int(final_state),
    )


def run(config: SimConfig) -> RunSummary:
    """Simulate one scenario and return its exact time averages."""
    return simulate(config, collect_trace=False).summary


def run_with_trace(config: SimConfig) -> tuple[RunSummary, list[SlotTrace]]:
    """Like :func:`run` but also returns the per-slot trace."""
    result = simulate(config, collect_trace=True)
    return result.summary, result.trace


@dataclass(frozen=True)
class MetricStats:
    mean: float
    stderr: float


@dataclass(frozen=True)
class ReplicateSummary:
    """Across-replication mean and standard error for each metric."""

    recon_error: MetricStats
    actuation_cost: MetricStats
    tx_rate: MetricStats
    uninformative_frac: MetricStats
    n_runs: int
    base_seed: int
    slots: int


def _stats(values: list[float]) -> MetricStats:
    n = len(values)
    mean = sum(values) / n  # fixed index order, bit-reproducible
    if n == 1:
        return MetricStats(mean=mean, stderr=0.0)
    var = sum((v - mean) ** 2 for v in values) / (n - 1)
    return MetricStats(mean=mean, stderr=math.sqrt(var / n))


def replicate(config: SimConfig, n_runs: int) -> ReplicateSummary:
    """Run ``n_runs`` independent replications with derived seeds.

    Replication ``i`` uses ``derive_seed(config.seed, i)``; aggregation is a
    fixed-order sum, so the result does not depend on execution order.
    """
    if n_runs < 1:
        raise ValueError("n_runs must be >= 1")
    summaries = [run(replace(config, seed=derive_seed(config.seed, i))) for i in range(n_runs)]
    return ReplicateSummary(
        recon_error=_stats([s.recon_error for s in summaries]),
        actuation_cost=_stats([s.actuation_cost for s in summaries]),
        tx_rate=_stats([s.tx_rate for s in summaries]),
        uninformative_frac=_stats([s.uninformative_frac for s in summaries]),
        n_runs=n_runs,
        base_seed=config.seed,
        slots=config.slots,
    )
