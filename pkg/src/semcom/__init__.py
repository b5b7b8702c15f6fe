"""Semantics-aware sampling and remote reconstruction toolkit.

A slotted-time Monte Carlo engine and an exact joint-chain oracle for four
sampling/transmission policies (uniform, age-aware, change-aware, end-to-end)
tracking a finite-state Markov source over an erasure channel, plus a small
library of semantics-of-information measures.
"""

from .engine import (
    MetricStats,
    ReplicateSummary,
    RunSummary,
    SimConfig,
    SimResult,
    SlotTrace,
    derive_seed,
    replicate,
    run,
    run_with_trace,
    simulate,
)
from .model import (
    CostMatrix,
    ErasureChannel,
    MarkovSource,
    NoStationaryError,
    attempt_transmission,
    default_cost_matrix,
    sample_transition,
    stationary_distribution,
    two_state_source,
)
from .oracle import ExactSummary, JointChain, build_joint_chain, exact_summary, oracle_summary, stationary
from .protocol import (
    IDLE,
    AgeAware,
    ChangeAware,
    Decision,
    EndToEnd,
    Idle,
    PolicyKind,
    ReceiverState,
    Sample,
    Transmit,
    TransmitterState,
    Uniform,
    advance_slot,
    apply_ack,
    apply_delivery,
    apply_prediction_on_failure,
    decide,
    initial_receiver_state,
    initial_transmitter_state,
    map_predict,
    policy_from_name,
    policy_name,
)
from .rng import GOLDEN, SplitMix64, mix64
from .semantics import (
    kl_divergence,
    renyi_entropy,
    semantic_value,
    time_avg_mse,
    timeliness,
    total_variation,
    weighted_entropy,
)

__version__ = "0.1.0"
