"""Transmitter policy automata and receiver reconstruction state.

Four sampling/transmission policies drive the transmitter:

* ``Uniform(period)``: sample every ``period`` slots regardless of the
  source; keep retransmitting the stored (possibly stale) sample until it
  is acknowledged.
* ``AgeAware(threshold)``: sample and transmit a fresh value whenever the
  receiver-side age of information has reached the threshold; on a failed
  attempt the receiver falls back to a most-likely-next-state prediction.
* ``ChangeAware``: a source change arms a pending flag; while pending, a
  fresh sample is transmitted every slot, and only a successful delivery
  disarms it.  The source may meanwhile return to the receiver's state, in
  which case the delivered sample is uninformative.
* ``EndToEnd``: transmit a fresh sample exactly while the source state and
  the receiver's estimate differ (requires receiver-state feedback).

All states are plain immutable values; every transition is a pure function
of (state, inputs), so a simulation run is trivially sequential and
replayable.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple, Optional, Union

import numpy as np

from .model import MarkovSource


@dataclass(frozen=True)
class Uniform:
    period: int = 3

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")


@dataclass(frozen=True)
class AgeAware:
    threshold: int = 3

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")


@dataclass(frozen=True)
class ChangeAware:
    pass


@dataclass(frozen=True)
class EndToEnd:
    pass


PolicyKind = Union[Uniform, AgeAware, ChangeAware, EndToEnd]

POLICY_NAMES = {"uniform": Uniform, "age": AgeAware, "change": ChangeAware, "e2e": EndToEnd}


def policy_from_name(name: str, period: int = 3, threshold: int = 3) -> PolicyKind:
    if name == "uniform":
        return Uniform(period=period)
    if name == "age":
        return AgeAware(threshold=threshold)
    if name == "change":
        return ChangeAware()
    if name == "e2e":
        return EndToEnd()
    raise ValueError(f"unknown policy {name!r}; expected one of {sorted(POLICY_NAMES)}")


def policy_name(kind: PolicyKind) -> str:
    for name, cls in POLICY_NAMES.items():
        if isinstance(kind, cls):
            return name
    raise TypeError(f"unknown policy kind {kind!r}")


class Sample(NamedTuple):
    value: int
    gen_slot: int


@dataclass(frozen=True)
class Transmit:
    value: int
    gen_slot: int


@dataclass(frozen=True)
class Idle:
    pass


Decision = Union[Transmit, Idle]
IDLE = Idle()


@dataclass(frozen=True)
class TransmitterState:
    """Per-policy transmitter memory.

    ``pending`` is used only by ChangeAware; ``stored_sample``,
    ``stored_acked`` and ``counter`` only by Uniform.  ``counter`` counts
    slots since the last acquisition.
    """

    kind: PolicyKind
    prev_source_state: int
    pending: bool = False
    stored_sample: Optional[Sample] = None
    stored_acked: bool = True
    counter: int = 0


@dataclass(frozen=True)
class ReceiverState:
    """Receiver-side reconstruction state: estimate, AoI and the generation
    slot of the freshest delivered sample (aoi = now - last_gen_slot)."""

    estimate: int
    aoi: int = 0
    last_gen_slot: int = 0


def initial_transmitter_state(kind: PolicyKind, initial_source_state: int) -> TransmitterState:
    return TransmitterState(kind=kind, prev_source_state=initial_source_state)


def initial_receiver_state(initial_source_state: int) -> ReceiverState:
    """Both ends start synchronized: estimate = source state, aoi = 0."""
    return ReceiverState(estimate=initial_source_state, aoi=0, last_gen_slot=0)


def decide(
    tx: TransmitterState, source_state: int, slot: int, receiver: ReceiverState
) -> tuple[Decision, TransmitterState]:
    """One transmitter step: observe the source, update memory, decide.

    Only EndToEnd and AgeAware read ``receiver``; ChangeAware and Uniform
    produce the same decision for any receiver argument.
    """
    kind = tx.kind
    if isinstance(kind, EndToEnd):
        new = replace(tx, prev_source_state=source_state)
        if source_state != receiver.estimate:
            return Transmit(source_state, slot), new
        return IDLE, new

    if isinstance(kind, ChangeAware):
        pending = tx.pending or source_state != tx.prev_source_state
        new = replace(tx, pending=pending, prev_source_state=source_state)
        if pending:
            return Transmit(source_state, slot), new
        return IDLE, new

    if isinstance(kind, AgeAware):
        new = replace(tx, prev_source_state=source_state)
        if receiver.aoi >= kind.threshold:
            return Transmit(source_state, slot), new
        return IDLE, new

    if isinstance(kind, Uniform):
        if tx.counter % kind.period == 0:
            # sampling instant: the fresh sample replaces whatever was stored
            new = replace(
                tx,
                stored_sample=Sample(source_state, slot),
                stored_acked=False,
                counter=1,
                prev_source_state=source_state,
            )
        else:
            new = replace(tx, counter=tx.counter + 1, prev_source_state=source_state)
        if not new.stored_acked:
            s = new.stored_sample
            return Transmit(s.value, s.gen_slot), new
        return IDLE, new

    raise TypeError(f"unknown policy kind {kind!r}")


def apply_ack(tx: TransmitterState, delivered: bool) -> TransmitterState:
    """Process the same-slot ACK/NACK for a slot in which a transmission
    was attempted.  Only a positive ACK changes any state."""
    if not delivered:
        return tx
    if isinstance(tx.kind, ChangeAware):
        return replace(tx, pending=False)
    if isinstance(tx.kind, Uniform):
        return replace(tx, stored_acked=True)
    return tx


def map_predict(source: MarkovSource, current_estimate: int) -> int:
    """Most likely next state from ``current_estimate``'s transition row.

    Ties that include the current estimate keep it (conservative).
    """
    if not 0 <= current_estimate < source.n:
        raise ValueError("estimate out of range")
    row = source.transitions[current_estimate]
    best = int(np.argmax(row))
    if row[current_estimate] == row[best]:
        return current_estimate
    return best


def advance_slot(receiver: ReceiverState) -> ReceiverState:
    """Age grows by one per slot; the estimate is untouched."""
    return replace(receiver, aoi=receiver.aoi + 1)


def apply_delivery(receiver: ReceiverState, value: int, gen_slot: int, now: int) -> ReceiverState:
    """Install a delivered sample: the AoI resets to the sample's age
    ``now - gen_slot`` (zero only for a fresh sample), not blindly to 0."""
    if gen_slot > now:
        raise ValueError("a sample cannot be generated in the future")
    return ReceiverState(estimate=value, aoi=now - gen_slot, last_gen_slot=gen_slot)


def apply_prediction_on_failure(receiver: ReceiverState, source: MarkovSource) -> ReceiverState:
    """AgeAware fallback after a failed triggered transmission: jump to the
    most likely next state.  A prediction is not a delivery, so the AoI
    keeps growing."""
    return replace(receiver, estimate=map_predict(source, receiver.estimate))
