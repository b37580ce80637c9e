"""Substitution-channel view of an insertion/deletion channel.

The sender tags its t-th message with the t-th symbol of a synchronization
string. The receiver guesses each arrival's position online and reveals
message symbols strictly in order: an arrival for the next slot is
revealed, a late one is dropped, and an early one pushes at most two DUMMY
symbols before it. The endpoint only ever sees an in-order stream whose
defects look like substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Hashable, Sequence

from .channel import apply
from .codec import OnlineRepositioner
from .errors import ParameterError
from .rng import derive_seed
from .syncgen import gen_sync

DUMMY = -1
MAX_DUMMIES = 2


class Sender:
    def __init__(self, sync: Sequence[Hashable]):
        self.sync = list(sync)
        self.t = 0

    def step(self, msg: Any) -> tuple:
        if self.t >= len(self.sync):
            raise ParameterError(f"sender exhausted after {len(self.sync)} symbols")
        wire = (msg, self.sync[self.t])
        self.t += 1
        return wire


class Receiver:
    def __init__(self, sync: Sequence[Hashable]):
        self.n = len(sync)
        self.rep = OnlineRepositioner(sync)
        self.out: list = []

    def step(self, wire: tuple) -> list:
        """Symbols revealed to the endpoint in response to one arrival."""
        msg, idx = wire
        p = self.rep.push(idx)
        done = len(self.out)
        if p <= done or done >= self.n:
            return []
        revealed = [DUMMY] * min(MAX_DUMMIES, p - done - 1) + [msg]
        revealed = revealed[: self.n - done]
        self.out.extend(revealed)
        return revealed


@dataclass(frozen=True)
class SimulationReport:
    sent: list
    revealed: list
    corrupted: int
    channel_edits: int

    @property
    def corrupted_fraction(self) -> float:
        return self.corrupted / len(self.sent) if self.sent else 0.0


def corrupted_positions(sent: Sequence, revealed: Sequence) -> int:
    """Slots 1..n whose revealed symbol is missing or wrong."""
    wrong = sum(1 for a, b in zip(sent, revealed) if a != b)
    return wrong + max(len(sent) - len(revealed), 0)


def simulate(msgs: Sequence, script, sync: Sequence[Hashable] | None = None, seed: int = 0, eps=0.5):
    """Push ``msgs`` through the edit script and the sender/receiver pair."""
    if sync is None:
        sync = gen_sync(len(msgs), eps, derive_seed(seed, "chansim-sync"))
    sender = Sender(sync)
    wire = [sender.step(m) for m in msgs]
    arrived, _ = apply(script, wire)
    rx = Receiver(sync)
    for w in arrived:
        rx.step(w)
    return SimulationReport(list(msgs), rx.out, corrupted_positions(msgs, rx.out), len(script))
