"""
Randomized unique naming.

Every node draws an identifier from [1..N] and keeps verifying it with echo
waves (forward to every port, feedback of the collected identifiers back to the
wave parent). A completed wave holding a repeated identifier makes the origin
start a reset: a new generation that floods the network, sends every node back
to phase 1 and doubles N. Concurrent waves of different origins are kept apart
by (id, nonce) keys.
"""
import random
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

from core.logging import get_logger
from .base import Effects, NodeContext, ProtocolLayer, SEQ_MODULUS, seq_newer

logger = get_logger("naming")

PHASE_DRAW = 1
PHASE_VERIFY = 2
PHASE_STABLE = 3

NONCE_RANGE = 1 << 32
MAX_RANGE = 1 << 30
MAX_PATIENCE = 1 << 16
ARBITRARY_GEN_RANGE = 1 << 16

WaveKey = Tuple[int, int]


@dataclass(frozen=True)
class ResetToken:
    """Generation of the naming epoch plus the priority of whoever opened it"""
    gen: int
    priority: Tuple[int, int, int]

    def newer_than(self, other: "ResetToken") -> bool:
        if self.gen != other.gen:
            return self.gen > other.gen
        return self.priority < other.priority

    def to_dict(self) -> Dict[str, Any]:
        return {"gen": self.gen, "priority": list(self.priority)}


CLEAN_TOKEN = ResetToken(0, (0, 0, 0))


@dataclass
class WaveSlot:
    seq: int
    parent: Optional[int]
    pending: Set[int]
    id_list: List[int]
    done: bool = False
    age: int = 0


@dataclass
class UNState:
    phase: int
    id: int
    nonce: int
    n_range: int
    token: ResetToken
    seq: int = 0
    waves: Dict[WaveKey, WaveSlot] = field(default_factory=dict)
    id_list: List[int] = field(default_factory=list)
    n_seen: int = 0
    patience: int = 8
    elapsed: int = 0

    @property
    def key(self) -> WaveKey:
        return (self.id, self.nonce)


@dataclass(frozen=True)
class UNMessage:
    kind: str
    token: ResetToken
    n_range: int
    key: WaveKey = (0, 0)
    seq: int = 0
    id_list: Tuple[int, ...] = ()

    def summary(self) -> Dict[str, Any]:
        return {"kind": self.kind, "seq": self.seq, "ids": len(self.id_list)}


def draw_id(n_range: int, rng: random.Random) -> int:
    """Uniform identifier in [1..n_range]"""
    return rng.randint(1, max(1, n_range))


def check_conflict(state: UNState) -> bool:
    return len(state.id_list) != len(set(state.id_list))


def clean_state(rng: random.Random, initial_range: int = 16, patience: int = 8) -> UNState:
    return UNState(
        phase=PHASE_DRAW,
        id=draw_id(initial_range, rng),
        nonce=rng.randrange(NONCE_RANGE),
        n_range=initial_range,
        token=CLEAN_TOKEN,
        patience=patience,
    )


def arbitrary_state(rng: random.Random, ports: Dict[int, float]) -> UNState:
    """Any type-correct naming state, duplicates and half-finished waves included"""
    port_list = sorted(ports)
    n_range = 1 << rng.randint(1, 10)
    ident = draw_id(rng.choice([4, n_range]), rng)
    nonce = rng.randrange(NONCE_RANGE)
    waves: Dict[WaveKey, WaveSlot] = {}
    for _ in range(rng.randint(0, 3)):
        key = (ident, nonce) if rng.random() < 0.3 else (rng.randint(1, 16), rng.randrange(NONCE_RANGE))
        waves[key] = WaveSlot(
            seq=rng.randrange(SEQ_MODULUS),
            parent=rng.choice(port_list + [None]),
            pending={p for p in port_list if rng.random() < 0.5},
            id_list=[rng.randint(1, 16) for _ in range(rng.randint(0, 4))],
            done=rng.random() < 0.5,
            age=rng.randint(0, 64),
        )
    patience = rng.randint(1, 64)
    return UNState(
        phase=rng.randint(PHASE_DRAW, PHASE_STABLE),
        id=ident,
        nonce=nonce,
        n_range=n_range,
        token=ResetToken(
            rng.randrange(ARBITRARY_GEN_RANGE),
            (rng.randint(1, 64), rng.randrange(SEQ_MODULUS), rng.randrange(NONCE_RANGE)),
        ),
        seq=rng.randrange(SEQ_MODULUS),
        waves=waves,
        id_list=[rng.randint(1, 16) for _ in range(rng.randint(0, 6))],
        n_seen=rng.randint(0, 16),
        patience=patience,
        elapsed=rng.randint(0, patience),
    )


def _message(state: UNState, kind: str, key: WaveKey = (0, 0), seq: int = 0,
             id_list: Tuple[int, ...] = ()) -> UNMessage:
    return UNMessage(kind, state.token, state.n_range, key, seq, id_list)


def reset_wave(state: UNState, token: ResetToken, n_range: int, ctx: NodeContext, fx: Effects) -> None:
    """Join reset generation `token`: back to phase 1 with a fresh draw, then pass it on"""
    state.token = token
    state.n_range = min(max(1, n_range), MAX_RANGE)
    state.phase = PHASE_DRAW
    state.id = draw_id(state.n_range, ctx.rng)
    state.nonce = ctx.rng.randrange(NONCE_RANGE)
    state.waves.clear()
    state.id_list = []
    state.n_seen = 0
    state.elapsed = 0
    fx.note("un.redraw", gen=token.gen, id=state.id, range=state.n_range)
    for port in ctx.port_list():
        fx.send(port, _message(state, "reset"))


def start_reset(state: UNState, ctx: NodeContext, fx: Effects) -> None:
    token = ResetToken(state.token.gen + 1, (state.id, state.seq, state.nonce))
    logger.debug(f"id {state.id} opens reset generation {token.gen}")
    fx.note("un.reset_start", gen=token.gen, id=state.id)
    reset_wave(state, token, state.n_range * 2, ctx, fx)


def _start_wave(state: UNState, ctx: NodeContext, fx: Effects) -> None:
    state.seq = (state.seq + 1) % SEQ_MODULUS
    state.elapsed = 0
    slot = WaveSlot(state.seq, None, set(ctx.ports), [state.id])
    state.waves[state.key] = slot
    for port in ctx.port_list():
        fx.send(port, _message(state, "forward", state.key, state.seq))
    if not slot.pending:
        _finish(state, state.key, slot, ctx, fx)


def _wave_complete(state: UNState, slot: WaveSlot, ctx: NodeContext, fx: Effects) -> None:
    state.id_list = list(slot.id_list)
    state.n_seen = len(set(slot.id_list))
    fx.note("un.wave_complete", seq=slot.seq, ids=len(slot.id_list))
    if check_conflict(state):
        start_reset(state, ctx, fx)
    else:
        state.phase = PHASE_STABLE


def _finish(state: UNState, key: WaveKey, slot: WaveSlot, ctx: NodeContext, fx: Effects) -> None:
    slot.done = True
    if slot.parent is not None:
        fx.send(slot.parent, _message(state, "feedback", key, slot.seq, tuple(slot.id_list)))
    elif key == state.key:
        _wave_complete(state, slot, ctx, fx)


def _on_forward(state: UNState, port: int, message: UNMessage, ctx: NodeContext, fx: Effects) -> None:
    slot = state.waves.get(message.key)
    if message.key == state.key or (slot is not None and not seq_newer(message.seq, slot.seq)):
        # already part of this wave, or the wave is old: an empty feedback releases the sender
        fx.send(port, _message(state, "feedback", message.key, message.seq))
        return
    slot = WaveSlot(message.seq, port, set(ctx.ports) - {port}, [state.id])
    state.waves[message.key] = slot
    for other in sorted(slot.pending):
        fx.send(other, _message(state, "forward", message.key, message.seq))
    if not slot.pending:
        _finish(state, message.key, slot, ctx, fx)


def _on_feedback(state: UNState, port: int, message: UNMessage, ctx: NodeContext, fx: Effects) -> None:
    slot = state.waves.get(message.key)
    if slot is None or slot.seq != message.seq or slot.done or port not in slot.pending:
        logger.debug(f"id {state.id} drops stale feedback for wave {message.seq}")
        return
    slot.pending.discard(port)
    slot.id_list.extend(message.id_list)
    if not slot.pending:
        _finish(state, message.key, slot, ctx, fx)


def pif_round(state: UNState, port: int, message: UNMessage, ctx: NodeContext, fx: Effects) -> None:
    """Handle one naming message arriving on `port`"""
    if message.token.newer_than(state.token):
        reset_wave(state, message.token, message.n_range, ctx, fx)
    elif state.token.newer_than(message.token):
        logger.debug(f"id {state.id} discards generation {message.token.gen} message")
        return
    elif message.n_range > state.n_range:
        state.n_range = min(message.n_range, MAX_RANGE)

    if message.kind == "forward":
        _on_forward(state, port, message, ctx, fx)
    elif message.kind == "feedback":
        _on_feedback(state, port, message, ctx, fx)
    enforce_invariants(state, ctx, fx)


def tick(state: UNState, ctx: NodeContext, fx: Effects, purge_after: int = 16) -> None:
    """Timer step: leave phase 1, keep one own wave running, age foreign waves"""
    enforce_invariants(state, ctx, fx)
    horizon = 2 * state.patience + purge_after
    for key in [k for k, slot in state.waves.items() if k != state.key]:
        slot = state.waves[key]
        slot.age += 1
        if slot.age > horizon:
            del state.waves[key]

    own = state.waves.get(state.key)
    if state.phase == PHASE_DRAW:
        state.phase = PHASE_VERIFY
        _start_wave(state, ctx, fx)
    elif own is None or own.done or own.parent is not None:
        _start_wave(state, ctx, fx)
    else:
        state.elapsed += 1
        if state.elapsed > state.patience:
            state.patience = min(2 * state.patience, MAX_PATIENCE)
            fx.note("un.wave_timeout", seq=own.seq, patience=state.patience)
            _start_wave(state, ctx, fx)


def on_topology(state: UNState, ctx: NodeContext, fx: Effects) -> None:
    """Ports changed: forget waves hanging off removed links"""
    for key in list(state.waves):
        slot = state.waves[key]
        if slot.parent is not None and slot.parent not in ctx.ports:
            del state.waves[key]
            continue
        if slot.done:
            continue
        slot.pending &= set(ctx.ports)
        if not slot.pending:
            _finish(state, key, slot, ctx, fx)


def enforce_invariants(state: UNState, ctx: NodeContext, fx: Effects) -> None:
    if not 1 <= state.id <= state.n_range:
        state.n_range = min(max(state.n_range, state.id, 1), MAX_RANGE)
    if state.phase == PHASE_STABLE and check_conflict(state):
        start_reset(state, ctx, fx)


class NamingLayer(ProtocolLayer):
    name = "un"

    def __init__(self, initial_range: int = 16, patience: int = 8):
        self.initial_range = initial_range
        self.patience = patience

    def clean_state(self, rng: random.Random) -> UNState:
        return clean_state(rng, self.initial_range, self.patience)

    def arbitrary_state(self, rng: random.Random, ports: Dict[int, float]) -> UNState:
        return arbitrary_state(rng, ports)

    def snapshot(self, state: UNState) -> Dict[str, Any]:
        return {
            "id": state.id,
            "phase": state.phase,
            "id_list": list(state.id_list),
            "n_seen": state.n_seen,
            "gen": state.token.gen,
            "n_range": state.n_range,
        }
