"""Synchronous LOCAL-model simulator.

A node program is a small state machine. In every round each node first
computes what it sends from its pre-round state, then all messages are
delivered and every node folds its inbox into a new state. Messages are
arbitrary picklable values; their pickled size is recorded for reporting
only.
"""

from __future__ import annotations

import pickle
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable

import numpy as np

from .udg import UnitDiskGraph

ABSTRACT = "abstract"
LOCATION_AWARE = "location-aware"
MODES = (ABSTRACT, LOCATION_AWARE)


@dataclass(frozen=True)
class NodeInfo:
    """What a node knows before the first round."""

    id: int
    degree: int
    position: tuple[float, float] | None = None
    params: dict = field(default_factory=dict)


class Unicast(dict):
    """Per-neighbor messages, keyed by the neighbor's id.

    Returning a plain value from ``send`` broadcasts it to every neighbor.
    """


class NodeProgram:
    """Base class for node programs.

    Subclasses implement ``initialize``, ``send``, ``receive`` and
    ``output``. ``output`` returns ``None`` while the node is still working;
    once it returns a value that value must never change.
    """

    def initialize(self, info: NodeInfo, rng: np.random.Generator) -> Any:
        raise NotImplementedError

    def send(self, state, round_no: int):
        return None

    def receive(self, state, round_no: int, inbox: dict[int, Any]):
        return state

    def output(self, state):
        return None


@dataclass
class RoundTrace:
    rounds_executed: int
    round_cap: int
    message_counts: list[int]
    max_message_sizes: list[int]
    outputs: list[Any]
    finish_rounds: list[int | None]
    ids: list[int]
    cap_exceeded: bool
    states: list[Any] = field(default=None, repr=False, compare=False)

    @property
    def finished(self) -> bool:
        return not self.cap_exceeded

    def export_lines(self) -> list[str]:
        """One line per node: ``id output finish_round``."""
        lines = []
        for i, out, fin in zip(self.ids, self.outputs, self.finish_rounds):
            fin_s = "-" if fin is None else str(fin)
            lines.append(f"{i} {_format_output(out)} {fin_s}")
        return lines

    def export(self) -> str:
        head = (f"# rounds {self.rounds_executed} cap {self.round_cap} "
                f"cap_exceeded {int(self.cap_exceeded)}")
        return "\n".join([head, *self.export_lines()]) + "\n"


def _format_output(out) -> str:
    if out is None:
        return "-"
    if isinstance(out, (list, tuple, np.ndarray)):
        return ",".join(str(int(c)) for c in out)
    return repr(out).replace(" ", "")


def assign_ids(n: int, seed: int | None = 0, alpha: int = 2, preserve_order: bool = False) -> np.ndarray:
    """Unique identifiers in ``[1, n**alpha]``.

    By default the ids are a seeded random sample, so that algorithms are
    exercised against arbitrary identifier orders.
    """
    if preserve_order:
        return np.arange(1, n + 1, dtype=np.int64)
    space = max(n, 1) ** alpha
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(0xD1,)))
    return rng.choice(space, size=n, replace=False).astype(np.int64) + 1


def node_rng(seed: int, node_id: int) -> np.random.Generator:
    """Private random stream of one node, derived from ``(seed, id)``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(int(node_id),))))


def run(g: UnitDiskGraph, program: NodeProgram, mode: str = ABSTRACT, seed: int = 0,
        round_cap: int = 100, ids=None, params: dict | None = None,
        keep_states: bool = False) -> RoundTrace:
    """Execute ``program`` on every vertex of ``g`` in lock-step rounds."""
    if round_cap < 1:
        raise ValueError("round_cap must be >= 1")
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    n = g.n
    if ids is None:
        ids = assign_ids(n, seed)
    ids = [int(i) for i in ids]
    if len(set(ids)) != n:
        raise ValueError("node ids must be pairwise distinct")
    params = dict(params or {})
    nbrs = [g.neighbors(v) for v in range(n)]
    nbr_ids = [[ids[u] for u in nb] for nb in nbrs]

    states = []
    for v in range(n):
        pos = tuple(float(c) for c in g.positions[v]) if mode == LOCATION_AWARE else None
        info = NodeInfo(ids[v], len(nbrs[v]), pos, params)
        states.append(program.initialize(info, node_rng(seed, ids[v])))

    outputs: list[Any] = [None] * n
    finish: list[int | None] = [None] * n

    def collect(round_no):
        for v in range(n):
            out = program.output(states[v])
            if finish[v] is None:
                if out is not None:
                    outputs[v] = out
                    finish[v] = round_no
            elif not _same_output(out, outputs[v]):
                raise AssertionError(f"node {ids[v]} changed its output after finishing")

    collect(0)
    counts: list[int] = []
    sizes: list[int] = []
    rounds = 0
    while rounds < round_cap and any(f is None for f in finish):
        rounds += 1
        outgoing = [program.send(states[v], rounds) for v in range(n)]
        inboxes: list[dict[int, Any]] = [{} for _ in range(n)]
        n_msgs = 0
        biggest = 0
        for v in range(n):
            msg = outgoing[v]
            if msg is None:
                continue
            if isinstance(msg, Unicast):
                allowed = set(nbr_ids[v])
                for target, m in msg.items():
                    if target not in allowed:
                        raise ValueError(f"node {ids[v]} addressed non-neighbor {target}")
                by_id = msg
                for u in nbrs[v]:
                    if ids[u] in by_id:
                        inboxes[u][ids[v]] = by_id[ids[u]]
                        n_msgs += 1
                        biggest = max(biggest, _size(by_id[ids[u]]))
            else:
                if len(nbrs[v]):
                    biggest = max(biggest, _size(msg))
                for u in nbrs[v]:
                    inboxes[u][ids[v]] = msg
                n_msgs += len(nbrs[v])
        for v in range(n):
            states[v] = program.receive(states[v], rounds, inboxes[v])
        counts.append(n_msgs)
        sizes.append(biggest)
        collect(rounds)

    return RoundTrace(
        rounds_executed=rounds,
        round_cap=round_cap,
        message_counts=counts,
        max_message_sizes=sizes,
        outputs=outputs,
        finish_rounds=finish,
        ids=ids,
        cap_exceeded=any(f is None for f in finish),
        states=states if keep_states else None,
    )


def _same_output(a, b) -> bool:
    if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def _size(msg) -> int:
    return len(pickle.dumps(msg, protocol=pickle.HIGHEST_PROTOCOL))


# -- flooding ---------------------------------------------------------------


@dataclass(frozen=True)
class ComponentView:
    """A labelled subgraph as seen by one node."""

    ids: tuple[int, ...]
    positions: dict
    edges: frozenset

    def __len__(self) -> int:
        return len(self.ids)


@dataclass
class _GatherState:
    info: NodeInfo
    key: Hashable
    records: dict = field(default_factory=dict)
    rounds: int = 0
    done: Any = None


class GatherProgram(NodeProgram):
    """Flood labelled subgraph knowledge.

    A node's record is ``(position, key, neighbor ids)``; only neighbors
    with the same ``key`` are kept, so the flood stays inside the part of
    the graph the key selects. In ``stable`` mode a node finishes as soon
    as every id mentioned in its records has a record (its component is
    complete); otherwise it finishes after exactly ``radius_cap`` rounds
    with whatever it has seen, i.e. its ball of that radius.
    """

    def __init__(self, radius_cap: int, key: Callable[[NodeInfo], Hashable] | None = None,
                 stable: bool = True):
        if radius_cap < 1:
            raise ValueError("radius_cap must be >= 1")
        self.radius_cap = radius_cap
        self.key = key
        self.stable = stable

    def initialize(self, info, rng):
        key = None if self.key is None else self.key(info)
        return _GatherState(info, key)

    def send(self, state, round_no):
        if round_no == 1:
            return ("hello", state.info.id, state.info.position, state.key)
        return ("records", state.records)

    def receive(self, state, round_no, inbox):
        state.rounds = round_no
        me = state.info.id
        if round_no == 1:
            same = sorted(sid for sid, (_, _, _, k) in inbox.items() if k == state.key)
            state.records = {me: (state.info.position, tuple(same))}
        else:
            fresh = {}
            for sid, (_, recs) in inbox.items():
                if sid not in state.records[me][1]:
                    continue
                for rid, rec in recs.items():
                    if rid not in state.records:
                        fresh[rid] = rec
            if fresh:
                # copy on write: neighbors may still hold the old dict this round
                state.records = {**state.records, **fresh}
        if state.done is None:
            if self.stable:
                if _closed(state.records):
                    state.done = _view(state.records)
                elif round_no >= self.radius_cap:
                    state.done = GATHER_FAILED
            elif round_no >= self.radius_cap:
                state.done = _view(state.records)
        return state

    def output(self, state):
        return state.done


GATHER_FAILED = "gather-failed"


def _closed(records) -> bool:
    return all(n in records for _, nb in records.values() for n in nb)


def _view(records) -> ComponentView:
    ids = set(records)
    for _, nb in records.values():
        ids.update(nb)
    edges = frozenset((min(a, b), max(a, b)) for a, (_, nb) in records.items() for b in nb)
    positions = {i: rec[0] for i, rec in records.items()}
    return ComponentView(tuple(sorted(ids)), positions, edges)


def gather_component(radius_cap: int, key=None) -> GatherProgram:
    """Program whose output is the node's complete labelled component."""
    return GatherProgram(radius_cap, key=key, stable=True)


def gather_ball(radius: int, key=None) -> GatherProgram:
    """Program whose output, after ``radius`` rounds, is the node's view of
    its radius-``radius`` ball."""
    return GatherProgram(radius, key=key, stable=False)
