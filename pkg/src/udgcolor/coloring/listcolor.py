"""Coordinate-free colorings: the high-degree split and the Delta+1 baseline.

Both finish with the same randomized list-coloring loop. Every uncolored
node proposes a uniform color from its list; it keeps the color unless an
uncolored neighbor proposed the same one or a neighbor already holds it.
Colored nodes announce their color and neighbors drop it from their lists.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..localsim import ABSTRACT, NodeProgram, run
from ..udg import UnitDiskGraph
from .base import Coloring

# thresholds as exact rationals: 5.68 = 568/100, 5.675 = 5675/1000


def palette_568(omega: int) -> int:
    """``ceil(5.68 * omega)`` in integer arithmetic."""
    return -(-568 * omega // 100)


def is_high_degree(degree: int, omega: int) -> bool:
    """``degree > 5.675 * omega``."""
    return 1000 * degree > 5675 * omega


def round_cap_for(n: int) -> int:
    return 20 * math.ceil(math.log2(n + 2))


@dataclass
class _ListState:
    id: int
    rng: np.random.Generator
    palette: list = field(default_factory=list)
    high: bool = False
    high_nbrs: frozenset = frozenset()
    color: int | None = None
    proposal: int | None = None
    held: set = field(default_factory=set)


class _ProposalLoop(NodeProgram):
    """Shared proposal/announce rounds, starting at ``self.first_round``."""

    first_round = 1

    def _propose(self, st: _ListState, round_no):
        if st.color is not None:
            return ("final", st.color)
        if round_no < self.first_round:
            return None
        if not st.palette:
            raise AssertionError(f"node {st.id} ran out of colors")
        st.proposal = st.palette[int(st.rng.integers(len(st.palette)))]
        return ("propose", st.proposal)

    def _settle(self, st: _ListState, round_no, inbox):
        finals = {m[1] for m in inbox.values() if m and m[0] == "final"}
        if finals:
            st.held |= finals
            st.palette = [c for c in st.palette if c not in finals]
        if st.color is None and st.proposal is not None and round_no >= self.first_round:
            clash = any(m and m[0] == "propose" and m[1] == st.proposal for m in inbox.values())
            if not clash and st.proposal not in st.held:
                st.color = st.proposal
            st.proposal = None
        return st

    def output(self, st):
        return st.color


class DegreeSplitProgram(_ProposalLoop):
    """High-degree vertices form cliques and color themselves by id rank;
    the rest list-color from ``ceil(5.68 omega)`` colors."""

    first_round = 4

    def __init__(self, omega: int):
        self.omega = omega
        self.palette_size = palette_568(omega)

    def initialize(self, info, rng):
        st = _ListState(info.id, rng)
        st.high = is_high_degree(info.degree, self.omega)
        return st

    def send(self, st, round_no):
        if round_no == 1:
            return ("deg", st.high)
        if round_no == 2:
            return ("clique", st.high_nbrs | {st.id}) if st.high else None
        return self._propose(st, round_no)

    def receive(self, st, round_no, inbox):
        if round_no == 1:
            st.high_nbrs = frozenset(i for i, m in inbox.items() if m[1]) if st.high else frozenset()
        elif round_no == 2:
            if st.high:
                mine = st.high_nbrs | {st.id}
                for sender, m in inbox.items():
                    if sender in st.high_nbrs and m[1] != mine:
                        raise AssertionError(f"high-degree component at node {st.id} is not a clique")
                rank = sorted(mine).index(st.id)
                if rank >= self.omega:
                    raise AssertionError(f"high-degree clique at node {st.id} exceeds omega")
                st.color = rank
        elif round_no == 3:
            if not st.high:
                taken = {m[1] for m in inbox.values() if m and m[0] == "final"}
                st.held |= taken
                st.palette = [c for c in range(self.palette_size) if c not in taken]
        else:
            self._settle(st, round_no, inbox)
        return st


class GreedyListProgram(_ProposalLoop):
    """Baseline: every vertex list-colors from ``{0, ..., degree}``."""

    first_round = 1

    def initialize(self, info, rng):
        return _ListState(info.id, rng, palette=list(range(info.degree + 1)))

    def send(self, st, round_no):
        return self._propose(st, round_no)

    def receive(self, st, round_no, inbox):
        return self._settle(st, round_no, inbox)


def color_568(g: UnitDiskGraph, omega: int, seed: int = 0, ids=None):
    """Coordinate-free coloring with ``ceil(5.68 omega)`` colors.

    Returns ``(Coloring, RoundTrace)``; raises ``RuntimeError`` when the
    round cap ``20 ceil(log2(n + 2))`` is hit.
    """
    cap = round_cap_for(g.n)
    trace = run(g, DegreeSplitProgram(omega), mode=ABSTRACT, seed=seed, round_cap=cap, ids=ids)
    if trace.cap_exceeded:
        raise RuntimeError(f"list coloring did not finish within {cap} rounds")
    return Coloring(np.array(trace.outputs, dtype=np.int64), palette_568(omega)), trace


def color_greedy_baseline(g: UnitDiskGraph, seed: int = 0, ids=None):
    """Randomized Delta+1 coloring; returns ``(Coloring, RoundTrace)``."""
    cap = round_cap_for(g.n)
    trace = run(g, GreedyListProgram(), mode=ABSTRACT, seed=seed, round_cap=cap, ids=ids)
    if trace.cap_exceeded:
        raise RuntimeError(f"list coloring did not finish within {cap} rounds")
    delta = int(g.degrees.max()) if g.n else 0
    return Coloring(np.array(trace.outputs, dtype=np.int64), delta + 1), trace


def high_degree_vertices(g: UnitDiskGraph, omega: int) -> np.ndarray:
    return np.flatnonzero(1000 * g.degrees > 5675 * omega)
