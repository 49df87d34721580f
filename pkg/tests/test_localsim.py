import numpy as np
import pytest

from conftest import T3, graph_of, strip_points, uniform_box
from oracles import ball_ids
from udgcolor.localsim import (ABSTRACT, GATHER_FAILED, LOCATION_AWARE, NodeProgram, Unicast,
                               assign_ids, gather_ball, gather_component, node_rng, run)
from udgcolor.udg import bfs_distances, connected_components, hop_diameter


class OwnId(NodeProgram):
    def initialize(self, info, rng):
        return info.id

    def output(self, state):
        return state


class FullInfo(NodeProgram):
    """Forward everything; the round-t state is the node's whole t-view."""

    def initialize(self, info, rng):
        return (info.id, info.degree, info.position, int(rng.integers(1 << 30)))

    def send(self, state, round_no):
        return state

    def receive(self, state, round_no, inbox):
        return (state, tuple(sorted(inbox.items())))


class Coin(NodeProgram):
    def initialize(self, info, rng):
        return [int(rng.integers(1000)) for _ in range(3)]

    def output(self, state):
        return tuple(state)


class BadUnicast(NodeProgram):
    def initialize(self, info, rng):
        return info.id

    def send(self, state, round_no):
        return Unicast({-5: "x"})


def path(n, step=0.9):
    return graph_of([(i * step, 0.0) for i in range(n)])


def test_zero_round_program_on_t3():
    g = graph_of(T3)
    tr = run(g, OwnId(), seed=3, round_cap=5)
    assert tr.rounds_executed <= 1
    assert tr.outputs == tr.ids
    assert not tr.cap_exceeded


def test_ids_are_distinct_and_bounded():
    ids = assign_ids(50, seed=1)
    assert len(set(ids.tolist())) == 50
    assert ids.min() >= 1 and ids.max() <= 50 ** 2
    assert assign_ids(4, preserve_order=True).tolist() == [1, 2, 3, 4]


def test_position_only_when_location_aware(t3):
    seen = {}

    class Probe(OwnId):
        def initialize(self, info, rng):
            seen[info.id] = info.position
            return info.id

    run(t3, Probe(), mode=ABSTRACT, round_cap=1)
    assert all(p is None for p in seen.values())
    run(t3, Probe(), mode=LOCATION_AWARE, round_cap=1)
    assert sorted(seen.values()) == sorted(T3)


def test_rejects_bad_arguments(t3):
    with pytest.raises(ValueError):
        run(t3, OwnId(), round_cap=0)
    with pytest.raises(ValueError):
        run(t3, OwnId(), mode="async")
    with pytest.raises(ValueError):
        run(t3, OwnId(), ids=[1, 1, 2])
    with pytest.raises(ValueError):
        run(t3, BadUnicast(), round_cap=2)


def test_cap_exceeded_is_reported_not_raised():
    tr = run(path(3), FullInfo(), round_cap=2)
    assert tr.cap_exceeded and tr.rounds_executed == 2
    assert tr.message_counts == [4, 4]


def test_ball_gather_on_five_path():
    g = path(5)
    tr = run(g, gather_ball(2), seed=0, round_cap=2, ids=assign_ids(5, preserve_order=True))
    sizes = [len(v) for v in tr.outputs]
    assert sizes == [3, 4, 5, 4, 3]
    assert tr.outputs[2].ids == (1, 2, 3, 4, 5)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("t", [1, 2, 3])
def test_ball_gather_matches_bfs(seed, t):
    pts = uniform_box(60, 6, 6, seed)
    g = graph_of(pts)
    ids = assign_ids(g.n, seed)
    tr = run(g, gather_ball(t), round_cap=t, ids=ids)
    for v in range(g.n):
        want = sorted(int(ids[u]) for u in ball_ids(pts, v, t))
        assert list(tr.outputs[v].ids) == want


def test_component_gather_three_path_and_isolated():
    tr = run(path(3), gather_component(4), round_cap=4)
    assert all(len(v) == 3 for v in tr.outputs)
    iso = run(graph_of([(0, 0)]), gather_component(1), round_cap=1)
    assert len(iso.outputs[0]) == 1 and iso.rounds_executed == 1


def test_component_gather_reports_failure_below_diameter():
    tr = run(path(6), gather_component(2), round_cap=3)
    assert GATHER_FAILED in tr.outputs


@pytest.mark.parametrize("seed", range(5))
def test_segment_component_stabilizes_within_21(seed):
    pts = strip_points(120, 5.0, seed)
    g = graph_of(pts)
    for comp in connected_components(g):
        assert hop_diameter(g, comp) <= 20
    tr = run(g, gather_component(21), mode=LOCATION_AWARE, round_cap=21)
    assert not tr.cap_exceeded
    assert GATHER_FAILED not in tr.outputs


def test_determinism_bit_for_bit():
    g = graph_of(uniform_box(80, 5, 5, 9))
    a = run(g, Coin(), seed=11, round_cap=3)
    b = run(g, Coin(), seed=11, round_cap=3)
    c = run(g, Coin(), seed=12, round_cap=3)
    assert a == b and a.export() == b.export()
    assert a.outputs != c.outputs


def test_node_stream_depends_on_id_not_index():
    a = node_rng(5, 42).integers(1 << 30, size=4)
    b = node_rng(5, 42).integers(1 << 30, size=4)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, node_rng(5, 43).integers(1 << 30, size=4))


def test_trace_export_format(t3):
    tr = run(t3, OwnId(), round_cap=1, ids=[7, 8, 9])
    lines = tr.export().splitlines()
    assert lines[0].startswith("# rounds 0 cap 1")
    assert lines[1:] == ["7 7 0", "8 8 0", "9 9 0"]


@pytest.mark.parametrize("instance", range(20))
def test_causality_outside_ball_is_invisible(instance):
    rng = np.random.default_rng(instance)
    t = 1 + instance % 3
    pts = uniform_box(70, 7, 7, 100 + instance)
    g = graph_of(pts)
    ids = assign_ids(g.n, instance)
    v = int(rng.integers(g.n))
    hop = bfs_distances(g, v)
    # initial info of the t-ball (including degrees at distance t) stays fixed
    keep = np.flatnonzero((hop >= 0) & (hop <= t + 1))
    extra = uniform_box(15, 3, 3, instance) + [50.0, 50.0]
    pts2 = np.vstack([pts[keep], extra])
    ids2 = np.concatenate([ids[keep], 10**6 + np.arange(len(extra))])
    g2 = graph_of(pts2)
    for mode in (ABSTRACT, LOCATION_AWARE):
        s1 = run(g, FullInfo(), mode=mode, seed=4, round_cap=t, ids=ids, keep_states=True).states
        s2 = run(g2, FullInfo(), mode=mode, seed=4, round_cap=t, ids=ids2, keep_states=True).states
        assert s1[v] == s2[int(np.flatnonzero(keep == v)[0])]


def test_causality_sees_changes_inside_ball():
    g = path(4)
    ids = [1, 2, 3, 4]
    base = run(g, FullInfo(), seed=0, round_cap=2, ids=ids, keep_states=True).states[0]
    moved = run(path(3), FullInfo(), seed=0, round_cap=2, ids=ids[:3], keep_states=True).states[0]
    assert base != moved
