import json
import random

import pytest

from avmsim import Opinion, PatternCounts, VoterGraph

from conftest import random_multigraph


def test_empty_graph():
    g = VoterGraph([], [])
    assert g.counts == PatternCounts(0, 0, 0, 0, 0)
    assert g.n_agents == 0 and g.n_edges == 0
    assert len(g.discordant_groups) == 0


def test_minimal_discordant_edge():
    g = VoterGraph([Opinion.ONE, Opinion.ZERO], [(0, 1)])
    assert g.counts.n_01 == 1
    assert g.n_edges == 1
    assert list(g.discordant_groups) == [0]


def test_parallel_edges_counted_separately():
    g = VoterGraph([1, 1, 0], [(0, 1), (1, 2), (1, 2)])
    c = g.counts
    assert (c.n_11, c.n_01, c.n_00) == (1, 2, 0)
    assert g.n_edges == 3
    assert c == g.recount()


def test_construction_errors():
    with pytest.raises(ValueError):
        VoterGraph([1, 0], [(0, 0)])      # self-group
    with pytest.raises(ValueError):
        VoterGraph([1, 0], [(0, 2)])      # missing agent
    with pytest.raises(ValueError):
        VoterGraph([1, 2], [])            # bad opinion


def test_set_opinion_idempotent():
    g = VoterGraph([1, 0], [(0, 1)])
    before = g.counts
    g.set_opinion(0, Opinion.ONE)
    assert g.counts == before


def test_set_opinion_two_agents():
    g = VoterGraph([1, 0], [(0, 1)])
    g.set_opinion(0, Opinion.ZERO)
    c = g.counts
    assert (c.n_01, c.n_00) == (0, 1)
    assert c == g.recount()
    assert len(g.discordant_groups) == 0


def test_set_opinion_star():
    g = VoterGraph([1, 0, 0], [(0, 1), (0, 2)])
    assert g.counts.n_01 == 2
    g.set_opinion(0, Opinion.ZERO)
    c = g.counts
    assert (c.n_01, c.n_00) == (0, 2)
    assert c == g.recount()


def test_set_opinion_unknown_agent():
    g = VoterGraph([1, 0], [(0, 1)])
    with pytest.raises(ValueError):
        g.set_opinion(5, Opinion.ONE)


def test_rewire_to_same_opinion():
    g = VoterGraph([1, 0, 1], [(0, 1)])
    g.rewire_group(0, 0, 2)
    c = g.counts
    assert (c.n_01, c.n_11) == (0, 1)
    assert g.endpoints(0) == (0, 2)
    assert c == g.recount()


def test_rewire_identity_edit_is_allowed():
    g = VoterGraph([1, 0], [(0, 1)])
    before = g.counts
    g.rewire_group(0, 0, 1)
    assert g.counts == before == g.recount()
    assert sorted(g.endpoints(0)) == [0, 1]


def test_rewire_creates_parallel_group():
    g = VoterGraph([1, 1, 0], [(0, 1), (0, 2)])
    g.rewire_group(1, 0, 1)              # 0 keeps, now doubly linked to 1
    assert g.n_edges == 2
    c = g.counts
    assert (c.n_11, c.n_01, c.n_00) == (2, 0, 0)
    assert c == g.recount()


def test_rewire_errors():
    g = VoterGraph([1, 0, 1], [(0, 1)])
    with pytest.raises(ValueError):
        g.rewire_group(0, 2, 1)           # keep not an endpoint
    with pytest.raises(ValueError):
        g.rewire_group(0, 0, 0)           # self-group
    with pytest.raises(ValueError):
        g.rewire_group(0, 0, 9)           # unknown peer
    with pytest.raises(ValueError):
        g.rewire_group(7, 0, 2)           # unknown group


def _assert_consistent(g: VoterGraph):
    c = g.counts
    assert c == g.recount()
    assert c.n_agents == g.n_agents and c.n_edges == g.n_edges
    degree_sum = sum(g.degree(a) for a in range(g.n_agents))
    assert degree_sum == 2 * g.n_edges
    expected_disc = {gid for gid in range(g.n_edges)
                     if g.opinion(g.endpoints(gid)[0]) != g.opinion(g.endpoints(gid)[1])}
    assert set(g.discordant_groups) == expected_disc
    assert set(g.agents_with(Opinion.ONE)) == {
        a for a in range(g.n_agents) if g.opinion(a) == Opinion.ONE}
    for gid in range(g.n_edges):
        u, v = g.endpoints(gid)
        assert u != v
        assert gid in g.incident_groups(u) and gid in g.incident_groups(v)


def test_random_edit_sequence_keeps_caches_exact():
    rnd = random.Random(7)
    g = random_multigraph(rnd, max_n=10, max_m=15, min_n=3)
    n_v, n_e = g.n_agents, g.n_edges
    check_every = 25  # full recount is O(m); spot-check densely, assert cheaply always
    for step in range(10_000):
        if g.n_edges and rnd.random() < 0.5:
            gid = rnd.randrange(g.n_edges)
            keep = g.endpoints(gid)[rnd.randrange(2)]
            new_peer = rnd.randrange(g.n_agents)
            while new_peer == keep:
                new_peer = rnd.randrange(g.n_agents)
            g.rewire_group(gid, keep, new_peer)
        else:
            g.set_opinion(rnd.randrange(g.n_agents), Opinion(rnd.randint(0, 1)))
        assert g.counts == g.recount()
        assert (g.n_agents, g.n_edges) == (n_v, n_e)
        if step % check_every == 0:
            _assert_consistent(g)
    _assert_consistent(g)


def test_json_roundtrip(tmp_path):
    g = VoterGraph([1, 0, 1], [(0, 1), (1, 2), (1, 2)])
    data = g.to_json_dict()
    assert data == {"opinions": [1, 0, 1], "edges": [[0, 1], [1, 2], [1, 2]]}
    g2 = VoterGraph.from_json_dict(json.loads(json.dumps(data)))
    assert g2.to_json_dict() == data
    assert g2.counts == g.counts
    path = tmp_path / "g.json"
    g.save_json(path)
    assert VoterGraph.load_json(path).to_json_dict() == data


def test_clone_is_independent():
    g = VoterGraph([1, 0], [(0, 1)])
    h = g.clone()
    h.set_opinion(0, Opinion.ZERO)
    assert g.counts.n_01 == 1
    assert h.counts.n_01 == 0
