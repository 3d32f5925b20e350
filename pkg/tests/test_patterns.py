import math
from collections import Counter

from avmsim import (EdgeMotif, EdgeTwoVertexMotif, EdgeVertexMotif, Opinion,
                    RandomStream, VertexMotif, VoterGraph, count_motif,
                    enumerate_matches, sample_match_uniform,
                    verify_counting_identity)

from conftest import graph_corpus

ONE, ZERO = Opinion.ONE, Opinion.ZERO

ALL_MOTIFS = [
    VertexMotif(ONE), VertexMotif(ZERO),
    EdgeMotif(ONE, ZERO), EdgeMotif(ONE, ONE), EdgeMotif(ZERO, ZERO),
    EdgeVertexMotif(ONE, ZERO, ONE), EdgeVertexMotif(ONE, ZERO, ZERO),
    EdgeVertexMotif(ONE, ONE, ONE), EdgeVertexMotif(ZERO, ZERO, ONE),
    EdgeTwoVertexMotif(ONE, ZERO),
]


def test_empty_graph_has_no_matches():
    g = VoterGraph([], [])
    for m in ALL_MOTIFS:
        assert count_motif(g, m) == 0
        assert enumerate_matches(g, m) == []
        assert sample_match_uniform(g, m, RandomStream(1)) is None


def test_edge_plus_vertex_single_match():
    g = VoterGraph([ONE, ZERO, ONE], [(0, 1)])
    m = EdgeVertexMotif(ONE, ZERO, ONE)
    assert count_motif(g, m) == 1
    (match,) = enumerate_matches(g, m)
    assert match.group == 0 and match.extras == (2,) and match.actor == 0


def test_edge_plus_vertex_no_third_vertex():
    g = VoterGraph([ONE, ZERO], [(0, 1)])
    assert count_motif(g, EdgeVertexMotif(ONE, ZERO, ONE)) == 0
    assert enumerate_matches(g, EdgeVertexMotif(ONE, ZERO, ONE)) == []


def test_closed_forms_match_brute_force_on_corpus():
    for g in graph_corpus(60, seed=11):
        for m in ALL_MOTIFS:
            assert count_motif(g, m) == len(enumerate_matches(g, m)), (g.to_json_dict(), m)


def test_counting_identity_hand_example():
    g = VoterGraph([ONE, ZERO, ZERO], [(0, 1), (0, 2)])
    # two discordant edges, each with one spare Zero vertex
    assert len(enumerate_matches(g, EdgeVertexMotif(ONE, ZERO, ZERO))) == 2
    assert g.counts.n_01 * (g.counts.n_zero - 1) == 2
    assert verify_counting_identity(g)


def test_counting_identity_on_corpus():
    assert verify_counting_identity(VoterGraph([], []))
    for g in graph_corpus(100, seed=23):
        assert verify_counting_identity(g)


def test_sample_single_match_is_certain():
    g = VoterGraph([ONE, ZERO, ONE], [(0, 1)])
    m = EdgeVertexMotif(ONE, ZERO, ONE)
    rng = RandomStream(3)
    for _ in range(20):
        assert sample_match_uniform(g, m, rng) == enumerate_matches(g, m)[0]


def test_sample_uniformity_chi_square():
    # 3 discordant edges x 2 spare One-vertices = 6 matches
    g = VoterGraph([ONE, ZERO, ONE, ONE, ZERO],
                   [(0, 1), (2, 4), (0, 4)])
    m = EdgeVertexMotif(ONE, ZERO, ONE)
    matches = enumerate_matches(g, m)
    assert count_motif(g, m) == len(matches) == 6
    rng = RandomStream(99)
    draws = 60_000
    counts = Counter()
    for _ in range(draws):
        counts[sample_match_uniform(g, m, rng)] += 1
    assert set(counts) == set(matches)
    p = 1 / len(matches)
    sigma = math.sqrt(draws * p * (1 - p))
    for match in matches:
        assert abs(counts[match] - draws * p) < 3 * sigma
    chi2 = sum((counts[x] - draws * p) ** 2 / (draws * p) for x in matches)
    assert chi2 < 20.5  # chi-square_0.999 at 5 dof


def test_sample_extended_motif_uniform():
    g = VoterGraph([ONE, ZERO, ONE, ZERO], [(0, 1)])
    m = EdgeTwoVertexMotif(ONE, ZERO)
    matches = enumerate_matches(g, m)
    assert count_motif(g, m) == len(matches) == 1
    got = sample_match_uniform(g, m, RandomStream(5))
    assert got == matches[0]
    assert got.extras == (2, 3)


def test_sample_concordant_edge_class():
    g = VoterGraph([ONE, ONE, ZERO], [(0, 1), (0, 1), (1, 2)])
    m = EdgeMotif(ONE, ONE)
    assert count_motif(g, m) == 2
    rng = RandomStream(8)
    seen = {sample_match_uniform(g, m, rng).group for _ in range(200)}
    assert seen == {0, 1}
