"""Motif counting, exhaustive match enumeration, and uniform match sampling.

Four motif shapes cover everything the rule catalog needs: a single
attributed vertex, an attributed edge, an edge plus one extra vertex, and
an edge plus one extra vertex of each opinion. Matches are injective:
an extra vertex never coincides with an edge endpoint. Counting goes
through closed forms over the cached pattern counts; ``enumerate_matches``
walks raw storage instead and exists purely so the closed forms can be
cross-checked against brute force.

An edge motif with equal endpoint opinions is matched once per group (the
two endpoint assignments are not distinguished); this keeps edge-motif
counts additive, i.e. one-one + one-zero + zero-zero = total groups.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .graph import Opinion, PatternCounts, VoterGraph
from .rng import RandomStream


@dataclass(frozen=True)
class VertexMotif:
    opinion: Opinion


@dataclass(frozen=True)
class EdgeMotif:
    a: Opinion
    b: Opinion


@dataclass(frozen=True)
class EdgeVertexMotif:
    a: Opinion
    b: Opinion
    extra: Opinion


@dataclass(frozen=True)
class EdgeTwoVertexMotif:
    """Edge plus one extra One-vertex and one extra Zero-vertex."""

    a: Opinion
    b: Opinion


Motif = Union[VertexMotif, EdgeMotif, EdgeVertexMotif, EdgeTwoVertexMotif]


@dataclass(frozen=True)
class Match:
    """Concrete injective assignment of a motif into a graph.

    ``actor`` is the edge endpoint that plays the acting voter where the
    motif determines it (the endpoint sharing the extra vertex's opinion
    for edge+vertex motifs, the endpoint with opinion ``a`` for discordant
    edge motifs); None where the motif leaves it open. ``extras`` holds
    the context vertices, for the two-extra motif always ordered
    (One-extra, Zero-extra).
    """

    group: int | None
    actor: int | None
    extras: tuple[int, ...] = ()


def _vertex_count(c: PatternCounts, o: Opinion) -> int:
    return c.n_one if int(o) == 1 else c.n_zero


def _edge_class_count(c: PatternCounts, a: Opinion, b: Opinion) -> int:
    s = int(a) + int(b)
    if s == 2:
        return c.n_11
    if s == 1:
        return c.n_01
    return c.n_00


def _extra_slots(c: PatternCounts, m, extra: Opinion) -> int:
    """Free agents of ``extra``'s opinion once same-opinion endpoints are excluded."""
    used = (int(m.a) == int(extra)) + (int(m.b) == int(extra))
    return max(0, _vertex_count(c, extra) - used)


def count_motif(g: VoterGraph, m: Motif) -> int:
    c = g.counts
    if isinstance(m, VertexMotif):
        return _vertex_count(c, m.opinion)
    if isinstance(m, EdgeMotif):
        return _edge_class_count(c, m.a, m.b)
    if isinstance(m, EdgeVertexMotif):
        base = _edge_class_count(c, m.a, m.b)
        return base * _extra_slots(c, m, m.extra) if base else 0
    if isinstance(m, EdgeTwoVertexMotif):
        base = _edge_class_count(c, m.a, m.b)
        if not base:
            return 0
        return base * _extra_slots(c, m, Opinion.ONE) * _extra_slots(c, m, Opinion.ZERO)
    raise TypeError(f"not a motif: {m!r}")


def _matching_groups(g: VoterGraph, a: Opinion, b: Opinion) -> list[int]:
    want = {int(a), int(b)} if int(a) != int(b) else {int(a)}
    out = []
    for gid in range(g.n_edges):
        u, v = g.endpoints(gid)
        if {int(g.opinion(u)), int(g.opinion(v))} == want:
            out.append(gid)
    return out


def _edge_actor(g: VoterGraph, gid: int, opinion: Opinion) -> int | None:
    u, v = g.endpoints(gid)
    if g.opinion(u) == g.opinion(v):
        return None
    return u if g.opinion(u) == opinion else v


def enumerate_matches(g: VoterGraph, m: Motif) -> list[Match]:
    """Brute-force enumeration over raw storage; never consults the caches."""
    if isinstance(m, VertexMotif):
        return [Match(None, a, ())
                for a in range(g.n_agents) if g.opinion(a) == m.opinion]
    if isinstance(m, EdgeMotif):
        return [Match(gid, _edge_actor(g, gid, m.a), ())
                for gid in _matching_groups(g, m.a, m.b)]
    if isinstance(m, EdgeVertexMotif):
        out = []
        for gid in _matching_groups(g, m.a, m.b):
            u, v = g.endpoints(gid)
            actor = _edge_actor(g, gid, m.extra)
            for x in range(g.n_agents):
                if g.opinion(x) == m.extra and x != u and x != v:
                    out.append(Match(gid, actor, (x,)))
        return out
    if isinstance(m, EdgeTwoVertexMotif):
        out = []
        for gid in _matching_groups(g, m.a, m.b):
            u, v = g.endpoints(gid)
            extra_ones = [x for x in range(g.n_agents)
                          if g.opinion(x) == Opinion.ONE and x != u and x != v]
            extra_zeros = [x for x in range(g.n_agents)
                           if g.opinion(x) == Opinion.ZERO and x != u and x != v]
            for e1 in extra_ones:
                for e0 in extra_zeros:
                    out.append(Match(gid, None, (e1, e0)))
        return out
    raise TypeError(f"not a motif: {m!r}")


def _sample_group(g: VoterGraph, a: Opinion, b: Opinion, rng: RandomStream) -> int:
    if int(a) != int(b):
        disc = g.discordant_groups
        return disc.items[rng.randrange(len(disc))]
    # concordant edge classes carry no sampling index; scan (cold path)
    gids = _matching_groups(g, a, b)
    return gids[rng.randrange(len(gids))]


def _sample_extra(g: VoterGraph, opinion: Opinion, excluded: tuple[int, ...],
                  rng: RandomStream) -> int:
    """Rejection-sample an ``opinion`` agent outside ``excluded``.

    Callers guarantee at least one admissible agent exists, so the loop
    terminates; expected retries stay below two whenever two or more
    candidates share the opinion.
    """
    registry = g.agents_with(opinion)
    while True:
        cand = registry.items[rng.randrange(len(registry))]
        if cand not in excluded:
            return cand


def sample_match_uniform(g: VoterGraph, m: Motif, rng: RandomStream) -> Match | None:
    """Draw a match uniformly among all admissible ones, or None if none exist.

    Sampling is compositional: the group is drawn uniformly within its edge
    class, then each extra vertex uniformly among admissible agents, which
    makes every admissible match exactly equally likely.
    """
    if count_motif(g, m) == 0:
        return None
    if isinstance(m, VertexMotif):
        registry = g.agents_with(m.opinion)
        return Match(None, registry.items[rng.randrange(len(registry))], ())
    if isinstance(m, EdgeMotif):
        gid = _sample_group(g, m.a, m.b, rng)
        return Match(gid, _edge_actor(g, gid, m.a), ())
    if isinstance(m, EdgeVertexMotif):
        gid = _sample_group(g, m.a, m.b, rng)
        u, v = g.endpoints(gid)
        extra = _sample_extra(g, m.extra, (u, v), rng)
        return Match(gid, _edge_actor(g, gid, m.extra), (extra,))
    if isinstance(m, EdgeTwoVertexMotif):
        gid = _sample_group(g, m.a, m.b, rng)
        u, v = g.endpoints(gid)
        e1 = _sample_extra(g, Opinion.ONE, (u, v), rng)
        e0 = _sample_extra(g, Opinion.ZERO, (u, v), rng)
        return Match(gid, None, (e1, e0))
    raise TypeError(f"not a motif: {m!r}")


def verify_counting_identity(g: VoterGraph) -> bool:
    """Check the match-count identity for edge-plus-vertex motifs.

    For each opinion x, the number of (discordant edge, extra x-vertex)
    matches found by brute force must equal the cached discordant count
    times (x-agents - 1).
    """
    c = g.counts
    for x in (Opinion.ONE, Opinion.ZERO):
        brute = len(enumerate_matches(g, EdgeVertexMotif(Opinion.ONE, Opinion.ZERO, x)))
        closed = c.n_01 * max(0, _vertex_count(c, x) - 1)
        if brute != closed:
            return False
    return True
