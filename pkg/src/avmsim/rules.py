"""Catalog of the transformation rules, shared by every engine.

Rules are plain data: a left-hand-side motif plus an effect. The four
basic rules act on a discordant edge, either rewiring it onto an extra
same-opinion agent (the keeping endpoint stays attached) or making one
endpoint adopt the other's opinion. The four extended rules perform the
same effects but carry a common left-hand side with one extra agent of
each opinion, so all four share a single match count.

``apply`` re-validates the match against the current graph before touching
it and raises ``StaleMatchError`` if the binding no longer holds; engines
sample fresh matches every step so they never trigger it, but the guard
keeps any future match reuse honest.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Union

from .graph import Opinion, PatternCounts, VoterGraph
from .patterns import EdgeMotif, EdgeTwoVertexMotif, EdgeVertexMotif, Match, Motif


class RuleId(Enum):
    REWIRE_KEEP_ONE = "rewire-keep-one"
    REWIRE_KEEP_ZERO = "rewire-keep-zero"
    ADOPT_TO_ONE = "adopt-to-one"
    ADOPT_TO_ZERO = "adopt-to-zero"
    EXT_REWIRE_KEEP_ONE = "ext-rewire-keep-one"
    EXT_REWIRE_KEEP_ZERO = "ext-rewire-keep-zero"
    EXT_ADOPT_TO_ONE = "ext-adopt-to-one"
    EXT_ADOPT_TO_ZERO = "ext-adopt-to-zero"


# Fixed selection order for propensity scans; engines index into these.
BASIC_RULES = (RuleId.REWIRE_KEEP_ONE, RuleId.REWIRE_KEEP_ZERO,
               RuleId.ADOPT_TO_ONE, RuleId.ADOPT_TO_ZERO)
EXTENDED_RULES = (RuleId.EXT_REWIRE_KEEP_ONE, RuleId.EXT_REWIRE_KEEP_ZERO,
                  RuleId.EXT_ADOPT_TO_ONE, RuleId.EXT_ADOPT_TO_ZERO)


@dataclass(frozen=True)
class Rewire:
    keep: Opinion


@dataclass(frozen=True)
class SetActorOpinion:
    target: Opinion


Effect = Union[Rewire, SetActorOpinion]


@dataclass(frozen=True)
class RuleSpec:
    id: RuleId
    motif: Motif
    effect: Effect


_DISCORDANT = (Opinion.ONE, Opinion.ZERO)

RULES: dict[RuleId, RuleSpec] = {
    RuleId.REWIRE_KEEP_ONE: RuleSpec(
        RuleId.REWIRE_KEEP_ONE,
        EdgeVertexMotif(*_DISCORDANT, extra=Opinion.ONE),
        Rewire(keep=Opinion.ONE)),
    RuleId.REWIRE_KEEP_ZERO: RuleSpec(
        RuleId.REWIRE_KEEP_ZERO,
        EdgeVertexMotif(*_DISCORDANT, extra=Opinion.ZERO),
        Rewire(keep=Opinion.ZERO)),
    RuleId.ADOPT_TO_ONE: RuleSpec(
        RuleId.ADOPT_TO_ONE,
        EdgeMotif(*_DISCORDANT),
        SetActorOpinion(target=Opinion.ONE)),
    RuleId.ADOPT_TO_ZERO: RuleSpec(
        RuleId.ADOPT_TO_ZERO,
        EdgeMotif(*_DISCORDANT),
        SetActorOpinion(target=Opinion.ZERO)),
    RuleId.EXT_REWIRE_KEEP_ONE: RuleSpec(
        RuleId.EXT_REWIRE_KEEP_ONE,
        EdgeTwoVertexMotif(*_DISCORDANT),
        Rewire(keep=Opinion.ONE)),
    RuleId.EXT_REWIRE_KEEP_ZERO: RuleSpec(
        RuleId.EXT_REWIRE_KEEP_ZERO,
        EdgeTwoVertexMotif(*_DISCORDANT),
        Rewire(keep=Opinion.ZERO)),
    RuleId.EXT_ADOPT_TO_ONE: RuleSpec(
        RuleId.EXT_ADOPT_TO_ONE,
        EdgeTwoVertexMotif(*_DISCORDANT),
        SetActorOpinion(target=Opinion.ONE)),
    RuleId.EXT_ADOPT_TO_ZERO: RuleSpec(
        RuleId.EXT_ADOPT_TO_ZERO,
        EdgeTwoVertexMotif(*_DISCORDANT),
        SetActorOpinion(target=Opinion.ZERO)),
}

BASIC_OF_EXTENDED = {
    RuleId.EXT_REWIRE_KEEP_ONE: RuleId.REWIRE_KEEP_ONE,
    RuleId.EXT_REWIRE_KEEP_ZERO: RuleId.REWIRE_KEEP_ZERO,
    RuleId.EXT_ADOPT_TO_ONE: RuleId.ADOPT_TO_ONE,
    RuleId.EXT_ADOPT_TO_ZERO: RuleId.ADOPT_TO_ZERO,
}


class StaleMatchError(Exception):
    """The match no longer binds admissibly in the current graph."""


@dataclass(frozen=True)
class EventRecord:
    rule: RuleId
    group: int
    actor: int
    peer: int
    new_peer: int | None
    counts_before: PatternCounts
    counts_after: PatternCounts


def _endpoint_with(g: VoterGraph, group: int, opinion: Opinion) -> int:
    u, v = g.endpoints(group)
    return u if g.opinion(u) == opinion else v


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise StaleMatchError(message)


def _validate(g: VoterGraph, rule: RuleSpec, match: Match) -> None:
    _require(match.group is not None, "rule matches always bind a group")
    _require(0 <= match.group < g.n_edges, f"group {match.group} does not exist")
    u, v = g.endpoints(match.group)
    _require(g.opinion(u) != g.opinion(v),
             f"group {match.group} is no longer discordant")
    motif = rule.motif
    if isinstance(motif, EdgeVertexMotif):
        _require(len(match.extras) == 1, "edge+vertex match needs one extra agent")
        extra = match.extras[0]
        _require(0 <= extra < g.n_agents, f"unknown extra agent {extra}")
        _require(g.opinion(extra) == motif.extra,
                 f"extra agent {extra} changed opinion")
        _require(extra != u and extra != v,
                 "extra agent collides with an endpoint")
    elif isinstance(motif, EdgeTwoVertexMotif):
        _require(len(match.extras) == 2, "common-LHS match needs two extra agents")
        e1, e0 = match.extras
        for e, want in ((e1, Opinion.ONE), (e0, Opinion.ZERO)):
            _require(0 <= e < g.n_agents, f"unknown extra agent {e}")
            _require(g.opinion(e) == want, f"extra agent {e} changed opinion")
            _require(e != u and e != v, "extra agent collides with an endpoint")
    else:
        _require(len(match.extras) == 0, "edge match carries no extra agents")


def apply(g: VoterGraph, rule: RuleSpec, match: Match) -> EventRecord:
    """Apply ``rule`` at ``match``, mutating the graph.

    Group count and agent count are invariant: a rewire moves one group
    endpoint, an adopt flips one agent's opinion.
    """
    _validate(g, rule, match)
    before = g.counts
    effect = rule.effect
    if isinstance(effect, Rewire):
        keeper = _endpoint_with(g, match.group, effect.keep)
        u, v = g.endpoints(match.group)
        old_peer = v if keeper == u else u
        if isinstance(rule.motif, EdgeTwoVertexMotif):
            new_peer = match.extras[0] if effect.keep == Opinion.ONE else match.extras[1]
        else:
            new_peer = match.extras[0]
        g.rewire_group(match.group, keeper, new_peer)
        return EventRecord(rule.id, match.group, keeper, old_peer, new_peer,
                           before, g.counts)
    actor = _endpoint_with(g, match.group, effect.target.flipped())
    u, v = g.endpoints(match.group)
    peer = v if actor == u else u
    g.set_opinion(actor, effect.target)
    return EventRecord(rule.id, match.group, actor, peer, None, before, g.counts)
