"""Execution semantics over the shared rule catalog.

Five interchangeable dynamics run the same four-rule system and differ only
in how transitions are scheduled:

* ``dtmc``            - round-based: draw a group uniformly; concordant
                        picks do nothing; otherwise one endpoint acts,
                        rewiring with probability alpha (uniform
                        same-opinion target, excluding itself) and adopting
                        the peer's opinion otherwise.
* ``ctmc-weighted``   - continuous time; rewire-rule propensities are the
                        discordant count (their match count divided by the
                        candidate multiplicity), adopt propensities the
                        discordant count; both scaled by alpha/2 resp.
                        (1-alpha)/2. The embedded jump chain then matches
                        the round-based dynamics conditioned on an
                        effective round.
* ``ctmc-mass-action``- propensity = base rate x match count per rule.
* ``ctmc-uniform``    - total jump rate 1; a rule is drawn from fixed
                        probabilities regardless of match counts and
                        no-ops when it has no match.
* ``ctmc-lcm``        - the four extended common-LHS rules, all sharing the
                        match count  discordant x (ones-1) x (zeros-1).

A global 1/(group count) factor present in the round-based normalization is
dropped from the weighted and LCM clocks: it rescales holding times
uniformly and cannot affect the embedded chain or absorption behavior.

Determinism contract: given (graph, config, seed) the trajectory is fully
reproducible. The exact RNG call sequence per step is part of that
contract and is documented inline; the compiled core reproduces it
draw for draw.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from . import backend as _backend
from .graph import Opinion, PatternCounts, VoterGraph
from .patterns import Match
from .rng import RandomStream
from .rules import BASIC_RULES, EXTENDED_RULES, RULES, EventRecord, RuleId, apply


class Semantics(Enum):
    DTMC = "dtmc"
    CTMC_WEIGHTED = "ctmc-weighted"
    CTMC_MASS_ACTION = "ctmc-mass-action"
    CTMC_UNIFORMIZED = "ctmc-uniform"
    CTMC_LCM = "ctmc-lcm"


class AbsorbReason(Enum):
    NO_DISCORDANT = "no_discordant"
    NO_EFFECTIVE_RULE = "no_effective_rule"
    STEP_LIMIT = "step_limit"
    TIME_LIMIT = "time_limit"


class NoOpReason(Enum):
    CONCORDANT_PICK = "concordant_pick"
    NO_REWIRE_CANDIDATE = "no_rewire_candidate"
    NO_MATCH = "no_match"


class StepKind(Enum):
    EFFECTIVE = "effective"
    NOOP = "noop"
    ABSORBED = "absorbed"


@dataclass(frozen=True)
class StepOutcome:
    kind: StepKind
    event: Optional[EventRecord] = None
    noop: Optional[NoOpReason] = None
    absorb: Optional[AbsorbReason] = None

    @classmethod
    def effective(cls, event: EventRecord) -> "StepOutcome":
        return cls(StepKind.EFFECTIVE, event=event)

    @classmethod
    def no_op(cls, reason: NoOpReason) -> "StepOutcome":
        return cls(StepKind.NOOP, noop=reason)

    @classmethod
    def absorbed(cls, reason: AbsorbReason) -> "StepOutcome":
        return cls(StepKind.ABSORBED, absorb=reason)


@dataclass
class EngineConfig:
    semantics: Semantics
    alpha: float = 0.5
    # mass-action base rates (rewire pair and adopt pair)
    kappa_rewire_one: float = 1.0
    kappa_rewire_zero: float = 1.0
    alpha_adopt_one: float = 1.0
    alpha_adopt_zero: float = 1.0
    # uniformized per-rule firing probabilities, basic-rule order
    uniform_probs: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    max_steps: int = 10_000_000
    max_time: float = math.inf
    count_noop_steps: bool = False
    sample_stride: int = 0
    record_events: bool = False

    def validate(self) -> None:
        """Check exactly the parameter group the chosen semantics reads."""
        if self.max_steps <= 0:
            raise ValueError("max_steps must be positive")
        s = self.semantics
        if s in (Semantics.DTMC, Semantics.CTMC_WEIGHTED, Semantics.CTMC_LCM):
            if not (0.0 <= self.alpha <= 1.0):
                raise ValueError("alpha must lie in [0, 1]")
        if s == Semantics.CTMC_MASS_ACTION:
            for name in ("kappa_rewire_one", "kappa_rewire_zero",
                         "alpha_adopt_one", "alpha_adopt_zero"):
                if getattr(self, name) <= 0.0:
                    raise ValueError(f"{name} must be positive")
        if s == Semantics.CTMC_UNIFORMIZED:
            if len(self.uniform_probs) != 4 or any(p < 0 for p in self.uniform_probs):
                raise ValueError("uniform_probs must be four nonnegative values")
            if abs(sum(self.uniform_probs) - 1.0) > 1e-12:
                raise ValueError("uniform_probs must sum to 1 within 1e-12")
        if s != Semantics.DTMC:
            if not (self.max_time > 0.0):
                raise ValueError("max_time must be positive")


@dataclass(frozen=True)
class FinalSummary:
    absorbed: bool
    reason: AbsorbReason
    counts: PatternCounts
    steps: int
    effective_events: int
    sim_time: Optional[float]
    seed: Optional[int]


@dataclass
class Trajectory:
    semantics: Semantics
    events: list[tuple[float | int, EventRecord]] = field(default_factory=list)
    samples: list[tuple[float | int, PatternCounts]] = field(default_factory=list)
    final: Optional[FinalSummary] = None

    def to_json_lines(self):
        """Yield one JSON document per line: header, events, samples, final."""
        f = self.final
        yield json.dumps({"type": "header", "semantics": self.semantics.value,
                          "seed": f.seed if f else None}, sort_keys=True)
        for when, ev in self.events:
            yield json.dumps({
                "type": "event", "when": when, "rule": ev.rule.value,
                "group": ev.group, "actor": ev.actor, "peer": ev.peer,
                "new_peer": ev.new_peer,
                "counts_after": list(ev.counts_after.as_tuple()),
            }, sort_keys=True)
        for when, counts in self.samples:
            yield json.dumps({"type": "sample", "when": when,
                              "counts": list(counts.as_tuple())}, sort_keys=True)
        if f is not None:
            yield json.dumps({
                "type": "final", "absorbed": f.absorbed, "reason": f.reason.value,
                "counts": list(f.counts.as_tuple()), "steps": f.steps,
                "effective_events": f.effective_events, "sim_time": f.sim_time,
                "seed": f.seed,
            }, sort_keys=True)


# ---------------------------------------------------------------------------
# propensities and selection
# ---------------------------------------------------------------------------

def weighted_propensities(c: PatternCounts, alpha: float):
    """Per-rule jump rates of the weight-corrected dynamics, basic-rule order."""
    a_rw1 = 0.5 * alpha * c.n_01 if c.n_one >= 2 else 0.0
    a_rw0 = 0.5 * alpha * c.n_01 if c.n_zero >= 2 else 0.0
    a_ad = 0.5 * (1.0 - alpha) * c.n_01
    return (a_rw1, a_rw0, a_ad, a_ad)


def mass_action_propensities(c: PatternCounts, kappa_one: float, kappa_zero: float,
                             adopt_one: float, adopt_zero: float):
    """base rate x admissible-match count per rule, basic-rule order."""
    return (kappa_one * c.n_01 * (c.n_one - 1) if c.n_01 else 0.0,
            kappa_zero * c.n_01 * (c.n_zero - 1) if c.n_01 else 0.0,
            adopt_one * c.n_01,
            adopt_zero * c.n_01)


def basic_match_counts(c: PatternCounts):
    """Admissible-match counts of the four basic rules, basic-rule order."""
    if c.n_01 == 0:
        return (0, 0, 0, 0)
    return (c.n_01 * (c.n_one - 1), c.n_01 * (c.n_zero - 1), c.n_01, c.n_01)


def lcm_match_count(c: PatternCounts) -> int:
    """Shared match count of the four extended common-LHS rules."""
    if c.n_01 == 0:
        return 0
    return c.n_01 * (c.n_one - 1) * (c.n_zero - 1)


def _pick(weights, u: float) -> int:
    """Cumulative scan over four weights; zero-weight entries are skipped.

    ``u`` is a uniform [0,1) draw; the last positive entry catches any
    floating-point overshoot of the cumulative total.
    """
    total = weights[0] + weights[1] + weights[2] + weights[3]
    r = u * total
    cum = 0.0
    last = -1
    for j in range(4):
        w = weights[j]
        if w > 0.0:
            last = j
            cum += w
            if r < cum:
                return j
    return last


# ---------------------------------------------------------------------------
# match sampling (RNG call order is part of the determinism contract)
# ---------------------------------------------------------------------------

def _draw_discordant(g: VoterGraph, rng: RandomStream) -> int:
    disc = g.discordant_groups
    return disc.items[rng.randrange(len(disc))]


def _draw_peer(g: VoterGraph, opinion: Opinion, excluded: int,
               rng: RandomStream) -> int:
    """Uniform agent of ``opinion`` other than ``excluded``, by rejection."""
    registry = g.agents_with(opinion)
    n = len(registry)
    w = registry.items[rng.randrange(n)]
    while w == excluded:
        w = registry.items[rng.randrange(n)]
    return w


def _endpoint_with(g: VoterGraph, gid: int, opinion: Opinion) -> int:
    u, v = g.endpoints(gid)
    return u if g.opinion(u) == opinion else v


def _apply_basic(g: VoterGraph, j: int, rng: RandomStream) -> EventRecord:
    """Sample a uniform match of basic rule ``j`` and apply it.

    Draw order: discordant group, then (rewires only) the new peer.
    """
    gid = _draw_discordant(g, rng)
    rule = RULES[BASIC_RULES[j]]
    if j == 0:   # rewire, One keeps
        keeper = _endpoint_with(g, gid, Opinion.ONE)
        w = _draw_peer(g, Opinion.ONE, keeper, rng)
        return apply(g, rule, Match(gid, keeper, (w,)))
    if j == 1:   # rewire, Zero keeps
        keeper = _endpoint_with(g, gid, Opinion.ZERO)
        w = _draw_peer(g, Opinion.ZERO, keeper, rng)
        return apply(g, rule, Match(gid, keeper, (w,)))
    actor_op = Opinion.ZERO if j == 2 else Opinion.ONE
    return apply(g, rule, Match(gid, _endpoint_with(g, gid, actor_op), ()))


def _apply_extended(g: VoterGraph, j: int, rng: RandomStream) -> EventRecord:
    """Sample a uniform common-LHS match of extended rule ``j`` and apply it.

    Draw order: discordant group, One-extra, Zero-extra (both context
    vertices are always drawn, even when the effect uses only one).
    """
    gid = _draw_discordant(g, rng)
    e1 = _draw_peer(g, Opinion.ONE, _endpoint_with(g, gid, Opinion.ONE), rng)
    e0 = _draw_peer(g, Opinion.ZERO, _endpoint_with(g, gid, Opinion.ZERO), rng)
    rule = RULES[EXTENDED_RULES[j]]
    actor = None
    if j == 0:
        actor = _endpoint_with(g, gid, Opinion.ONE)
    elif j == 1:
        actor = _endpoint_with(g, gid, Opinion.ZERO)
    elif j == 2:
        actor = _endpoint_with(g, gid, Opinion.ZERO)
    else:
        actor = _endpoint_with(g, gid, Opinion.ONE)
    return apply(g, rule, Match(gid, actor, (e1, e0)))


# ---------------------------------------------------------------------------
# single steps
# ---------------------------------------------------------------------------

def _dtmc_resolve(g: VoterGraph, gid: int, alpha: float,
                  rng: RandomStream) -> StepOutcome:
    """Orientation, branch, and action for an already-picked discordant group.

    Draw order: endpoint (randrange 2), branch (random < alpha), then for
    the rewire branch the new peer by rejection.
    """
    u, v = g.endpoints(gid)
    x = (u, v)[rng.randrange(2)]
    y = v if x == u else u
    if rng.random() < alpha:
        op_x = g.opinion(x)
        if len(g.agents_with(op_x)) < 2:
            return StepOutcome.no_op(NoOpReason.NO_REWIRE_CANDIDATE)
        w = _draw_peer(g, op_x, x, rng)
        rule = RULES[RuleId.REWIRE_KEEP_ONE if op_x == Opinion.ONE
                     else RuleId.REWIRE_KEEP_ZERO]
        return StepOutcome.effective(apply(g, rule, Match(gid, x, (w,))))
    target = g.opinion(y)
    rule = RULES[RuleId.ADOPT_TO_ONE if target == Opinion.ONE
                 else RuleId.ADOPT_TO_ZERO]
    return StepOutcome.effective(apply(g, rule, Match(gid, x, ())))


def dtmc_step(g: VoterGraph, alpha: float, rng: RandomStream) -> StepOutcome:
    """One full round: a uniform group pick over all groups, then resolution."""
    if g.n_edges == 0:
        raise ValueError("round-based dynamics are undefined without groups")
    gid = rng.randrange(g.n_edges)
    u, v = g.endpoints(gid)
    if g.opinion(u) == g.opinion(v):
        return StepOutcome.no_op(NoOpReason.CONCORDANT_PICK)
    return _dtmc_resolve(g, gid, alpha, rng)


def ctmc_weighted_step(g: VoterGraph, alpha: float,
                       rng: RandomStream) -> tuple[float, StepOutcome]:
    a = weighted_propensities(g.counts, alpha)
    total = a[0] + a[1] + a[2] + a[3]
    if total == 0.0:
        reason = (AbsorbReason.NO_DISCORDANT if g.counts.n_01 == 0
                  else AbsorbReason.NO_EFFECTIVE_RULE)
        return 0.0, StepOutcome.absorbed(reason)
    dt = rng.expovariate(total)
    j = _pick(a, rng.random())
    return dt, StepOutcome.effective(_apply_basic(g, j, rng))


def ctmc_mass_action_step(g: VoterGraph, rates: tuple[float, float, float, float],
                          rng: RandomStream) -> tuple[float, StepOutcome]:
    a = mass_action_propensities(g.counts, *rates)
    total = a[0] + a[1] + a[2] + a[3]
    if total == 0.0:
        reason = (AbsorbReason.NO_DISCORDANT if g.counts.n_01 == 0
                  else AbsorbReason.NO_EFFECTIVE_RULE)
        return 0.0, StepOutcome.absorbed(reason)
    dt = rng.expovariate(total)
    j = _pick(a, rng.random())
    return dt, StepOutcome.effective(_apply_basic(g, j, rng))


def ctmc_uniformized_step(g: VoterGraph, probs: tuple[float, float, float, float],
                          rng: RandomStream) -> tuple[float, StepOutcome]:
    """Jump at rate 1; the drawn rule no-ops when it has no match."""
    dt = rng.expovariate(1.0)
    j = _pick(probs, rng.random())
    if basic_match_counts(g.counts)[j] == 0:
        return dt, StepOutcome.no_op(NoOpReason.NO_MATCH)
    return dt, StepOutcome.effective(_apply_basic(g, j, rng))


def ctmc_lcm_step(g: VoterGraph, alpha: float,
                  rng: RandomStream) -> tuple[float, StepOutcome]:
    m = lcm_match_count(g.counts)
    if m == 0:
        reason = (AbsorbReason.NO_DISCORDANT if g.counts.n_01 == 0
                  else AbsorbReason.NO_EFFECTIVE_RULE)
        return 0.0, StepOutcome.absorbed(reason)
    dt = rng.expovariate(float(m))
    half_rw = 0.5 * alpha
    half_ad = 0.5 * (1.0 - alpha)
    j = _pick((half_rw, half_rw, half_ad, half_ad), rng.random())
    return dt, StepOutcome.effective(_apply_extended(g, j, rng))


# ---------------------------------------------------------------------------
# full runs
# ---------------------------------------------------------------------------

def _absorbed_reason(g: VoterGraph, config: EngineConfig) -> Optional[AbsorbReason]:
    """Reason the state admits no further effective transition, else None."""
    c = g.counts
    if c.n_01 == 0:
        return AbsorbReason.NO_DISCORDANT
    s = config.semantics
    if s == Semantics.DTMC:
        if config.alpha >= 1.0 and c.n_one < 2 and c.n_zero < 2:
            return AbsorbReason.NO_EFFECTIVE_RULE
        return None
    if s == Semantics.CTMC_WEIGHTED:
        a = weighted_propensities(c, config.alpha)
        return None if (a[0] + a[1] + a[2] + a[3]) > 0.0 else AbsorbReason.NO_EFFECTIVE_RULE
    if s == Semantics.CTMC_MASS_ACTION:
        a = mass_action_propensities(c, config.kappa_rewire_one,
                                     config.kappa_rewire_zero,
                                     config.alpha_adopt_one,
                                     config.alpha_adopt_zero)
        return None if (a[0] + a[1] + a[2] + a[3]) > 0.0 else AbsorbReason.NO_EFFECTIVE_RULE
    if s == Semantics.CTMC_UNIFORMIZED:
        counts = basic_match_counts(c)
        live = any(p > 0.0 and counts[j] > 0
                   for j, p in enumerate(config.uniform_probs))
        return None if live else AbsorbReason.NO_EFFECTIVE_RULE
    if s == Semantics.CTMC_LCM:
        return None if lcm_match_count(c) > 0 else AbsorbReason.NO_EFFECTIVE_RULE
    raise ValueError(f"unknown semantics {s!r}")


def run(g: VoterGraph, config: EngineConfig, rng: RandomStream, *,
        backend: Optional[str] = None) -> Trajectory:
    """Run the configured dynamics on ``g`` (mutated in place) to completion.

    Stops on absorption, ``max_steps``, or (continuous time) ``max_time``.
    The result is a deterministic function of (graph, config, seed),
    independent of the selected backend.
    """
    config.validate()
    name = _backend.resolve(backend)
    if name == "compiled":
        from ._compiled_runner import run_compiled
        return run_compiled(g, config, rng)
    return _run_python(g, config, rng)


def _run_python(g: VoterGraph, config: EngineConfig,
                rng: RandomStream) -> Trajectory:
    s = config.semantics
    is_dtmc = s == Semantics.DTMC
    traj = Trajectory(semantics=s)
    t = 0.0
    steps = 0
    effective = 0
    stride = config.sample_stride

    def now():
        return steps if is_dtmc else t

    traj.samples.append((now(), g.counts))
    reason: AbsorbReason
    while True:
        maybe = _absorbed_reason(g, config)
        if maybe is not None:
            reason = maybe
            break
        if steps >= config.max_steps:
            reason = AbsorbReason.STEP_LIMIT
            break
        if is_dtmc:
            if config.count_noop_steps:
                outcome = dtmc_step(g, config.alpha, rng)
            else:
                gid = _draw_discordant(g, rng)
                outcome = _dtmc_resolve(g, gid, config.alpha, rng)
            steps += 1
        else:
            # jump rate first, so an over-horizon event is discarded
            # before it can touch the graph
            weights = None
            if s == Semantics.CTMC_WEIGHTED:
                weights = weighted_propensities(g.counts, config.alpha)
                total = weights[0] + weights[1] + weights[2] + weights[3]
            elif s == Semantics.CTMC_MASS_ACTION:
                weights = mass_action_propensities(
                    g.counts, config.kappa_rewire_one, config.kappa_rewire_zero,
                    config.alpha_adopt_one, config.alpha_adopt_zero)
                total = weights[0] + weights[1] + weights[2] + weights[3]
            elif s == Semantics.CTMC_UNIFORMIZED:
                total = 1.0
            else:
                total = float(lcm_match_count(g.counts))
            dt = rng.expovariate(total)
            if t + dt > config.max_time:
                t = config.max_time
                reason = AbsorbReason.TIME_LIMIT
                break
            t += dt
            steps += 1
            if s == Semantics.CTMC_UNIFORMIZED:
                j = _pick(config.uniform_probs, rng.random())
                if basic_match_counts(g.counts)[j] == 0:
                    outcome = StepOutcome.no_op(NoOpReason.NO_MATCH)
                else:
                    outcome = StepOutcome.effective(_apply_basic(g, j, rng))
            elif s == Semantics.CTMC_LCM:
                half_rw = 0.5 * config.alpha
                half_ad = 0.5 * (1.0 - config.alpha)
                j = _pick((half_rw, half_rw, half_ad, half_ad), rng.random())
                outcome = StepOutcome.effective(_apply_extended(g, j, rng))
            else:
                j = _pick(weights, rng.random())
                outcome = StepOutcome.effective(_apply_basic(g, j, rng))
        if outcome.kind == StepKind.EFFECTIVE:
            effective += 1
            if config.record_events:
                traj.events.append((now(), outcome.event))
            if stride > 0 and effective % stride == 0:
                traj.samples.append((now(), g.counts))

    traj.samples.append((now(), g.counts))
    traj.final = FinalSummary(
        absorbed=reason in (AbsorbReason.NO_DISCORDANT, AbsorbReason.NO_EFFECTIVE_RULE),
        reason=reason,
        counts=g.counts,
        steps=steps,
        effective_events=effective,
        sim_time=None if is_dtmc else t,
        seed=rng.seed,
    )
    return traj
