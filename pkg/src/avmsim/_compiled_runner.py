"""Bridge between VoterGraph/EngineConfig and the compiled core.

Exports the graph's order-sensitive state (registries, discordant index)
into flat arrays, runs the compiled loop, then installs the evolved state
back into the graph so that a run leaves the graph in exactly the state
the pure-Python path would have produced, including index item order.
"""

from __future__ import annotations

import numpy as np

from . import _speedups
from .engines import (AbsorbReason, EngineConfig, FinalSummary, Semantics,
                      Trajectory)
from .graph import PatternCounts, VoterGraph
from .rng import RandomStream
from .rules import BASIC_RULES, EXTENDED_RULES, EventRecord

_SEMANTICS_CODE = {
    Semantics.DTMC: 0,
    Semantics.CTMC_WEIGHTED: 1,
    Semantics.CTMC_MASS_ACTION: 2,
    Semantics.CTMC_UNIFORMIZED: 3,
    Semantics.CTMC_LCM: 4,
}

_REASONS = (AbsorbReason.NO_DISCORDANT, AbsorbReason.NO_EFFECTIVE_RULE,
            AbsorbReason.STEP_LIMIT, AbsorbReason.TIME_LIMIT)

_RULE_CODES = tuple(BASIC_RULES) + tuple(EXTENDED_RULES)


def run_compiled(g: VoterGraph, config: EngineConfig,
                 rng: RandomStream) -> Trajectory:
    opinions, groups, ones_items, zeros_items, disc_items, classes = \
        g._engine_state()
    n, m = len(opinions), len(groups)
    op = np.array(opinions, dtype=np.uint8)
    gu = np.fromiter((e[0] for e in groups), dtype=np.int32, count=m)
    gv = np.fromiter((e[1] for e in groups), dtype=np.int32, count=m)
    ones = np.zeros(max(n, 1), dtype=np.int32)
    ones[:len(ones_items)] = ones_items
    zeros = np.zeros(max(n, 1), dtype=np.int32)
    zeros[:len(zeros_items)] = zeros_items
    disc = np.zeros(max(m, 1), dtype=np.int32)
    disc[:len(disc_items)] = disc_items
    n11, n01, n00 = classes

    initial_counts = g.counts
    p = config.uniform_probs
    s0, s1, s2, s3 = rng.state
    (steps, effective, t, reason_code, n_ones, n_zeros, n_disc,
     edge_classes, raw_events, raw_samples, rng_state) = _speedups.simulate(
        _SEMANTICS_CODE[config.semantics],
        op, gu, gv,
        ones, len(ones_items), zeros, len(zeros_items),
        disc, len(disc_items),
        n11, n01, n00,
        config.alpha,
        config.kappa_rewire_one, config.kappa_rewire_zero,
        config.alpha_adopt_one, config.alpha_adopt_zero,
        p[0], p[1], p[2], p[3],
        s0, s1, s2, s3,
        config.max_steps, config.max_time,
        config.count_noop_steps, config.sample_stride,
        config.record_events,
    )
    rng.set_state(rng_state)

    traj = Trajectory(semantics=config.semantics)
    traj.samples.append((0 if config.semantics == Semantics.DTMC else 0.0,
                         initial_counts))
    if raw_events is not None:
        prev = initial_counts
        for (when, rule, gid, actor, peer, new_peer,
             c1, c0, e11, e01, e00) in raw_events:
            counts_after = PatternCounts(c1, c0, e11, e01, e00)
            traj.events.append((when, EventRecord(
                _RULE_CODES[rule], gid, actor, peer, new_peer,
                prev, counts_after)))
            prev = counts_after
    for (when, c1, c0, e11, e01, e00) in raw_samples:
        traj.samples.append((when, PatternCounts(c1, c0, e11, e01, e00)))

    g._install_engine_state(
        [int(x) for x in op],
        [(int(gu[i]), int(gv[i])) for i in range(m)],
        [int(x) for x in ones[:n_ones]],
        [int(x) for x in zeros[:n_zeros]],
        [int(x) for x in disc[:n_disc]],
        (int(edge_classes[0]), int(edge_classes[1]), int(edge_classes[2])),
    )

    is_dtmc = config.semantics == Semantics.DTMC
    traj.samples.append((steps if is_dtmc else t, g.counts))
    traj.final = FinalSummary(
        absorbed=reason_code in (0, 1),
        reason=_REASONS[reason_code],
        counts=g.counts,
        steps=steps,
        effective_events=effective,
        sim_time=None if is_dtmc else t,
        seed=rng.seed,
    )
    return traj
