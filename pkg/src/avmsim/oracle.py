"""Exact brute-force semantics for tiny instances.

States are labeled: an opinion vector plus the multiset of endpoint pairs
(each pair sorted, the multiset sorted). No isomorphism reduction is
applied; that keeps engine cross-checks direct. Transition probabilities
are exact rationals built from the round-based decision procedure, so
kernel rows sum to one exactly; only the final absorption solve runs in
floating point (sparse LU), documented to 1e-12.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from scipy.sparse import identity, lil_matrix
from scipy.sparse.linalg import splu

from .engines import NoOpReason, weighted_propensities
from .graph import Opinion, VoterGraph
from .patterns import enumerate_matches
from .rules import BASIC_RULES, RULES, RuleId, apply

CanonicalState = tuple[tuple[int, ...], tuple[tuple[int, int], ...]]


def canonical_state(g: VoterGraph) -> CanonicalState:
    opinions = tuple(int(g.opinion(a)) for a in range(g.n_agents))
    edges = []
    for gid in range(g.n_edges):
        u, v = g.endpoints(gid)
        edges.append((u, v) if u < v else (v, u))
    return opinions, tuple(sorted(edges))


def graph_from_state(state: CanonicalState) -> VoterGraph:
    opinions, edges = state
    return VoterGraph(list(opinions), list(edges))


@dataclass(frozen=True)
class ExactTransition:
    prob: Fraction
    successor: CanonicalState
    rule: Optional[RuleId] = None          # None for inactive branches
    noop: Optional[NoOpReason] = None


def one_step_exact(g: VoterGraph, alpha) -> list[ExactTransition]:
    """Exact one-round distribution over (branch label, successor).

    Walks the full decision tree: group pick 1/m, orientation 1/2, branch
    alpha vs 1-alpha, rewire target 1/(same-opinion count - 1). Branch
    probabilities sum to exactly one.
    """
    alpha = Fraction(alpha)
    m = g.n_edges
    if m == 0:
        raise ValueError("round-based dynamics are undefined without groups")
    here = canonical_state(g)
    out: list[ExactTransition] = []
    pick = Fraction(1, m)
    for gid in range(m):
        u, v = g.endpoints(gid)
        if g.opinion(u) == g.opinion(v):
            out.append(ExactTransition(pick, here, noop=NoOpReason.CONCORDANT_PICK))
            continue
        for x, y in ((u, v), (v, u)):
            side = pick / 2
            op_x = g.opinion(x)
            if alpha > 0:
                candidates = [w for w in range(g.n_agents)
                              if w != x and g.opinion(w) == op_x]
                rule = (RuleId.REWIRE_KEEP_ONE if op_x == Opinion.ONE
                        else RuleId.REWIRE_KEEP_ZERO)
                if not candidates:
                    out.append(ExactTransition(
                        side * alpha, here, noop=NoOpReason.NO_REWIRE_CANDIDATE))
                else:
                    each = side * alpha / len(candidates)
                    for w in candidates:
                        succ = g.clone()
                        succ.rewire_group(gid, x, w)
                        out.append(ExactTransition(
                            each, canonical_state(succ), rule=rule))
            if alpha < 1:
                target = g.opinion(y)
                rule = (RuleId.ADOPT_TO_ONE if target == Opinion.ONE
                        else RuleId.ADOPT_TO_ZERO)
                succ = g.clone()
                succ.set_opinion(x, target)
                out.append(ExactTransition(
                    side * (1 - alpha), canonical_state(succ), rule=rule))
    assert sum(tr.prob for tr in out) == 1
    return out


@dataclass
class EnumeratedChain:
    states: list[CanonicalState]
    index: dict[CanonicalState, int]
    kernel: list[dict[int, Fraction]]
    absorbing: list[bool]


def enumerate_chain(g0: VoterGraph, alpha, *,
                    stop: Optional[Callable[[VoterGraph], bool]] = None,
                    cap: int = 200_000) -> EnumeratedChain:
    """BFS over the exact one-round distribution from ``g0``.

    ``stop`` marks extra states as absorbing (their rows become pure
    self-loops and they are not expanded); states whose every branch is a
    self-loop are absorbing on their own. Raises once more than ``cap``
    states are reached.
    """
    start = canonical_state(g0)
    states = [start]
    index = {start: 0}
    kernel: list[dict[int, Fraction]] = []
    absorbing: list[bool] = []
    frontier = [0]
    while frontier:
        next_frontier = []
        for i in frontier:
            g = graph_from_state(states[i])
            if stop is not None and stop(g):
                kernel.append({i: Fraction(1)})
                absorbing.append(True)
                continue
            row: dict[int, Fraction] = {}
            for tr in one_step_exact(g, alpha):
                j = index.get(tr.successor)
                if j is None:
                    j = len(states)
                    if j >= cap:
                        raise ValueError(
                            f"reachable state space exceeds cap={cap}")
                    index[tr.successor] = j
                    states.append(tr.successor)
                    next_frontier.append(j)
                row[j] = row.get(j, Fraction(0)) + tr.prob
            kernel.append(row)
            absorbing.append(row.get(i, Fraction(0)) == 1)
        frontier = next_frontier
    return EnumeratedChain(states, index, kernel, absorbing)


def absorption_distribution(chain: EnumeratedChain,
                            start: CanonicalState) -> dict[CanonicalState, float]:
    """Probability of ending in each absorbing state, from ``start``.

    Solves the first-step equations restricted to transient states with a
    sparse LU factorization; results are accurate to well below 1e-12 at
    the scales the oracle admits.
    """
    i0 = chain.index[start]
    if chain.absorbing[i0]:
        return {start: 1.0}
    transient = [i for i, a in enumerate(chain.absorbing) if not a]
    targets = [i for i, a in enumerate(chain.absorbing) if a]
    tpos = {i: k for k, i in enumerate(transient)}
    apos = {i: k for k, i in enumerate(targets)}
    nt, na = len(transient), len(targets)
    Q = lil_matrix((nt, nt))
    R = np.zeros((nt, na))
    for i in transient:
        for j, p in chain.kernel[i].items():
            if chain.absorbing[j]:
                R[tpos[i], apos[j]] += float(p)
            else:
                Q[tpos[i], tpos[j]] += float(p)
    lu = splu((identity(nt, format="csc") - Q.tocsc()).tocsc())
    B = lu.solve(R).reshape(nt, na)
    row = B[tpos[i0]]
    return {chain.states[targets[k]]: float(row[k]) for k in range(na)
            if row[k] > 0.0}


# ---------------------------------------------------------------------------
# distributions used by the embedded-chain equivalence checks
# ---------------------------------------------------------------------------

def dtmc_effective_distribution(g: VoterGraph, alpha) \
        -> dict[tuple[RuleId, CanonicalState], Fraction]:
    """Exact one-round distribution conditioned on an effective transition."""
    rule_mass: dict[tuple[RuleId, CanonicalState], Fraction] = {}
    total = Fraction(0)
    for tr in one_step_exact(g, alpha):
        if tr.rule is None:
            continue
        key = (tr.rule, tr.successor)
        rule_mass[key] = rule_mass.get(key, Fraction(0)) + tr.prob
        total += tr.prob
    if total == 0:
        return {}
    return {k: p / total for k, p in rule_mass.items()}


def weighted_step_distribution(g: VoterGraph, alpha: float) \
        -> dict[tuple[RuleId, CanonicalState], float]:
    """Next effective transition distribution of the weighted dynamics.

    Built from propensity ratios and brute-force match enumeration (each
    match of a rule is equally likely within the rule), so it is an
    independent reconstruction of what the sampling engine does.
    """
    a = weighted_propensities(g.counts, alpha)
    total = sum(a)
    if total == 0.0:
        return {}
    out: dict[tuple[RuleId, CanonicalState], float] = {}
    for j, rid in enumerate(BASIC_RULES):
        if a[j] == 0.0:
            continue
        rule = RULES[rid]
        matches = enumerate_matches(g, rule.motif)
        share = (a[j] / total) / len(matches)
        for match in matches:
            succ = g.clone()
            apply(succ, rule, match)
            key = (rid, canonical_state(succ))
            out[key] = out.get(key, 0.0) + share
    return out
