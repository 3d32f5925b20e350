"""Final-state and trajectory analysis: connected components, homogeneity,
fragmentation, and the minority fraction."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .engines import Semantics, Trajectory
from .graph import VoterGraph


class ComponentProfile(Enum):
    ALL_ONE = "all_one"
    ALL_ZERO = "all_zero"
    MIXED = "mixed"


@dataclass(frozen=True)
class ComponentInfo:
    size: int
    profile: ComponentProfile


@dataclass(frozen=True)
class ComponentReport:
    n_components: int
    components: tuple[ComponentInfo, ...]
    fragmented: bool
    minority_fraction: float


class UnionFind:
    """Disjoint sets over dense ints, path compression + union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


def components(g: VoterGraph) -> ComponentReport:
    """Connected components with per-component opinion profiles.

    Isolated agents form size-1 components and count as homogeneous; a
    state is fragmented when it splits into two or more components that
    are each opinion-homogeneous (which forces the discordant count to 0).
    """
    n = g.n_agents
    uf = UnionFind(n)
    for gid in range(g.n_edges):
        u, v = g.endpoints(gid)
        uf.union(u, v)
    members: dict[int, list[int]] = {}
    for a in range(n):
        members.setdefault(uf.find(a), []).append(a)
    infos = []
    for root in sorted(members):
        group = members[root]
        ones = sum(1 for a in group if int(g.opinion(a)) == 1)
        if ones == len(group):
            profile = ComponentProfile.ALL_ONE
        elif ones == 0:
            profile = ComponentProfile.ALL_ZERO
        else:
            profile = ComponentProfile.MIXED
        infos.append(ComponentInfo(len(group), profile))
    fragmented = (len(infos) >= 2
                  and all(i.profile != ComponentProfile.MIXED for i in infos))
    c = g.counts
    minority = min(c.n_one, c.n_zero) / c.n_agents if c.n_agents else 0.0
    return ComponentReport(len(infos), tuple(infos), fragmented, minority)


@dataclass(frozen=True)
class SweepRecord:
    """One flattened result row: config, seed, final summary, final state."""

    model: str
    alpha: float
    u: float
    n_agents: int
    n_edges: int
    run: int
    seed: int
    steps: int
    effective_events: int
    sim_time: Optional[float]
    absorb_reason: str
    minority_frac_final: float
    n_components: int
    fragmented: bool
    wallclock_ms: int


def summarize(trajectory: Trajectory, g_final: VoterGraph, *, model: str,
              alpha: float, u: float, run: int, seed: int,
              wallclock_ms: int = 0) -> SweepRecord:
    final = trajectory.final
    if final is None:
        raise ValueError("trajectory has not completed")
    report = components(g_final)
    return SweepRecord(
        model=model, alpha=alpha, u=u,
        n_agents=g_final.n_agents, n_edges=g_final.n_edges,
        run=run, seed=seed,
        steps=final.steps, effective_events=final.effective_events,
        sim_time=None if trajectory.semantics == Semantics.DTMC else final.sim_time,
        absorb_reason=final.reason.value,
        minority_frac_final=report.minority_fraction,
        n_components=report.n_components,
        fragmented=report.fragmented,
        wallclock_ms=wallclock_ms,
    )


def threshold_crossing(alphas, means, level: float = 0.1) -> Optional[float]:
    """First x where the piecewise-linear mean curve rises through ``level``.

    Points are sorted by x first. Returns the interpolated crossing, the
    first x when the curve starts above the level, or None when it never
    exceeds it.
    """
    pts = sorted(zip(alphas, means))
    if not pts:
        return None
    if pts[0][1] > level:
        return pts[0][0]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y0 <= level < y1:
            if y1 == y0:
                return x1
            return x0 + (level - y0) * (x1 - x0) / (y1 - y0)
    return None
