"""Random initial graphs for experiments.

Opinions are assigned exactly: round(u * n) agents hold Zero, chosen as a
uniform subset. Edges come in two flavors: a fixed count of distinct
agent pairs drawn uniformly (a simple initial graph; the sweep default),
or independent per-pair coin flips with probability v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .graph import Opinion, VoterGraph
from .rng import RandomStream


@dataclass(frozen=True)
class FixedCount:
    m: int


@dataclass(frozen=True)
class PerPair:
    v: float


EdgeMode = Union[FixedCount, PerPair]


@dataclass(frozen=True)
class InitSpec:
    n_agents: int
    u: float
    edge_mode: EdgeMode
    seed: Optional[int] = None

    def validate(self) -> None:
        if self.n_agents <= 0:
            raise ValueError("n_agents must be positive")
        if not (0.0 <= self.u <= 1.0):
            raise ValueError("u must lie in [0, 1]")
        if isinstance(self.edge_mode, FixedCount):
            n = self.n_agents
            max_pairs = n * (n - 1) // 2
            if self.edge_mode.m < 0 or self.edge_mode.m > max_pairs:
                raise ValueError(
                    f"edge count {self.edge_mode.m} exceeds the "
                    f"{max_pairs} distinct pairs of {n} agents")
        elif isinstance(self.edge_mode, PerPair):
            if not (0.0 <= self.edge_mode.v <= 1.0):
                raise ValueError("pair probability v must lie in [0, 1]")
        else:
            raise TypeError(f"not an edge mode: {self.edge_mode!r}")


def generate(spec: InitSpec, rng: Optional[RandomStream] = None) -> VoterGraph:
    spec.validate()
    if rng is None:
        if spec.seed is None:
            raise ValueError("generate() needs an rng or a seeded InitSpec")
        rng = RandomStream(spec.seed)
    n = spec.n_agents

    n_zero = round(spec.u * n)
    idx = list(range(n))
    for k in range(n_zero):  # partial Fisher-Yates picks a uniform subset
        j = k + rng.randrange(n - k)
        idx[k], idx[j] = idx[j], idx[k]
    opinions = [Opinion.ONE] * n
    for a in idx[:n_zero]:
        opinions[a] = Opinion.ZERO

    edges: list[tuple[int, int]] = []
    if isinstance(spec.edge_mode, FixedCount):
        seen: set[tuple[int, int]] = set()
        while len(edges) < spec.edge_mode.m:
            i = rng.randrange(n)
            j = rng.randrange(n)
            if i == j:
                continue
            pair = (i, j) if i < j else (j, i)
            if pair in seen:
                continue
            seen.add(pair)
            edges.append(pair)
    else:
        v = spec.edge_mode.v
        for i in range(n - 1):
            for j in range(i + 1, n):
                if rng.random() < v:
                    edges.append((i, j))
    return VoterGraph(opinions, edges)
