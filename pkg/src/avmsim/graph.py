"""Mutable typed multigraph of voters: agents with binary opinions linked by
two-member groups (undirected edges; parallel groups permitted).

The graph keeps all pattern counts the engines consume incrementally
up to date: per-opinion agent totals, the three edge classes (one-one,
one-zero, zero-zero), a sampling index over discordant groups, and
per-opinion agent registries. Groups are never created or destroyed by the
dynamics, only rewired, so group ids are dense and stable; the same holds
for agent ids.

Update-order contract (required for reproducibility across engine
backends): ``set_opinion`` applies edge-class and discordant-index updates
in ascending group id over the agent's incident groups, and
``rewire_group`` removes the group from the discordant index before
re-adding it if the new endpoint pair is discordant. Both sampling
registries and the discordant index are array+position-map structures with
swap-remove semantics, so sampling order is a deterministic function of the
edit history.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum


class Opinion(IntEnum):
    ZERO = 0
    ONE = 1

    def flipped(self) -> "Opinion":
        return Opinion(1 - self.value)


@dataclass(frozen=True)
class PatternCounts:
    """Snapshot of the five maintained pattern counts."""

    n_one: int
    n_zero: int
    n_11: int
    n_01: int
    n_00: int

    @property
    def n_agents(self) -> int:
        return self.n_one + self.n_zero

    @property
    def n_edges(self) -> int:
        return self.n_11 + self.n_01 + self.n_00

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n_one, self.n_zero, self.n_11, self.n_01, self.n_00)


class IndexedSet:
    """Set of ints with O(1) add/discard and O(1) uniform indexing.

    Backed by an array plus a position map; removal swaps the last item
    into the vacated slot. Item order therefore depends on the exact
    add/discard history, which both engine backends reproduce identically.
    """

    __slots__ = ("items", "_pos")

    def __init__(self, items=()):
        self.items: list[int] = []
        self._pos: dict[int, int] = {}
        for x in items:
            self.add(x)

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, x: int) -> bool:
        return x in self._pos

    def __iter__(self):
        return iter(self.items)

    def add(self, x: int) -> None:
        if x not in self._pos:
            self._pos[x] = len(self.items)
            self.items.append(x)

    def discard(self, x: int) -> None:
        pos = self._pos.pop(x, None)
        if pos is None:
            return
        last = self.items.pop()
        if last != x:
            self.items[pos] = last
            self._pos[last] = pos

    def replace_items(self, items) -> None:
        """Install a new item order wholesale (used when syncing backends)."""
        self.items = list(items)
        self._pos = {x: i for i, x in enumerate(self.items)}


class VoterGraph:
    """Agents with binary opinions, groups as undirected multi-edges."""

    __slots__ = ("_opinions", "_groups", "_incidence", "_ones", "_zeros",
                 "_discordant", "_n11", "_n01", "_n00")

    def __init__(self, opinions, edges):
        self._opinions: list[int] = []
        for o in opinions:
            v = int(o)
            if v not in (0, 1):
                raise ValueError(f"opinion must be 0 or 1, got {o!r}")
            self._opinions.append(v)
        n = len(self._opinions)

        self._ones = IndexedSet()
        self._zeros = IndexedSet()
        for a, v in enumerate(self._opinions):
            (self._ones if v == 1 else self._zeros).add(a)

        self._groups: list[tuple[int, int]] = []
        self._incidence: list[set[int]] = [set() for _ in range(n)]
        self._discordant = IndexedSet()
        self._n11 = self._n01 = self._n00 = 0
        for i, j in edges:
            if not (0 <= i < n) or not (0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) references a missing agent")
            if i == j:
                raise ValueError(f"self-group on agent {i} is not allowed")
            gid = len(self._groups)
            self._groups.append((i, j))
            self._incidence[i].add(gid)
            self._incidence[j].add(gid)
            self._bump_edge_class(self._opinions[i], self._opinions[j], +1)
            if self._opinions[i] != self._opinions[j]:
                self._discordant.add(gid)

    # -- read access -------------------------------------------------

    @property
    def n_agents(self) -> int:
        return len(self._opinions)

    @property
    def n_edges(self) -> int:
        return len(self._groups)

    def opinion(self, agent: int) -> Opinion:
        self._check_agent(agent)
        return Opinion(self._opinions[agent])

    def endpoints(self, group: int) -> tuple[int, int]:
        self._check_group(group)
        return self._groups[group]

    def degree(self, agent: int) -> int:
        self._check_agent(agent)
        return len(self._incidence[agent])

    def incident_groups(self, agent: int) -> frozenset[int]:
        self._check_agent(agent)
        return frozenset(self._incidence[agent])

    @property
    def counts(self) -> PatternCounts:
        return PatternCounts(len(self._ones), len(self._zeros),
                             self._n11, self._n01, self._n00)

    @property
    def discordant_groups(self) -> IndexedSet:
        """Sampling index over groups whose endpoints disagree."""
        return self._discordant

    def agents_with(self, opinion: Opinion) -> IndexedSet:
        """Sampling registry of agents currently holding ``opinion``."""
        return self._ones if int(opinion) == 1 else self._zeros

    # -- edits -------------------------------------------------------

    def set_opinion(self, agent: int, opinion: Opinion) -> None:
        self._check_agent(agent)
        new = int(opinion)
        old = self._opinions[agent]
        if new == old:
            return
        self._opinions[agent] = new
        if new == 1:
            self._zeros.discard(agent)
            self._ones.add(agent)
        else:
            self._ones.discard(agent)
            self._zeros.add(agent)
        # ascending gid order pins the discordant-index item order
        for gid in sorted(self._incidence[agent]):
            u, v = self._groups[gid]
            other_op = self._opinions[v if u == agent else u]
            self._bump_edge_class(old, other_op, -1)
            self._bump_edge_class(new, other_op, +1)
            if new != other_op:
                self._discordant.add(gid)
            else:
                self._discordant.discard(gid)

    def rewire_group(self, group: int, keep: int, new_peer: int) -> None:
        self._check_group(group)
        self._check_agent(new_peer)
        u, v = self._groups[group]
        if keep == u:
            other = v
        elif keep == v:
            other = u
        else:
            raise ValueError(f"agent {keep} is not an endpoint of group {group}")
        if new_peer == keep:
            raise ValueError("rewiring onto the kept agent would create a self-group")
        op_keep = self._opinions[keep]
        self._bump_edge_class(op_keep, self._opinions[other], -1)
        self._discordant.discard(group)
        self._incidence[other].discard(group)
        self._groups[group] = (keep, new_peer)
        self._incidence[keep].add(group)
        self._incidence[new_peer].add(group)
        op_new = self._opinions[new_peer]
        self._bump_edge_class(op_keep, op_new, +1)
        if op_keep != op_new:
            self._discordant.add(group)

    # -- verification / plumbing -------------------------------------

    def recount(self) -> PatternCounts:
        """Recompute all pattern counts from raw storage, ignoring caches."""
        n_one = sum(1 for o in self._opinions if o == 1)
        n_zero = len(self._opinions) - n_one
        n11 = n01 = n00 = 0
        for i, j in self._groups:
            oi, oj = self._opinions[i], self._opinions[j]
            if oi != oj:
                n01 += 1
            elif oi == 1:
                n11 += 1
            else:
                n00 += 1
        return PatternCounts(n_one, n_zero, n11, n01, n00)

    def clone(self) -> "VoterGraph":
        return VoterGraph(list(self._opinions), list(self._groups))

    def to_json_dict(self) -> dict:
        return {"opinions": list(self._opinions),
                "edges": [[i, j] for i, j in self._groups]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "VoterGraph":
        return cls(data["opinions"], [tuple(e) for e in data["edges"]])

    def save_json(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_json_dict(), fh)

    @classmethod
    def load_json(cls, path) -> "VoterGraph":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))

    def _engine_state(self):
        """Export raw state for the compiled core (order-sensitive)."""
        return (self._opinions, self._groups, self._ones.items,
                self._zeros.items, self._discordant.items,
                (self._n11, self._n01, self._n00))

    def _install_engine_state(self, opinions, groups, ones_items, zeros_items,
                              disc_items, edge_class_counts) -> None:
        """Adopt state produced by the compiled core, preserving the exact
        registry and discordant-index item orders it evolved."""
        self._opinions = list(opinions)
        self._groups = list(groups)
        self._incidence = [set() for _ in range(len(self._opinions))]
        for gid, (i, j) in enumerate(self._groups):
            self._incidence[i].add(gid)
            self._incidence[j].add(gid)
        self._ones.replace_items(ones_items)
        self._zeros.replace_items(zeros_items)
        self._discordant.replace_items(disc_items)
        self._n11, self._n01, self._n00 = edge_class_counts

    # -- internal ------------------------------------------------------

    def _bump_edge_class(self, o1: int, o2: int, delta: int) -> None:
        if o1 != o2:
            self._n01 += delta
        elif o1 == 1:
            self._n11 += delta
        else:
            self._n00 += delta

    def _check_agent(self, agent: int) -> None:
        if not (0 <= agent < len(self._opinions)):
            raise ValueError(f"unknown agent {agent}")

    def _check_group(self, group: int) -> None:
        if not (0 <= group < len(self._groups)):
            raise ValueError(f"unknown group {group}")


def new_graph(opinions, edges) -> VoterGraph:
    return VoterGraph(opinions, edges)
