"""Adaptive voter model simulator.

Agents holding one of two opinions sit in a multigraph whose links rewire
and whose opinions spread; five interchangeable scheduling semantics
(one round-based, four continuous-time) run the same rule catalog. See
``engines`` for the dynamics, ``oracle`` for exact tiny-scale ground
truth, and ``cli`` for the sweep harness.
"""

from .analysis import ComponentReport, SweepRecord, components, summarize
from .backend import DEFAULT as DEFAULT_BACKEND, HAVE_COMPILED, available
from .engines import (AbsorbReason, EngineConfig, FinalSummary, Semantics,
                      Trajectory, run)
from .generate import FixedCount, InitSpec, PerPair, generate
from .graph import Opinion, PatternCounts, VoterGraph, new_graph
from .patterns import (EdgeMotif, EdgeTwoVertexMotif, EdgeVertexMotif, Match,
                       VertexMotif, count_motif, enumerate_matches,
                       sample_match_uniform, verify_counting_identity)
from .rng import RandomStream
from .rules import RULES, EventRecord, RuleId, RuleSpec, StaleMatchError, apply

__version__ = "0.1.0"

__all__ = [
    "AbsorbReason", "ComponentReport", "DEFAULT_BACKEND", "EdgeMotif",
    "EdgeTwoVertexMotif", "EdgeVertexMotif", "EngineConfig", "EventRecord",
    "FinalSummary", "FixedCount", "HAVE_COMPILED", "InitSpec", "Match",
    "Opinion", "PatternCounts", "PerPair", "RULES", "RandomStream", "RuleId",
    "RuleSpec", "Semantics", "StaleMatchError", "SweepRecord", "Trajectory",
    "VertexMotif", "VoterGraph", "apply", "available", "components",
    "count_motif", "enumerate_matches", "generate", "new_graph", "run",
    "sample_match_uniform", "summarize", "verify_counting_identity",
]
