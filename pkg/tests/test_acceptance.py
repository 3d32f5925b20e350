"""Acceptance criteria, one test per criterion, one printed verdict line each.

Statistical criteria run on frozen seeds so the suite is deterministic:
a systematic implementation error shifts the tested quantities by far more
than the bands, while the frozen draw keeps honest sampling noise from
tripping the 3-sigma limits.

P5's threshold-window clause is expected to fail: the initial-graph
density it pins (100 agents, 400 links = mean degree 8) puts the true
fragmentation threshold of this dynamics at alpha ~ 0.61-0.65 (checked up
to 2000 agents), while the window [0.3, 0.6] brackets the literature value
0.43 that belongs to mean degree 4 - the density implied by the same
experiment's per-pair probability 0.04. The two pins cannot both hold;
see the failure message of P5b for the measurements.
"""

import io
import math
from collections import Counter
from fractions import Fraction

import pytest

from avmsim import (EngineConfig, RandomStream, Semantics, VoterGraph,
                    run, verify_counting_identity)
from avmsim.analysis import threshold_crossing
from avmsim.cli import SweepSpec, derive_seed, run_sweep
from avmsim.generate import FixedCount
from avmsim.oracle import (absorption_distribution, canonical_state,
                           dtmc_effective_distribution, enumerate_chain,
                           graph_from_state, weighted_step_distribution)

from conftest import graph_corpus, random_multigraph

BASE_SEED = 20260809
ALL_SEMANTICS = list(Semantics)
SWEEP_ALPHAS = tuple(round(0.1 * k, 1) for k in range(1, 8))


def _report(pid: str, ok: bool, detail: str) -> None:
    print(f"[{pid}] {'PASS' if ok else 'FAIL'} - {detail}")


def _config(sem, **kw):
    return EngineConfig(semantics=sem, **kw)


# -- P1 ----------------------------------------------------------------------

def test_p1_conservation():
    """1000-step runs on 20 seeded fixtures keep agent and group counts."""
    import random
    rnd = random.Random(BASE_SEED)
    fixtures = [random_multigraph(rnd, max_n=30, max_m=60, min_n=4)
                for _ in range(20)]
    checked = 0
    for i, g0 in enumerate(fixtures):
        for sem in ALL_SEMANTICS:
            g = g0.clone()
            n_v, n_e = g.n_agents, g.n_edges
            traj = run(g, _config(sem, max_steps=1000, record_events=True),
                       RandomStream(BASE_SEED + i))
            assert g.n_agents == n_v and g.n_edges == n_e
            assert g.counts.n_agents == n_v and g.counts.n_edges == n_e
            for _, ev in traj.events:
                assert ev.counts_before.n_agents == n_v
                assert ev.counts_before.n_edges == n_e
                assert ev.counts_after.n_agents == n_v
                assert ev.counts_after.n_edges == n_e
            checked += 1
    _report("P1", True,
            f"agent/group counts constant over {checked} runs "
            f"(20 fixtures x {len(ALL_SEMANTICS)} engines, 1000 steps)")


# -- P2 ----------------------------------------------------------------------

def test_p2_counting_identity():
    """Brute-force match counts equal the closed forms on 100 multigraphs."""
    corpus = graph_corpus(100, seed=BASE_SEED, max_n=12, max_m=20)
    for g in corpus:
        assert verify_counting_identity(g)
    _report("P2", True, "identity holds on 100 random multigraphs "
                        "(n <= 12, m <= 20), brute force vs closed form")


# -- P3 ----------------------------------------------------------------------

P3_FIXTURES = [
    (VoterGraph([1, 0], [(0, 1)]), (0.3, 0.7)),
    (VoterGraph([1, 1, 0, 0], [(0, 2), (1, 3), (0, 3)]), (0.3, 0.7)),
    (VoterGraph([1, 1, 0, 0, 0], [(0, 2), (1, 3), (1, 4)]), (0.3,)),
]


def test_p3_embedded_chain_equivalence():
    """Weighted-CTMC effective-transition law == exact round-based law."""
    worst = 0.0
    states_checked = 0
    for g0, alphas in P3_FIXTURES:
        for alpha in alphas:
            chain = enumerate_chain(g0, Fraction(alpha))
            for i, s in enumerate(chain.states):
                if chain.absorbing[i]:
                    continue
                g = graph_from_state(s)
                exact = dtmc_effective_distribution(g, Fraction(alpha))
                engine = weighted_step_distribution(g, alpha)
                assert set(exact) == set(engine)
                for key, p in exact.items():
                    diff = abs(float(p) - engine[key])
                    worst = max(worst, diff)
                    assert diff < 1e-12
                states_checked += 1
    _report("P3", True, f"distributions match on {states_checked} reachable "
                        f"states across 3 fixtures; worst |diff| = {worst:.2e}")


# -- P4 ----------------------------------------------------------------------

def _simulated_absorption(g0, cfg, n_runs, tag):
    out = Counter()
    for r in range(n_runs):
        g = g0.clone()
        rng = RandomStream(derive_seed(BASE_SEED, tag, cfg.alpha, 0.5, r))
        run(g, cfg, rng)
        out[canonical_state(g)] += 1
    return out


def _absorption_worst_z(dist, freqs, n_runs):
    """Max |z| over 3-sigma binomial bands; thin states pool into one band."""
    for s in freqs:
        assert s in dist, f"reached a state the oracle gives zero mass: {s}"
    worst = 0.0
    pooled_p = 0.0
    pooled_obs = 0
    for s, p in dist.items():
        obs = freqs.get(s, 0)
        if p * n_runs >= 25.0:
            z = abs(obs / n_runs - p) / math.sqrt(p * (1 - p) / n_runs)
            worst = max(worst, z)
        else:
            pooled_p += p
            pooled_obs += obs
    if 0.0 < pooled_p < 1.0:
        z = (abs(pooled_obs / n_runs - pooled_p)
             / math.sqrt(pooled_p * (1 - pooled_p) / n_runs))
        worst = max(worst, z)
    return worst


def test_p4_oracle_absorption_match():
    """10^4-run absorption frequencies sit inside 3-sigma oracle bands."""
    n_runs = 10_000
    worst = 0.0
    comparisons = []

    g2 = VoterGraph([1, 0], [(0, 1)])
    dist2 = absorption_distribution(enumerate_chain(g2, Fraction(0)),
                                    canonical_state(g2))
    assert dist2[((1, 1), ((0, 1),))] == pytest.approx(0.5, abs=1e-12)
    assert dist2[((0, 0), ((0, 1),))] == pytest.approx(0.5, abs=1e-12)
    for sem in (Semantics.DTMC, Semantics.CTMC_WEIGHTED):
        freqs = _simulated_absorption(g2, _config(sem, alpha=0.0), n_runs,
                                      f"p4a-{sem.value}")
        z = _absorption_worst_z(dist2, freqs, n_runs)
        comparisons.append((f"2-agent/{sem.value}", z))
        worst = max(worst, z)

    g4 = VoterGraph([1, 1, 0, 0], [(0, 2), (1, 3), (0, 3)])

    def outside_lcm_region(g):
        c = g.counts
        return min(c.n_one, c.n_zero) <= 1

    for alpha in (0.3, 0.7):
        chain = enumerate_chain(g4, Fraction(alpha))
        dist = absorption_distribution(chain, canonical_state(g4))
        for sem in (Semantics.DTMC, Semantics.CTMC_WEIGHTED):
            freqs = _simulated_absorption(g4, _config(sem, alpha=alpha),
                                          n_runs, f"p4b-{sem.value}")
            z = _absorption_worst_z(dist, freqs, n_runs)
            comparisons.append((f"4-agent a={alpha}/{sem.value}", z))
            worst = max(worst, z)
        # the common-LHS engine freezes once either opinion count drops to
        # one, so its ground truth is the chain stopped at that boundary
        chain_r = enumerate_chain(g4, Fraction(alpha), stop=outside_lcm_region)
        dist_r = absorption_distribution(chain_r, canonical_state(g4))
        freqs = _simulated_absorption(
            g4, _config(Semantics.CTMC_LCM, alpha=alpha), n_runs, "p4b-lcm")
        z = _absorption_worst_z(dist_r, freqs, n_runs)
        comparisons.append((f"4-agent a={alpha}/ctmc-lcm", z))
        worst = max(worst, z)

    for label, z in comparisons:
        assert z < 3.0, (label, z)
    _report("P4", True, f"{len(comparisons)} engine/fixture combinations, "
                        f"10^4 runs each; worst |z| = {worst:.2f} < 3")


# -- P5 ----------------------------------------------------------------------

def _sweep_means(model, n, m, runs, us=(0.5,), alphas=SWEEP_ALPHAS, **kw):
    spec = SweepSpec(model=model, alphas=alphas, us=us, runs_per_config=runs,
                     n_agents=n, edge_mode=FixedCount(m), base_seed=BASE_SEED,
                     out=None, **kw)
    records = run_sweep(spec, stream=io.StringIO())
    means = []
    for a in alphas:
        rows = [r.minority_frac_final for r in records
                if r.alpha == a and r.u == 0.5]
        means.append(sum(rows) / len(rows))
    return means, records


P5_CACHE = {}


def _p5_means():
    if "means" not in P5_CACHE:
        P5_CACHE["means"], P5_CACHE["records"] = _sweep_means(
            "ctmc-weighted", 100, 400, 40)
    return P5_CACHE["means"]


def test_p5_phase_transition_endpoints():
    """Consensus at alpha=0.1, fragmentation at alpha=0.7 (n=100, m=400)."""
    means = _p5_means()
    records = P5_CACHE["records"]
    assert all(r.absorb_reason == "no_discordant" and r.steps <= 10 ** 6
               for r in records)
    low, high = means[0], means[-1]
    ok = low < 0.05 and high > 0.30
    _report("P5", ok, f"mean minority {low:.4f} < 0.05 at alpha=0.1; "
                      f"{high:.4f} > 0.30 at alpha=0.7 (40 runs each; all "
                      f"{len(records)} runs absorbed within 10^6 steps)")
    assert low < 0.05
    assert high > 0.30


def test_p5_threshold_window():
    """Crossing of mean minority 0.1 inside [0.3, 0.6].

    Expected to fail: at the pinned density (mean degree 8) the dynamics
    genuinely cross near 0.61; the window brackets the degree-4 value.
    """
    means = _p5_means()
    crossing = threshold_crossing(SWEEP_ALPHAS, means, level=0.1)
    means200, _ = _sweep_means("ctmc-weighted", 100, 200, 40)
    crossing200 = threshold_crossing(SWEEP_ALPHAS, means200, level=0.1)
    ok = crossing is not None and 0.3 <= crossing <= 0.6
    _report("P5b", ok,
            f"crossing at m=400 (mean degree 8) = {crossing}; window "
            f"[0.3, 0.6] targets the degree-4 threshold 0.43 "
            f"(same sweep at m=200 crosses at {crossing200})")
    assert ok, (
        f"threshold crossing {crossing} outside [0.3, 0.6]: the pinned "
        f"density m=400 (mean degree 8) moves the true threshold of this "
        f"dynamics to ~0.61-0.65 (stable under n=100..2000), while the "
        f"per-pair probability 0.04 quoted for the same experiment implies "
        f"~200 links (mean degree 4), where this sweep crosses at "
        f"{crossing200}. Both pins cannot hold simultaneously; see "
        f"notes/decisions.md.")


# -- P6 ----------------------------------------------------------------------

def test_p6_lcm_matches_weighted_threshold():
    """Common-LHS model crossing within 0.1 of the weighted model's."""
    m3_means, m3_records = _sweep_means("ctmc-lcm", 50, 200, 10)
    m1_means, _ = _sweep_means("ctmc-weighted", 50, 200, 40)
    c3 = threshold_crossing(SWEEP_ALPHAS, m3_means, level=0.1)
    c1 = threshold_crossing(SWEEP_ALPHAS, m1_means, level=0.1)
    assert c3 is not None and c1 is not None
    diff = abs(c3 - c1)
    frozen = sum(1 for r in m3_records
                 if r.absorb_reason == "no_effective_rule")
    _report("P6", diff <= 0.1,
            f"crossings: common-LHS {c3:.3f} vs weighted {c1:.3f}, "
            f"|diff| = {diff:.3f} <= 0.1 "
            f"({frozen}/{len(m3_records)} common-LHS runs froze at the "
            f"single-survivor boundary)")
    assert diff <= 0.1


# -- P7 ----------------------------------------------------------------------

def test_p7_mass_action_brackets_threshold():
    """Adopt rates 1; rewire rate 1 fragments, 1e-3 reaches consensus."""
    rates = (1.0, 0.1, 0.01, 0.001)
    means, _ = _sweep_means("ctmc-mass-action", 100, 400, 10, alphas=rates)
    by_rate = dict(zip(rates, means))
    ok = by_rate[1.0] > 0.30 and by_rate[0.001] < 0.05
    _report("P7", ok,
            f"mean minority {by_rate[1.0]:.3f} > 0.30 at rewire rate 1; "
            f"{by_rate[0.001]:.3f} < 0.05 at 1e-3 "
            f"(threshold sits below rate 0.1, orders of magnitude under "
            f"the round-based 0.43)")
    assert by_rate[1.0] > 0.30
    assert by_rate[0.001] < 0.05


# -- P8 ----------------------------------------------------------------------

def test_p8_sweep_determinism(tmp_path):
    """Re-running a sweep spec yields a byte-identical CSV."""
    def spec(out):
        return SweepSpec(model="ctmc-weighted", alphas=(0.2, 0.5),
                         us=(0.35, 0.5), runs_per_config=4, n_agents=40,
                         edge_mode=FixedCount(120), base_seed=BASE_SEED,
                         out=str(out))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run_sweep(spec(a), stream=io.StringIO())
    run_sweep(spec(b), stream=io.StringIO())
    first, second = a.read_bytes(), b.read_bytes()
    ok = first == second and len(first) > 0
    _report("P8", ok, f"two runs of the same spec: {len(first)} bytes, "
                      f"byte-identical = {first == second}")
    assert ok
