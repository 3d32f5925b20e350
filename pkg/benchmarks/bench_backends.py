#!/usr/bin/env python3
"""Throughput comparison of the compiled and pure-Python engine cores.

Runs identical seeded workloads on every available backend and reports
effective events per second plus the speedup of the compiled core. The two
backends are draw-for-draw identical, so event counts must agree exactly;
the script asserts that while timing.

Usage: python benchmarks/bench_backends.py [--agents 100] [--edges 400]
       [--runs 20] [--alpha 0.5]
"""

import argparse
import time

from avmsim import EngineConfig, RandomStream, Semantics, available, run
from avmsim.generate import FixedCount, InitSpec, generate

WORKLOADS = [
    ("dtmc", Semantics.DTMC),
    ("ctmc-weighted", Semantics.CTMC_WEIGHTED),
    ("ctmc-mass-action", Semantics.CTMC_MASS_ACTION),
    ("ctmc-lcm", Semantics.CTMC_LCM),
]


def bench(backend: str, sem: Semantics, args) -> tuple[float, int]:
    total_events = 0
    t0 = time.perf_counter()
    for r in range(args.runs):
        rng = RandomStream(args.seed + r)
        g = generate(InitSpec(args.agents, 0.5, FixedCount(args.edges)), rng)
        kw = {}
        if sem == Semantics.CTMC_MASS_ACTION:
            kw = dict(kappa_rewire_one=0.02, kappa_rewire_zero=0.02)
        cfg = EngineConfig(semantics=sem, alpha=args.alpha, **kw)
        traj = run(g, cfg, rng, backend=backend)
        total_events += traj.final.effective_events
    return time.perf_counter() - t0, total_events


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--agents", type=int, default=100)
    ap.add_argument("--edges", type=int, default=400)
    ap.add_argument("--runs", type=int, default=20)
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = available()
    print(f"backends: {', '.join(backends)}   "
          f"workload: n={args.agents} m={args.edges} runs={args.runs} "
          f"alpha={args.alpha}")
    print(f"{'model':<18}" + "".join(f"{b + ' ev/s':>16}" for b in backends)
          + (f"{'speedup':>10}" if len(backends) > 1 else ""))
    for name, sem in WORKLOADS:
        rates = []
        events = []
        for b in backends:
            dt, ev = bench(b, sem, args)
            rates.append(ev / dt if dt > 0 else float("inf"))
            events.append(ev)
        assert len(set(events)) == 1, f"backends disagree on {name}: {events}"
        row = f"{name:<18}" + "".join(f"{r:>16,.0f}" for r in rates)
        if len(backends) > 1:
            row += f"{rates[0] / rates[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
