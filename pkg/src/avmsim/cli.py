"""Command-line front end: single runs and nested parameter sweeps.

Sweeps iterate the cross product of opinion fractions and alpha values,
run a fixed number of replicates per configuration, and emit one CSV row
per run. Replicate seeds derive from a stable content hash of
(base seed, model, alpha, u, run index), so adding or removing
configurations never perturbs the streams of the others. Rows are written
in deterministic (u, alpha, run) order regardless of ``--jobs``, and a
re-run with the same spec produces a byte-identical file.

For the mass-action model the swept "alpha" column carries the common
rewire base rate while the adopt rates stay fixed (``--rate-adopt-*``),
mirroring how that model's threshold is located experimentally.

``wallclock_ms`` is 0 by default so that re-runs stay byte-identical;
``--wallclock`` opts into real timings.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional

from . import backend as _backend
from .analysis import ComponentReport, SweepRecord, components, summarize
from .engines import EngineConfig, Semantics, run
from .generate import FixedCount, InitSpec, PerPair, generate
from .graph import VoterGraph
from .rng import RandomStream

CSV_HEADER = ("model,alpha,u,n_agents,n_edges,run,seed,steps,effective_events,"
              "sim_time,absorb_reason,minority_frac_final,n_components,"
              "fragmented,wallclock_ms")

MODELS = tuple(s.value for s in Semantics)


def derive_seed(base_seed: int, model: str, alpha: float, u: float, run: int) -> int:
    """Stable 64-bit replicate seed from the configuration content."""
    key = f"{base_seed}|{model}|{float(alpha)!r}|{float(u)!r}|{run}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


@dataclass(frozen=True)
class SweepSpec:
    model: str
    alphas: tuple[float, ...]
    us: tuple[float, ...]
    runs_per_config: int
    n_agents: int
    edge_mode: object                     # FixedCount or PerPair
    base_seed: int
    out: Optional[str] = None
    jobs: int = 1
    max_steps: int = 10_000_000
    max_time: float = float("inf")
    count_noop_steps: bool = False
    rate_adopt_one: float = 1.0
    rate_adopt_zero: float = 1.0
    uniform_probs: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    wallclock: bool = False
    backend: Optional[str] = None


def _engine_config(spec: SweepSpec, alpha: float) -> EngineConfig:
    cfg = EngineConfig(
        semantics=Semantics(spec.model),
        alpha=alpha,
        max_steps=spec.max_steps,
        max_time=spec.max_time,
        count_noop_steps=spec.count_noop_steps,
        uniform_probs=spec.uniform_probs,
    )
    if cfg.semantics == Semantics.CTMC_MASS_ACTION:
        # the swept value is the rewire base rate in this model
        cfg = replace(cfg, kappa_rewire_one=alpha, kappa_rewire_zero=alpha,
                      alpha_adopt_one=spec.rate_adopt_one,
                      alpha_adopt_zero=spec.rate_adopt_zero)
    return cfg


def _run_one(spec: SweepSpec, alpha: float, u: float, run_idx: int) -> SweepRecord:
    seed = derive_seed(spec.base_seed, spec.model, alpha, u, run_idx)
    rng = RandomStream(seed)
    g = generate(InitSpec(spec.n_agents, u, spec.edge_mode), rng)
    cfg = _engine_config(spec, alpha)
    t0 = time.perf_counter()
    traj = run(g, cfg, rng, backend=spec.backend)
    elapsed_ms = int(round((time.perf_counter() - t0) * 1000)) if spec.wallclock else 0
    return summarize(traj, g, model=spec.model, alpha=alpha, u=u,
                     run=run_idx, seed=seed, wallclock_ms=elapsed_ms)


def _task(args) -> SweepRecord:
    return _run_one(*args)


def _format_float(x: float) -> str:
    return repr(float(x))


def record_to_csv_row(r: SweepRecord) -> str:
    return ",".join([
        r.model,
        _format_float(r.alpha),
        _format_float(r.u),
        str(r.n_agents),
        str(r.n_edges),
        str(r.run),
        str(r.seed),
        str(r.steps),
        str(r.effective_events),
        "" if r.sim_time is None else _format_float(r.sim_time),
        r.absorb_reason,
        _format_float(r.minority_frac_final),
        str(r.n_components),
        "true" if r.fragmented else "false",
        str(r.wallclock_ms),
    ])


def run_sweep(spec: SweepSpec, stream=None) -> list[SweepRecord]:
    """Execute the sweep, write the CSV (if requested), print a summary."""
    stream = stream if stream is not None else sys.stdout
    tasks = [(spec, alpha, u, r)
             for u in spec.us for alpha in spec.alphas
             for r in range(spec.runs_per_config)]
    if spec.jobs > 1 and tasks:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            records = list(pool.map(_task, tasks, chunksize=1))
    else:
        records = [_task(t) for t in tasks]

    if spec.out is not None:
        with open(spec.out, "w", newline="") as fh:
            fh.write(CSV_HEADER + "\n")
            for r in records:
                fh.write(record_to_csv_row(r) + "\n")

    i = 0
    for u in spec.us:
        for alpha in spec.alphas:
            chunk = records[i:i + spec.runs_per_config]
            i += spec.runs_per_config
            if not chunk:
                continue
            mean = sum(c.minority_frac_final for c in chunk) / len(chunk)
            frag = sum(1 for c in chunk if c.fragmented)
            print(f"{spec.model} u={u!r} alpha={alpha!r} runs={len(chunk)} "
                  f"mean_minority={mean:.6f} fragmented={frag}/{len(chunk)}",
                  file=stream)
    return records


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.split(",") if x.strip())


def _add_shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--model", choices=MODELS, default="ctmc-weighted")
    p.add_argument("--agents", type=int, default=100,
                   help="number of agents in generated initial graphs")
    edge = p.add_mutually_exclusive_group()
    edge.add_argument("--edges", type=int, default=None,
                      help="fixed number of distinct links (default 400)")
    edge.add_argument("--pair-prob", type=float, default=None,
                      help="independent per-pair link probability")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-steps", type=int, default=10_000_000)
    p.add_argument("--max-time", type=float, default=float("inf"))
    p.add_argument("--count-noop-steps", action="store_true",
                   help="round-based model: count (and simulate) inactive rounds")
    p.add_argument("--kappa-rewire-one", type=float, default=1.0)
    p.add_argument("--kappa-rewire-zero", type=float, default=1.0)
    p.add_argument("--rate-adopt-one", type=float, default=1.0)
    p.add_argument("--rate-adopt-zero", type=float, default=1.0)
    p.add_argument("--uniform-probs", type=_float_list,
                   default=(0.25, 0.25, 0.25, 0.25),
                   help="comma-separated firing probabilities (ctmc-uniform)")
    p.add_argument("--backend", choices=("compiled", "python"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="avmsim",
        description="Adaptive voter model simulator and sweep harness")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="single trajectory")
    _add_shared(p_run)
    p_run.add_argument("--alpha", type=float, default=0.5)
    p_run.add_argument("--u", type=float, default=0.5)
    p_run.add_argument("--graph-json", default=None,
                       help="load the initial graph from this JSON file "
                            "instead of generating one")
    p_run.add_argument("--trajectory-out", default=None,
                       help="write trajectory JSON lines here ('-' = stdout)")
    p_run.add_argument("--sample-stride", type=int, default=0,
                       help="record pattern counts every N effective events")

    p_sweep = sub.add_parser("sweep", help="nested parameter sweep to CSV")
    _add_shared(p_sweep)
    p_sweep.add_argument("--alphas", type=_float_list, required=True,
                         help="comma-separated alpha values (mass-action: "
                              "rewire base rates)")
    p_sweep.add_argument("--us", type=_float_list, default=(0.5,),
                         help="comma-separated initial Zero fractions")
    p_sweep.add_argument("--runs", type=int, default=40)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--wallclock", action="store_true",
                         help="record real per-run wallclock (breaks "
                              "byte-identical re-runs)")
    return parser


def _edge_mode(args, parser: argparse.ArgumentParser):
    if args.pair_prob is not None:
        if not (0.0 <= args.pair_prob <= 1.0):
            parser.error("--pair-prob must lie in [0, 1]")
        return PerPair(args.pair_prob)
    m = args.edges if args.edges is not None else 400
    max_pairs = args.agents * (args.agents - 1) // 2
    if m < 0 or m > max_pairs:
        parser.error(f"--edges {m} exceeds the {max_pairs} distinct pairs "
                     f"of --agents {args.agents}")
    return FixedCount(m)


_FLAG_NAMES = {
    "alpha": "--alpha",
    "kappa_rewire_one": "--kappa-rewire-one",
    "kappa_rewire_zero": "--kappa-rewire-zero",
    "alpha_adopt_one": "--rate-adopt-one",
    "alpha_adopt_zero": "--rate-adopt-zero",
    "uniform_probs": "--uniform-probs",
    "max_steps": "--max-steps",
    "max_time": "--max-time",
}


def _flag_spelling(message: str) -> str:
    for field_name, flag in _FLAG_NAMES.items():
        message = message.replace(field_name, flag)
    return message


def _report_dict(report: ComponentReport) -> dict:
    return {
        "n_components": report.n_components,
        "components": [{"size": c.size, "profile": c.profile.value}
                       for c in report.components],
        "fragmented": report.fragmented,
        "minority_fraction": report.minority_fraction,
    }


def cmd_run(args, parser) -> int:
    cfg = EngineConfig(
        semantics=Semantics(args.model),
        alpha=args.alpha,
        kappa_rewire_one=args.kappa_rewire_one,
        kappa_rewire_zero=args.kappa_rewire_zero,
        alpha_adopt_one=args.rate_adopt_one,
        alpha_adopt_zero=args.rate_adopt_zero,
        uniform_probs=args.uniform_probs,
        max_steps=args.max_steps,
        max_time=args.max_time,
        count_noop_steps=args.count_noop_steps,
        sample_stride=args.sample_stride,
        record_events=args.trajectory_out is not None,
    )
    try:
        cfg.validate()
    except ValueError as exc:
        parser.error(_flag_spelling(str(exc)))
    rng = RandomStream(args.seed)
    if args.graph_json is not None:
        g = VoterGraph.load_json(args.graph_json)
    else:
        g = generate(InitSpec(args.agents, args.u, _edge_mode(args, parser)), rng)
    traj = run(g, cfg, rng, backend=args.backend)
    if args.trajectory_out == "-":
        for line in traj.to_json_lines():
            print(line)
    elif args.trajectory_out is not None:
        with open(args.trajectory_out, "w", newline="") as fh:
            for line in traj.to_json_lines():
                fh.write(line + "\n")
    f = traj.final
    print(json.dumps({
        "final": {"absorbed": f.absorbed, "reason": f.reason.value,
                  "steps": f.steps, "effective_events": f.effective_events,
                  "sim_time": f.sim_time, "seed": f.seed,
                  "counts": list(f.counts.as_tuple())},
        "components": _report_dict(components(g)),
    }, sort_keys=True))
    return 0


def cmd_sweep(args, parser) -> int:
    if args.runs < 0:
        parser.error("--runs must be nonnegative")
    if args.jobs < 1:
        parser.error("--jobs must be at least 1")
    if not args.alphas:
        parser.error("--alphas needs at least one value")
    spec = SweepSpec(
        model=args.model,
        alphas=args.alphas,
        us=args.us,
        runs_per_config=args.runs,
        n_agents=args.agents,
        edge_mode=_edge_mode(args, parser),
        base_seed=args.seed,
        out=args.out,
        jobs=args.jobs,
        max_steps=args.max_steps,
        max_time=args.max_time,
        count_noop_steps=args.count_noop_steps,
        rate_adopt_one=args.rate_adopt_one,
        rate_adopt_zero=args.rate_adopt_zero,
        uniform_probs=args.uniform_probs,
        wallclock=args.wallclock,
        backend=args.backend,
    )
    try:
        run_sweep(spec)
    except OSError as exc:
        parser.error(f"--out {args.out}: {exc}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "run":
        return cmd_run(args, parser)
    return cmd_sweep(args, parser)


if __name__ == "__main__":
    sys.exit(main())
