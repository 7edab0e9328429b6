"""Command line interface: ``moped {detect,detect-multiscale,simulate,evaluate,benchmark}``.

Exit status is 0 on success, 2 for usage or configuration errors and 3 for
data errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import io
from .calibrate import PermutationConfig, moped
from .detector import DetectorConfig, detector_trace
from .errors import DataError, MopedError
from .margins import MultivariateSeries, rank_transform_pareto2
from .merge import BandwidthLadder, merge_over_bandwidths, resolve_rank
from .metrics import Segmentation, covering_metric, v_measure
from .simulate import ScenarioSpec, generate_scenario

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3


@dataclass
class RunConfig:
    mode: str
    input: str | None = None
    output: str | None = None
    bandwidths: list[int] = field(default_factory=lambda: [1000])
    ranks: list[float] = field(default_factory=lambda: [0.05])
    eta: float = 0.4
    alpha: float = 0.05
    permutations: int = 200
    seed: int = 0
    pareto: bool = False
    stride: int = 1
    threads: int = 1
    # simulate
    scenario: int = 1
    n: int | None = None
    dim: int = 2
    q: int = 1
    rho: float = 0.6
    omega_seed: int = 1
    margin: str = "pareto2"
    change_points: list[int] | None = None
    # evaluate
    truth: str | None = None
    estimate: str | None = None
    # benchmark
    sizes: list[int] = field(default_factory=lambda: [10000, 20000])
    repeats: int = 3


def _int_list(text):
    return [int(v) for v in text.split(",") if v.strip()]


def _float_list(text):
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="moped", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="mode", required=True)

    def detection(p, G_default, k_default):
        p.add_argument("--input", required=True, help="numeric CSV, one column per channel")
        p.add_argument("--output", required=True, help="result JSON path; traces are written beside it")
        p.add_argument("-G", "--bandwidths", type=_int_list, default=G_default)
        p.add_argument("-k", "--ranks", type=_float_list, default=k_default,
                       help="absolute ranks or fractions of G (values below 1)")
        p.add_argument("--eta", type=float, default=0.4)
        p.add_argument("--alpha", type=float, default=0.05)
        p.add_argument("--permutations", type=int, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--stride", type=int, default=1)
        p.add_argument("--pareto", action="store_true", help="input already on Pareto(2) margins")
        p.add_argument("--threads", type=int, default=1)

    detection(sub.add_parser("detect", help="single bandwidth and rank"), [1000], [0.05])
    detection(
        sub.add_parser("detect-multiscale", help="pool over bandwidths and ranks"),
        [500, 1000, 1500],
        [0.2, 0.1, 0.05],
    )

    p = sub.add_parser("simulate", help="generate a scenario series")
    p.add_argument("--output", required=True, help="CSV path; truth JSON is written beside it")
    p.add_argument("--scenario", type=int, default=1, choices=(1, 2))
    p.add_argument("--n", type=int, default=5000)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--rho", type=float, default=0.6)
    p.add_argument("--omega-seed", type=int, default=1)
    p.add_argument("--margin", default="pareto2", choices=("uniform", "pareto2", "gaussian"))
    p.add_argument("--change-points", type=_int_list, default=None)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("evaluate", help="covering metric and V-measure")
    p.add_argument("--truth", required=True)
    p.add_argument("--estimate", required=True)
    p.add_argument("--n", type=int, default=None, help="series length if not recorded in the JSON")
    p.add_argument("--output", default=None, help="metrics JSON path (default: stdout)")

    p = sub.add_parser("benchmark", help="detector wall time against series length")
    p.add_argument("--sizes", type=_int_list, default=[10000, 20000])
    p.add_argument("-G", "--bandwidths", type=_int_list, default=[1000])
    p.add_argument("-k", "--ranks", type=_float_list, default=[100])
    p.add_argument("--dim", type=int, default=4)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None, help="timing CSV path (default: stdout)")
    return parser


def parse_args(argv=None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    return RunConfig(**{k.replace("-", "_"): v for k, v in vars(ns).items()})


def _load_series(cfg: RunConfig) -> MultivariateSeries:
    raw = io.ingest_csv(cfg.input, cfg.stride)
    if cfg.pareto:
        return MultivariateSeries.from_pareto(raw)
    return rank_transform_pareto2(raw)


def _config_echo(cfg: RunConfig) -> dict:
    keys = ("mode", "input", "bandwidths", "ranks", "eta", "alpha", "permutations",
            "seed", "pareto", "stride")
    return {k: asdict(cfg)[k] for k in keys}


def _detect(cfg: RunConfig) -> int:
    if cfg.mode == "detect" and (len(cfg.bandwidths) != 1 or len(cfg.ranks) != 1):
        raise MopedError("detect takes a single bandwidth and a single rank; use detect-multiscale")
    series = _load_series(cfg)
    pconfig = PermutationConfig(cfg.permutations, cfg.alpha, cfg.seed)
    start = time.perf_counter()
    if cfg.mode == "detect":
        G = cfg.bandwidths[0]
        k = resolve_rank(cfg.ranks[0], G)
        changes = moped(series, DetectorConfig(G, k, cfg.eta), pconfig, cfg.threads)
    else:
        ladder = BandwidthLadder(tuple(sorted(cfg.bandwidths)), tuple(cfg.ranks))
        changes = merge_over_bandwidths(series, ladder, cfg.eta, pconfig, cfg.threads)
    wall = time.perf_counter() - start

    result = {
        "n": series.n,
        "d": series.d,
        "change_points": io.changes_to_records(changes),
        "thresholds": [
            {"G": G, "k": k, "C": c} for (G, k), c in sorted(changes.thresholds.items())
        ],
        "config": _config_echo(cfg),
        "wall_time": wall,
    }
    Path(cfg.output).parent.mkdir(parents=True, exist_ok=True)
    io.write_json(cfg.output, result)
    for (G, k), trace in sorted(changes.traces.items()):
        io.write_trace_csv(io.trace_path(cfg.output, G, k), trace)
    return EXIT_OK


def _simulate(cfg: RunConfig) -> int:
    spec = ScenarioSpec(
        scenario=cfg.scenario, n=cfg.n, d=cfg.dim, q=cfg.q, rho=cfg.rho,
        omega_seed=cfg.omega_seed, margin=cfg.margin,
        change_points=tuple(cfg.change_points) if cfg.change_points is not None else None,
    )
    sim = generate_scenario(spec, cfg.seed)
    out = Path(cfg.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    io.write_matrix_csv(out, sim.values, header=[f"x{i + 1}" for i in range(spec.d)])
    spec_echo = asdict(spec)
    io.write_json(
        out.with_suffix(".truth.json"),
        {"n": spec.n, "change_points": sim.change_points, "seed": cfg.seed, "spec": spec_echo},
    )
    return EXIT_OK


def _evaluate(cfg: RunConfig) -> int:
    truth, n_truth = io.read_change_points(cfg.truth)
    est, n_est = io.read_change_points(cfg.estimate)
    n = cfg.n or n_truth or n_est
    if n is None:
        raise MopedError("series length unknown: pass --n or record n in the truth JSON")
    t_seg, e_seg = Segmentation(n, tuple(truth)), Segmentation(n, tuple(est))
    result = {
        "n": n,
        "q": len(truth),
        "q_hat": len(est),
        "q_hat_minus_q": len(est) - len(truth),
        "covering_metric": covering_metric(t_seg, e_seg),
        "v_measure": v_measure(t_seg, e_seg),
    }
    if cfg.output:
        io.write_json(cfg.output, result)
    else:
        print(json.dumps(result, indent=2))
    return EXIT_OK


def benchmark_detector(sizes, G, k, d, repeats=3, seed=0):
    """Best-of-``repeats`` wall time of one detector trace per series length."""
    rng = np.random.default_rng(seed)
    rows = []
    for n in sizes:
        series = MultivariateSeries.from_pareto(1.0 / np.sqrt(rng.random((n, d))))
        cfg = DetectorConfig(G, k)
        detector_trace(series, cfg)  # warm-up: JIT compilation
        best = min(_timed(detector_trace, series, cfg) for _ in range(repeats))
        rows.append((n, G, best))
    return rows


def _timed(fn, *args):
    start = time.perf_counter()
    fn(*args)
    return time.perf_counter() - start


def _benchmark(cfg: RunConfig) -> int:
    G = cfg.bandwidths[0]
    k = resolve_rank(cfg.ranks[0], G)
    rows = benchmark_detector(cfg.sizes, G, k, cfg.dim, cfg.repeats, cfg.seed)
    lines = ["n,G,seconds", *(f"{n},{g},{s:.6g}" for n, g, s in rows)]
    if cfg.output:
        Path(cfg.output).write_text("\n".join(lines) + "\n")
    else:
        print("\n".join(lines))
    return EXIT_OK


def run(cfg: RunConfig) -> int:
    handlers = {
        "detect": _detect,
        "detect-multiscale": _detect,
        "simulate": _simulate,
        "evaluate": _evaluate,
        "benchmark": _benchmark,
    }
    try:
        return handlers[cfg.mode](cfg)
    except (DataError, OSError) as exc:
        print(f"moped: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except MopedError as exc:
        print(f"moped: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
