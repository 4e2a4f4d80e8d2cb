"""Corpus-level comparison runs and JSON reports.

Compression is timed around the per-trajectory loop only; ingest, stats,
and serialization stay outside the clock.  Results are independent of the
thread count because every compressor is a pure function of one
trajectory.
"""

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import pi
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .baselines import dp_simplify, fbqs_simplify, opw_simplify
from .fitting import FitConfig
from .geometry import Point
from .metrics import CompressionStats, compute_stats
from .io import ingest_csv
from .onepass import Mode, PiecewiseRepresentation, simplify

Compressor = Callable[[Sequence[Point], FitConfig], PiecewiseRepresentation]

ALGORITHMS: Dict[str, Compressor] = {
    "dp": lambda pts, cfg: dp_simplify(pts, cfg.zeta),
    "opw": lambda pts, cfg: opw_simplify(pts, cfg.zeta),
    "fbqs": lambda pts, cfg: fbqs_simplify(pts, cfg.zeta),
    "operb": lambda pts, cfg: simplify(pts, cfg, Mode.OPERB),
    "operb-a": lambda pts, cfg: simplify(pts, cfg, Mode.OPERB_A),
}


@dataclass(frozen=True)
class RunConfig:
    """One comparison run: which corpus, which algorithms, which bounds."""

    input: str
    output: Optional[str] = None
    algorithms: Tuple[str, ...] = ("dp", "opw", "fbqs", "operb", "operb-a")
    zeta_list: Tuple[float, ...] = (5.0, 20.0, 40.0, 100.0)
    gamma_m: float = pi / 3.0
    opts: Tuple[bool, bool, bool, bool, bool] = (True,) * 5
    k_cap: int = 400_000
    geo: bool = False
    threads: int = 1

    def __post_init__(self):
        for name in self.algorithms:
            if name not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {name!r}")
        if not self.zeta_list:
            raise ValueError("zeta_list must not be empty")
        if len(self.opts) != 5:
            raise ValueError("opts must have exactly 5 entries")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    def fit_config(self, zeta: float) -> FitConfig:
        o1, o2, o3, o4, o5 = self.opts
        return FitConfig(
            zeta=zeta,
            k_cap=self.k_cap,
            opt1=o1,
            opt2=o2,
            opt3=o3,
            opt4=o4,
            opt5=o5,
            gamma_m=self.gamma_m,
        )


def compress_corpus(
    corpus: Dict[str, List[Point]],
    algo: str,
    cfg: FitConfig,
    threads: int = 1,
) -> Dict[str, PiecewiseRepresentation]:
    fn = ALGORITHMS[algo]
    ids = list(corpus.keys())
    trajs = [corpus[tid] for tid in ids]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reps = list(pool.map(lambda pts: fn(pts, cfg), trajs))
    else:
        reps = [fn(pts, cfg) for pts in trajs]
    for tid, rep in zip(ids, reps):
        rep.traj_id = tid
    return dict(zip(ids, reps))


def _stats_dict(stats: CompressionStats) -> dict:
    d = asdict(stats)
    d["patching_ratio"] = stats.patching_ratio
    # JSON objects key on strings anyway; do it here so the in-memory
    # report equals a round-tripped one.
    d["histogram"] = {str(k): v for k, v in stats.histogram.items()}
    return d


def run_compare(cfg: RunConfig) -> dict:
    """Run every (algorithm, zeta) pair over the corpus and collect stats.

    Returns the report dict; also writes it as JSON when cfg.output is
    set.  Key order in the JSON is sorted, so identical runs produce
    identical bytes except for wall_time.
    """
    corpus = ingest_csv(cfg.input, geo=cfg.geo)
    trajs = list(corpus.values())
    results = []
    for algo in cfg.algorithms:
        for zeta in cfg.zeta_list:
            fit_cfg = cfg.fit_config(zeta)
            start = time.perf_counter()
            reps = compress_corpus(corpus, algo, fit_cfg, cfg.threads)
            wall = time.perf_counter() - start
            stats = compute_stats(list(reps.values()), trajs, wall)
            entry = {"algo": algo, "zeta": zeta}
            entry.update(_stats_dict(stats))
            results.append(entry)
    report = {
        "corpus": {
            "path": cfg.input,
            "trajectories": len(trajs),
            "points": sum(len(t) for t in trajs),
        },
        "config": {
            "algorithms": list(cfg.algorithms),
            "zeta_list": list(cfg.zeta_list),
            "gamma_m": cfg.gamma_m,
            "opts": "".join("1" if o else "0" for o in cfg.opts),
            "k_cap": cfg.k_cap,
            "geo": cfg.geo,
            "threads": cfg.threads,
        },
        "results": results,
    }
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            json.dump(report, fh, sort_keys=True, indent=2)
            fh.write("\n")
    return report


def format_report(report: dict) -> str:
    """Fixed-width table of the per-run stats, one row per (algo, zeta)."""
    header = (
        f"{'algo':<8} {'zeta':>8} {'segs':>8} {'ratio':>9} "
        f"{'avg_err':>10} {'max_err':>10} {'patch':>7} {'wall_s':>8}"
    )
    lines = [header, "-" * len(header)]
    for r in report["results"]:
        lines.append(
            f"{r['algo']:<8} {r['zeta']:>8g} {r['output_segments']:>8d} "
            f"{r['ratio']:>9.5f} {r['avg_error']:>10.4g} {r['max_error']:>10.4g} "
            f"{r['patching_ratio']:>7.3f} {r['wall_time']:>8.3f}"
        )
    return "\n".join(lines)
