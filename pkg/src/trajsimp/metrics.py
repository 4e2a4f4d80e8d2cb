"""Quality metrics over piecewise representations.

The covered counts on consecutive segments share endpoint samples, so the
walk that maps original points back to segments credits each segment with
``covered`` points for the first segment (and for any patched start, whose
shared sample was spent on the patch), and ``covered - 1`` otherwise.  The
walk must consume exactly the input length; anything else means the
representation lies about what it consumed and raises ``InvariantError``.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .errors import InvariantError
from .geometry import Point
from .onepass import PiecewiseRepresentation

BOUND_SLACK = 1e-9


@dataclass
class CompressionStats:
    """Aggregate results of one algorithm run over a corpus."""

    input_points: int
    output_segments: int
    ratio: float
    avg_error: float
    max_error: float
    wall_time: float = 0.0
    anomalous: int = 0
    patched: int = 0
    histogram: Dict[int, int] = field(default_factory=dict)

    @property
    def patching_ratio(self) -> float:
        if self.anomalous == 0:
            return 0.0
        return self.patched / self.anomalous


def point_mapping(rep: PiecewiseRepresentation, n: int) -> List[Tuple[int, int]]:
    """Half-open index ranges [lo, hi) of the input points each segment
    accounts for.  Raises InvariantError when the covered counts do not
    add up to n."""
    ranges: List[Tuple[int, int]] = []
    idx = 0
    for i, seg in enumerate(rep.segments):
        fresh = seg.covered if (i == 0 or seg.patched_start) else seg.covered - 1
        if fresh < 0:
            raise InvariantError(
                f"segment {i} covers {seg.covered} points but shares its start"
            )
        ranges.append((idx, idx + fresh))
        idx += fresh
    if idx != n:
        raise InvariantError(f"covered counts consume {idx} points, input has {n}")
    return ranges


def _segment_distances(
    xs: np.ndarray, ys: np.ndarray, rep: PiecewiseRepresentation
) -> np.ndarray:
    """Distance from every input point to the line of the segment it maps
    to.  The walk assigns boundary samples to the earlier segment; they sit
    on both lines, so the choice does not affect any metric."""
    out = np.zeros(len(xs))
    for (lo, hi), seg in zip(point_mapping(rep, len(xs)), rep.segments):
        if lo == hi:
            continue
        dx = seg.end.x - seg.start.x
        dy = seg.end.y - seg.start.y
        length = math.hypot(dx, dy)
        px = xs[lo:hi] - seg.start.x
        py = ys[lo:hi] - seg.start.y
        if length == 0.0:
            out[lo:hi] = np.hypot(px, py)
        else:
            out[lo:hi] = np.abs(dx * py - dy * px) / length
    return out


def _coords(traj: Sequence[Point]) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.fromiter((p.x for p in traj), dtype=np.float64, count=len(traj))
    ys = np.fromiter((p.y for p in traj), dtype=np.float64, count=len(traj))
    return xs, ys


def average_error(rep: PiecewiseRepresentation, traj: Sequence[Point]) -> float:
    """Mean distance of the input points to their mapped segment lines."""
    if not traj:
        raise ValueError("empty trajectory")
    xs, ys = _coords(traj)
    return float(np.mean(_segment_distances(xs, ys, rep)))


def max_error(rep: PiecewiseRepresentation, traj: Sequence[Point]) -> float:
    if not traj:
        raise ValueError("empty trajectory")
    xs, ys = _coords(traj)
    return float(np.max(_segment_distances(xs, ys, rep)))


def verify_error_bound(
    rep: PiecewiseRepresentation, traj: Sequence[Point], zeta: float
) -> Tuple[bool, List[Tuple[int, float]]]:
    """Check every point against the zeta bound with relative slack 1e-9.

    Returns (ok, violations) where violations lists (point_index, distance).
    """
    xs, ys = _coords(traj)
    dists = _segment_distances(xs, ys, rep)
    limit = zeta * (1.0 + BOUND_SLACK)
    bad = np.nonzero(dists > limit)[0]
    violations = [(int(i), float(dists[i])) for i in bad]
    return (len(violations) == 0), violations


def compression_ratio(
    reps: Sequence[PiecewiseRepresentation], trajs: Sequence[Sequence[Point]]
) -> float:
    """Total output segments over total input points, across a corpus."""
    total_pts = sum(len(t) for t in trajs)
    if total_pts == 0:
        raise ValueError("empty corpus")
    return sum(len(r.segments) for r in reps) / total_pts


def segment_histogram(reps: Sequence[PiecewiseRepresentation]) -> Dict[int, int]:
    """How many output segments cover exactly k input points, per k."""
    hist: Dict[int, int] = {}
    for rep in reps:
        for seg in rep.segments:
            hist[seg.covered] = hist.get(seg.covered, 0) + 1
    return dict(sorted(hist.items()))


def patching_ratio(stats: CompressionStats) -> float:
    return stats.patching_ratio


def compute_stats(
    reps: Sequence[PiecewiseRepresentation],
    trajs: Sequence[Sequence[Point]],
    wall_time: float = 0.0,
) -> CompressionStats:
    """Corpus-level stats; avg_error weights every input point equally."""
    if len(reps) != len(trajs):
        raise ValueError("reps and trajs must pair up")
    total_pts = 0
    total_segs = 0
    err_sum = 0.0
    err_max = 0.0
    anomalous = 0
    patched = 0
    for rep, traj in zip(reps, trajs):
        xs, ys = _coords(traj)
        dists = _segment_distances(xs, ys, rep)
        total_pts += len(traj)
        total_segs += len(rep.segments)
        err_sum += float(np.sum(dists))
        err_max = max(err_max, float(np.max(dists)))
        anomalous += rep.anomalous_candidates
        patched += rep.patches
    if total_pts == 0:
        raise ValueError("empty corpus")
    return CompressionStats(
        input_points=total_pts,
        output_segments=total_segs,
        ratio=total_segs / total_pts,
        avg_error=err_sum / total_pts,
        max_error=err_max,
        wall_time=wall_time,
        anomalous=anomalous,
        patched=patched,
        histogram=segment_histogram(reps),
    )
