"""CSV ingest and emit for trajectory corpora.

Input schema: ``traj_id,t,x,y`` with a header row.  Rows may interleave
trajectories; within one trajectory timestamps must not decrease.  Rows
that repeat the previous timestamp of their trajectory are dropped
(first occurrence wins); a decrease is a hard error naming the row.

Output schema: ``traj_id,seg_index,sx,sy,st,ex,ey,et,covered,patched_start``
with floats printed to 9 significant digits, so files are byte-stable
across runs and platforms.
"""

import csv
from typing import Dict, Iterable, List, Union

from .errors import DataError
from .geometry import Point, project_equirectangular
from .onepass import PiecewiseRepresentation

INPUT_COLUMNS = ("traj_id", "t", "x", "y")
OUTPUT_COLUMNS = (
    "traj_id",
    "seg_index",
    "sx",
    "sy",
    "st",
    "ex",
    "ey",
    "et",
    "covered",
    "patched_start",
)


def ingest_csv(path: str, geo: bool = False) -> Dict[str, List[Point]]:
    """Load a corpus keyed by traj_id, in order of first appearance.

    With geo=True, x is longitude and y latitude in degrees; each
    trajectory is projected to metres about its own first point.
    """
    corpus: Dict[str, List[Point]] = {}
    try:
        fh = open(path, "r", encoding="utf-8", newline="")
    except OSError as exc:
        raise DataError(f"{path}: {exc.strerror or exc}") from None
    with fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise DataError(f"{path}: empty file, expected header {INPUT_COLUMNS}")
        missing = set(INPUT_COLUMNS) - set(reader.fieldnames)
        if missing:
            raise DataError(f"{path}: header is missing columns {sorted(missing)}")
        # Line numbers include the header, matching what editors show.
        for lineno, row in enumerate(reader, start=2):
            # DictReader parks surplus fields under None and fills short
            # rows with None values; both are arity errors here.
            if None in row or None in row.values():
                raise DataError(
                    f"{path} row {lineno}: expected {len(reader.fieldnames)} "
                    "fields"
                )
            traj_id = row["traj_id"]
            if traj_id is None or traj_id == "":
                raise DataError(f"{path} row {lineno}: empty traj_id")
            try:
                t = float(row["t"])
                x = float(row["x"])
                y = float(row["y"])
            except (TypeError, ValueError):
                raise DataError(f"{path} row {lineno}: non-numeric t/x/y") from None
            pts = corpus.setdefault(traj_id, [])
            if pts:
                if t == pts[-1].t:
                    continue
                if t < pts[-1].t:
                    raise DataError(
                        f"{path} row {lineno}: trajectory {traj_id!r} timestamp "
                        f"{t!r} goes backwards from {pts[-1].t!r}"
                    )
            pts.append(Point(x, y, t))
    if not corpus:
        raise DataError(f"{path}: no data rows")
    if geo:
        corpus = {tid: project_equirectangular(pts) for tid, pts in corpus.items()}
    return corpus


def _fmt(v: float) -> str:
    return "%.9g" % v


def emit_segments(
    reps: Union[PiecewiseRepresentation, Iterable[PiecewiseRepresentation]],
    path: str,
) -> int:
    """Write one row per output segment; returns the row count."""
    if isinstance(reps, PiecewiseRepresentation):
        reps = [reps]
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(OUTPUT_COLUMNS)
        for rep in reps:
            for idx, seg in enumerate(rep.segments):
                writer.writerow(
                    (
                        rep.traj_id,
                        idx,
                        _fmt(seg.start.x),
                        _fmt(seg.start.y),
                        _fmt(seg.start.t),
                        _fmt(seg.end.x),
                        _fmt(seg.end.y),
                        _fmt(seg.end.t),
                        seg.covered,
                        "true" if seg.patched_start else "false",
                    )
                )
                rows += 1
    return rows


def write_corpus(corpus: Dict[str, List[Point]], path: str) -> int:
    """Inverse of ingest_csv for generated data; returns the row count."""
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(INPUT_COLUMNS)
        for tid, pts in corpus.items():
            for p in pts:
                writer.writerow((tid, _fmt(p.t), _fmt(p.x), _fmt(p.y)))
                rows += 1
    return rows
