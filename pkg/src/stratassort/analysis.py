"""Derived analyses over scored snapshots.

* class-pair collaboration heatmaps
* collaboration scores (mean score of a node's four best-scored neighbours)
  and their dispersion across connected components
* entrance-score mobility matrices
* StA time series under fixed tiers or per-snapshot MaxStrat tiers
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ._sums import fsum, group_sum
from .errors import DataError, DegenerateError
from .graph import ClassPartition, ScoredGraph
from .ingest import SnapshotSeries
from .io import csv_text
from .maxstrat import BoundarySet, maxstrat
from .metrics import StratificationReport, sta

TOP_COLLABORATORS = 4


def thread_count(default: int = 1) -> int:
    """Worker threads for per-snapshot work; ``STRATASSORT_THREADS`` overrides."""
    raw = os.environ.get("STRATASSORT_THREADS")
    if raw is None:
        return default
    try:
        n = int(raw)
    except ValueError:
        raise DataError(f"STRATASSORT_THREADS must be an integer, got {raw!r}") from None
    return max(1, n)


def _map(fn, items, workers: int | None):
    workers = thread_count() if workers is None else workers
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------- matrices

@dataclass(frozen=True, eq=False)
class ClassPairMatrix:
    """k x k normalised interaction or mobility counts.

    ``counts`` holds the raw pair counts, ``row_sizes``/``col_sizes`` the
    normalisers, and ``cells = counts / (row_size * col_size)`` with 0 where a
    normaliser is 0. ``empty_rows``/``empty_cols`` list the classes whose
    normaliser was 0.
    """

    cells: np.ndarray
    counts: np.ndarray
    row_sizes: np.ndarray
    col_sizes: np.ndarray
    row_labels: tuple
    col_labels: tuple
    row_basis: str
    col_basis: str
    normalization: str
    empty: bool = False

    @property
    def k(self) -> int:
        return int(self.cells.shape[0])

    @property
    def empty_rows(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.row_sizes == 0)]

    @property
    def empty_cols(self) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.col_sizes == 0)]

    def diagonal_mass(self) -> float:
        """Share of the normalised matrix lying on the diagonal (0 if all-zero)."""
        total = fsum(self.cells)
        if total == 0:
            return 0.0
        return fsum(np.diag(self.cells)) / total

    def to_dict(self) -> dict:
        return {"k": self.k, "row_basis": self.row_basis, "col_basis": self.col_basis,
                "normalization": self.normalization, "row_labels": list(self.row_labels),
                "col_labels": list(self.col_labels), "cells": self.cells.tolist(),
                "counts": self.counts.tolist(), "row_sizes": self.row_sizes.tolist(),
                "col_sizes": self.col_sizes.tolist(), "empty": self.empty,
                "empty_rows": self.empty_rows, "empty_cols": self.empty_cols}

    def to_csv(self) -> str:
        rows = [[lab, *map(float, row)] for lab, row in zip(self.row_labels, self.cells)]
        return csv_text(["class", *self.col_labels], rows)


def _normalised(counts, row_sizes, col_sizes) -> np.ndarray:
    den = np.outer(row_sizes, col_sizes).astype(np.float64)
    cells = np.zeros(counts.shape, dtype=np.float64)
    ok = den > 0
    cells[ok] = counts[ok] / den[ok]
    return cells


def collaboration_heatmap(g: ScoredGraph, p: ClassPartition) -> ClassPairMatrix:
    """``cell(i, j) = |(c_i, c_j)| / (|c_i| * |c_j|)``.

    ``|(c_i, c_j)|`` counts undirected edges between the classes (an
    intra-class edge counts once) and ``|c_i|`` counts edges with at least one
    endpoint in class ``i``.
    """
    if g.m == 0:
        raise DegenerateError("heatmap needs at least one edge")
    k = p.k
    cls = p.assign(g.scores)
    cu, cv = cls[g.edges[:, 0]], cls[g.edges[:, 1]]
    counts = np.zeros((k, k), dtype=np.int64)
    np.add.at(counts, (cu, cv), 1)
    counts = counts + counts.T - np.diag(np.diag(counts))
    sizes = counts.sum(axis=1)      # intra edges once, cross edges once
    labels = tuple(p.labels())
    return ClassPairMatrix(_normalised(counts, sizes, sizes), counts, sizes, sizes, labels, labels,
                           "score tier", "score tier", "pair edges / (class edges * class edges)")


# ---------------------------------------------------------------- collaboration scores

def collaboration_scores(g: ScoredGraph, top: int = TOP_COLLABORATORS) -> np.ndarray:
    """Mean score of each node's ``top`` highest-scored neighbours (fewer if
    the degree is smaller, 0 for isolated nodes)."""
    e = g.edges
    src = np.concatenate([e[:, 0], e[:, 1]])
    nbr = g.scores[np.concatenate([e[:, 1], e[:, 0]])]
    out = np.zeros(g.n, dtype=np.float64)
    if src.size == 0:
        return out
    order = np.lexsort((-nbr, src))
    src, nbr = src[order], nbr[order]
    starts = np.flatnonzero(np.r_[True, src[1:] != src[:-1]])
    rank = np.arange(src.size) - np.repeat(starts, np.diff(np.r_[starts, src.size]))
    keep = rank < top
    src, nbr = src[keep], nbr[keep]
    totals = group_sum(src, nbr, g.n)
    used = np.bincount(src, minlength=g.n)
    ok = used > 0
    out[ok] = totals[ok] / used[ok]
    return out


def collaboration_score(g: ScoredGraph, u: int, top: int = TOP_COLLABORATORS) -> float:
    if not 0 <= u < g.n:
        raise DataError(f"node id {u} outside 0..{g.n - 1}")
    nb = np.sort(g.scores[g.neighbors(u)])[::-1][:top]
    return float(fsum(nb) / nb.size) if nb.size else 0.0


@dataclass(frozen=True)
class ComponentReport:
    component_count: int
    component_scores: tuple     # ascending
    component_sizes: tuple      # aligned with component_scores
    score_stddev: float

    def to_dict(self) -> dict:
        return {"component_count": self.component_count,
                "component_scores": list(self.component_scores),
                "component_sizes": list(self.component_sizes),
                "score_stddev": self.score_stddev}


def population_std(values) -> float:
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        return 0.0
    mean = fsum(x) / x.size
    return math.sqrt(fsum((x - mean) ** 2) / x.size)


def component_dispersion(g: ScoredGraph) -> ComponentReport:
    """Per-component mean collaboration score and its population std."""
    if g.n == 0:
        raise DataError("component dispersion needs at least one node")
    e = g.edges
    adj = coo_matrix((np.ones(g.m), (e[:, 0], e[:, 1])), shape=(g.n, g.n))
    count, comp = connected_components(adj, directed=False)
    sizes = np.bincount(comp, minlength=count)
    means = group_sum(comp, collaboration_scores(g), count) / sizes
    order = np.lexsort((sizes, means))
    means, sizes = means[order], sizes[order]
    return ComponentReport(int(count), tuple(means.tolist()), tuple(int(s) for s in sizes),
                           population_std(means))


# ---------------------------------------------------------------- mobility

@dataclass(frozen=True)
class MobilityRecord:
    author: str
    entry_window: tuple
    entrance_score: float
    outcome_score: float


def mobility_records(series: SnapshotSeries, horizon_years: int, *,
                     entry_range: tuple[int, int] | None = None,
                     include_initial: bool = False,
                     absent: str = "skip") -> list[MobilityRecord]:
    """Entrance collaboration score and later h-index of every eligible author.

    An author enters in the first snapshot that contains them. The outcome is
    their score in the snapshot starting ``horizon_years`` later. Authors
    without a horizon snapshot are skipped, and so are authors absent from
    it unless ``absent="corpus"``, which recomputes their h-index from the
    series corpus at the horizon cutoff. Authors already present in the
    first snapshot are left-censored and skipped unless ``include_initial``.
    ``entry_range`` keeps only entry windows starting within the inclusive
    year range.
    """
    if horizon_years < 0:
        raise DataError("horizon_years must be non-negative")
    if absent not in ("skip", "corpus"):
        raise DataError(f"absent must be 'skip' or 'corpus', got {absent!r}")
    if absent == "corpus" and series.corpus is None:
        raise DataError("absent='corpus' needs a series built from a corpus")
    by_start = {s.window[0]: s for s in series}
    seen: set = set()
    out = []
    for t, snap in enumerate(series):
        g = snap.graph
        new = [u for u, lab in enumerate(g.labels) if lab not in seen]
        seen.update(g.labels)
        if not new or (t == 0 and not include_initial):
            continue
        start = snap.window[0]
        if entry_range is not None and not entry_range[0] <= start <= entry_range[1]:
            continue
        later = by_start.get(start + horizon_years)
        if later is None:
            continue
        collab = collaboration_scores(g)
        idx = later.graph.index
        for u in new:
            lab = g.labels[u]
            if lab in idx:
                outcome = float(later.graph.scores[idx[lab]])
            elif absent == "corpus":
                outcome = float(series.corpus.author_h_index(lab, later.cutoff_year))
            else:
                continue
            out.append(MobilityRecord(lab, snap.window, float(collab[u]), outcome))
    return out


def mobility_matrix(records, score_tiers: ClassPartition,
                    collab_tiers: ClassPartition) -> ClassPairMatrix:
    """Rows: entrance collaboration tier; columns: outcome score tier.

    ``cell(i, j) = n_ij / (|row i| * |col j|)`` with author counts on both axes.
    """
    kr, kc = collab_tiers.k, score_tiers.k
    counts = np.zeros((kr, kc), dtype=np.int64)
    if records:
        rows = collab_tiers.assign([r.entrance_score for r in records])
        cols = score_tiers.assign([r.outcome_score for r in records])
        np.add.at(counts, (rows, cols), 1)
    rs, cs = counts.sum(axis=1), counts.sum(axis=0)
    return ClassPairMatrix(_normalised(counts, rs, cs), counts, rs, cs,
                           tuple(collab_tiers.labels()), tuple(score_tiers.labels()),
                           "entrance collaboration-score tier", "outcome score tier",
                           "authors / (row authors * column authors)", empty=not records)


def entrance_mobility(series: SnapshotSeries, horizon_years: int, score_tiers: ClassPartition,
                      collab_tiers: ClassPartition | None = None, *,
                      entry_range: tuple[int, int] | None = None,
                      include_initial: bool = False, absent: str = "skip") -> ClassPairMatrix:
    """Mobility matrix; ``collab_tiers`` defaults to ``score_tiers``."""
    records = mobility_records(series, horizon_years, entry_range=entry_range,
                               include_initial=include_initial, absent=absent)
    return mobility_matrix(records, score_tiers, collab_tiers or score_tiers)


# ---------------------------------------------------------------- time series

@dataclass(frozen=True)
class TimeseriesPoint:
    window: tuple
    report: StratificationReport | None
    boundaries: BoundarySet | None = None
    skipped: str | None = None

    @property
    def sta(self) -> float:
        return math.nan if self.report is None else self.report.sta


@dataclass(frozen=True)
class Timeseries:
    mode: str
    points: tuple = field(default=())

    def values(self) -> np.ndarray:
        return np.array([p.sta for p in self.points])

    def to_csv(self) -> str:
        with_b = self.mode == "maxstrat"
        header = ["window_start", "window_end", "sta"] + (["boundaries"] if with_b else [])
        rows = []
        for p in self.points:
            row = [p.window[0], p.window[1], "" if p.report is None else float(p.report.sta)]
            if with_b:
                row.append("" if p.boundaries is None else p.boundaries.to_string())
            rows.append(row)
        return csv_text(header, rows)

    def to_dict(self) -> dict:
        return {"mode": self.mode, "points": [
            {"window_start": p.window[0], "window_end": p.window[1],
             "sta": None if p.report is None else p.report.sta,
             "report": None if p.report is None else p.report.to_dict(),
             "boundaries": None if p.boundaries is None else p.boundaries.to_dict(),
             "skipped": p.skipped} for p in self.points]}


def sta_timeseries(series: SnapshotSeries, *, tiers: ClassPartition | None = None,
                   k: int | None = None, workers: int | None = None) -> Timeseries:
    """StA per snapshot, under fixed ``tiers`` or MaxStrat with ``k`` classes.

    Snapshots where StA is undefined (no edges, too few distinct scores for
    ``k``, degenerate normalisation) are kept as points with ``skipped`` set.
    """
    if (tiers is None) == (k is None):
        raise DataError("give exactly one of tiers (fixed mode) or k (maxstrat mode)")
    if len(series) == 0:
        raise DataError("empty snapshot series")

    def one(snap) -> TimeseriesPoint:
        g = snap.graph
        if g.m == 0:
            return TimeseriesPoint(snap.window, None, None, "no edges")
        try:
            if tiers is not None:
                return TimeseriesPoint(snap.window, sta(g, tiers))
            b = maxstrat(g, k)
            return TimeseriesPoint(snap.window, sta(g, b.partition), b)
        except DegenerateError as exc:
            return TimeseriesPoint(snap.window, None, None, str(exc))
        except DataError as exc:
            if tiers is not None:
                raise
            return TimeseriesPoint(snap.window, None, None, str(exc))

    return Timeseries("fixed" if tiers is not None else "maxstrat",
                      tuple(_map(one, list(series), workers)))
