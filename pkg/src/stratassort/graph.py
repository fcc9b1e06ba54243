"""Scored graphs, the social similarity function and ordered class partitions."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from ._sums import group_sum
from .errors import DataError, OutOfRangeError


@dataclass(frozen=True, eq=False)
class ScoredGraph:
    """Undirected simple graph with a status score on every node.

    Nodes are the dense ids ``0..n-1``; ``labels[u]`` is the external name of
    node ``u``. ``edges`` is an ``(m, 2)`` int array with ``u < v`` in every
    row, rows sorted lexicographically and unique.
    """

    scores: np.ndarray
    edges: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64).reshape(-1)
        edges = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        n = scores.shape[0]
        if edges.size:
            if edges.min() < 0 or edges.max() >= n:
                raise DataError("edge endpoint is not a valid node id")
            if np.any(edges[:, 0] >= edges[:, 1]):
                raise DataError("edges must be stored with u < v (no self-loops)")
        if not np.all(np.isfinite(scores)):
            raise DataError("scores must be finite")
        labels = tuple(self.labels) if self.labels else tuple(range(n))
        if len(labels) != n:
            raise DataError("one label per node required")
        scores.setflags(write=False)
        edges.setflags(write=False)
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_arrays(cls, scores, edges, labels=()) -> "ScoredGraph":
        """Build from raw id pairs, dropping duplicates and orientation.

        Self-loops are rejected.
        """
        scores = np.asarray(scores, dtype=np.float64)
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size and np.any(e[:, 0] == e[:, 1]):
            u = int(e[e[:, 0] == e[:, 1]][0, 0])
            raise DataError(f"self-loop on node {labels[u] if labels else u!r}")
        e = np.sort(e, axis=1)
        if e.size:
            e = np.unique(e, axis=0)
        return cls(scores, e, labels)

    @property
    def n(self) -> int:
        return int(self.scores.shape[0])

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    @property
    def score_min(self) -> float:
        return float(self.scores.min()) if self.n else 0.0

    @property
    def score_max(self) -> float:
        return float(self.scores.max()) if self.n else 0.0

    @cached_property
    def index(self) -> dict:
        """label -> node id"""
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.reshape(-1), minlength=self.n)

    @cached_property
    def edge_weights(self) -> np.ndarray:
        """Similarity weight of every edge, aligned with ``edges``."""
        s = self.scores
        return similarity_weights(s[self.edges[:, 0]], s[self.edges[:, 1]],
                                  self.score_min, self.score_max)

    @cached_property
    def weighted_degrees(self) -> np.ndarray:
        w = self.edge_weights
        return group_sum(self.edges.T.reshape(-1), np.concatenate([w, w]), self.n)

    def neighbors(self, u: int) -> np.ndarray:
        e = self.edges
        return np.concatenate([e[e[:, 0] == u, 1], e[e[:, 1] == u, 0]])

    def relabel(self, perm: Sequence[int]) -> "ScoredGraph":
        """Return the same graph with node ``u`` renamed to ``perm[u]``."""
        perm = np.asarray(perm, dtype=np.int64)
        scores = np.empty_like(self.scores)
        scores[perm] = self.scores
        labels = [None] * self.n
        for u, lab in enumerate(self.labels):
            labels[perm[u]] = lab
        return ScoredGraph.from_arrays(scores, perm[self.edges], tuple(labels))

    def __repr__(self):
        return f"ScoredGraph(n={self.n}, m={self.m}, scores=[{self.score_min:g}, {self.score_max:g}])"


def build_graph(edge_list: Iterable[tuple[Hashable, Hashable]],
                scores: Mapping[Hashable, float]) -> ScoredGraph:
    """Build a ScoredGraph from labelled edges and a label -> score map.

    Duplicate and reversed edges collapse to one; nodes that only appear in
    ``scores`` become isolated nodes.
    """
    labels = tuple(scores)
    index = {lab: i for i, lab in enumerate(labels)}
    pairs = []
    for a, b in edge_list:
        for lab in (a, b):
            if lab not in index:
                raise DataError(f"edge endpoint {lab!r} has no score")
        if a == b:
            raise DataError(f"self-loop on node {a!r}")
        pairs.append((index[a], index[b]))
    vals = np.fromiter((float(scores[lab]) for lab in labels), dtype=np.float64, count=len(labels))
    return ScoredGraph.from_arrays(vals, np.array(pairs, dtype=np.int64).reshape(-1, 2), labels)


def similarity_weight(s1: float, s2: float, score_min: float, score_max: float) -> float:
    """``1 - |s1 - s2| / (max - min)``; 1 when the score range is degenerate."""
    span = score_max - score_min
    if span <= 0:
        return 1.0
    return 1.0 - abs(s1 - s2) / span


def similarity_weights(s1, s2, score_min, score_max) -> np.ndarray:
    s1 = np.asarray(s1, dtype=np.float64)
    span = score_max - score_min
    if span <= 0:
        return np.ones_like(s1)
    return 1.0 - np.abs(s1 - np.asarray(s2, dtype=np.float64)) / span


def weighted_degree(g: ScoredGraph, u: int) -> float:
    return float(g.weighted_degrees[u])


@dataclass(frozen=True)
class ClassPartition:
    """k ordered, non-overlapping closed score intervals.

    ``intervals[i] = (lo, hi)`` with ``hi < lo`` of the next interval; the last
    ``hi`` may be ``inf``. A score falling strictly between two intervals
    belongs to the upper one, so real-valued scores such as 1.5 under the
    integer tiers ``0,1,3,7`` land in the tier ``[1, 2]``.
    """

    intervals: tuple

    def __post_init__(self):
        iv = tuple((float(lo), float(hi)) for lo, hi in self.intervals)
        if not iv:
            raise DataError("a partition needs at least one class")
        for lo, hi in iv:
            if not lo <= hi:
                raise DataError(f"empty interval [{lo:g}, {hi:g}]")
        for (_, hi), (lo, _) in zip(iv, iv[1:]):
            if not hi < lo:
                raise DataError("intervals must be ascending and disjoint")
        object.__setattr__(self, "intervals", iv)

    @property
    def k(self) -> int:
        return len(self.intervals)

    @classmethod
    def from_lower_bounds(cls, bounds: Sequence[float], top: float = math.inf) -> "ClassPartition":
        """``[0, 1, 3, 7]`` -> ``[0,0], [1,2], [3,6], [7,top]``.

        Integer bounds close each interval one below the next bound; otherwise
        the interval is closed at the largest float below the next bound.
        """
        b = [float(x) for x in bounds]
        if any(y <= x for x, y in zip(b, b[1:])):
            raise DataError("tier bounds must be strictly increasing")
        integral = all(x.is_integer() for x in b)
        his = [nb - 1 if integral else math.nextafter(nb, -math.inf) for nb in b[1:]]
        return cls(tuple(zip(b, his + [top])))

    @classmethod
    def from_string(cls, text: str) -> "ClassPartition":
        try:
            bounds = [float(tok) for tok in text.split(",") if tok.strip()]
        except ValueError:
            raise DataError(f"bad tier string {text!r}") from None
        if not bounds:
            raise DataError("empty tier string")
        return cls.from_lower_bounds(bounds)

    def to_string(self) -> str:
        return ",".join(_fmt(lo) for lo, _ in self.intervals)

    @cached_property
    def _uppers(self) -> np.ndarray:
        return np.array([hi for _, hi in self.intervals[:-1]])

    def class_of(self, s: float) -> int:
        """0-based index of the class containing score ``s``."""
        lo, hi = self.intervals[0][0], self.intervals[-1][1]
        if not lo <= s <= hi:
            raise OutOfRangeError(f"score {s:g} outside partition {self.to_string()}")
        return int(np.searchsorted(self._uppers, s, side="left"))

    def assign(self, scores) -> np.ndarray:
        """Vectorised ``class_of``."""
        s = np.asarray(scores, dtype=np.float64)
        lo, hi = self.intervals[0][0], self.intervals[-1][1]
        bad = (s < lo) | (s > hi)
        if np.any(bad):
            raise OutOfRangeError(f"score {s[bad][0]:g} outside partition {self.to_string()}")
        return np.searchsorted(self._uppers, s, side="left")

    def labels(self) -> list[str]:
        out = []
        for lo, hi in self.intervals:
            out.append(f"{_fmt(lo)}+" if math.isinf(hi) else
                       _fmt(lo) if lo == hi else f"{_fmt(lo)}-{_fmt(hi)}")
        return out

    def to_list(self) -> list:
        return [[lo, None if math.isinf(hi) else hi] for lo, hi in self.intervals]


def _fmt(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))
