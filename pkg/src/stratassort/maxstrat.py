"""MaxStrat: contiguous score intervals that maximise stratification.

Step 1 is an interval dynamic programme on the unnormalised objective
``StA' = S_strat - ES_strat``; step 2 is a boundary-shift local search on the
normalised StA.

Every per-interval quantity (intra-class similarity mass, cross-class
dissimilarity mass and their expected counterparts) is a rectangle sum in the
plane of (lower endpoint score index, upper endpoint score index), so all
``h*(h+1)/2`` intervals are tabulated from 2-D prefix sums in ``O(m + h^2)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DataError, DegenerateError, InfeasibleSplitError
from .graph import ClassPartition, ScoredGraph
from .metrics import expected_weights, normalise


MAX_DISTINCT = 4096


def _prefix2d(a: np.ndarray) -> np.ndarray:
    p = np.zeros((a.shape[0] + 1, a.shape[1] + 1), dtype=a.dtype)
    p[1:, 1:] = a.cumsum(axis=0).cumsum(axis=1)
    return p


def _rect(p, r0, r1, c0, c1):
    """Sum of the source matrix over rows [r0, r1) and columns [c0, c1)."""
    return p[r1, c1] - p[r0, c1] - p[r1, c0] + p[r0, c0]


@dataclass(frozen=True, eq=False)
class IntervalTable:
    """Per-interval StA terms over the sorted distinct scores.

    ``base[i, j]`` (``i <= j``) is the StA' contribution of a class spanning
    distinct scores ``i..j``; entries below the diagonal are NaN.
    """

    distinct_scores: np.ndarray
    observed: np.ndarray
    expected: np.ndarray

    @property
    def h(self) -> int:
        return int(self.distinct_scores.shape[0])

    @property
    def base(self) -> np.ndarray:
        return self.observed - self.expected

    def partition(self, spans) -> ClassPartition:
        d = self.distinct_scores
        return ClassPartition(tuple((d[i], d[j]) for i, j in spans))

    def objective(self, spans) -> float:
        """StA' of a split, correctly rounded so it is independent of span order."""
        return math.fsum(self.base[i, j] for i, j in spans)

    def sta(self, spans) -> float:
        s = math.fsum(self.observed[i, j] for i, j in spans)
        es = math.fsum(self.expected[i, j] for i, j in spans)
        return normalise(s, es, len(spans))


def base_table(g: ScoredGraph) -> IntervalTable:
    if g.m == 0:
        raise DegenerateError("MaxStrat needs at least one edge")
    distinct, idx = np.unique(g.scores, return_inverse=True)
    h = distinct.shape[0]
    if h > MAX_DISTINCT:
        raise DataError(f"{h} distinct scores; interval tables are limited to {MAX_DISTINCT}")
    iu, iv = idx[g.edges[:, 0]], idx[g.edges[:, 1]]
    lo, hi = np.minimum(iu, iv), np.maximum(iu, iv)
    w = g.edge_weights
    we = expected_weights(g)
    # canonical accumulation order keeps the table independent of node ids
    order = np.lexsort((we, w, hi, lo))
    lo, hi, w, we = lo[order], hi[order], w[order], we[order]

    flat = lo * h + hi

    def accumulate(vals):
        a = np.bincount(flat, weights=vals, minlength=h * h).reshape(h, h)
        return _prefix2d(a.astype(np.int64) if vals is None else a)

    P_count, P_w, P_d = accumulate(None), accumulate(w), accumulate(1.0 - w)
    P_we, P_de = accumulate(we), accumulate(1.0 - we)

    I, J = np.triu_indices(h)
    J1 = J + 1

    def terms(P):
        intra = _rect(P, I, J1, I, J1)
        cross = _rect(P, I, J1, J1, h) + _rect(P, 0, I, I, J1)
        return intra, cross

    n_intra, n_cross = terms(P_count)
    incident = (n_intra + n_cross) > 0

    def scores(P_sim, P_dis):
        intra, _ = terms(P_sim)
        _, cross = terms(P_dis)
        # prefix differences of empty rectangles can leave rounding residue
        intra = np.where(n_intra > 0, np.maximum(intra, 0.0), 0.0)
        cross = np.where(n_cross > 0, np.maximum(cross, 0.0), 0.0)
        den = intra + cross
        ok = incident & (den > 0)
        out = np.zeros_like(intra)
        out[ok] = intra[ok] / den[ok]
        table = np.full((h, h), np.nan)
        table[I, J] = out
        return table

    return IntervalTable(distinct, scores(P_w, P_d), scores(P_we, P_de))


def dp_split(table: IntervalTable, k: int, span: tuple[int, int] | None = None):
    """Best ``k``-way contiguous split of distinct-score indices ``span``.

    Returns ``(spans, value)`` where ``spans`` is a list of inclusive index
    pairs. Ties go to the split whose leftmost boundary is smallest.
    """
    i0, j0 = span if span is not None else (0, table.h - 1)
    if k < 1:
        raise DataError("k must be positive")
    if k > j0 - i0 + 1:
        raise InfeasibleSplitError(f"cannot split {j0 - i0 + 1} distinct scores into {k} classes")
    exact = _exact_entries(table.base, i0, j0)

    @lru_cache(maxsize=None)
    def best(b: int, i: int):
        if b == 1 or i == j0:
            return exact[i][j0], ((i, j0),)
        top, arg = None, None
        for r in range(i, j0 - b + 2):
            val, rest = best(b - 1, r + 1)
            val = exact[i][r] + val
            if top is None or val > top:
                top, arg = val, ((i, r),) + rest
        return top, arg

    _, spans = best(k, i0)
    return list(spans), table.objective(spans)


def _exact_entries(base: np.ndarray, i0: int, j0: int) -> dict:
    """Table entries as integers over one power-of-two denominator.

    Sums of these are exact, so the programme compares true totals and its
    optimum agrees bit for bit with any other correctly rounded evaluation.
    """
    ratios = {(i, j): float(base[i, j]).as_integer_ratio()
              for i in range(i0, j0 + 1) for j in range(i, j0 + 1)}
    den = max(d for _, d in ratios.values())
    out: dict = {i: {} for i in range(i0, j0 + 1)}
    for (i, j), (num, d) in ratios.items():
        out[i][j] = num * (den // d)
    return out


@dataclass(frozen=True)
class BoundarySet:
    partition: ClassPartition
    spans: tuple            # inclusive distinct-score index pairs
    sta_value: float
    sta_prime: float

    @property
    def k(self) -> int:
        return self.partition.k

    def to_dict(self) -> dict:
        return {"boundaries": self.partition.to_list(), "sta": self.sta_value,
                "sta_prime": self.sta_prime}

    def to_string(self) -> str:
        return self.partition.to_string()


def _boundary_set(table: IntervalTable, spans) -> BoundarySet:
    spans = tuple(tuple(int(x) for x in s) for s in spans)
    return BoundarySet(table.partition(spans), spans, table.sta(spans), table.objective(spans))


def boundary_scan(g: ScoredGraph, start, table: IntervalTable | None = None,
                  moves: str = "line") -> BoundarySet:
    """Local search over the boundaries between adjacent intervals.

    ``start`` is a BoundarySet or a list of inclusive index spans. Each sweep
    visits adjacent interval pairs left to right and moves their shared
    boundary to the position with the highest StA, keeping every interval
    non-empty. With ``moves="line"`` every feasible position of that boundary
    is tried; with ``moves="step"`` only a shift of one distinct score either
    way. A move is taken only if it raises StA, configurations are never
    evaluated twice, and the search stops after a sweep with no accepted move.
    """
    if moves not in ("line", "step"):
        raise DataError(f"unknown move set {moves!r}")
    table = table or base_table(g)
    spans = [tuple(s) for s in (start.spans if isinstance(start, BoundarySet) else start)]
    _check_cover(spans, table.h)
    current = table.sta(spans)
    seen = {tuple(spans)}
    improved = True
    while improved:
        improved = False
        for a in range(len(spans) - 1):
            (i_a, j_a), (i_b, j_b) = spans[a], spans[a + 1]
            if moves == "step":
                cuts = [c for c in (i_b - 1, i_b + 1) if i_a < c <= j_b]
            else:
                cuts = [c for c in range(i_a + 1, j_b + 1) if c != i_b]
            best, best_val = None, current
            for c in cuts:
                cand = list(spans)
                cand[a], cand[a + 1] = (i_a, c - 1), (c, j_b)
                key = tuple(cand)
                if key in seen:
                    continue
                seen.add(key)
                val = table.sta(cand)
                if val > best_val:
                    best, best_val = cand, val
            if best is not None:
                spans, current, improved = best, best_val, True
    return _boundary_set(table, spans)


def _check_cover(spans, h: int) -> None:
    if not spans or spans[0][0] != 0 or spans[-1][1] != h - 1:
        raise DataError("intervals must cover every distinct score")
    for (i, j), (i2, _) in zip(spans, spans[1:]):
        if i2 != j + 1:
            raise DataError("intervals must be contiguous")
    if any(i > j for i, j in spans):
        raise DataError("empty interval")


def maxstrat(g: ScoredGraph, k: int, moves: str = "line") -> BoundarySet:
    """Tier boundaries for ``k`` classes: interval DP on StA', then boundary scan."""
    table = base_table(g)
    spans, _ = dp_split(table, k)
    return boundary_scan(g, spans, table, moves=moves)


def spans_for(table: IntervalTable, p: ClassPartition):
    """Index spans of the distinct scores covered by each class of ``p``."""
    cls = p.assign(table.distinct_scores)
    spans = []
    for c in range(p.k):
        pos = np.flatnonzero(cls == c)
        if pos.size == 0:
            raise DataError(f"class {c} contains no observed score")
        spans.append((int(pos[0]), int(pos[-1])))
    return spans
