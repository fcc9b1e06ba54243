"""Stratification assortativity (StA) and the comparison metrics.

Class scores are aggregated per class over the edges incident to that class:

    score_i = sum_{intra_i} w / (sum_{intra_i} w + sum_{cross_i} (1 - w))

and the expected score uses ``w'(u, v) = sw_u * sw_v / (sum_x sw_x)**2`` on the
same edge set, where ``sw`` is the similarity-weighted degree. A class with no
incident edges scores 0 on both sides.

Modularity, DAC and SAC follow Newman's ordered-pair sums.
"""
from __future__ import annotations

import csv
import io
from dataclasses import asdict, dataclass

import numpy as np

from ._sums import fsum, group_fsum
from .errors import DataError, DegenerateError
from .graph import ClassPartition, ScoredGraph


@dataclass(frozen=True)
class StratificationReport:
    per_class_score: tuple
    per_class_expected: tuple
    s_strat: float
    es_strat: float
    max_score: float
    sta: float

    @property
    def k(self) -> int:
        return len(self.per_class_score)

    @property
    def sta_prime(self) -> float:
        return self.s_strat - self.es_strat

    def to_dict(self) -> dict:
        d = asdict(self)
        d["per_class_score"] = list(self.per_class_score)
        d["per_class_expected"] = list(self.per_class_expected)
        return d

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["class", "score", "expected"])
        for i, (s, e) in enumerate(zip(self.per_class_score, self.per_class_expected)):
            w.writerow([i + 1, f"{s:.6f}", f"{e:.6f}"])
        return buf.getvalue()


@dataclass(frozen=True)
class ComparisonReport:
    metric: str
    observed: float
    expected: float
    maximum: float
    value: float

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ClassTerms:
    """Per-class edge sums feeding the observed and expected class scores."""

    intra: np.ndarray          # sum of w over intra-class edges
    cross: np.ndarray          # sum of 1 - w over cross edges touching the class
    intra_expected: np.ndarray
    cross_expected: np.ndarray
    incident: np.ndarray       # number of edges touching the class

    def observed_scores(self) -> np.ndarray:
        return _ratio(self.intra, self.cross, self.incident)

    def expected_scores(self) -> np.ndarray:
        return _ratio(self.intra_expected, self.cross_expected, self.incident)


def _ratio(num, extra, incident) -> np.ndarray:
    den = num + extra
    out = np.zeros_like(num)
    ok = (incident > 0) & (den > 0)
    out[ok] = num[ok] / den[ok]
    return out


def expected_weights(g: ScoredGraph) -> np.ndarray:
    """Configuration-model weight ``w'`` of every edge of ``g``."""
    if g.m == 0:
        raise DegenerateError("expected stratification is undefined for an edgeless graph")
    sw = g.weighted_degrees
    total = fsum(sw)
    if total <= 0:
        raise DegenerateError("all similarity weights are zero; expected weights undefined")
    e = g.edges
    return sw[e[:, 0]] * sw[e[:, 1]] / (total * total)


def class_terms(g: ScoredGraph, p: ClassPartition) -> ClassTerms:
    k = p.k
    cls = p.assign(g.scores)
    cu, cv = cls[g.edges[:, 0]], cls[g.edges[:, 1]]
    w = g.edge_weights
    we = expected_weights(g)
    same = cu == cv
    diff = ~same

    ends = np.concatenate([cu[diff], cv[diff]])

    def per_class(vals):
        intra = group_fsum(cu[same], vals[same], k)
        d = 1.0 - vals[diff]
        cross = group_fsum(ends, np.concatenate([d, d]), k)
        return intra, cross

    intra, cross = per_class(w)
    intra_e, cross_e = per_class(we)
    incident = np.bincount(cu[same], minlength=k) + np.bincount(ends, minlength=k)
    return ClassTerms(intra, cross, intra_e, cross_e, incident)


def _check_class(p: ClassPartition, i: int) -> None:
    if not 0 <= i < p.k:
        raise DataError(f"class index {i} outside 0..{p.k - 1}")


def class_stratification_score(g: ScoredGraph, p: ClassPartition, i: int) -> float:
    """Observed stratification score of class ``i`` (0-based)."""
    _check_class(p, i)
    if g.m == 0:
        return 0.0
    return float(class_terms(g, p).observed_scores()[i])


def expected_class_score(g: ScoredGraph, p: ClassPartition, i: int) -> float:
    _check_class(p, i)
    return float(class_terms(g, p).expected_scores()[i])


def normalise(s_strat: float, es_strat: float, k: int) -> float:
    """``(S - ES) / (k - ES)``.

    When every class is edge-incident with no cross edges both S and ES equal
    k; that configuration is the maximum by definition and maps to 1.
    """
    den = k - es_strat
    if den == 0:
        if s_strat == k:
            return 1.0
        raise DegenerateError("singular StA normalisation (expected score equals k)")
    return (s_strat - es_strat) / den


def sta(g: ScoredGraph, p: ClassPartition) -> StratificationReport:
    if g.m == 0:
        raise DegenerateError("StA is undefined for an edgeless graph")
    t = class_terms(g, p)
    obs = t.observed_scores()
    exp = t.expected_scores()
    s, es = fsum(obs), fsum(exp)
    return StratificationReport(tuple(obs.tolist()), tuple(exp.tolist()), s, es,
                                float(p.k), normalise(s, es, p.k))


def _discrete_terms(g: ScoredGraph, p: ClassPartition) -> tuple[float, float]:
    if g.m == 0:
        raise DegenerateError("assortativity is undefined for an edgeless graph")
    m = g.m
    cls = p.assign(g.scores)
    same = int(np.count_nonzero(cls[g.edges[:, 0]] == cls[g.edges[:, 1]]))
    class_deg = np.bincount(cls, weights=g.degrees, minlength=p.k).astype(np.int64)
    observed = same / m
    expected = int((class_deg * class_deg).sum()) / (4 * m * m)
    return observed, expected


def modularity(g: ScoredGraph, p: ClassPartition) -> ComparisonReport:
    observed, expected = _discrete_terms(g, p)
    return ComparisonReport("modularity", observed, expected, 1.0, observed - expected)


def dac(g: ScoredGraph, p: ClassPartition) -> ComparisonReport:
    """Discrete assortativity coefficient.

    If all degree sits in one class the normalisation is 0/0; the graph is
    then trivially fully assortative and the value is 1.
    """
    observed, expected = _discrete_terms(g, p)
    value = 1.0 if expected == 1.0 else (observed - expected) / (1.0 - expected)
    return ComparisonReport("dac", observed, expected, 1.0, value)


def sac(g: ScoredGraph) -> ComparisonReport:
    """Scalar assortativity coefficient (degree-weighted score correlation).

    Scores are first centred on their degree-weighted mean, which leaves the
    coefficient unchanged but keeps the moment differences well conditioned
    when scores sit far from zero. The reported observed, expected and
    maximum terms are those of the centred scores.
    """
    if g.m == 0:
        raise DegenerateError("assortativity is undefined for an edgeless graph")
    if g.score_min == g.score_max:
        raise DegenerateError("SAC is undefined when all scores are equal")
    m = g.m
    s = g.scores - fsum(g.degrees * g.scores) / (2 * m)
    su, sv = s[g.edges[:, 0]], s[g.edges[:, 1]]
    observed = fsum(su * sv) / m
    expected = (fsum(g.degrees * s) / (2 * m)) ** 2
    maximum = fsum(np.concatenate([su * su, sv * sv])) / (2 * m)
    if maximum - expected <= 1e-12 * (g.score_max - g.score_min) ** 2:
        raise DegenerateError("SAC is undefined: every edge endpoint has the same score")
    return ComparisonReport("sac", observed, expected, maximum,
                            (observed - expected) / (maximum - expected))


METRICS = ("sta", "modularity", "dac", "sac")
