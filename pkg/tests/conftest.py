import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from stratassort import ClassPartition, ScoredGraph  # noqa: E402

# criterion name -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def random_case(rng: np.random.Generator, n_max: int = 12, integer_scores: bool | None = None):
    """Small random graph with at least one edge, plus a 2-4 tier partition.

    Returns ``(n, edges, scores, bounds)``: plain Python values that both the
    package and the oracle can consume. ``bounds`` are tier lower bounds, the
    first at or below the minimum score.
    """
    while True:
        n = int(rng.integers(3, n_max + 1))
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        p = rng.uniform(0.15, 0.8)
        edges = [e for e in pairs if rng.random() < p]
        if not edges:
            continue
        if integer_scores is None:
            integer_scores = bool(rng.random() < 0.5)
        if integer_scores:
            scores = [float(x) for x in rng.integers(0, int(rng.integers(2, 15)), size=n)]
        else:
            scores = [float(x) for x in np.round(rng.uniform(-5, 20, size=n), 3)]
        distinct = sorted(set(scores))
        if len(distinct) < 2:
            continue
        extremes = {distinct[0], distinct[-1]}
        if all(scores[u] != scores[v] and {scores[u], scores[v]} == extremes for u, v in edges):
            continue    # every similarity weight is 0: the expected term is 0/0
        k = int(rng.integers(2, min(4, len(distinct)) + 1))
        inner = sorted(rng.choice(distinct[1:], size=k - 1, replace=False).tolist())
        return n, edges, scores, [distinct[0] - float(rng.integers(0, 2))] + inner


def oracle_classes(scores, bounds):
    return [sum(b <= s for b in bounds) - 1 for s in scores]


def to_graph(n, edges, scores) -> ScoredGraph:
    return ScoredGraph.from_arrays(scores, edges)


def to_partition(bounds) -> ClassPartition:
    """Half-open tiers ``[b_i, b_{i+1})`` written as closed float intervals."""
    his = [math.nextafter(b, -math.inf) for b in bounds[1:]] + [math.inf]
    return ClassPartition(tuple(zip(bounds, his)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in ACCEPTANCE.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
