"""Independent reference evaluators written straight from the definitions.

Nothing here imports the package under test. Graphs are plain Python: ``n``
nodes ``0..n-1``, a list of undirected edges ``(u, v)``, a list of scores and
a list of 0-based class ids per node. Discrete and scalar assortativity are
evaluated as double sums over ordered node pairs of the adjacency matrix, a
different route from the per-edge sums used by the package.
"""
from __future__ import annotations

import itertools
import math


def similarity(a, b, lo, hi):
    return 1.0 if hi == lo else 1.0 - abs(a - b) / (hi - lo)


def adjacency(n, edges):
    a = [[0] * n for _ in range(n)]
    for u, v in edges:
        a[u][v] += 1
        a[v][u] += 1
    return a


def class_scores(n, edges, s, cls, k):
    """Observed and expected stratification score of every class."""
    lo, hi = min(s), max(s)
    w = [similarity(s[u], s[v], lo, hi) for u, v in edges]
    sw = [0.0] * n
    for (u, v), x in zip(edges, w):
        sw[u] += x
        sw[v] += x
    total = sum(sw)
    obs, exp = [], []
    for c in range(k):
        a = b = ae = be = 0.0
        for (u, v), x in zip(edges, w):
            wp = sw[u] * sw[v] / total ** 2
            iu, iv = cls[u] == c, cls[v] == c
            if iu and iv:
                a += x
                ae += wp
            elif iu or iv:
                b += 1.0 - x
                be += 1.0 - wp
        obs.append(a / (a + b) if a + b > 0 else 0.0)
        exp.append(ae / (ae + be) if ae + be > 0 else 0.0)
    return obs, exp


def sta(n, edges, s, cls, k):
    obs, exp = class_scores(n, edges, s, cls, k)
    S, E = sum(obs), sum(exp)
    if k - E == 0:
        return 1.0 if S == k else math.nan
    return (S - E) / (k - E)


def sta_prime(n, edges, s, cls, k):
    obs, exp = class_scores(n, edges, s, cls, k)
    return sum(obs) - sum(exp)


def modularity(n, edges, cls):
    a = adjacency(n, edges)
    deg = [sum(r) for r in a]
    m2 = 2 * len(edges)
    q = 0.0
    for u in range(n):
        for v in range(n):
            if cls[u] == cls[v]:
                q += a[u][v] / m2 - deg[u] * deg[v] / m2 ** 2
    return q


def dac(n, edges, cls):
    a = adjacency(n, edges)
    deg = [sum(r) for r in a]
    m2 = 2 * len(edges)
    obs = sum(a[u][v] for u in range(n) for v in range(n) if cls[u] == cls[v]) / m2
    exp = sum(deg[u] * deg[v] for u in range(n) for v in range(n) if cls[u] == cls[v]) / m2 ** 2
    if exp == 1:
        return 1.0
    return (obs - exp) / (1 - exp)


def sac(n, edges, s):
    """Pearson correlation of the scores at the two ends of every edge,
    counting each edge in both directions."""
    a = adjacency(n, edges)
    xs, ys = [], []
    for u in range(n):
        for v in range(n):
            for _ in range(a[u][v]):
                xs.append(s[u])
                ys.append(s[v])
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    return cov / math.sqrt(vx * vy)


def contiguous_splits(h, k):
    """Every split of ``0..h-1`` into ``k`` non-empty contiguous index spans."""
    for cuts in itertools.combinations(range(1, h), k - 1):
        bounds = (0,) + cuts + (h,)
        yield [(bounds[i], bounds[i + 1] - 1) for i in range(k)]


def classes_for_spans(s, distinct, spans):
    pos = {d: i for i, d in enumerate(distinct)}
    cls = []
    for x in s:
        i = pos[x]
        cls.append(next(c for c, (lo, hi) in enumerate(spans) if lo <= i <= hi))
    return cls


def interval_term(n, edges, s, members):
    """StA' contribution of one class holding the nodes in ``members``."""
    cls = [0 if u in members else 1 for u in range(n)]
    obs, exp = class_scores(n, edges, s, cls, 2)
    return obs[0] - exp[0]


def h_index(counts):
    """Largest h with at least h counts >= h, by direct search."""
    return max((h for h in range(len(counts) + 1) if sum(c >= h for c in counts) >= h), default=0)
