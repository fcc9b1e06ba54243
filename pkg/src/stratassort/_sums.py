"""Order-independent reductions.

Metric values must not change when node ids are permuted, so every float
reduction either uses ``math.fsum`` (correctly rounded) or sums values in a
canonical sorted order.
"""
import math

import numpy as np


def fsum(values) -> float:
    return math.fsum(np.asarray(values, dtype=np.float64).ravel().tolist())


def group_sum(keys, values, size: int) -> np.ndarray:
    """``out[g] = sum(values[keys == g])`` independent of input order."""
    keys = np.asarray(keys, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    out = np.zeros(size, dtype=np.float64)
    if keys.size == 0:
        return out
    order = np.lexsort((values, keys))
    k, v = keys[order], values[order]
    starts = np.flatnonzero(np.r_[True, k[1:] != k[:-1]])
    out[k[starts]] = np.add.reduceat(v, starts)
    return out


def group_fsum(keys, values, size: int) -> np.ndarray:
    """Like ``group_sum`` but correctly rounded; meant for small ``size``."""
    keys = np.asarray(keys, dtype=np.int64)
    values = np.asarray(values, dtype=np.float64)
    out = np.zeros(size, dtype=np.float64)
    if keys.size == 0:
        return out
    order = np.argsort(keys, kind="stable")
    k, v = keys[order], values[order]
    bounds = np.flatnonzero(np.r_[True, k[1:] != k[:-1], True])
    for a, b in zip(bounds[:-1], bounds[1:]):
        out[k[a]] = math.fsum(v[a:b].tolist())
    return out
