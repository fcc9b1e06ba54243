"""The six 16-node toy networks used to compare StA with DAC and SAC.

Nodes are labelled 1..16 and split into four classes of four consecutive
labels. In G1-G4 a node's score equals its label; in G5 and G6 the classes
score 1, 2, 4 and 8.

Only the published metric values and a prose description of each network
are available, not the drawings, so these edge lists are reconstructions:
each one satisfies every structural statement made about it and reproduces
the published StA, DAC and SAC to within 0.005. ``scripts/reconstruct_toy_graphs.py``
documents the search that produced them.

  G1  four disjoint 4-cliques, no inter-class edges
  G2  G1 with three intra-class edges traded for three inter-class edges
      that chain the classes together (same edge count)
  G3  G1 plus three inter-class edges between close scores
  G4  G1 plus three inter-class edges between distant scores; the per-class
      degree totals match G3, so DAC(G3) == DAC(G4) exactly
  G5  19 intra / 3 inter edges, the top class is linked to the rest
  G6  19 intra / 3 inter edges, the top class is cut off from the rest;
      class degree totals give DAC(G5) == DAC(G6) exactly
"""
from __future__ import annotations

from itertools import combinations

from .graph import ClassPartition, ScoredGraph, build_graph

# published (StA, DAC, SAC)
PUBLISHED = {
    "G1": (1.00, 1.00, 0.92),
    "G2": (0.96, 0.83, 0.94),
    "G3": (0.96, 0.85, 0.91),
    "G4": (0.85, 0.85, 0.68),
    "G5": (0.90, 0.81, 0.93),
    "G6": (0.93, 0.81, 0.97),
}

_CLIQUES = [(a, b) for c in range(4) for a, b in combinations(range(4 * c + 1, 4 * c + 5), 2)]

EDGES = {
    "G1": _CLIQUES,
    "G2": [e for e in _CLIQUES if e not in {(5, 8), (6, 8), (9, 12)}]
          + [(4, 6), (8, 9), (12, 14)],
    "G3": _CLIQUES + [(1, 5), (4, 6), (12, 13)],
    "G4": _CLIQUES + [(1, 7), (1, 16), (5, 12)],
    "G5": [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
           (5, 6), (5, 7), (5, 8), (6, 7), (6, 8), (7, 8),
           (9, 11), (9, 12), (10, 12), (11, 12),
           (13, 14), (14, 15), (14, 16),
           (2, 5), (3, 7), (11, 15)],
    "G6": [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4),
           (5, 6), (5, 7), (5, 8), (6, 7),
           (9, 10), (9, 11), (9, 12), (10, 11), (10, 12), (11, 12),
           (13, 15), (13, 16), (14, 15),
           (1, 8), (3, 7), (7, 12)],
}


def scores(name: str) -> dict[int, float]:
    if name in ("G5", "G6"):
        return {u: float((1, 2, 4, 8)[(u - 1) // 4]) for u in range(1, 17)}
    return {u: float(u) for u in range(1, 17)}


def partition(name: str) -> ClassPartition:
    if name in ("G5", "G6"):
        return ClassPartition(((1, 1), (2, 2), (4, 4), (8, 8)))
    return ClassPartition(((1, 4), (5, 8), (9, 12), (13, 16)))


def toy_graph(name: str) -> ScoredGraph:
    return build_graph(EDGES[name], scores(name))


NAMES = tuple(EDGES)
