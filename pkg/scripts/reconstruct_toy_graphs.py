"""Search for 16-node edge lists that reproduce the published toy-graph values.

Only metric values and short structural descriptions of the six toy networks
are published. This script rebuilds candidate edge lists:

  G2     trade three intra-class edges of G1 for three edges chaining
         consecutive classes (random sample of the removals)
  G3/G4  add three inter-class edges to G1 (exhaustive); pairs whose class
         degree totals agree give DAC(G3) == DAC(G4) exactly
  G5/G6  annealing over single-edge toggles with class scores 1, 2, 4, 8;
         G5 must link the top class to the rest, G6 must not

Candidates within --tol of all three published values are printed, and the
bundled edge lists in ``stratassort.toygraphs`` are re-checked at the end.

The G5/G6 stage finds valid candidates for each graph separately, but a run
rarely yields a pair with the same signature (seeds 0-2 with up to 60000
steps gave none). The bundled pair was assembled from separate candidate
lists by choosing two with equal class degree totals, which is what makes
their DAC values equal.

    python scripts/reconstruct_toy_graphs.py [--only G3G4] [--iters 20000]
"""
from __future__ import annotations

import argparse
import itertools
import math
import random

from stratassort import build_graph, dac, sac, sta
from stratassort.toygraphs import EDGES, PUBLISHED, partition, scores, toy_graph

NODES = range(1, 17)
CLASS = {u: (u - 1) // 4 for u in NODES}
CLIQUES = EDGES["G1"]
PAIRS = list(itertools.combinations(NODES, 2))


def values(name, edges):
    g = build_graph(edges, scores(name))
    p = partition(name)
    return sta(g, p).sta, dac(g, p).value, sac(g).value


def error(name, edges):
    return max(abs(a - b) for a, b in zip(values(name, edges), PUBLISHED[name]))


def degree_signature(edges):
    d = [0] * 4
    for u, v in edges:
        d[CLASS[u]] += 1
        d[CLASS[v]] += 1
    return tuple(sorted(d))


def search_g2(tol, samples, rng):
    chains = [[(a, b) for a in range(4 * c + 1, 4 * c + 5) for b in range(4 * c + 5, 4 * c + 9)]
              for c in range(3)]
    removals = list(itertools.combinations(CLIQUES, 3))
    hits = []
    for cross in itertools.product(*chains):
        for rem in rng.sample(removals, samples):
            edges = [e for e in CLIQUES if e not in rem] + list(cross)
            if error("G2", edges) < tol:
                hits.append((list(rem), list(cross)))
    print(f"G2: {len(hits)} candidates")
    for rem, cross in hits[:5]:
        print(f"  remove {rem} add {cross} -> {fmt(values('G2', edges_of(rem, cross)))}")


def edges_of(rem, cross):
    return [e for e in CLIQUES if e not in rem] + list(cross)


def search_g3_g4(tol):
    cross_all = [(a, b) for a, b in PAIRS if CLASS[a] != CLASS[b]]
    found = {"G3": {}, "G4": {}}
    for cross in itertools.combinations(cross_all, 3):
        edges = CLIQUES + list(cross)
        for name in found:
            if error(name, edges) < tol:
                found[name].setdefault(degree_signature(cross), []).append(cross)
    shared = sorted(set(found["G3"]) & set(found["G4"]))
    print(f"G3: {sum(map(len, found['G3'].values()))} candidates, "
          f"G4: {sum(map(len, found['G4'].values()))}, shared degree signatures: {shared}")
    for sig in shared:
        print(f"  {sig}: G3 {found['G3'][sig][0]}  G4 {found['G4'][sig][0]}")


def anneal(name, allowed, ok, iters, rng, tol):
    current = set(CLIQUES)
    found = {}

    def cost(edges):
        if len({u for e in edges for u in e}) < 16 or not ok(edges):
            return math.inf
        return error(name, sorted(edges))

    cur, temp = cost(current), 0.01
    for it in range(iters):
        cand = set(current)
        cand.symmetric_difference_update([rng.choice(allowed)])
        c = cost(cand)
        if c < cur or (math.isfinite(c) and rng.random() < math.exp((cur - c) / temp)):
            current, cur = cand, c
            if c < tol:
                intra = sum(CLASS[u] == CLASS[v] for u, v in current)
                key = (len(current), intra, degree_signature(current))
                if key not in found or found[key][0] > c:
                    found[key] = (c, sorted(current))
        temp = 0.01 if it % 5000 == 0 else max(2e-4, temp * 0.999)
    return found


def search_g5_g6(tol, iters, rng):
    top = lambda u: CLASS[u] == 3  # noqa: E731
    linked = lambda E: any(top(u) != top(v) for u, v in E)  # noqa: E731
    g5 = anneal("G5", PAIRS, linked, iters, rng, tol)
    g6 = anneal("G6", [p for p in PAIRS if top(p[0]) == top(p[1])], lambda E: True, iters, rng,
                tol)
    shared = sorted(set(g5) & set(g6))
    print(f"G5: {len(g5)} signatures, G6: {len(g6)}, shared: {len(shared)}")
    for key in shared[:3]:
        print(f"  {key}:\n    G5 {g5[key][1]}\n    G6 {g6[key][1]}")


def fmt(v):
    return "StA {:.4f}  DAC {:.4f}  SAC {:.4f}".format(*v)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--only", choices=("G2", "G3G4", "G5G6"), help="run a single search")
    ap.add_argument("--tol", type=float, default=0.005, help="largest allowed deviation")
    ap.add_argument("--samples", type=int, default=20, help="G2 removals sampled per chain")
    ap.add_argument("--iters", type=int, default=20000, help="annealing steps for G5/G6")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    if args.only in (None, "G2"):
        search_g2(args.tol, args.samples, rng)
    if args.only in (None, "G3G4"):
        search_g3_g4(args.tol)
    if args.only in (None, "G5G6"):
        search_g5_g6(args.tol, args.iters, rng)
    print("bundled edge lists:")
    for name in EDGES:
        g, p = toy_graph(name), partition(name)
        got = (sta(g, p).sta, dac(g, p).value, sac(g).value)
        print(f"  {name}: {fmt(got)}  published {PUBLISHED[name]}")


if __name__ == "__main__":
    main()
