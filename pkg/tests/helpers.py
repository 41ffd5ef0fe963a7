"""Shared test utilities: seeded random graphs and a small census of
connected cubic graphs.

The census is test-only tooling (the library deliberately ships no
isomorphism machinery): labelled graphs are generated with safe
symmetry-reducing constraints, grouped by eigenvalue spectrum, and
de-duplicated with an exact isomorphism search inside each spectral group.
The resulting counts are cross-checked against the known census
(1, 2, 5, 19 connected cubic graphs on 4, 6, 8, 10 vertices).
"""

from __future__ import annotations

import random
from itertools import combinations

import numpy as np

from colour_lab.graph import Graph


def random_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    edges = [e for e in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


def random_regular_graph(n: int, d: int, seed: int, tries: int = 2000) -> Graph:
    """Pairing-model sampler with rejection of loops/multi-edges."""
    if n * d % 2:
        raise ValueError("n*d must be even")
    rng = random.Random(seed)
    for _ in range(tries):
        stubs = [v for v in range(n) for _ in range(d)]
        rng.shuffle(stubs)
        edges = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v or (min(u, v), max(u, v)) in edges:
                ok = False
                break
            edges.add((min(u, v), max(u, v)))
        if ok:
            return Graph.from_edges(n, edges)
    raise RuntimeError("failed to sample a simple regular graph")


def _isomorphic(adj_a: list[set[int]], adj_b: list[set[int]]) -> bool:
    """Exact isomorphism test by backtracking (for the tiny census graphs)."""
    n = len(adj_a)
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in range(n):
            if used[cand] or len(adj_b[cand]) != len(adj_a[i]):
                continue
            ok = True
            for j in range(i):
                if (j in adj_a[i]) != (mapping[j] in adj_b[cand]):
                    ok = False
                    break
            if ok:
                mapping[i] = cand
                used[cand] = True
                if extend(i + 1):
                    return True
                used[cand] = False
        return False

    return extend(0)


def connected_cubic_graphs(n: int) -> list[Graph]:
    """All connected 3-regular graphs on n vertices up to isomorphism.

    Labelled generation under two safe constraints (vertex 0 is adjacent to
    1, 2, 3; every vertex j > 0 has a neighbour smaller than j -- both hold
    for some labelling of every connected cubic graph), then de-duplication
    by spectrum with exact isomorphism confirmation.
    """
    if n % 2 or n < 4:
        return []
    deg = [0] * n
    adj: list[set[int]] = [set() for _ in range(n)]
    groups: dict[tuple, list[list[set[int]]]] = {}
    out: list[Graph] = []

    def record():
        mat = np.zeros((n, n))
        for a in range(n):
            for b in adj[a]:
                mat[a, b] = 1
        spec = tuple(np.round(np.linalg.eigvalsh(mat), 6))
        bucket = groups.setdefault(spec, [])
        snap = [set(s) for s in adj]
        if any(_isomorphic(snap, other) for other in bucket):
            return
        bucket.append(snap)
        out.append(Graph.from_edges(n, [(a, b) for a in range(n) for b in adj[a] if a < b]))

    def complete(v: int):
        while v < n and deg[v] == 3:
            v += 1
        if v == n:
            record()
            return
        if v > 0 and not any(u < v for u in adj[v]):
            return  # unreachable under this labelling; prune
        choices = [u for u in range(v + 1, n) if u not in adj[v]]

        def pick(rem: int, start: int):
            if rem == 0:
                complete(v + 1)
                return
            for ci in range(start, len(choices)):
                u = choices[ci]
                if deg[u] == 3:
                    continue
                adj[v].add(u)
                adj[u].add(v)
                deg[v] += 1
                deg[u] += 1
                pick(rem - 1, ci + 1)
                adj[v].remove(u)
                adj[u].remove(v)
                deg[v] -= 1
                deg[u] -= 1

        pick(3 - deg[v], 0)

    for u in (1, 2, 3):
        adj[0].add(u)
        adj[u].add(0)
        deg[0] += 1
        deg[u] += 1
    complete(1)
    return out
