"""Exact decision, enumeration and optimisation for proper / star / rs
colouring, plus edge colouring (via the line graph) and the distance-two
rs upper-bound construction.  ``oracle_decide`` is an independent plain
``k^n`` brute force used to cross-check the pruned search.

Search details: vertices are branched in descending-degree order within a
smallest-last (degeneracy) ordering, colours in ascending order.  Star and
rs feasibility are pruned incrementally: placing a vertex can only create a
violating path through that vertex, so each position carries a precomputed
list of the candidate violating paths whose vertices are all already
coloured.

Canonical mode quotients the enumeration by colour permutations (a colour
may appear only after all smaller colours have appeared along the branching
order).  That quotient is sound for proper and star colouring, whose
validity is permutation-invariant, and is silently skipped for rs
colouring: rs validity depends on the numeric order of colours, so the
colourings of an orbit are not mutually valid and the quotient would drop
valid colourings (for several gadgets it would even leave nothing to
visit).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .colouring import KINDS, Colouring, validate
from .errors import BudgetExceeded, CapExceeded
from .graph import Graph, line_graph, square

__all__ = [
    "SolveParams",
    "SolveOutcome",
    "decide",
    "enumerate_colourings",
    "chromatic",
    "oracle_decide",
    "edge_decide",
    "distance_two_rs",
]

DEFAULT_NODE_BUDGET = 10**9


@dataclass(frozen=True)
class SolveParams:
    kind: str
    k: int
    canonical: bool = False
    budget_nodes: int | None = DEFAULT_NODE_BUDGET
    budget_secs: float | None = None
    threads: int | None = None  # parallelism hint; results must not depend on it

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown colouring kind {self.kind!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass
class SolveOutcome:
    status: str  # sat | unsat | budget-exceeded
    colouring: Colouring | None
    nodes: int
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "colouring": None if self.colouring is None else self.colouring.to_json(),
            "nodes": self.nodes,
            "seconds": self.seconds,
        }


# ---------------------------------------------------------------------------
# search preparation
# ---------------------------------------------------------------------------


def _branch_order(g: Graph) -> list[int]:
    # smallest-last removal; ties prefer removing the vertex with smaller
    # original degree, so the reversed (colouring) order starts at the
    # densest part of the graph
    n = g.n
    deg = [g.degree(v) for v in range(n)]
    orig = tuple(deg)
    alive = [True] * n
    removal = []
    for _ in range(n):
        best = -1
        key = None
        for v in range(n):
            if not alive[v]:
                continue
            kv = (deg[v], orig[v], v)
            if key is None or kv < key:
                key, best = kv, v
        removal.append(best)
        alive[best] = False
        for u in g.neighbours(best):
            if alive[u]:
                deg[u] -= 1
    removal.reverse()
    return removal


def _all_p4(g: Graph):
    for u, v in g.edges():
        for a in g.neighbours(u):
            if a == v:
                continue
            for d in g.neighbours(v):
                if d != u and d != a:
                    yield (a, u, v, d)


def _all_p3(g: Graph):
    for b in range(g.n):
        nb = g.neighbours(b)
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                yield (nb[i], b, nb[j])


def _prepare(g: Graph, kind: str, order: list[int]):
    n = g.n
    pos = [0] * n
    for p, v in enumerate(order):
        pos[v] = p
    nbr_before = [
        tuple(sorted(pos[u] for u in g.neighbours(v) if pos[u] < p))
        for p, v in enumerate(order)
    ]
    paths: list[list[tuple]] = [[] for _ in range(n)]
    if kind == "star":
        for a, b, c, d in _all_p4(g):
            qs = (pos[a], pos[b], pos[c], pos[d])
            paths[max(qs)].append(qs)
    elif kind == "rs":
        for a, b, c in _all_p3(g):
            qs = (pos[a], pos[b], pos[c])
            paths[max(qs)].append(qs)
    return nbr_before, paths


class _Stats:
    __slots__ = ("nodes", "count")

    def __init__(self):
        self.nodes = 0
        self.count = 0


def _search(g: Graph, params: SolveParams, stats: _Stats):
    """Yield every valid colouring (colours indexed by vertex id) in a
    deterministic order; raises BudgetExceeded when the budget runs out."""
    n = g.n
    k = params.k
    kind = params.kind
    if n == 0:
        stats.count = 1
        yield ()
        return
    order = _branch_order(g)
    nbr_before, paths = _prepare(g, kind, order)
    canonical = params.canonical and kind != "rs"
    is_star = kind == "star"
    is_rs = kind == "rs"

    cc = [-1] * n  # colour by position
    cand = [0] * (n + 1)
    maxu = [-1] * (n + 1)
    budget_nodes = params.budget_nodes
    deadline = None
    if params.budget_secs is not None:
        deadline = time.monotonic() + params.budget_secs

    p = 0
    while p >= 0:
        if p == n:
            stats.count += 1
            out = [0] * n
            for q, v in enumerate(order):
                out[v] = cc[q]
            yield tuple(out)
            p -= 1
            cand[p] = cc[p] + 1
            cc[p] = -1
            continue
        limit = min(k - 1, maxu[p] + 1) if canonical else k - 1
        nbrs = nbr_before[p]
        ptab = paths[p]
        c = cand[p]
        placed = False
        while c <= limit:
            stats.nodes += 1
            if budget_nodes is not None and stats.nodes > budget_nodes:
                raise BudgetExceeded("node budget exhausted", stats.count, stats.nodes)
            if deadline is not None and stats.nodes % 4096 == 0:
                if time.monotonic() > deadline:
                    raise BudgetExceeded(
                        "time budget exhausted", stats.count, stats.nodes
                    )
            ok = True
            for q in nbrs:
                if cc[q] == c:
                    ok = False
                    break
            if ok:
                cc[p] = c
                if is_star:
                    for qa, qb, qc, qd in ptab:
                        if cc[qa] == cc[qc] and cc[qb] == cc[qd]:
                            ok = False
                            break
                elif is_rs:
                    for qa, qb, qc in ptab:
                        ca = cc[qa]
                        if ca == cc[qc] and cc[qb] > ca:
                            ok = False
                            break
                if ok:
                    placed = True
                    break
                cc[p] = -1
            c += 1
        if placed:
            maxu[p + 1] = maxu[p] if c <= maxu[p] else c
            p += 1
            cand[p] = 0
        else:
            cc[p] = -1
            p -= 1
            if p >= 0:
                cand[p] = cc[p] + 1
                cc[p] = -1


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def decide(g: Graph, params: SolveParams) -> SolveOutcome:
    """Sat with a validating colouring, unsat with exhausted search, or
    budget-exceeded.  Deterministic for a fixed budget."""
    stats = _Stats()
    t0 = time.monotonic()
    try:
        for assignment in _search(g, params, stats):
            col = Colouring(params.k, assignment)
            return SolveOutcome("sat", col, stats.nodes, time.monotonic() - t0)
    except BudgetExceeded:
        return SolveOutcome("budget-exceeded", None, stats.nodes, time.monotonic() - t0)
    return SolveOutcome("unsat", None, stats.nodes, time.monotonic() - t0)


def enumerate_colourings(g: Graph, params: SolveParams, visitor=None) -> int:
    """Visit every valid colouring exactly once and return the count.

    In canonical mode (proper/star) exactly one representative per
    colour-permutation orbit is visited.  Raises BudgetExceeded carrying the
    partial count.
    """
    stats = _Stats()
    for assignment in _search(g, params, stats):
        if visitor is not None:
            visitor(Colouring(params.k, assignment))
    return stats.count


def chromatic(g: Graph, kind: str) -> int:
    """Least k for which decide() is sat (0 for the empty graph)."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        outcome = decide(g, SolveParams(kind=kind, k=k, canonical=True, budget_nodes=None))
        if outcome.status == "sat":
            return k
    raise AssertionError("rainbow colouring must succeed at k = n")


DEFAULT_ORACLE_CAP = 10**8


def oracle_decide(g: Graph, params: SolveParams, cap: int = DEFAULT_ORACLE_CAP) -> SolveOutcome:
    """Independent brute force: scan all k^n assignments (no pruning, no
    symmetry) and report the first valid one.  The scan is evaluated in
    vectorised chunks but is semantically the plain k^n loop; assignment
    number t colours vertex v with digit v of t written base k."""
    n, k = g.n, params.k
    total = k**n
    if total > cap:
        raise CapExceeded(f"k^n = {total} exceeds oracle cap {cap}")
    t0 = time.monotonic()
    if n == 0:
        return SolveOutcome("sat", Colouring(k, ()), 1, time.monotonic() - t0)

    edges = g.edges()
    eu = np.array([e[0] for e in edges], dtype=np.int64)
    ev = np.array([e[1] for e in edges], dtype=np.int64)
    if params.kind == "star":
        quads = list(_all_p4(g))
        pa = np.array([q[0] for q in quads], dtype=np.int64)
        pb = np.array([q[1] for q in quads], dtype=np.int64)
        pc = np.array([q[2] for q in quads], dtype=np.int64)
        pd = np.array([q[3] for q in quads], dtype=np.int64)
    elif params.kind == "rs":
        trips = list(_all_p3(g))
        pa = np.array([t[0] for t in trips], dtype=np.int64)
        pb = np.array([t[1] for t in trips], dtype=np.int64)
        pc = np.array([t[2] for t in trips], dtype=np.int64)

    powers = k ** np.arange(n, dtype=np.int64)
    chunk = 1 << 16
    scanned = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        codes = np.arange(start, stop, dtype=np.int64)
        cols = (codes[:, None] // powers[None, :]) % k
        mask = np.ones(len(codes), dtype=bool)
        if len(eu):
            mask &= (cols[:, eu] != cols[:, ev]).all(axis=1)
        if params.kind == "star" and len(quads) and mask.any():
            viol = (cols[:, pa] == cols[:, pc]) & (cols[:, pb] == cols[:, pd])
            mask &= ~viol.any(axis=1)
        elif params.kind == "rs" and len(trips) and mask.any():
            viol = (cols[:, pa] == cols[:, pc]) & (cols[:, pb] > cols[:, pa])
            mask &= ~viol.any(axis=1)
        hit = np.flatnonzero(mask)
        if hit.size:
            scanned += int(hit[0]) + 1
            col = Colouring(k, tuple(int(c) for c in cols[hit[0]]))
            assert validate(g, col, params.kind) is None
            return SolveOutcome("sat", col, scanned, time.monotonic() - t0)
        scanned += len(codes)
    return SolveOutcome("unsat", None, scanned, time.monotonic() - t0)


def edge_decide(g: Graph, k: int) -> SolveOutcome:
    """Proper k-edge-colourability, decided as proper vertex colouring of
    the line graph.  The returned colouring is indexed by edge position in
    g.edges()."""
    lg = line_graph(g)
    return decide(lg, SolveParams(kind="proper", k=k, canonical=True, budget_nodes=None))


def distance_two_rs(g: Graph) -> Colouring:
    """Greedy proper colouring of the square graph; uses at most
    max_degree(g)^2 + 1 colours and is always an rs colouring of g (any two
    vertices within distance two get distinct colours, so no bicoloured P3
    exists at all)."""
    sq = square(g)
    cols = [0] * g.n
    for v in range(g.n):
        taken = {cols[u] for u in sq.neighbours(v) if u < v}
        c = 0
        while c in taken:
            c += 1
        cols[v] = c
    k = max(cols, default=0) + 1
    return Colouring(k, tuple(cols))
