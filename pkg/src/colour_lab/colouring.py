"""Definitions-as-code: validators for proper / star / restricted-star
colourings with violation witnesses, the orientation/homomorphism form of
rs colouring, and the distance-two zero-colour rule.

A *star* colouring is a proper colouring with no path on four vertices
using only two colours.  An *rs* colouring is a proper colouring with no
three-vertex path whose middle vertex has a strictly higher colour than
its two equal-coloured endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import ImproperInput, PartialColouring
from .graph import Graph

__all__ = [
    "Colouring",
    "PathWitness",
    "OrientedGraph",
    "KINDS",
    "validate",
    "orientation_from_colouring",
    "is_inn_injective_hom_to_tournament",
    "zero_pair_scan",
]

KINDS = ("proper", "star", "rs")


@dataclass(frozen=True)
class Colouring:
    """Total mapping vertex id -> colour in Z_k; carries the palette size."""

    k: int
    colours: tuple[int, ...]

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("palette size k must be >= 1")
        if any(not (0 <= c < self.k) for c in self.colours):
            raise ValueError("colour outside [0, k)")
        object.__setattr__(self, "colours", tuple(self.colours))

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def used(self) -> set[int]:
        return set(self.colours)

    def permuted(self, perm) -> "Colouring":
        """Relabel colours through a permutation of Z_k (mapping or sequence)."""
        if not callable(perm):
            table = perm
            perm = lambda c: table[c]
        return Colouring(self.k, tuple(perm(c) for c in self.colours))

    def to_json(self) -> dict:
        return {"k": self.k, "colours": list(self.colours)}

    @staticmethod
    def from_json(obj: dict) -> "Colouring":
        return Colouring(int(obj["k"]), tuple(int(c) for c in obj["colours"]))


@dataclass(frozen=True)
class PathWitness:
    """A violating path: 2 vertices (improper edge), 4 (bicoloured P4) or
    3 (rs violation, higher colour on the middle vertex)."""

    kind: str  # improper-edge | bicoloured-P4 | rs-violation
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "path": list(self.vertices)}

    @staticmethod
    def from_json(obj: dict) -> "PathWitness":
        return PathWitness(obj["kind"], tuple(obj["path"]))


def _check_total(g: Graph, c: Colouring) -> None:
    if len(c.colours) != g.n:
        raise PartialColouring(
            f"colouring assigns {len(c.colours)} vertices, graph has {g.n}"
        )


def _improper_edge(g: Graph, col) -> PathWitness | None:
    for u in range(g.n):
        for v in g.neighbours(u):
            if u < v and col[u] == col[v]:
                return PathWitness("improper-edge", (u, v))
    return None


def _first_bicoloured_p4(g: Graph, col) -> PathWitness | None:
    # deterministic scan: lexicographic over (start vertex, neighbour order)
    for a in range(g.n):
        ca = col[a]
        for b in g.neighbours(a):
            cb = col[b]
            for c in g.neighbours(b):
                if c == a or col[c] != ca:
                    continue
                for d in g.neighbours(c):
                    if d != b and d != a and col[d] == cb:
                        return PathWitness("bicoloured-P4", (a, b, c, d))
    return None


def _star_violation_exists(g: Graph, col, k: int) -> bool:
    # For each colour pair, the subgraph induced by the two colour classes
    # must have <= 1 vertex of degree >= 2 per connected component
    # (equivalent to "no bicoloured P4"); O(k^2 (n+m)) instead of O(n Δ^3).
    classes: dict[int, list[int]] = {}
    for v in range(g.n):
        classes.setdefault(col[v], []).append(v)
    present = sorted(classes)
    for ca, cb in combinations(present, 2):
        verts = classes[ca] + classes[cb]
        pair = {ca, cb}
        seen: set[int] = set()
        vset = set(verts)
        for s in verts:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                x = stack.pop()
                for y in g.neighbours(x):
                    if y in vset and col[y] in pair and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            big = 0
            for x in comp:
                deg = sum(1 for y in g.neighbours(x) if y in vset and col[y] in pair)
                if deg >= 2:
                    big += 1
                    if big > 1:
                        break
            if big > 1:
                return True
    return False


def _first_rs_violation(g: Graph, col) -> PathWitness | None:
    # a vertex may not have two neighbours of equal colour below its own
    for v in range(g.n):
        cv = col[v]
        nb = g.neighbours(v)
        for i in range(len(nb)):
            u = nb[i]
            if col[u] >= cv:
                continue
            for j in range(i + 1, len(nb)):
                w = nb[j]
                if col[w] == col[u]:
                    return PathWitness("rs-violation", (u, v, w))
    return None


def validate(g: Graph, c: Colouring, kind: str) -> PathWitness | None:
    """Return None when c is a valid colouring of the requested kind, else
    the first violating path in deterministic scan order."""
    if kind not in KINDS:
        raise ValueError(f"unknown colouring kind {kind!r}")
    _check_total(g, c)
    col = c.colours
    bad = _improper_edge(g, col)
    if bad is not None:
        return bad
    if kind == "proper":
        return None
    if kind == "star":
        if _star_violation_exists(g, col, c.k):
            w = _first_bicoloured_p4(g, col)
            assert w is not None, "component check disagrees with direct P4 scan"
            return w
        return None
    return _first_rs_violation(g, col)


# ---------------------------------------------------------------------------
# orientations and the homomorphism form of rs colouring
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OrientedGraph:
    """An orientation: exactly one arc per edge of the underlying graph."""

    underlying: Graph
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        want = set(self.underlying.edges())
        got = {(min(u, v), max(u, v)) for u, v in self.arcs}
        if got != want or len(self.arcs) != len(want):
            raise ValueError("arcs must orient each underlying edge exactly once")

    def in_neighbours(self, v: int) -> list[int]:
        return [u for u, w in self.arcs if w == v]


def orientation_from_colouring(g: Graph, c: Colouring) -> OrientedGraph:
    """Orient each edge from the lower-coloured vertex to the higher one.

    The result is acyclic by construction.  Raises ImproperInput on a
    monochromatic edge.
    """
    _check_total(g, c)
    arcs = set()
    for u, v in g.edges():
        if c[u] == c[v]:
            raise ImproperInput(f"edge ({u},{v}) is monochromatic")
        arcs.add((u, v) if c[u] < c[v] else (v, u))
    return OrientedGraph(g, frozenset(arcs))


def is_inn_injective_hom_to_tournament(og: OrientedGraph, c: Colouring) -> bool:
    """True iff colouring the vertices by c is an in-neighbourhood injective
    homomorphism from og to the transitive tournament on Z_k: every arc must
    go from a lower to a higher colour, and no vertex may have two
    in-neighbours of equal colour.
    """
    _check_total(og.underlying, c)
    indeg: dict[int, set[int]] = {}
    for u, v in og.arcs:
        if c[u] >= c[v]:
            return False
        seen = indeg.setdefault(v, set())
        if c[u] in seen:
            return False
        seen.add(c[u])
    return True


def zero_pair_scan(g: Graph, c: Colouring) -> list[tuple[int, int]]:
    """All pairs of distinct vertices within distance two that are both
    coloured 0.  An empty list is a necessary condition for rs validity."""
    _check_total(g, c)
    zeros = [v for v in range(g.n) if c[v] == 0]
    zset = set(zeros)
    pairs = set()
    for u in zeros:
        for w in g.neighbours(u):
            if w in zset and u < w:
                pairs.add((u, w))
            for x in g.neighbours(w):
                if x != u and x in zset and u < x:
                    pairs.add((u, x))
    return sorted(pairs)
