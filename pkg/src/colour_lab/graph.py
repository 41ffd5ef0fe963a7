"""Immutable simple-graph representation and the structural operations
the gadget constructions rely on (identification, subdivision, union,
square), structural classifiers, and file I/O (graph6 / edge list / DOT).

Vertex ids are dense integers in ``[0, n)``.  A graph may additionally
carry *aliases*: string names that resolve to vertex ids.  Vertex
identification keeps the smaller id and repoints every alias of both old
vertices at the merged one, so constructions can keep referring to a glued
vertex by either of its historical names.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import AdjacentIdentification, MalformedGraph6, UnknownVertex

__all__ = [
    "Graph",
    "GraphBuilder",
    "StructureReport",
    "identify_vertices",
    "subdivide_all_edges",
    "disjoint_union",
    "square",
    "line_graph",
    "structure_report",
    "encode_graph6",
    "decode_graph6",
    "to_edge_list",
    "from_edge_list",
    "to_dot",
    "path_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite",
    "petersen_graph",
    "octahedron",
    "hypercube",
]


class Graph:
    """Finite simple undirected graph; immutable after construction."""

    __slots__ = ("_adj", "_aliases")

    def __init__(self, adjacency: tuple[tuple[int, ...], ...], aliases: dict[str, int]):
        self._adj = adjacency
        self._aliases = aliases

    @staticmethod
    def from_edges(n: int, edges, aliases: dict[str, int] | None = None) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownVertex(f"edge ({u},{v}) outside [0,{n})")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        aliases = dict(aliases or {})
        for name, v in aliases.items():
            if not (0 <= v < n):
                raise UnknownVertex(f"alias {name!r} -> {v} outside [0,{n})")
        return Graph(tuple(tuple(sorted(s)) for s in adj), aliases)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj) // 2

    def neighbours(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self._adj[u] if u < v]

    @property
    def aliases(self) -> dict[str, int]:
        return dict(self._aliases)

    def resolve(self, name) -> int:
        """Turn a vertex name (or a raw id) into a vertex id."""
        if isinstance(name, int):
            if not (0 <= name < self.n):
                raise UnknownVertex(f"vertex id {name} outside [0,{self.n})")
            return name
        try:
            return self._aliases[name]
        except KeyError:
            raise UnknownVertex(f"unknown vertex name {name!r}") from None

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self):
        return hash(self._adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class GraphBuilder:
    """Incremental construction helper used by the gadget builders."""

    def __init__(self):
        self._names: dict[str, int] = {}
        self._edges: set[tuple[int, int]] = set()
        self._n = 0

    def vertex(self, name: str | None = None) -> int:
        v = self._n
        self._n += 1
        if name is not None:
            if name in self._names:
                raise ValueError(f"duplicate vertex name {name!r}")
            self._names[name] = v
        return v

    def alias(self, name: str, target) -> None:
        if name in self._names:
            raise ValueError(f"duplicate vertex name {name!r}")
        self._names[name] = self.resolve(target)

    def resolve(self, x) -> int:
        if isinstance(x, int):
            return x
        return self._names[x]

    def edge(self, a, b) -> None:
        u, v = self.resolve(a), self.resolve(b)
        if u == v:
            raise ValueError(f"self-loop at {u}")
        self._edges.add((min(u, v), max(u, v)))

    def build(self) -> Graph:
        return Graph.from_edges(self._n, self._edges, self._names)


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------


def identify_vertices(g: Graph, u, v) -> Graph:
    """Merge two non-adjacent vertices into one whose neighbourhood is the
    union of theirs.  The merged vertex keeps the smaller id; every alias of
    either old vertex resolves to it afterwards, and ids above the removed
    one shift down so ids stay dense.
    """
    u, v = g.resolve(u), g.resolve(v)
    if u == v:
        raise ValueError("cannot identify a vertex with itself")
    if g.has_edge(u, v):
        raise AdjacentIdentification(f"vertices {u} and {v} are adjacent")
    keep, drop = min(u, v), max(u, v)

    def remap(x: int) -> int:
        if x == drop:
            return keep
        return x if x < drop else x - 1

    edges = set()
    for a, b in g.edges():
        ra, rb = remap(a), remap(b)
        if ra != rb:  # common neighbours of u and v yield one edge
            edges.add((min(ra, rb), max(ra, rb)))
    aliases = {name: remap(x) for name, x in g.aliases.items()}
    return Graph.from_edges(g.n - 1, edges, aliases)


def subdivide_all_edges(g: Graph) -> Graph:
    """Replace each edge uv by u-s-v with a fresh vertex s.

    Subdivision vertices are appended after the original ids, one per edge in
    sorted edge order.
    """
    edges = []
    s = g.n
    for u, v in g.edges():
        edges.append((u, s))
        edges.append((s, v))
        s += 1
    return Graph.from_edges(s, edges, g.aliases)


def disjoint_union(gs) -> Graph:
    """Disjoint union; vertex ids re-based part by part.

    Alias names must be unique across parts (builders suffix their names).
    """
    gs = list(gs)
    offset = 0
    edges = []
    aliases: dict[str, int] = {}
    for g in gs:
        for u, v in g.edges():
            edges.append((u + offset, v + offset))
        for name, v in g.aliases.items():
            if name in aliases:
                raise ValueError(f"alias name {name!r} occurs in two parts")
            aliases[name] = v + offset
        offset += g.n
    return Graph.from_edges(offset, edges, aliases)


def square(g: Graph) -> Graph:
    """u ~ v in the result iff 1 <= dist_g(u, v) <= 2."""
    edges = set(g.edges())
    for w in range(g.n):
        for u, v in combinations(g.neighbours(w), 2):
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(g.n, edges, g.aliases)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of g (in sorted edge order); adjacency is
    sharing an endpoint."""
    es = g.edges()
    index = {e: i for i, e in enumerate(es)}
    edges = []
    for v in range(g.n):
        nb = g.neighbours(v)
        for a, b in combinations(nb, 2):
            ea = index[(min(v, a), max(v, a))]
            eb = index[(min(v, b), max(v, b))]
            edges.append((ea, eb))
    return Graph.from_edges(len(es), edges)


# ---------------------------------------------------------------------------
# classifiers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StructureReport:
    max_degree: int
    is_regular: bool
    degree: int | None  # common degree when regular
    is_bipartite: bool
    is_triangle_free: bool
    girth: int | None  # None means acyclic
    is_connected: bool

    def to_json(self) -> dict:
        d = self.__dict__.copy()
        d["girth"] = "acyclic" if self.girth is None else self.girth
        return d


def _bfs_girth(g: Graph) -> int | None:
    best: int | None = None
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        queue = [root]
        head = 0
        while head < len(queue):
            x = queue[head]
            head += 1
            if best is not None and 2 * dist[x] >= best:
                break
            for y in g.neighbours(x):
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif y != parent[x]:
                    cyc = dist[x] + dist[y] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def structure_report(g: Graph) -> StructureReport:
    n = g.n
    degs = [g.degree(v) for v in range(n)]
    max_deg = max(degs, default=0)
    regular = len(set(degs)) <= 1

    # bipartiteness and connectivity in one sweep
    colour = [-1] * n
    bipartite = True
    components = 0
    for s in range(n):
        if colour[s] >= 0:
            continue
        components += 1
        colour[s] = 0
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.neighbours(x):
                if colour[y] < 0:
                    colour[y] = colour[x] ^ 1
                    stack.append(y)
                elif colour[y] == colour[x]:
                    bipartite = False

    triangle_free = True
    for u, v in g.edges():
        nu = set(g.neighbours(u))
        if any(w in nu for w in g.neighbours(v)):
            triangle_free = False
            break

    girth = _bfs_girth(g)
    return StructureReport(
        max_degree=max_deg,
        is_regular=regular,
        degree=(degs[0] if regular and n > 0 else (0 if n == 0 else None)),
        is_bipartite=bipartite,
        is_triangle_free=triangle_free,
        girth=girth,
        is_connected=components <= 1,
    )


# ---------------------------------------------------------------------------
# graph6 (bit-exact standard layout)
# ---------------------------------------------------------------------------


def encode_graph6(g: Graph) -> bytes:
    n = g.n
    if n <= 62:
        head = bytes([n + 63])
    elif n <= 258047:
        head = bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    else:
        raise ValueError("graphs with more than 258047 vertices not supported")
    bits = []
    for j in range(1, n):
        nb = set(g.neighbours(j))
        for i in range(j):
            bits.append(1 if i in nb else 0)
    out = bytearray(head)
    for i in range(0, len(bits), 6):
        group = bits[i : i + 6]
        group += [0] * (6 - len(group))
        val = 0
        for b in group:
            val = (val << 1) | b
        out.append(val + 63)
    return bytes(out)


def decode_graph6(data: bytes) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<") :]
    if not data:
        raise MalformedGraph6("empty graph6 payload", 0)
    pos = 0
    if data[0] == 126:  # '~'
        if len(data) >= 2 and data[1] == 126:
            raise MalformedGraph6("8-byte vertex counts not supported", 1)
        if len(data) < 4:
            raise MalformedGraph6("truncated vertex count", len(data))
        for i in (1, 2, 3):
            if not (63 <= data[i] <= 126):
                raise MalformedGraph6("vertex-count byte out of range", i)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if not (63 <= data[0] <= 126):
            raise MalformedGraph6("vertex-count byte out of range", 0)
        n = data[0] - 63
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise MalformedGraph6(
            f"truncated payload: need {nbytes} bytes, have {len(data) - pos}", len(data)
        )
    if len(data) - pos > nbytes:
        raise MalformedGraph6("trailing bytes after payload", pos + nbytes)
    bits = []
    for off in range(nbytes):
        byte = data[pos + off]
        if not (63 <= byte <= 126):
            raise MalformedGraph6("payload byte out of range", pos + off)
        val = byte - 63
        for shift in (5, 4, 3, 2, 1, 0):
            bits.append((val >> shift) & 1)
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    if any(bits[nbits:]):
        raise MalformedGraph6("nonzero padding bits", pos + nbytes - 1)
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# edge-list text format and DOT export
# ---------------------------------------------------------------------------


def to_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise ValueError("edge list must start with a 'n m' header")
    n, m = int(rows[0][0]), int(rows[0][1])
    edges = [(int(a), int(b)) for a, b in rows[1:]]
    if len(edges) != m:
        raise ValueError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def to_dot(g: Graph, name: str = "G") -> str:
    by_id: dict[int, str] = {}
    for alias, v in sorted(g.aliases.items()):
        by_id.setdefault(v, alias)
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        label = f' [label="{by_id[v]}"]' if v in by_id else ""
        lines.append(f"  {v}{label};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# small named graphs used throughout the tests and demos
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def octahedron() -> Graph:
    # K_{2,2,2}: pairs (0,1), (2,3), (4,5) are the non-edges
    edges = [
        (u, v)
        for u, v in combinations(range(6), 2)
        if not (u // 2 == v // 2)
    ]
    return Graph.from_edges(6, edges)


def hypercube(d: int) -> Graph:
    n = 1 << d
    edges = [(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < (x ^ (1 << b))]
    return Graph.from_edges(n, edges)
