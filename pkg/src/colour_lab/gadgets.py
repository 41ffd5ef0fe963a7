"""Deterministic constructors for every gadget used by the reductions,
with terminal metadata and recorded reference colouring schemes.

Each builder names its vertices (copies carry a ``@copy`` or ``_{i,copy}``
suffix), glues copies with the real vertex-identification operation, and
exposes the attachment points as ``terminals``.  ``scheme`` returns recorded
reference colourings; gadgets whose reference colouring is not recorded
anywhere (the colour-forcing gadgets) raise NoSchemeRecorded, and a
solver-derived colouring for the full colour-forcing gadget is shipped as a
data artifact instead (see ``derived_scheme``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .colouring import Colouring
from .errors import NoSchemeRecorded, ParamOutOfRange
from .graph import Graph, GraphBuilder, disjoint_union, identify_vertices

__all__ = [
    "GADGET_IDS",
    "Gadget",
    "build",
    "scheme",
    "derived_scheme",
    "catalogue",
]

GADGET_IDS = (
    "star-component",
    "star-chain",
    "petersen-minus",
    "c2-vertex",
    "c2-chain",
    "grotzsch-minus",
    "two-in-two-out",
    "not-equal",
    "c3-tree",
    "star-filler",
    "rs-component",
    "rs-forcing-H",
    "rs-forcing",
    "rs-blocking",
    "rs-filler",
)


@dataclass(frozen=True)
class Gadget:
    id: str
    graph: Graph
    terminals: dict[str, int]  # role name -> vertex id
    params: dict

    def terminal_json(self) -> dict:
        return {name: v for name, v in sorted(self.terminals.items())}


def _with_aliases(g: Graph, extra: dict[str, int]) -> Graph:
    return Graph.from_edges(g.n, g.edges(), {**g.aliases, **extra})


def _perm_map(k: int, fixed: dict[int, int]) -> list[int]:
    """Permutation of Z_k sending `fixed` as prescribed and mapping the
    remaining colours to the remaining targets in ascending order."""
    if len(set(fixed.values())) != len(fixed):
        raise ValueError("permutation targets collide")
    perm = [-1] * k
    for src, dst in fixed.items():
        perm[src] = dst
    rest_src = [c for c in range(k) if perm[c] < 0]
    rest_dst = [c for c in range(k) if c not in set(fixed.values())]
    for s, d in zip(rest_src, rest_dst):
        perm[s] = d
    return perm


# ---------------------------------------------------------------------------
# star colouring gadgets (chain construction, k >= 7)
# ---------------------------------------------------------------------------


def _star_component_graph(k: int, copy: int | None = None) -> Graph:
    def nm(base: str, i: int) -> str:
        return f"{base}{i}" if copy is None else f"{base}_{{{i},{copy}}}"

    b = GraphBuilder()
    for i in range(1, k - 3):
        b.vertex(nm("u", i))
    for i in range(1, k - 1):
        b.vertex(nm("w", i))
    for i in range(1, k - 1):
        b.vertex(nm("x", i))
    for i in range(1, k - 3):
        b.vertex(nm("y", i))
    for i in range(1, k - 1):
        for j in range(1, k - 1):
            b.edge(nm("w", i), nm("x", j))
    b.edge(nm("w", k - 3), nm("w", k - 2))
    b.edge(nm("x", k - 3), nm("x", k - 2))
    for i in range(1, k - 3):
        b.edge(nm("u", i), nm("w", i))
        b.edge(nm("y", i), nm("x", i))
    b.edge(nm("y", 1), nm("y", 2))
    return b.build()


def _star_component(k: int) -> Gadget:
    if k < 7:
        raise ParamOutOfRange("star-component requires k >= 7")
    return Gadget("star-component", _star_component_graph(k), {}, {"k": k})


def _star_chain(k: int, t: int) -> Gadget:
    if k < 7 or t < 1:
        raise ParamOutOfRange("star-chain requires k >= 7 and t >= 1")
    g = disjoint_union(_star_component_graph(k, copy=c) for c in range(1, t + 1))
    for c in range(1, t):
        g = identify_vertices(g, f"w_{{{k - 4},{c}}}", f"u_{{1,{c + 1}}}")
        g = identify_vertices(g, f"u_{{{k - 4},{c}}}", f"w_{{1,{c + 1}}}")
    terminals = {
        f"u_{{{i},{c}}}": g.resolve(f"u_{{{i},{c}}}")
        for c in range(1, t + 1)
        for i in range(2, k - 4)
    }
    return Gadget("star-chain", g, terminals, {"k": k, "t": t})


# ---------------------------------------------------------------------------
# Petersen-minus-vertex gadgets (Construction 2)
# ---------------------------------------------------------------------------


def _petersen_minus_graph(sfx: str = "") -> Graph:
    b = GraphBuilder()
    for i in range(1, 6):
        b.vertex(f"v{i}{sfx}")
    for i in range(1, 5):
        b.vertex(f"w{i}{sfx}")
    # inner 5-cycle in pentagram order
    for a, c in ((1, 3), (3, 5), (5, 2), (2, 4), (4, 1)):
        b.edge(f"v{a}{sfx}", f"v{c}{sfx}")
    for i in range(1, 5):
        b.edge(f"w{i}{sfx}", f"v{i}{sfx}")
    for i in range(1, 4):
        b.edge(f"w{i}{sfx}", f"w{i + 1}{sfx}")
    return b.build()


def _petersen_minus() -> Gadget:
    g = _petersen_minus_graph()
    terms = {n: g.resolve(n) for n in ("w1", "w4", "v5")}
    return Gadget("petersen-minus", g, terms, {})


def _glue_petersen_path(copies: int) -> Graph:
    g = disjoint_union(_petersen_minus_graph(f"@{j}") for j in range(1, copies + 1))
    for j in range(1, copies):
        g = identify_vertices(g, f"w4@{j}", f"w1@{j + 1}")
    return g


def _c2_vertex() -> Gadget:
    g = _glue_petersen_path(4)
    terms = {"v0": g.resolve("w1@1")}
    for j in range(1, 5):
        terms[f"v{j}"] = g.resolve(f"v5@{j}")
    g = _with_aliases(g, terms)
    return Gadget("c2-vertex", g, terms, {})


def _c2_chain(n: int) -> Gadget:
    if n < 1:
        raise ParamOutOfRange("c2-chain requires n >= 1")
    g = _glue_petersen_path(n)
    terms = {f"v*{i}": g.resolve(f"v5@{i}") for i in range(1, n + 1)}
    g = _with_aliases(g, terms)
    return Gadget("c2-chain", g, terms, {"n": n})


# ---------------------------------------------------------------------------
# Grötzsch-minus-vertex gadgets (Construction 3)
# ---------------------------------------------------------------------------


def _emit_grotzsch(b: GraphBuilder, outer: str, inner: str, sfx: str,
                   shared: dict[int, str] | None = None) -> None:
    """Add a Grötzsch-minus-vertex copy: cycle outer1..outer5, with inner_i
    adjacent to outer_{i-1} and outer_{i+1}.  `shared` maps an inner index
    to an existing vertex name (used to overlap two copies)."""
    shared = shared or {}
    for i in range(1, 6):
        b.vertex(f"{outer}{i}{sfx}")
    for i in range(1, 6):
        if i in shared:
            b.alias(f"{inner}{i}{sfx}", shared[i])
        else:
            b.vertex(f"{inner}{i}{sfx}")
    for i in range(1, 6):
        b.edge(f"{outer}{i}{sfx}", f"{outer}{i % 5 + 1}{sfx}")
    for i in range(1, 6):
        prev = (i - 2) % 5 + 1
        nxt = i % 5 + 1
        b.edge(f"{inner}{i}{sfx}", f"{outer}{prev}{sfx}")
        b.edge(f"{inner}{i}{sfx}", f"{outer}{nxt}{sfx}")


def _grotzsch_minus() -> Gadget:
    b = GraphBuilder()
    _emit_grotzsch(b, "v", "w", "")
    g = b.build()
    terms = {f"w{i}": g.resolve(f"w{i}") for i in range(1, 6)}
    return Gadget("grotzsch-minus", g, terms, {})


def _two_in_two_out_graph(sfx: str = "") -> Graph:
    b = GraphBuilder()
    _emit_grotzsch(b, "u", "x", sfx)
    # the two copies overlap in two vertices: x2 = w2 and x3 = w3
    _emit_grotzsch(b, "v", "w", sfx, shared={2: f"x2{sfx}", 3: f"x3{sfx}"})
    for yi in ("y1", "y2"):
        b.vertex(f"{yi}{sfx}")
        for x in ("x5", "x1", "x4"):
            b.edge(f"{yi}{sfx}", f"{x}{sfx}")
        b.vertex(f"{yi}*{sfx}")
        b.edge(f"{yi}{sfx}", f"{yi}*{sfx}")
    for zi in ("z1", "z2"):
        b.vertex(f"{zi}{sfx}")
        for w in ("w5", "w1", "w4"):
            b.edge(f"{zi}{sfx}", f"{w}{sfx}")
        b.vertex(f"{zi}*{sfx}")
        b.edge(f"{zi}{sfx}", f"{zi}*{sfx}")
    return b.build()


def _two_in_two_out() -> Gadget:
    g = _two_in_two_out_graph()
    terms = {n: g.resolve(n) for n in ("y1*", "y2*", "z1*", "z2*")}
    return Gadget("two-in-two-out", g, terms, {})


def _not_equal() -> Gadget:
    g = _two_in_two_out_graph()
    g = identify_vertices(g, "y1*", "y2*")
    g = identify_vertices(g, "z1*", "z2*")
    terms = {"y": g.resolve("y1*"), "z": g.resolve("z1*")}
    g = _with_aliases(g, terms)
    return Gadget("not-equal", g, terms, {})


def _c3_tree(T: int, shape: str = "pyramid") -> Gadget:
    """Gluing of 2-in-2-out gadgets in which an out-edge of a parent box is
    an in-edge of its child (z* of the parent is identified with y of the
    child, z with y*).  The pyramid shape has levels of 1, 2, ..., T boxes
    (the vertex/chain gadget layout); the chain shape is a single line of T
    boxes.  Leaf out-edges keep their pendant z* vertices as terminals;
    unused in-edges keep pendant vertices.
    """
    if T < 1:
        raise ParamOutOfRange("c3-tree requires T >= 1")
    if shape not in ("pyramid", "chain"):
        raise ParamOutOfRange(f"unknown c3-tree shape {shape!r}")
    if shape == "pyramid":
        boxes = [(lvl, j) for lvl in range(1, T + 1) for j in range(1, lvl + 1)]
        sfx = {box: f"@{box[0]},{box[1]}" for box in boxes}
        # parent (lvl, j): z1 edge -> child (lvl+1, j) y2 edge,
        #                  z2 edge -> child (lvl+1, j+1) y1 edge
        links = []
        for lvl, j in boxes:
            if lvl < T:
                links.append(((lvl, j), "z1", (lvl + 1, j), "y2"))
                links.append(((lvl, j), "z2", (lvl + 1, j + 1), "y1"))
        term_boxes = [((T, j), slot) for j in range(1, T + 1) for slot in ("z1", "z2")]
    else:
        boxes = [(1, b) for b in range(1, T + 1)]
        sfx = {box: f"@{box[1]}" for box in boxes}
        links = [((1, b), "z1", (1, b + 1), "y1") for b in range(1, T)]
        term_boxes = [((1, b), "z2") for b in range(1, T)]
        term_boxes += [((1, T), "z1"), ((1, T), "z2")]

    g = disjoint_union(_two_in_two_out_graph(sfx[box]) for box in boxes)
    for parent, zslot, child, yslot in links:
        # the parent's out-edge becomes the child's in-edge
        g = identify_vertices(g, f"{zslot}*{sfx[parent]}", f"{yslot}{sfx[child]}")
        g = identify_vertices(g, f"{zslot}{sfx[parent]}", f"{yslot}*{sfx[child]}")
    terms = {}
    for idx, (box, slot) in enumerate(term_boxes):
        terms[f"t{idx}"] = g.resolve(f"{slot}*{sfx[box]}")
    g = _with_aliases(g, terms)
    return Gadget("c3-tree", g, terms, {"T": T, "shape": shape})


# ---------------------------------------------------------------------------
# filler gadgets (regularisation, Constructions 4-5 and 9-10)
# ---------------------------------------------------------------------------


def _emit_filler_block(b: GraphBuilder, sides: int, sfx: str) -> tuple[str, str]:
    """One hub-K_{s,s}-hub block; returns the (entry, exit) hub names."""
    hub_in, hub_out = f"h{sfx}", f"h'{sfx}"
    b.vertex(hub_in)
    for i in range(1, sides + 1):
        b.vertex(f"x{i}{sfx}")
        b.edge(hub_in, f"x{i}{sfx}")
    for j in range(1, sides + 1):
        b.vertex(f"y{j}{sfx}")
        for i in range(1, sides + 1):
            b.edge(f"x{i}{sfx}", f"y{j}{sfx}")
    b.vertex(hub_out)
    for j in range(1, sides + 1):
        b.edge(hub_out, f"y{j}{sfx}")
    return hub_in, hub_out


def _star_filler(k: int, d: int) -> Gadget:
    if k < 3 or not (1 <= d <= k - 1):
        raise ParamOutOfRange("star-filler requires k >= 3 and 1 <= d <= k-1")
    b = GraphBuilder()
    b.vertex("v")
    hub_in, hub_out = _emit_filler_block(b, d - 1, "")
    b.vertex("v'")
    b.edge("v", hub_in)
    b.edge(hub_out, "v'")
    g = b.build()
    terms = {"v": g.resolve("v"), "v'": g.resolve("v'")}
    return Gadget("star-filler", g, terms, {"k": k, "d": d})


def _rs_filler(k: int, d: int) -> Gadget:
    if k < 4 or not (1 <= d <= k - 1):
        raise ParamOutOfRange("rs-filler requires k >= 4 and 1 <= d <= k-1")
    b = GraphBuilder()
    b.vertex("v")
    hubs = [_emit_filler_block(b, d - 1, f"@{t}") for t in (1, 2, 3)]
    b.vertex("v'")
    b.edge("v", hubs[0][0])
    b.edge(hubs[0][1], hubs[1][0])
    b.edge(hubs[1][1], hubs[2][0])
    b.edge(hubs[2][1], "v'")
    g = b.build()
    terms = {"v": g.resolve("v"), "v'": g.resolve("v'")}
    return Gadget("rs-filler", g, terms, {"k": k, "d": d})


# ---------------------------------------------------------------------------
# rs colouring gadgets (Constructions 6-8)
# ---------------------------------------------------------------------------


def _emit_rs_component(b: GraphBuilder, sfx: str = "") -> None:
    for i in range(1, 9):
        b.vertex(f"u{i}{sfx}")
    for i in range(1, 6):
        b.edge(f"u{i}{sfx}", f"u{i % 5 + 1}{sfx}")
    for a, c in ((2, 6), (6, 7), (7, 8), (8, 1)):
        b.edge(f"u{a}{sfx}", f"u{c}{sfx}")
    b.edge(f"u4{sfx}", f"u7{sfx}")


def _rs_component() -> Gadget:
    b = GraphBuilder()
    _emit_rs_component(b)
    g = b.build()
    terms = {"u3": g.resolve("u3"), "u5": g.resolve("u5")}
    return Gadget("rs-component", g, terms, {})


def _emit_rs_padded_copy(b: GraphBuilder, sfx: str) -> None:
    """The rs gadget component plus the inner padding that makes every
    vertex except u3 and u5 have degree 3: an open 5-ring a1..a5 hanging off
    u8/u6, a 10-cycle (b ring interleaved with bs subdivision vertices)
    spoked to the open ring, and an inner 5-cycle spoked to the subdivision
    vertices."""
    _emit_rs_component(b, sfx)
    for i in range(1, 6):
        b.vertex(f"a{i}{sfx}")
    for a, c in ((2, 3), (3, 4), (4, 5), (5, 1)):  # open: no a1-a2 edge
        b.edge(f"a{a}{sfx}", f"a{c}{sfx}")
    b.edge(f"a1{sfx}", f"u8{sfx}")
    b.edge(f"a2{sfx}", f"u6{sfx}")
    for i in range(1, 6):
        b.vertex(f"b{i}{sfx}")
    for i in range(1, 6):
        b.vertex(f"bs{i}{sfx}")
    for i in range(1, 6):
        b.edge(f"b{i}{sfx}", f"bs{i}{sfx}")
        b.edge(f"bs{i}{sfx}", f"b{i % 5 + 1}{sfx}")
    for i in range(1, 6):
        b.edge(f"a{i}{sfx}", f"b{i}{sfx}")
    for i in range(1, 6):
        b.vertex(f"c{i}{sfx}")
    for i in range(1, 6):
        b.edge(f"c{i}{sfx}", f"c{i % 5 + 1}{sfx}")
    for bs_i, c_i in ((1, 4), (2, 3), (3, 2), (4, 1), (5, 5)):
        b.edge(f"bs{bs_i}{sfx}", f"c{c_i}{sfx}")


def _rs_forcing_graph(padded: bool) -> Graph:
    b = GraphBuilder()
    for copy in (1, 2, 3):
        if padded:
            _emit_rs_padded_copy(b, f"@{copy}")
        else:
            _emit_rs_component(b, f"@{copy}")
    b.vertex("J")
    b.edge("u5@1", "u3@2")
    for nbr in ("u3@1", "u5@2", "u3@3"):
        b.edge("J", nbr)
    for name, target in (("u3'", "u3@2"), ("u5'", "u5@2"),
                         ("u3''", "u3@3"), ("u5''", "u5@3")):
        b.alias(name, target)
    return b.build()


def _rs_forcing_h() -> Gadget:
    g = _rs_forcing_graph(padded=False)
    return Gadget("rs-forcing-H", g, {"u5''": g.resolve("u5''")}, {})


def _rs_forcing() -> Gadget:
    g = _rs_forcing_graph(padded=True)
    return Gadget("rs-forcing", g, {"u5''": g.resolve("u5''")}, {})


def _rs_blocking(k: int) -> Gadget:
    if k < 5:
        raise ParamOutOfRange("rs-blocking requires k >= 5")
    b = GraphBuilder()
    for i in range(1, k):
        b.vertex(f"x{i}")
    for i in range(1, k):
        b.vertex(f"y{i}")
    for i in range(1, k):
        for j in range(1, k):
            if i != j:  # complete bipartite minus the perfect matching
                b.edge(f"x{i}", f"y{j}")
    for name in ("u1", "u2", "u3", "v1", "v2", "v3"):
        b.vertex(name)
    b.edge("u1", "x1")
    b.edge("u1", "y1")
    b.edge("u2", "u1")
    b.edge("u2", "u3")
    for j in range(2, k - 1):
        b.edge("u2", f"y{j}")
    b.edge("v1", f"x{k - 1}")
    b.edge("v1", f"y{k - 1}")
    b.edge("v2", "v1")
    b.edge("v2", "v3")
    for i in range(2, k - 1):
        b.edge("v2", f"x{i}")
    g = b.build()
    return Gadget("rs-blocking", g, {"u3": g.resolve("u3")}, {"k": k})


# ---------------------------------------------------------------------------
# build dispatch
# ---------------------------------------------------------------------------


def build(gadget_id: str, **params) -> Gadget:
    """Construct a gadget by id; raises ParamOutOfRange for bad parameters."""
    if gadget_id not in GADGET_IDS:
        raise ParamOutOfRange(f"unknown gadget id {gadget_id!r}")
    try:
        builder = {
            "star-component": lambda: _star_component(params["k"]),
            "star-chain": lambda: _star_chain(params["k"], params["t"]),
            "petersen-minus": _petersen_minus,
            "c2-vertex": _c2_vertex,
            "c2-chain": lambda: _c2_chain(params["n"]),
            "grotzsch-minus": _grotzsch_minus,
            "two-in-two-out": _two_in_two_out,
            "not-equal": _not_equal,
            "c3-tree": lambda: _c3_tree(params["T"], params.get("shape", "pyramid")),
            "star-filler": lambda: _star_filler(params["k"], params["d"]),
            "rs-component": _rs_component,
            "rs-forcing-H": _rs_forcing_h,
            "rs-forcing": _rs_forcing,
            "rs-blocking": lambda: _rs_blocking(params["k"]),
            "rs-filler": lambda: _rs_filler(params["k"], params["d"]),
        }[gadget_id]
    except KeyError:
        raise ParamOutOfRange(f"unknown gadget id {gadget_id!r}") from None
    try:
        return builder()
    except KeyError as exc:
        raise ParamOutOfRange(f"{gadget_id} is missing parameter {exc}") from None


# ---------------------------------------------------------------------------
# recorded reference colouring schemes
# ---------------------------------------------------------------------------


def _assign(g: Graph, k: int, pairs) -> Colouring:
    cols = [-1] * g.n
    for name, colour in pairs:
        v = g.resolve(name)
        if cols[v] >= 0 and cols[v] != colour:
            raise AssertionError(f"conflicting colours for {name}")
        cols[v] = colour
    if any(c < 0 for c in cols):
        missing = [v for v, c in enumerate(cols) if c < 0]
        raise AssertionError(f"scheme leaves vertices uncoloured: {missing}")
    return Colouring(k, tuple(cols))


def _star_component_pairs(k: int, copy: int | None = None, flip: bool = False):
    def nm(base, i):
        return f"{base}{i}" if copy is None else f"{base}_{{{i},{copy}}}"

    hi, lo = (0, 1) if flip else (1, 0)
    for i in range(1, k - 3):
        yield nm("w", i), hi
        yield nm("u", i), lo
    yield nm("w", k - 3), lo
    yield nm("w", k - 2), hi
    for j in range(1, k - 1):
        yield nm("x", j), j + 1
    yield nm("y", 1), 0
    for i in range(2, k - 3):
        yield nm("y", i), 1


_TWO_IN_TWO_OUT_BASE = {
    "u1": 4, "u2": 2, "u3": 0, "u4": 1, "u5": 3,
    "x1": 1, "x2": 3, "x3": 4, "x4": 2, "x5": 0,
    "v1": 0, "v2": 1, "v3": 2, "v4": 3, "v5": 4,
    "w1": 2, "w4": 0, "w5": 1,   # w2 = x2, w3 = x3 are shared
    "y1": 4, "y2": 4, "y1*": 3, "y2*": 3,
    "z1": 3, "z2": 3, "z1*": 4, "z2*": 4,
}

_PETERSEN_BASE = {"v1": 2, "v2": 0, "v3": 0, "v4": 3, "v5": 1,
                  "w1": 1, "w2": 2, "w3": 3, "w4": 1}


def _two_in_two_out_pairs(sfx: str, perm):
    for name, col in _TWO_IN_TWO_OUT_BASE.items():
        yield f"{name}{sfx}", perm[col]


def scheme(gadget_id: str, variant: str | None = None, **params) -> Colouring:
    """A recorded reference colouring for the gadget built with the same
    parameters.  The variant selects the figure and its colour-swap
    parameters (terminal colour ``c``, chosen colour ``j``, ...)."""
    gadget = build(gadget_id, **{p: v for p, v in params.items()
                                 if p in ("k", "t", "d", "n", "T", "shape")})
    g = gadget.graph

    if gadget_id == "star-component":
        k = params["k"]
        return _assign(g, k, _star_component_pairs(k))

    if gadget_id == "star-chain":
        k, t = params["k"], params["t"]
        pairs = []
        for c in range(1, t + 1):
            pairs.extend(_star_component_pairs(k, copy=c, flip=(c % 2 == 0)))
        return _assign(g, k, pairs)

    if gadget_id == "petersen-minus":
        c = params.get("c", 1)
        perm = _perm_map(4, {1: c}) if c != 1 else list(range(4))
        return _assign(g, 4, ((n, perm[col]) for n, col in _PETERSEN_BASE.items()))

    if gadget_id in ("c2-vertex", "c2-chain"):
        c = params.get("c", 1)
        copies = 4 if gadget_id == "c2-vertex" else params["n"]
        perm = _perm_map(4, {1: c})
        pairs = []
        for j in range(1, copies + 1):
            pairs.extend((f"{n}@{j}", perm[col]) for n, col in _PETERSEN_BASE.items())
        return _assign(g, 4, pairs)

    if gadget_id == "grotzsch-minus":
        shift = 2 if variant != "b" else 3
        pairs = [(f"v{i}", i - 1) for i in range(1, 6)]
        pairs += [(f"w{i}", (i - 1 + shift) % 5) for i in range(1, 6)]
        return _assign(g, 5, pairs)

    if gadget_id == "two-in-two-out":
        c1, c2 = params.get("c1", 4), params.get("c2", 3)
        perm = _perm_map(5, {4: c1, 3: c2})
        return _assign(g, 5, _two_in_two_out_pairs("", perm))

    if gadget_id == "not-equal":
        cy, cz = params.get("cy", 3), params.get("cz", 4)
        perm = _perm_map(5, {3: cy, 4: cz})
        return _assign(g, 5, _two_in_two_out_pairs("", perm))

    if gadget_id == "c3-tree":
        c = params.get("c", 4)
        perm = _perm_map(5, {4: c})
        pairs = []
        seen = set()
        for name, v in g.aliases.items():
            base, _, _ = name.partition("@")
            if base in _TWO_IN_TWO_OUT_BASE and v not in seen:
                seen.add(v)
                pairs.append((v, perm[_TWO_IN_TWO_OUT_BASE[base]]))
        return _assign(g, 5, pairs)

    if gadget_id == "star-filler":
        k, d = params["k"], params["d"]
        vc, c = params.get("v_colour", 0), params.get("c", k - 1)
        if vc == c:
            raise ParamOutOfRange("star-filler scheme needs v_colour != c")
        ys = [col for col in range(k) if col not in (vc, c)][: d - 1]
        pairs = [("v", vc), ("v'", vc), ("h", c), ("h'", c)]
        pairs += [(f"x{i}", vc) for i in range(1, d)]
        pairs += [(f"y{j}", ys[j - 1]) for j in range(1, d)]
        return _assign(g, k, pairs)

    if gadget_id == "rs-component":
        outer = (3, 1, 2, 3, 0)
        inner = (0, 1, 2)
        pairs = [(f"u{i + 1}", col) for i, col in enumerate(outer)]
        pairs += [(f"u{i + 6}", col) for i, col in enumerate(inner)]
        return _assign(g, 4, pairs)

    if gadget_id == "rs-blocking":
        k = params["k"]
        c = params.get("c", 1)
        if not (0 < c < k - 1):
            raise ParamOutOfRange("rs-blocking scheme needs 0 < c < k-1")
        mids = [col for col in range(1, k - 1) if col != c]
        pairs = []
        for side in ("x", "y"):
            pairs.append((f"{side}1", k - 1))
            pairs.append((f"{side}{k - 1}", c))
            pairs += [(f"{side}{i}", mids[i - 2]) for i in range(2, k - 1)]
        pairs += [("u1", 0), ("v1", 0), ("u2", k - 1), ("v2", k - 1),
                  ("u3", c), ("v3", c)]
        return _assign(g, k, pairs)

    if gadget_id == "rs-filler":
        return _rs_filler_scheme(g, params)

    raise NoSchemeRecorded(
        f"no reference colouring is recorded for {gadget_id!r}"
        + (" (derive one with the solver; see derived_scheme)" if "forcing" in gadget_id else "")
    )


def _rs_filler_scheme(g: Graph, params) -> Colouring:
    k, d = params["k"], params["d"]
    vc = params.get("v_colour", 0)
    s = d - 1
    pairs = [("v", vc), ("v'", vc)]

    def block(t, hub, xs, ys, end):
        pairs.append((f"h@{t}", hub))
        pairs.append((f"h'@{t}", end))
        for i in range(1, s + 1):
            pairs.append((f"x{i}@{t}", xs if isinstance(xs, int) else xs[i - 1]))
            pairs.append((f"y{i}@{t}", ys if isinstance(ys, int) else ys[i - 1]))

    top = k - 1
    if vc == 0:
        block(1, top, [c for c in range(1, k - 1)][:s], top, 0)
        block(2, 1, top, [c for c in range(0, k - 1) if c != 1][:s], 1)
        block(3, top, [c for c in range(0, k - 1) if c != 1][:s], top, 1)
    elif vc < k - 1:
        pool = [c for c in range(0, k - 1) if c != vc]
        block(1, top, pool[:s], top, vc)
        block(2, 0, top, [c for c in range(1, k - 1)][:s], 0)
        block(3, vc, top, pool[:s], top)
    else:
        j = params.get("j", 0)
        if not (0 <= j < k - 1):
            raise ParamOutOfRange("rs-filler scheme 3 needs a colour j < k-1")
        pool = [c for c in range(0, k - 1) if c != j]
        block(1, j, top, pool[:s], top)
        block(2, j, top, pool[:s], top)
        block(3, j, top, pool[:s], j)
    return _assign(g, k, pairs)


def derived_scheme(gadget_id: str) -> Colouring:
    """Solver-derived colouring shipped as a data artifact (currently only
    the full colour-forcing gadget, whose reference figure is empty in the
    source)."""
    if gadget_id != "rs-forcing":
        raise NoSchemeRecorded(f"no derived scheme stored for {gadget_id!r}")
    payload = resources.files("colour_lab").joinpath("data/rs_forcing_scheme.json")
    obj = json.loads(payload.read_text())
    return Colouring.from_json(obj["colouring"])


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

_CATALOGUE = {
    "star-component": {
        "params": "k >= 7",
        "terminals": [],
        "counts": "4k-12 vertices, k^2-2k-1 edges",
    },
    "star-chain": {
        "params": "k >= 7, t >= 1",
        "terminals": ["u_{i,l} for 2 <= i <= k-5, 1 <= l <= t"],
        "counts": "(4k-14)t+2 vertices, (k^2-2k-2)t+1 edges, (k-6)t terminals",
    },
    "petersen-minus": {
        "params": "none",
        "terminals": ["w1", "w4", "v5"],
        "counts": "9 vertices, 12 edges, girth 5",
    },
    "c2-vertex": {
        "params": "none",
        "terminals": ["v0", "v1", "v2", "v3", "v4"],
        "counts": "33 vertices (4 components of 9, three w4=w1 identifications)",
    },
    "c2-chain": {
        "params": "n >= 1",
        "terminals": ["v*1 .. v*n"],
        "counts": "8n+1 vertices, 12n edges",
    },
    "grotzsch-minus": {
        "params": "none",
        "terminals": ["w1 .. w5"],
        "counts": "10 vertices, 15 edges",
    },
    "two-in-two-out": {
        "params": "none",
        "terminals": ["y1*", "y2*", "z1*", "z2*"],
        "counts": "26 vertices, 46 edges, max degree 4, triangle-free",
    },
    "not-equal": {
        "params": "none",
        "terminals": ["y", "z"],
        "counts": "24 vertices, 46 edges, terminals of degree 2",
    },
    "c3-tree": {
        "params": "T >= 1, shape in {pyramid, chain}",
        "terminals": ["t0, t1, ... (leaf out-vertices)"],
        "counts": "pyramid: T(T+1)/2 boxes of 26, 2 merges per link, 2T terminals",
    },
    "star-filler": {
        "params": "k >= 3, 1 <= d <= k-1",
        "terminals": ["v", "v'"],
        "counts": "2d+2 vertices, (d-1)^2+2(d-1)+2 edges",
    },
    "rs-component": {
        "params": "none",
        "terminals": ["u3", "u5"],
        "counts": "8 vertices, 10 edges",
    },
    "rs-forcing-H": {
        "params": "none",
        "terminals": ["u5''"],
        "counts": "25 vertices, 34 edges",
    },
    "rs-forcing": {
        "params": "none",
        "terminals": ["u5''"],
        "counts": "85 vertices, 127 edges, girth 5, all non-terminal degrees 3",
    },
    "rs-blocking": {
        "params": "k >= 5",
        "terminals": ["u3"],
        "counts": "2k+4 vertices (2k+3 non-terminal), (k-1)(k-2)+2(k-3)+8 edges",
    },
    "rs-filler": {
        "params": "k >= 4, 1 <= d <= k-1",
        "terminals": ["v", "v'"],
        "counts": "6d non-terminal vertices, 3(d^2-1)+4 edges",
        "edge_count_note": (
            "the stated formula 3d(d-1)+4 undercounts by 3d-3; the decoded"
            " figure yields 3(d^2-1)+4 and that is what build() produces"
        ),
    },
}


def catalogue() -> dict:
    """Documentation-grade listing of gadget ids, parameter ranges and
    terminal names."""
    return {gid: dict(_CATALOGUE[gid]) for gid in GADGET_IDS}
