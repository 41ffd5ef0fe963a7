"""The reductions between colouring problems as executable transformations
with vertex-role traces, witness translation in both directions, and an
exhaustive 1-in-3-SAT oracle.

Construction ids:

* ``c1-edge-to-star``    (k-2)-edge colouring -> k-star, max degree k-1
* ``c2-3col-to-4star``   3-colouring (4-regular) -> 4-star, girth 5
* ``c3-3col-to-5star``   3-colouring (4-regular) -> 5-star, triangle-free
* ``c45-star-regularize``  k-star on max degree d -> k-star on d-regular
* ``c6-1in3-to-3rs``     positive 1-in-3-SAT -> 3-rs, girth 6
* ``c7-1in3-to-4rs``     positive 1-in-3-SAT -> 4-rs, 3-regular girth 5
* ``c8-rs-lift``         (k-2)-rs -> k-rs, triangle-free max degree k-1
* ``c910-rs-regularize``   k-rs on max degree d -> k-rs on d-regular

Traces are self-contained: ``params`` carries the input instance, so the
output graph can be rebuilt deterministically and witnesses can be
translated from the trace alone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gadgets
from .colouring import Colouring, validate
from .errors import (
    CapExceeded,
    InvalidOutputColouring,
    NoForwardScheme,
    ParamOutOfRange,
    PreconditionViolated,
)
from .graph import Graph, GraphBuilder, disjoint_union, identify_vertices, structure_report, subdivide_all_edges

__all__ = [
    "CONSTRUCTION_IDS",
    "Formula1in3",
    "Role",
    "ReductionTrace",
    "build_reduction",
    "rebuild",
    "witness_forward",
    "witness_backward",
    "sat_1in3",
    "find_satisfiable_formula",
]

CONSTRUCTION_IDS = (
    "c1-edge-to-star",
    "c2-3col-to-4star",
    "c3-3col-to-5star",
    "c45-star-regularize",
    "c6-1in3-to-3rs",
    "c7-1in3-to-4rs",
    "c8-rs-lift",
    "c910-rs-regularize",
)


@dataclass(frozen=True)
class Formula1in3:
    """Positive boolean formula: clauses are 3-subsets of the variables."""

    variables: tuple[str, ...]
    clauses: tuple[tuple[str, str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "clauses", tuple(tuple(c) for c in self.clauses))
        vs = set(self.variables)
        if len(vs) != len(self.variables):
            raise ValueError("duplicate variable names")
        for cl in self.clauses:
            if len(cl) != 3 or len(set(cl)) != 3:
                raise ValueError(f"clause {cl} must have exactly 3 distinct variables")
            if not set(cl) <= vs:
                raise ValueError(f"clause {cl} uses unknown variables")

    def to_json(self) -> dict:
        return {"vars": list(self.variables), "clauses": [list(c) for c in self.clauses]}

    @staticmethod
    def from_json(obj: dict) -> "Formula1in3":
        return Formula1in3(tuple(obj["vars"]), tuple(tuple(c) for c in obj["clauses"]))

    def incidence_graph(self) -> Graph:
        """The variable/clause incidence graph G_B."""
        b = GraphBuilder()
        for v in self.variables:
            b.vertex(f"x:{v}")
        for j, cl in enumerate(self.clauses):
            b.vertex(f"c{j}")
            for v in cl:
                b.edge(f"c{j}", f"x:{v}")
        return b.build()


@dataclass(frozen=True)
class Role:
    tag: str  # input-vertex | input-edge | terminal | gadget-internal
    ref: dict

    def to_json(self) -> dict:
        return {"tag": self.tag, "ref": self.ref}


@dataclass(frozen=True)
class ReductionTrace:
    construction: str
    params: dict  # includes the serialized input instance under "input"
    roles: dict[int, Role]

    def to_json(self) -> dict:
        return {
            "construction": self.construction,
            "params": {p: v for p, v in self.params.items() if p != "input"},
            "input": self.params["input"],
            "roles": {str(v): r.to_json() for v, r in sorted(self.roles.items())},
        }

    @staticmethod
    def from_json(obj: dict) -> "ReductionTrace":
        params = dict(obj["params"])
        params["input"] = obj["input"]
        roles = {int(v): Role(r["tag"], r["ref"]) for v, r in obj["roles"].items()}
        return ReductionTrace(obj["construction"], params, roles)


def _serialize_input(obj) -> dict:
    if isinstance(obj, Graph):
        return {"type": "graph", "n": obj.n, "edges": [list(e) for e in obj.edges()]}
    if isinstance(obj, Formula1in3):
        return {"type": "formula", **obj.to_json()}
    raise TypeError(f"cannot serialize input of type {type(obj).__name__}")


def _deserialize_input(obj: dict):
    if obj["type"] == "graph":
        return Graph.from_edges(obj["n"], [tuple(e) for e in obj["edges"]])
    return Formula1in3(tuple(obj["vars"]), tuple(tuple(c) for c in obj["clauses"]))


def _prefixed(g: Graph, prefix: str) -> Graph:
    return Graph.from_edges(g.n, g.edges(), {prefix + nm: v for nm, v in g.aliases.items()})


def _id_names(g: Graph) -> dict[int, str]:
    names: dict[int, str] = {}
    for nm in sorted(g.aliases):
        names.setdefault(g.aliases[nm], nm)
    return names


def _require(ok: bool, message: str, check: bool) -> None:
    if check and not ok:
        raise PreconditionViolated(message)


# ---------------------------------------------------------------------------
# Construction 1: (k-2)-edge colouring -> k-star colouring, max degree k-1
# ---------------------------------------------------------------------------


def _c1_terminal_names(k: int, q: int) -> list[str]:
    return [f"u_{{{i},{c}}}" for c in range(1, q + 1) for i in range(2, k - 4)]


def _assemble_c1(g_in: Graph, k: int, check: bool):
    if k < 7:
        raise ParamOutOfRange("construction 1 requires k >= 7")
    rep = structure_report(g_in)
    _require(rep.is_regular and rep.degree == k - 2,
             f"input must be (k-2)-regular (= {k - 2}-regular)", check)
    n, m = g_in.n, g_in.m
    q = math.ceil(3 * n / (k - 6))
    chain = gadgets.build("star-chain", k=k, t=q)
    cg = chain.graph
    term_names = _c1_terminal_names(k, q)
    # three consecutive unused terminals per input vertex, in index order
    slots = {i: term_names[3 * i : 3 * i + 3] for i in range(n)}
    edges = list(cg.edges())
    aliases = dict(cg.aliases)
    ein = g_in.edges()
    for l, (vi, vj) in enumerate(ein):
        e_id = cg.n + l
        aliases[f"e{l}"] = e_id
        for nm in slots[vi] + slots[vj]:
            edges.append((cg.resolve(nm), e_id))
    g_out = Graph.from_edges(cg.n + m, edges, aliases)

    roles: dict[int, Role] = {}
    names = _id_names(cg)
    for v in range(cg.n):
        roles[v] = Role("gadget-internal", {"gadget": "star-chain", "name": names.get(v, "")})
    for i in range(n):
        for s, nm in enumerate(slots[i]):
            roles[cg.resolve(nm)] = Role("terminal", {"i": i, "slot": s + 1})
    for l in range(m):
        roles[cg.n + l] = Role("input-edge", {"l": l})
    return g_out, roles, {"k": k, "q": q}


def _c1_forward(g_out, g_in, params, witness):
    k, q = params["k"], params["q"]
    m = g_in.m
    if len(witness) != m or any(not (2 <= c < k) for c in witness):
        raise PreconditionViolated("c1 wants one colour in 2..k-1 per input edge")
    for v in range(g_in.n):
        incident = [l for l, e in enumerate(g_in.edges()) if v in e]
        if len({witness[l] for l in incident}) != len(incident):
            raise PreconditionViolated("input is not a proper edge colouring")
    chain_scheme = gadgets.scheme("star-chain", k=k, t=q)
    cols = list(chain_scheme.colours)
    cols.extend(witness)
    return Colouring(k, tuple(cols))


def _c1_backward(g_out, g_in, params, colouring):
    k = params["k"]
    chain_n = g_out.n - g_in.m  # e vertices sit after the chain
    term_cols = set()
    for nm in _c1_terminal_names(k, params["q"]):
        term_cols.add(colouring[g_out.resolve(nm)])
    if len(term_cols) > 2:
        raise InvalidOutputColouring("chain terminals use more than two colours")
    palette = sorted(set(range(k)) - term_cols)
    rank = {c: 2 + i for i, c in enumerate(palette)}
    out = []
    for l in range(g_in.m):
        c = colouring[chain_n + l]
        if c in term_cols:
            raise InvalidOutputColouring("edge vertex carries a terminal colour")
        out.append(rank[c])
    return out


# ---------------------------------------------------------------------------
# Construction 2: 3-colouring of a 4-regular graph -> 4-star colouring
# ---------------------------------------------------------------------------


def _ports(g_in: Graph, i: int) -> list[int]:
    return sorted(g_in.neighbours(i))


def _assemble_c2(g_in: Graph, check: bool):
    rep = structure_report(g_in)
    _require(rep.is_regular and rep.degree == 4, "input must be 4-regular", check)
    n = g_in.n
    parts = [_prefixed(gadgets.build("c2-vertex").graph, f"V{i}:") for i in range(n)]
    parts.append(_prefixed(gadgets.build("c2-chain", n=n).graph, "C:"))
    g = disjoint_union(parts)
    edges = list(g.edges())
    for i, j in g_in.edges():
        pi = 1 + _ports(g_in, i).index(j)
        pj = 1 + _ports(g_in, j).index(i)
        edges.append((g.resolve(f"V{i}:v{pi}"), g.resolve(f"V{j}:v{pj}")))
    for i in range(n):
        edges.append((g.resolve(f"V{i}:v0"), g.resolve(f"C:v*{i + 1}")))
    g_out = Graph.from_edges(g.n, edges, g.aliases)

    roles: dict[int, Role] = {}
    names = _id_names(g_out)
    for v in range(g_out.n):
        roles[v] = Role("gadget-internal", {"gadget": "petersen-minus", "name": names.get(v, "")})
    for i in range(n):
        for j in range(5):
            roles[g_out.resolve(f"V{i}:v{j}")] = Role("terminal", {"i": i, "j": j})
    for i in range(n):
        roles[g_out.resolve(f"C:v*{i + 1}")] = Role("terminal", {"chain-slot": i})
    return g_out, roles, {}


def _c2_forward(g_out, g_in, params, witness: Colouring):
    if witness.k != 4 or not witness.used() <= {1, 2, 3}:
        raise PreconditionViolated("c2 wants a proper colouring with colours in {1,2,3}")
    if validate(g_in, witness, "proper") is not None:
        raise PreconditionViolated("input witness is not a proper colouring")
    n = g_in.n
    cols = [-1] * g_out.n
    for i in range(n):
        part = gadgets.scheme("c2-vertex", c=witness[i])
        src = gadgets.build("c2-vertex").graph
        for nm, v in src.aliases.items():
            cols[g_out.resolve(f"V{i}:{nm}")] = part[v]
    chain_scheme = gadgets.scheme("c2-chain", n=n, c=0)
    src = gadgets.build("c2-chain", n=n).graph
    for nm, v in src.aliases.items():
        cols[g_out.resolve(f"C:{nm}")] = chain_scheme[v]
    return Colouring(4, tuple(cols))


def _c2_backward(g_out, g_in, params, colouring):
    chain_cols = {colouring[g_out.resolve(f"C:v*{i + 1}")] for i in range(g_in.n)}
    if len(chain_cols) != 1:
        raise InvalidOutputColouring("chain terminals not monochromatic")
    c0 = chain_cols.pop()
    swap = {c0: 0, 0: c0}
    out = []
    for i in range(g_in.n):
        c = colouring[g_out.resolve(f"V{i}:v0")]
        out.append(swap.get(c, c))
    if 0 in out:
        raise InvalidOutputColouring("an input vertex received the chain colour")
    return Colouring(4, tuple(out))


# ---------------------------------------------------------------------------
# Construction 3: 3-colouring of a 4-regular graph -> 5-star colouring
# ---------------------------------------------------------------------------


def _assemble_c3(g_in: Graph, check: bool):
    rep = structure_report(g_in)
    _require(rep.is_regular and rep.degree == 4, "input must be 4-regular", check)
    n, m = g_in.n, g_in.m
    t_chain = (n + 2) // 2  # ceil((n+1)/2) levels; 2*t_chain >= n+1 terminals
    vgad = gadgets.build("c3-tree", T=3).graph
    cgad = gadgets.build("c3-tree", T=t_chain).graph
    negad = gadgets.build("not-equal").graph

    # not-equal gadgets: one per input edge, two per input vertex (chain
    # links), one between the two chains
    ne_total = m + 2 * n + 1
    parts = [_prefixed(vgad, f"V{i}:") for i in range(n)]
    parts += [_prefixed(cgad, "C1:"), _prefixed(cgad, "C2:")]
    parts += [_prefixed(negad, f"E{e}:") for e in range(ne_total)]
    g = disjoint_union(parts)

    links: list[tuple[str, str, str]] = []
    for l, (i, j) in enumerate(g_in.edges()):
        pi = _ports(g_in, i).index(j) + 1  # ports v_{i,1..4}
        pj = _ports(g_in, j).index(i) + 1
        links.append((f"E{l}:", f"V{i}:t{pi}", f"V{j}:t{pj}"))
    for i in range(n):
        links.append((f"E{m + 2 * i}:", f"V{i}:t0", f"C1:t{i}"))
        links.append((f"E{m + 2 * i + 1}:", f"V{i}:t5", f"C2:t{i}"))
    links.append((f"E{m + 2 * n}:", f"C1:t{2 * t_chain - 2}", f"C2:t{2 * t_chain - 2}"))
    for pref, a, b in links:
        g = identify_vertices(g, f"{pref}y", a)
        g = identify_vertices(g, f"{pref}z", b)
    g_out = g

    roles: dict[int, Role] = {}
    names = _id_names(g_out)
    for v in range(g_out.n):
        roles[v] = Role("gadget-internal", {"gadget": "two-in-two-out", "name": names.get(v, "")})
    for i in range(n):
        for j in range(6):
            roles[g_out.resolve(f"V{i}:t{j}")] = Role("terminal", {"i": i, "j": j})
    for t in (1, 2):
        for s in range(2 * t_chain):
            roles[g_out.resolve(f"C{t}:t{s}")] = Role("terminal", {"chain": t, "slot": s})
    return g_out, roles, {"t_chain": t_chain, "links": [list(x) for x in links]}


def _c3_forward(g_out, g_in, params, witness: Colouring):
    if witness.k != 5 or not witness.used() <= {2, 3, 4}:
        raise PreconditionViolated("c3 wants a proper colouring with colours in {2,3,4}")
    if validate(g_in, witness, "proper") is not None:
        raise PreconditionViolated("input witness is not a proper colouring")
    n = g_in.n
    t_chain = params["t_chain"]
    cols = [-1] * g_out.n

    def paint(prefix, src_graph, part_scheme):
        for nm, v in src_graph.aliases.items():
            w = g_out.resolve(prefix + nm)
            c = part_scheme[v]
            if cols[w] >= 0 and cols[w] != c:
                raise AssertionError(f"scheme clash at {prefix}{nm}")
            cols[w] = c

    vsrc = gadgets.build("c3-tree", T=3).graph
    for i in range(n):
        paint(f"V{i}:", vsrc, gadgets.scheme("c3-tree", T=3, c=witness[i]))
    csrc = gadgets.build("c3-tree", T=t_chain).graph
    paint("C1:", csrc, gadgets.scheme("c3-tree", T=t_chain, c=0))
    paint("C2:", csrc, gadgets.scheme("c3-tree", T=t_chain, c=1))
    nesrc = gadgets.build("not-equal").graph
    for pref, a, b in params["links"]:
        cy = cols[g_out.resolve(a)]
        cz = cols[g_out.resolve(b)]
        paint(pref, nesrc, gadgets.scheme("not-equal", cy=cy, cz=cz))
    return Colouring(5, tuple(cols))


def _c3_backward(g_out, g_in, params, colouring):
    s1 = colouring[g_out.resolve("C1:t0")]
    s2 = colouring[g_out.resolve("C2:t0")]
    if s1 == s2:
        raise InvalidOutputColouring("the two chains share a colour")
    perm = gadgets._perm_map(5, {s1: 0, s2: 1})
    out = []
    for i in range(g_in.n):
        out.append(perm[colouring[g_out.resolve(f"V{i}:t0")]])
    if not set(out) <= {2, 3, 4}:
        raise InvalidOutputColouring("vertex terminals collide with chain colours")
    return Colouring(5, tuple(out))


# ---------------------------------------------------------------------------
# Constructions 4-5 and 9-10: regularisation with filler gadgets
# ---------------------------------------------------------------------------


def _assemble_filler(g_in: Graph, k: int, d: int, gid: str, check: bool):
    kind_min = 3 if gid == "star-filler" else 4
    if k < kind_min or not (1 <= d <= k - 1):
        raise ParamOutOfRange(f"requires k >= {kind_min} and 1 <= d <= k-1")
    rep = structure_report(g_in)
    _require(rep.max_degree <= d, f"input must have maximum degree <= {d}", check)
    n = g_in.n
    b = GraphBuilder()
    for i in range(n):
        b.vertex(f"A:{i}")
    for i in range(n):
        b.vertex(f"B:{i}")
    for u, v in g_in.edges():
        b.edge(f"A:{u}", f"A:{v}")
        b.edge(f"B:{u}", f"B:{v}")
    g = b.build()
    fillers = []
    fg = gadgets.build(gid, k=k, d=d).graph
    for i in range(n):
        for t in range(d - g_in.degree(i)):
            fillers.append((i, t))
    parts = [g] + [_prefixed(fg, f"F{i}.{t}:") for i, t in fillers]
    g = disjoint_union(parts)
    for i, t in fillers:
        g = identify_vertices(g, f"F{i}.{t}:v", f"A:{i}")
        g = identify_vertices(g, f"F{i}.{t}:v'", f"B:{i}")
    g_out = g

    roles: dict[int, Role] = {}
    names = _id_names(g_out)
    for v in range(g_out.n):
        roles[v] = Role("gadget-internal", {"gadget": gid, "name": names.get(v, "")})
    for i in range(n):
        roles[g_out.resolve(f"A:{i}")] = Role("input-vertex", {"i": i, "copy": 1})
        roles[g_out.resolve(f"B:{i}")] = Role("input-vertex", {"i": i, "copy": 2})
    return g_out, roles, {"k": k, "d": d, "fillers": [list(f) for f in fillers]}


def _filler_forward(g_out, g_in, params, witness: Colouring, gid: str, kind: str):
    k, d = params["k"], params["d"]
    if witness.k != k:
        raise PreconditionViolated(f"witness must use palette size {k}")
    if validate(g_in, witness, kind) is not None:
        raise PreconditionViolated(f"input witness is not a valid {kind} colouring")
    cols = [-1] * g_out.n
    for i in range(g_in.n):
        cols[g_out.resolve(f"A:{i}")] = witness[i]
        cols[g_out.resolve(f"B:{i}")] = witness[i]
    fsrc = gadgets.build(gid, k=k, d=d).graph
    closed: dict[int, set[int]] = {
        i: {witness[i]} | {witness[j] for j in g_in.neighbours(i)} for i in range(g_in.n)
    }
    for i, t in params["fillers"]:
        if gid == "star-filler" or witness[i] == k - 1:
            # smallest colour not yet used in the closed neighbourhood
            c = min(set(range(k)) - closed[i])
            closed[i].add(c)
            extra = {"c": c} if gid == "star-filler" else {"j": c}
        else:
            extra = {}
        part = gadgets.scheme(gid, k=k, d=d, v_colour=witness[i], **extra)
        for nm, v in fsrc.aliases.items():
            w = g_out.resolve(f"F{i}.{t}:{nm}")
            if cols[w] >= 0 and cols[w] != part[v]:
                raise AssertionError(f"filler scheme clash at F{i}.{t}:{nm}")
            cols[w] = part[v]
    return Colouring(k, tuple(cols))


def _filler_backward(g_out, g_in, params, colouring):
    out = [colouring[g_out.resolve(f"A:{i}")] for i in range(g_in.n)]
    return Colouring(params["k"], tuple(out))


# ---------------------------------------------------------------------------
# Construction 6: positive 1-in-3-SAT -> 3-rs colouring
# ---------------------------------------------------------------------------


def _check_formula(B: Formula1in3, check: bool) -> None:
    counts = {v: 0 for v in B.variables}
    for cl in B.clauses:
        for v in cl:
            counts[v] += 1
    _require(all(c == 3 for c in counts.values()),
             "the incidence graph must be 3-regular (every variable in exactly 3 clauses)",
             check)


def _assemble_c6(B: Formula1in3, check: bool):
    _check_formula(B, check)
    b = GraphBuilder()
    for v in B.variables:
        b.vertex(f"x:{v}")
    for j, cl in enumerate(B.clauses):
        for l in range(3):
            b.vertex(f"c{j}.{l}")
        for l in range(3):
            b.edge(f"c{j}.{l}", f"c{j}.{(l + 1) % 3}")
        for l, v in enumerate(sorted(cl)):
            b.edge(f"x:{v}", f"c{j}.{l}")
    g = b.build()
    base_n = g.n
    g_out = subdivide_all_edges(g)

    roles: dict[int, Role] = {}
    for idx, v in enumerate(B.variables):
        roles[g_out.resolve(f"x:{v}")] = Role("input-vertex", {"var": v})
    for j in range(len(B.clauses)):
        for l in range(3):
            roles[g_out.resolve(f"c{j}.{l}")] = Role(
                "gadget-internal", {"gadget": "clause-triangle", "clause": j, "corner": l}
            )
    for s, (u, v) in enumerate(g.edges()):
        roles[base_n + s] = Role("gadget-internal", {"gadget": "subdivision", "edge": [u, v]})
    return g_out, roles, {"base_n": base_n}


# ---------------------------------------------------------------------------
# Construction 7: positive 1-in-3-SAT -> 4-rs colouring, 3-regular, girth 5
# ---------------------------------------------------------------------------


def _assemble_c7(B: Formula1in3, check: bool):
    g6, roles6, meta6 = _assemble_c6(B, check)
    deg2 = [v for v in range(g6.n) if g6.degree(v) == 2]
    fg = gadgets.build("rs-forcing")
    parts = [g6] + [_prefixed(fg.graph, f"F{v}:") for v in deg2]
    g = disjoint_union(parts)
    edges = list(g.edges())
    for v in deg2:
        edges.append((g.resolve(f"F{v}:u5''"), v))
    g_out = Graph.from_edges(g.n, edges, g.aliases)

    roles = dict(roles6)
    names = _id_names(g_out)
    for w in range(g6.n, g_out.n):
        roles[w] = Role("gadget-internal", {"gadget": "rs-forcing", "name": names.get(w, "")})
    return g_out, roles, meta6


# ---------------------------------------------------------------------------
# Construction 8: (k-2)-rs colouring -> k-rs colouring, max degree k-1
# ---------------------------------------------------------------------------


def _assemble_c8(g_in: Graph, k: int, check: bool):
    if k < 5:
        raise ParamOutOfRange("construction 8 requires k >= 5")
    rep = structure_report(g_in)
    _require(rep.is_triangle_free, "input must be triangle-free", check)
    _require(rep.max_degree <= k - 2, f"input must have maximum degree <= {k - 2}", check)
    n = g_in.n
    b = GraphBuilder()
    for i in range(n):
        b.vertex(f"G:{i}")
    for u, v in g_in.edges():
        b.edge(f"G:{u}", f"G:{v}")
    base = b.build()
    blocks = []
    bg = gadgets.build("rs-blocking", k=k).graph
    for w in range(n):
        for t in range(k - 1 - g_in.degree(w)):
            blocks.append((w, t))
    g = disjoint_union([base] + [_prefixed(bg, f"B{w}.{t}:") for w, t in blocks])
    for w, t in blocks:
        g = identify_vertices(g, f"B{w}.{t}:u3", f"G:{w}")
    g_out = g

    roles: dict[int, Role] = {}
    names = _id_names(g_out)
    for v in range(g_out.n):
        roles[v] = Role("gadget-internal", {"gadget": "rs-blocking", "name": names.get(v, "")})
    for i in range(n):
        roles[g_out.resolve(f"G:{i}")] = Role("input-vertex", {"i": i})
    return g_out, roles, {"k": k, "blocks": [list(x) for x in blocks]}


def _c8_forward(g_out, g_in, params, witness: Colouring):
    k = params["k"]
    if witness.k != k or not witness.used() <= set(range(1, k - 1)):
        raise PreconditionViolated(f"c8 wants an rs colouring with colours in 1..{k - 2}")
    if validate(g_in, witness, "rs") is not None:
        raise PreconditionViolated("input witness is not a valid rs colouring")
    cols = [-1] * g_out.n
    for i in range(g_in.n):
        cols[g_out.resolve(f"G:{i}")] = witness[i]
    bsrc = gadgets.build("rs-blocking", k=k).graph
    for w, t in params["blocks"]:
        part = gadgets.scheme("rs-blocking", k=k, c=witness[w])
        for nm, v in bsrc.aliases.items():
            x = g_out.resolve(f"B{w}.{t}:{nm}")
            if cols[x] >= 0 and cols[x] != part[v]:
                raise AssertionError("blocking scheme clash")
            cols[x] = part[v]
    return Colouring(k, tuple(cols))


def _c8_backward(g_out, g_in, params, colouring):
    k = params["k"]
    out = [colouring[g_out.resolve(f"G:{i}")] for i in range(g_in.n)]
    if not set(out) <= set(range(1, k - 1)):
        raise InvalidOutputColouring(
            "restriction to the input graph leaves the palette 1..k-2"
        )
    return Colouring(k, tuple(out))


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def build_reduction(cid: str, input_obj, check: bool = True, **params):
    """Run a construction; returns (output graph, trace).

    Preconditions are checked strictly by default (the guarantees are only
    claimed for the stated input classes); pass check=False to override.
    """
    if cid not in CONSTRUCTION_IDS:
        raise ParamOutOfRange(f"unknown construction {cid!r}")
    if cid == "c1-edge-to-star":
        g_out, roles, meta = _assemble_c1(input_obj, params["k"], check)
    elif cid == "c2-3col-to-4star":
        g_out, roles, meta = _assemble_c2(input_obj, check)
    elif cid == "c3-3col-to-5star":
        g_out, roles, meta = _assemble_c3(input_obj, check)
    elif cid == "c45-star-regularize":
        g_out, roles, meta = _assemble_filler(input_obj, params["k"], params["d"], "star-filler", check)
    elif cid == "c6-1in3-to-3rs":
        g_out, roles, meta = _assemble_c6(input_obj, check)
    elif cid == "c7-1in3-to-4rs":
        g_out, roles, meta = _assemble_c7(input_obj, check)
    elif cid == "c8-rs-lift":
        g_out, roles, meta = _assemble_c8(input_obj, params["k"], check)
    else:
        g_out, roles, meta = _assemble_filler(input_obj, params["k"], params["d"], "rs-filler", check)
    meta["input"] = _serialize_input(input_obj)
    trace = ReductionTrace(cid, meta, roles)
    assert set(trace.roles) == set(range(g_out.n)), "roles must partition the output"
    return g_out, trace


def rebuild(trace: ReductionTrace):
    """Reconstruct the output graph of a trace deterministically."""
    input_obj = _deserialize_input(trace.params["input"])
    params = {p: v for p, v in trace.params.items()
              if p in ("k", "d") and v is not None}
    return build_reduction(trace.construction, input_obj, check=False, **params)


_TARGETS = {
    "c1-edge-to-star": ("star", None),  # k from params
    "c2-3col-to-4star": ("star", 4),
    "c3-3col-to-5star": ("star", 5),
    "c45-star-regularize": ("star", None),
    "c6-1in3-to-3rs": ("rs", 3),
    "c7-1in3-to-4rs": ("rs", 4),
    "c8-rs-lift": ("rs", None),
    "c910-rs-regularize": ("rs", None),
}


def target_problem(trace: ReductionTrace) -> tuple[str, int]:
    kind, k = _TARGETS[trace.construction]
    return kind, (k if k is not None else trace.params["k"])


def witness_forward(trace: ReductionTrace, input_witness) -> Colouring:
    """Translate a witness of the input problem into a validating colouring
    of the output graph, following the constructions' colouring schemes.
    Constructions 6 and 7 have no recorded forward scheme (the 1-in-3 =>
    rs direction is certified by running the solver instead)."""
    cid = trace.construction
    if cid in ("c6-1in3-to-3rs", "c7-1in3-to-4rs"):
        raise NoForwardScheme(
            f"{cid} has no forward colouring scheme; certify with decide() instead"
        )
    g_out, _ = rebuild(trace)
    g_in = _deserialize_input(trace.params["input"])
    params = trace.params
    if cid == "c1-edge-to-star":
        out = _c1_forward(g_out, g_in, params, input_witness)
    elif cid == "c2-3col-to-4star":
        out = _c2_forward(g_out, g_in, params, input_witness)
    elif cid == "c3-3col-to-5star":
        out = _c3_forward(g_out, g_in, params, input_witness)
    elif cid == "c45-star-regularize":
        out = _filler_forward(g_out, g_in, params, input_witness, "star-filler", "star")
    elif cid == "c8-rs-lift":
        out = _c8_forward(g_out, g_in, params, input_witness)
    else:
        out = _filler_forward(g_out, g_in, params, input_witness, "rs-filler", "rs")
    kind, k = target_problem(trace)
    bad = validate(g_out, out, kind)
    if bad is not None:
        raise AssertionError(f"forward witness fails to validate: {bad}")
    return out


def witness_backward(trace: ReductionTrace, output_colouring: Colouring):
    """Extract an input-problem witness from a valid colouring of the
    output graph (the restriction/normalisation the guarantee proofs
    perform)."""
    cid = trace.construction
    if cid in ("c6-1in3-to-3rs", "c7-1in3-to-4rs"):
        raise NoForwardScheme(f"{cid} has no witness translation")
    g_out, _ = rebuild(trace)
    g_in = _deserialize_input(trace.params["input"])
    kind, k = target_problem(trace)
    if output_colouring.k != k or validate(g_out, output_colouring, kind) is not None:
        raise InvalidOutputColouring(
            f"output colouring does not validate as {k}-{kind}"
        )
    params = trace.params
    if cid == "c1-edge-to-star":
        return _c1_backward(g_out, g_in, params, output_colouring)
    if cid == "c2-3col-to-4star":
        return _c2_backward(g_out, g_in, params, output_colouring)
    if cid == "c3-3col-to-5star":
        return _c3_backward(g_out, g_in, params, output_colouring)
    if cid == "c8-rs-lift":
        return _c8_backward(g_out, g_in, params, output_colouring)
    return _filler_backward(g_out, g_in, params, output_colouring)


# ---------------------------------------------------------------------------
# 1-in-3-SAT oracle
# ---------------------------------------------------------------------------


def sat_1in3(B: Formula1in3, cap_vars: int = 30) -> dict[str, bool] | None:
    """Exhaustive search for an assignment with exactly one true variable
    per clause; returns the first one in bitmask order, or None."""
    nv = len(B.variables)
    if nv > cap_vars:
        raise CapExceeded(f"{nv} variables exceed the exhaustive cap {cap_vars}")
    index = {v: i for i, v in enumerate(B.variables)}
    masks = np.array(
        [sum(1 << index[v] for v in cl) for cl in B.clauses], dtype=np.uint64
    )
    total = 1 << nv
    chunk = 1 << 16
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        ok = np.ones(len(codes), dtype=bool)
        for cmask in masks:
            hit = codes & cmask
            # exactly one bit set
            ok &= (hit != 0) & ((hit & (hit - np.uint64(1))) == 0)
            if not ok.any():
                break
        pos = np.flatnonzero(ok)
        if pos.size:
            code = int(codes[pos[0]])
            return {v: bool(code >> i & 1) for v, i in index.items()}
    return None


def find_satisfiable_formula(max_vars: int = 6) -> Formula1in3:
    """Small search for a 1-in-3-satisfiable formula whose incidence graph
    is 3-regular (clause lists may repeat a 3-subset; the incidence graph
    stays simple).  Used as the positive instance in decision-equivalence
    tests; planarity is not required or checked anywhere."""
    from itertools import combinations

    for nv in range(3, max_vars + 1):
        variables = tuple(f"x{i+1}" for i in range(nv))
        triples = list(combinations(variables, 3))
        # every variable must appear in exactly 3 clauses => nv clauses
        target = nv

        def grow(chosen, counts, start):
            if len(chosen) == target:
                if all(counts[v] == 3 for v in variables):
                    cand = Formula1in3(variables, tuple(chosen))
                    if sat_1in3(cand) is not None:
                        return cand
                return None
            for t in range(start, len(triples)):
                tri = triples[t]
                if any(counts[v] >= 3 for v in tri):
                    continue
                for v in tri:
                    counts[v] += 1
                chosen.append(tri)
                got = grow(chosen, counts, t)  # allow repeated 3-subsets
                if got is not None:
                    return got
                chosen.pop()
                for v in tri:
                    counts[v] -= 1
            return None

        found = grow([], {v: 0 for v in variables}, 0)
        if found is not None:
            return found
    raise AssertionError("no satisfiable 3-regular instance found in range")
