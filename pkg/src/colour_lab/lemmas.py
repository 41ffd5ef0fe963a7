"""Enumeration-based mechanical verification of the gadget lemmas.

Each lemma binds a gadget, a colouring kind, a palette size and an
assertion over colourings.  verify() enumerates *all* valid colourings of
the gadget and checks the assertion on each; "verified" is reported only
on full exhaustion.

Star lemmas are enumerated in canonical (colour-permutation-quotient) mode:
their assertions are invariant under colour permutations, so one orbit
representative is enough.  rs lemmas are enumerated plainly, because rs
validity is order-sensitive and a permutation quotient would drop valid
colourings; their reports record mode="plain".
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from . import gadgets
from .colouring import Colouring, zero_pair_scan
from .errors import BudgetExceeded
from .graph import Graph
from .solver import SolveParams, decide, enumerate_colourings

__all__ = ["LEMMA_IDS", "LemmaReport", "verify", "catalogue", "TIER_BUDGET_SECS"]

TIER_BUDGET_SECS = {"fast": 60.0, "standard": 600.0, "extended": 1800.0}


@dataclass
class LemmaReport:
    lemma: str
    params: dict
    status: str  # verified | refuted | budget-exceeded
    colourings_examined: int
    counterexample: Colouring | None
    seconds: float
    mode: str  # canonical | plain
    nodes: int = 0

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "params": self.params,
            "status": self.status,
            "colourings_examined": self.colourings_examined,
            "counterexample": None
            if self.counterexample is None
            else self.counterexample.to_json(),
            "seconds": self.seconds,
            "mode": self.mode,
            "nodes": self.nodes,
        }


@dataclass(frozen=True)
class _LemmaSpec:
    gadget: str
    kind: str
    tier: str
    assertion: str
    defaults: dict = field(default_factory=dict)
    # build(params) -> (graph, names-context); check(colouring, ctx) -> bool
    build: callable = None
    check: callable = None
    unsat_below: bool = False  # also prove unsatisfiability with one colour less


def _gadget_ctx(gid, **params):
    gadget = gadgets.build(gid, **params)
    return gadget.graph, {"g": gadget.graph, "terminals": gadget.terminals}


def _bicoloured(col: Colouring, ids) -> bool:
    return len({col[v] for v in ids}) <= 2


def _star_sets(g: Graph, k: int, copy: int | None = None):
    def nm(base, i):
        return f"{base}{i}" if copy is None else f"{base}_{{{i},{copy}}}"

    uw = [g.resolve(nm("u", i)) for i in range(1, k - 3)]
    uw += [g.resolve(nm("w", i)) for i in range(1, k - 1)]
    xy = [g.resolve(nm("x", i)) for i in range(1, k - 1)]
    xy += [g.resolve(nm("y", i)) for i in range(1, k - 3)]
    return uw, xy


def _build_star_subgraph(params):
    k = params["k"]
    comp = gadgets.build("star-component", k=k).graph
    y1, y2 = comp.resolve("y1"), comp.resolve("y2")
    edges = [e for e in comp.edges() if e != (min(y1, y2), max(y1, y2))]
    g = Graph.from_edges(comp.n, edges, comp.aliases)
    uw, xy = _star_sets(g, k)
    return g, {"g": g, "uw": uw, "xy": xy}


def _build_star_component(params):
    g, ctx = _gadget_ctx("star-component", k=params["k"])
    ctx["uw"], ctx["xy"] = _star_sets(g, params["k"])
    return g, ctx


def _build_star_chain(params):
    k, t = params["k"], params["t"]
    gadget = gadgets.build("star-chain", k=k, t=t)
    g = gadget.graph
    watch = set(gadget.terminals.values())
    for v in list(watch):
        watch.update(g.neighbours(v))
    return g, {"g": g, "watch": sorted(watch)}


def _pendant_tricoloured(g: Graph, col: Colouring, pendant_pairs) -> bool:
    # every 3-vertex path containing a pendant edge must use three colours
    for a, b in pendant_pairs:
        for x in g.neighbours(a):
            if x != b and len({col[x], col[a], col[b]}) != 3:
                return False
        for x in g.neighbours(b):
            if x != a and len({col[x], col[a], col[b]}) != 3:
                return False
    return True


def _check_two_in_two_out(col, ctx):
    g = ctx["g"]
    r = g.resolve
    c1 = col[r("y1")]
    c2 = col[r("y1*")]
    pattern = (
        c1 == col[r("y2")] == col[r("z1*")] == col[r("z2*")]
        and c2 == col[r("y2*")] == col[r("z1")] == col[r("z2")]
        and c1 != c2
    )
    if not pattern:
        return False
    pendants = [(r("y1"), r("y1*")), (r("y2"), r("y2*")),
                (r("z1"), r("z1*")), (r("z2"), r("z2*"))]
    return _pendant_tricoloured(g, col, pendants)


def _check_not_equal(col, ctx):
    g = ctx["g"]
    y, z = g.resolve("y"), g.resolve("z")
    if col[y] == col[z]:
        return False
    for t in (y, z):
        for b in g.neighbours(t):
            for x in g.neighbours(b):
                if x != t and len({col[t], col[b], col[x]}) != 3:
                    return False
    return True


def _check_rs_component_zero(col, ctx):
    g = ctx["g"]
    zero = frozenset(v for v in range(g.n) if col[v] == 0)
    allowed = (
        frozenset({g.resolve("u3"), g.resolve("u8")}),
        frozenset({g.resolve("u5"), g.resolve("u6")}),
    )
    return zero in allowed


_SPECS: dict[str, _LemmaSpec] = {
    "star-subgraph-bicolour": _LemmaSpec(
        gadget="star-component (minus the edge y1y2)",
        kind="star",
        tier="extended",
        assertion="k-1 colours do not suffice, and every k-star colouring "
        "bicolours U+W or X+Y",
        defaults={"k": 7},
        build=_build_star_subgraph,
        check=lambda col, ctx: _bicoloured(col, ctx["uw"]) or _bicoloured(col, ctx["xy"]),
        unsat_below=True,
    ),
    "star-component-bicolour": _LemmaSpec(
        gadget="star-component",
        kind="star",
        tier="extended",
        assertion="every k-star colouring bicolours U+W",
        defaults={"k": 7},
        build=_build_star_component,
        check=lambda col, ctx: _bicoloured(col, ctx["uw"]),
    ),
    "star-chain-bicolour": _LemmaSpec(
        gadget="star-chain",
        kind="star",
        tier="extended",
        assertion="every k-star colouring bicolours the terminals and their "
        "in-gadget neighbours",
        defaults={"k": 7, "t": 2},
        build=_build_star_chain,
        check=lambda col, ctx: _bicoloured(col, ctx["watch"]),
    ),
    "petersen-deg2-equal": _LemmaSpec(
        gadget="petersen-minus",
        kind="star",
        tier="fast",
        assertion="every 4-star colouring gives the same colour to all three "
        "degree-2 vertices (w1, w4, v5)",
        build=lambda params: _gadget_ctx("petersen-minus"),
        check=lambda col, ctx: col[ctx["g"].resolve("w1")]
        == col[ctx["g"].resolve("w4")]
        == col[ctx["g"].resolve("v5")],
    ),
    "grotzsch-deg2-distinct": _LemmaSpec(
        gadget="grotzsch-minus",
        kind="star",
        tier="fast",
        assertion="every 5-star colouring gives pairwise distinct colours to "
        "the five degree-2 vertices",
        build=lambda params: _gadget_ctx("grotzsch-minus"),
        check=lambda col, ctx: len(
            {col[ctx["g"].resolve(f"w{i}")] for i in range(1, 6)}
        )
        == 5,
    ),
    "two-in-two-out-pattern": _LemmaSpec(
        gadget="two-in-two-out",
        kind="star",
        tier="standard",
        assertion="every 5-star colouring forces f(y1)=f(y2)=f(z1*)=f(z2*) and "
        "f(y1*)=f(y2*)=f(z1)=f(z2), two distinct colours; 3-vertex paths "
        "through pendant edges are tricoloured",
        build=lambda params: _gadget_ctx("two-in-two-out"),
        check=_check_two_in_two_out,
    ),
    "not-equal-terminals": _LemmaSpec(
        gadget="not-equal",
        kind="star",
        tier="standard",
        assertion="the terminals get different colours under every 5-star "
        "colouring; 3-vertex paths ending at a terminal are tricoloured",
        build=lambda params: _gadget_ctx("not-equal"),
        check=_check_not_equal,
    ),
    "c3-terminals-equal": _LemmaSpec(
        gadget="c3-tree",
        kind="star",
        tier="extended",
        assertion="all terminals of a gluing of 2-in-2-out gadgets get the "
        "same colour under every 5-star colouring",
        defaults={"T": 2, "shape": "chain"},
        build=lambda params: _gadget_ctx(
            "c3-tree", T=params["T"], shape=params.get("shape", "chain")
        ),
        check=lambda col, ctx: len({col[v] for v in ctx["terminals"].values()}) == 1,
    ),
    "rs-component-zero": _LemmaSpec(
        gadget="rs-component",
        kind="rs",
        tier="fast",
        assertion="every 4-rs colouring has zero class {u3,u8} or {u5,u6} "
        "(so exactly one of f(u3)=0, f(u5)=0 holds)",
        build=lambda params: _gadget_ctx("rs-component"),
        check=_check_rs_component_zero,
    ),
    "rs-forcing-H-zero": _LemmaSpec(
        gadget="rs-forcing-H",
        kind="rs",
        tier="standard",
        assertion="every 4-rs colouring assigns colour 0 to u5''",
        build=lambda params: _gadget_ctx("rs-forcing-H"),
        check=lambda col, ctx: col[ctx["g"].resolve("u5''")] == 0,
    ),
    "rs-forcing-full-zero": _LemmaSpec(
        gadget="rs-forcing",
        kind="rs",
        tier="extended",
        assertion="every 4-rs colouring of the full colour forcing gadget "
        "assigns colour 0 to its terminal",
        build=lambda params: _gadget_ctx("rs-forcing"),
        check=lambda col, ctx: col[ctx["g"].resolve("u5''")] == 0,
    ),
    "rs-blocking-nonzero": _LemmaSpec(
        gadget="rs-blocking",
        kind="rs",
        tier="standard",
        assertion="every k-rs colouring assigns non-zero colours to u2, u3, "
        "v2 and v3",
        defaults={"k": 5},
        build=lambda params: _gadget_ctx("rs-blocking", k=params["k"]),
        check=lambda col, ctx: all(
            col[ctx["g"].resolve(nm)] != 0 for nm in ("u2", "u3", "v2", "v3")
        ),
    ),
    "obs-distance2": _LemmaSpec(
        gadget="rs-component",
        kind="rs",
        tier="fast",
        assertion="no two 0-coloured vertices within distance 2 in any valid "
        "rs colouring",
        build=lambda params: _gadget_ctx("rs-component"),
        check=lambda col, ctx: zero_pair_scan(ctx["g"], col) == [],
    ),
}

LEMMA_IDS = tuple(_SPECS)

_DEFAULT_K = {
    "star-subgraph-bicolour": None,  # from params
    "star-component-bicolour": None,
    "star-chain-bicolour": None,
    "petersen-deg2-equal": 4,
    "grotzsch-deg2-distinct": 5,
    "two-in-two-out-pattern": 5,
    "not-equal-terminals": 5,
    "c3-terminals-equal": 5,
    "rs-component-zero": 4,
    "rs-forcing-H-zero": 4,
    "rs-forcing-full-zero": 4,
    "rs-blocking-nonzero": None,
    "obs-distance2": 4,
}


class _Refuted(Exception):
    def __init__(self, colouring):
        self.colouring = colouring


def verify(lemma_id: str, params: dict | None = None,
           budget_secs: float | None = None,
           budget_nodes: int | None = None) -> LemmaReport:
    """Enumerate all valid colourings of the lemma's gadget and check the
    assertion on each; budget exhaustion is a status, not an error."""
    if lemma_id not in _SPECS:
        raise KeyError(f"unknown lemma id {lemma_id!r}")
    spec = _SPECS[lemma_id]
    params = {**spec.defaults, **(params or {})}
    k = _DEFAULT_K[lemma_id] or params["k"]
    if budget_secs is None:
        budget_secs = TIER_BUDGET_SECS[spec.tier]
    g, ctx = spec.build(params)
    mode = "canonical" if spec.kind != "rs" else "plain"
    t0 = time.monotonic()

    if spec.unsat_below:
        below = decide(
            g,
            SolveParams(kind=spec.kind, k=k - 1, canonical=True,
                        budget_nodes=budget_nodes, budget_secs=budget_secs),
        )
        if below.status != "unsat":
            status = "budget-exceeded" if below.status == "budget-exceeded" else "refuted"
            return LemmaReport(lemma_id, params, status, 0,
                               below.colouring, time.monotonic() - t0, mode, below.nodes)
        budget_secs = max(budget_secs - (time.monotonic() - t0), 1.0)

    sp = SolveParams(kind=spec.kind, k=k, canonical=(mode == "canonical"),
                     budget_nodes=budget_nodes, budget_secs=budget_secs)
    examined = 0

    def visitor(col: Colouring):
        nonlocal examined
        examined += 1
        if not spec.check(col, ctx):
            raise _Refuted(col)

    try:
        enumerate_colourings(g, sp, visitor)
    except _Refuted as r:
        return LemmaReport(lemma_id, params, "refuted", examined, r.colouring,
                           time.monotonic() - t0, mode)
    except BudgetExceeded as b:
        return LemmaReport(lemma_id, params, "budget-exceeded", examined, None,
                           time.monotonic() - t0, mode, b.nodes)
    return LemmaReport(lemma_id, params, "verified", examined, None,
                       time.monotonic() - t0, mode)


def catalogue() -> list[dict]:
    """Stable, documentation-grade listing of the lemma suite."""
    out = []
    for lid in LEMMA_IDS:
        spec = _SPECS[lid]
        out.append(
            {
                "id": lid,
                "gadget": spec.gadget,
                "kind": spec.kind,
                "k": _DEFAULT_K[lid],
                "default_params": dict(spec.defaults),
                "tier": spec.tier,
                "assertion": spec.assertion,
            }
        )
    return out
