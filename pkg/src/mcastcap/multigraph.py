"""Undirected capacitated multigraph model and terminal-preserving preprocessing.

Vertices are strings; edges carry stable integer ids and strictly positive
integer capacities.  All values are immutable: every operation returns a new
graph.  Rates and all derived quantities use exact rational arithmetic
(``fractions.Fraction``); no floating point anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BridgeBetweenTerminals,
    DisconnectedTerminals,
    InvalidGraph,
    UnknownEdge,
    UnknownVertex,
)

Rate = Fraction


@dataclass(frozen=True)
class Edge:
    id: int
    u: str
    v: str
    cap: int

    def other(self, x: str) -> str:
        if x == self.u:
            return self.v
        if x == self.v:
            return self.u
        raise ValueError(f"vertex {x!r} is not an endpoint of edge {self.id}")

    def touches(self, x: str) -> bool:
        return x == self.u or x == self.v


@dataclass(frozen=True)
class TerminalSet:
    source: str
    sinks: tuple[str, ...]

    def __post_init__(self):
        if self.source in self.sinks:
            raise InvalidGraph("source may not also be a sink")
        if len(set(self.sinks)) != len(self.sinks):
            raise InvalidGraph("duplicate sink")
        if len(self.sinks) < 1:
            raise InvalidGraph("need at least two terminals")

    @property
    def members(self) -> frozenset[str]:
        return frozenset((self.source, *self.sinks))

    def ordered(self) -> tuple[str, ...]:
        return (self.source, *self.sinks)


@dataclass(frozen=True)
class Multigraph:
    vertices: frozenset[str]
    edges: tuple[Edge, ...]

    # -- lookups -----------------------------------------------------------

    def edge(self, eid: int) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise UnknownEdge(f"no edge with id {eid}")

    def has_edge(self, eid: int) -> bool:
        return any(e.id == eid for e in self.edges)

    def incident(self, v: str) -> list[Edge]:
        if v not in self.vertices:
            raise UnknownVertex(f"no vertex {v!r}")
        return [e for e in self.edges if e.touches(v)]

    def neighbors(self, v: str) -> set[str]:
        return {e.other(v) for e in self.incident(v)}

    def next_id(self) -> int:
        return max((e.id for e in self.edges), default=-1) + 1

    def total_capacity(self) -> int:
        return sum(e.cap for e in self.edges)

    def is_unit(self) -> bool:
        return all(e.cap == 1 for e in self.edges)

    # -- constructors ------------------------------------------------------

    @staticmethod
    def build(vertices, triples) -> "Multigraph":
        """Build from an iterable of (u, v, cap) triples; ids assigned in order."""
        edges = tuple(Edge(i, u, v, c) for i, (u, v, c) in enumerate(triples))
        return Multigraph(frozenset(vertices), edges)

    def add_edge(self, u: str, v: str, cap: int = 1) -> "Multigraph":
        e = Edge(self.next_id(), u, v, cap)
        return Multigraph(self.vertices, self.edges + (e,))

    def without_edges(self, eids) -> "Multigraph":
        eids = set(eids)
        return Multigraph(self.vertices, tuple(e for e in self.edges if e.id not in eids))

    def without_vertices(self, vs) -> "Multigraph":
        vs = set(vs)
        return Multigraph(
            frozenset(self.vertices - vs),
            tuple(e for e in self.edges if e.u not in vs and e.v not in vs),
        )

    def restrict(self, vs) -> "Multigraph":
        """Induced subgraph on the vertex set ``vs``."""
        vs = frozenset(vs)
        return Multigraph(vs, tuple(e for e in self.edges if e.u in vs and e.v in vs))

    # -- views -------------------------------------------------------------

    def unit_form(self) -> tuple["Multigraph", dict[int, int]]:
        """Expand capacity c into c parallel unit edges.

        Returns the expanded graph and a map from new unit-edge ids back to
        the originating edge id.  A graph that is already unit maps to itself.
        """
        if self.is_unit():
            return self, {e.id: e.id for e in self.edges}
        out = []
        origin: dict[int, int] = {}
        nid = 0
        for e in sorted(self.edges, key=lambda e: e.id):
            for _ in range(e.cap):
                out.append(Edge(nid, e.u, e.v, 1))
                origin[nid] = e.id
                nid += 1
        return Multigraph(self.vertices, tuple(out)), origin

    def aggregated(self) -> "Multigraph":
        """Merge parallel edges into one edge per vertex pair with summed capacity."""
        groups: dict[frozenset[str], list[Edge]] = {}
        for e in self.edges:
            groups.setdefault(frozenset((e.u, e.v)), []).append(e)
        out = []
        for es in groups.values():
            rep = min(es, key=lambda e: e.id)
            out.append(Edge(rep.id, rep.u, rep.v, sum(e.cap for e in es)))
        out.sort(key=lambda e: e.id)
        return Multigraph(self.vertices, tuple(out))


def degree(g: Multigraph, v: str, raw: bool = False) -> int:
    """Unit-edge degree of ``v``: a capacity-c edge contributes c.

    With ``raw=True`` counts incident edge records instead.
    """
    inc = g.incident(v)
    if raw:
        return len(inc)
    return sum(e.cap for e in inc)


def components(g: Multigraph, without_edges: frozenset[int] = frozenset()) -> list[frozenset[str]]:
    """Connected components, optionally ignoring the given edge ids."""
    adj: dict[str, set[str]] = {v: set() for v in g.vertices}
    for e in g.edges:
        if e.id in without_edges:
            continue
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    seen: set[str] = set()
    comps = []
    for start in sorted(g.vertices):
        if start in seen:
            continue
        stack = [start]
        comp = {start}
        seen.add(start)
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    seen.add(y)
                    stack.append(y)
        comps.append(frozenset(comp))
    return comps


def validate(g: Multigraph, a: TerminalSet) -> None:
    """Check all structural invariants and that the terminals are connected.

    Raises InvalidGraph or DisconnectedTerminals; returns None on success.
    """
    seen_ids: set[int] = set()
    for e in g.edges:
        if e.u not in g.vertices or e.v not in g.vertices:
            raise InvalidGraph(f"edge {e.id} has a dangling endpoint")
        if e.cap <= 0 or not isinstance(e.cap, int):
            raise InvalidGraph(f"edge {e.id} has nonpositive capacity {e.cap}")
        if e.u == e.v:
            raise InvalidGraph(f"edge {e.id} is a self-loop at {e.u!r}")
        if e.id in seen_ids:
            raise InvalidGraph(f"duplicate edge id {e.id}")
        seen_ids.add(e.id)
    for t in a.members:
        if t not in g.vertices:
            raise InvalidGraph(f"terminal {t!r} is not a vertex")
    for comp in components(g):
        if a.members <= comp:
            return
        if a.members & comp:
            raise DisconnectedTerminals("terminals span multiple components")
    raise DisconnectedTerminals("no component contains the terminals")


def scale_capacities(g: Multigraph, n: int) -> Multigraph:
    """Multiply every capacity by n; ids and topology unchanged."""
    if n < 1:
        raise ValueError("scale factor must be >= 1")
    if n == 1:
        return g
    return Multigraph(g.vertices, tuple(Edge(e.id, e.u, e.v, e.cap * n) for e in g.edges))


def _find_bridge_sides(g: Multigraph, e: Edge) -> tuple[frozenset[str], frozenset[str]] | None:
    """If deleting one unit of e disconnects its endpoints, return the two sides."""
    if e.cap >= 2:
        return None
    comps = components(g, without_edges=frozenset((e.id,)))
    side_u = next(c for c in comps if e.u in c)
    if e.v in side_u:
        return None
    side_v = next(c for c in comps if e.v in c)
    return side_u, side_v


def prune_to_core(g: Multigraph, a: TerminalSet) -> Multigraph:
    """Delete terminal-free parts hanging off cut-edges, and terminal-free components.

    Raises BridgeBetweenTerminals when a cut-edge separates two terminals
    (then the terminal connectivity is 1 and the capacity is 1 outright).
    Idempotent; preserves every pairwise terminal min-cut.
    """
    terms = a.members
    cur = g
    # drop whole components that carry no terminal
    keep = frozenset().union(*(c for c in components(cur) if c & terms)) if cur.vertices else frozenset()
    cur = cur.restrict(keep)
    while True:
        removed = False
        terminal_bridge = False
        for e in sorted(cur.edges, key=lambda e: e.id):
            sides = _find_bridge_sides(cur, e)
            if sides is None:
                continue
            side_u, side_v = sides
            if not (side_u & terms):
                cur = cur.restrict(cur.vertices - side_u)
                removed = True
                break
            if not (side_v & terms):
                cur = cur.restrict(cur.vertices - side_v)
                removed = True
                break
            terminal_bridge = True
        if not removed:
            if terminal_bridge:
                raise BridgeBetweenTerminals(
                    "a cut-edge separates two terminals: terminal connectivity is 1"
                )
            return cur


# -- interchange format ----------------------------------------------------


def load_instance(text: str) -> tuple[Multigraph, TerminalSet]:
    """Parse the JSON interchange format.

    ``{"vertices": [...], "edges": [[u, v, cap], ...], "source": s, "sinks": [...]}``
    Duplicate triples denote parallel edges.  Rejects self-loops and
    nonpositive capacities.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGraph(f"malformed JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise InvalidGraph("instance must be a JSON object")
    try:
        vertices = [str(v) for v in obj["vertices"]]
        raw_edges = obj["edges"]
        source = str(obj["source"])
        sinks = [str(s) for s in obj["sinks"]]
    except (KeyError, TypeError) as exc:
        raise InvalidGraph(f"missing or malformed field: {exc}") from exc
    triples = []
    for t in raw_edges:
        if not (isinstance(t, (list, tuple)) and len(t) == 3):
            raise InvalidGraph(f"edge entry must be a [u, v, cap] triple: {t!r}")
        u, v, cap = str(t[0]), str(t[1]), t[2]
        if not isinstance(cap, int) or isinstance(cap, bool) or cap <= 0:
            raise InvalidGraph(f"capacity must be a positive integer: {t!r}")
        if u == v:
            raise InvalidGraph(f"self-loop rejected: {t!r}")
        triples.append((u, v, cap))
    g = Multigraph.build(vertices, triples)
    a = TerminalSet(source, tuple(sinks))
    validate(g, a)
    return g, a


def dump_instance(g: Multigraph, a: TerminalSet) -> str:
    return json.dumps(
        {
            "vertices": sorted(g.vertices),
            "edges": [[e.u, e.v, e.cap] for e in sorted(g.edges, key=lambda e: e.id)],
            "source": a.source,
            "sinks": list(a.sinks),
        },
        indent=2,
    )
