"""Abstract multigraphs with oriented edges, flags and harmonic weights."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .errors import GraphError, ResourceLimitError, max_edges
from .polyring import natural_key


class EdgeKind(enum.Enum):
    BRIDGE = "bridge"
    SELF_LOOP = "self_loop"
    REGULAR = "regular"


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


@dataclass(frozen=True)
class Flag:
    id: str
    vertex: str
    momentum: str | None = None   # symbol name, optionally prefixed with '-'; "0" carries none

    def momentum_linear(self) -> dict[str, int]:
        """The flag momentum as a linear combination of symbols (the flag id if unnamed)."""
        if self.momentum is None:
            return {self.id: 1}
        if self.momentum.lstrip("-") == "0":
            return {}
        if self.momentum.startswith("-"):
            return {self.momentum[1:]: -1}
        return {self.momentum: 1}


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class Graph:
    """A multigraph.  Edge orientation only matters to the matrix oracles."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    flags: tuple[Flag, ...] = ()
    weighted: frozenset = field(default_factory=frozenset)
    name: str = "G"

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise GraphError("duplicate vertex id")
        if len({e.id for e in self.edges}) != len(self.edges):
            raise GraphError("duplicate edge id")
        if len({f.id for f in self.flags}) != len(self.flags):
            raise GraphError("duplicate flag id")
        for e in self.edges:
            if e.tail not in vs or e.head not in vs:
                raise GraphError(f"edge {e.id} has a dangling endpoint")
        for f in self.flags:
            if f.vertex not in vs:
                raise GraphError(f"flag {f.id} attached to unknown vertex {f.vertex}")
        if not set(self.weighted) <= vs:
            raise GraphError("weight on unknown vertex")

    # -- construction helpers --------------------------------------------------
    @classmethod
    def build(cls, vertices: Sequence[str], edges: Sequence[tuple[str, str, str]] = (),
              flags: Sequence[tuple] = (), weighted=None, name: str = "G") -> "Graph":
        """Convenience constructor; ``weighted=None`` weights every vertex."""
        es = tuple(Edge(*e) for e in edges)
        fs = tuple(Flag(*f) for f in flags)
        w = frozenset(vertices) if weighted is None else frozenset(weighted)
        return cls(tuple(vertices), es, fs, w, name)

    # -- lookups -------------------------------------------------------------
    @property
    def V(self) -> int:
        return len(self.vertices)

    @property
    def E(self) -> int:
        return len(self.edges)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise GraphError(f"unknown edge id {eid!r}")

    def edge_ids(self) -> list[str]:
        return sorted((e.id for e in self.edges), key=natural_key)

    def sorted_vertices(self) -> list[str]:
        return sorted(self.vertices, key=natural_key)

    def sorted_flags(self) -> list[Flag]:
        return sorted(self.flags, key=lambda f: natural_key(f.id))

    def flags_at(self, v: str) -> list[Flag]:
        return [f for f in self.sorted_flags() if f.vertex == v]

    def incidence(self, eid: str, v: str) -> int:
        """epsilon_{ev}: +1 at the tail, -1 at the head, 0 for self-loops."""
        e = self.edge(eid)
        if e.is_loop:
            return 0
        return 1 if v == e.tail else -1 if v == e.head else 0

    # -- connectivity ------------------------------------------------------------
    def components(self, subset: Sequence[str] | None = None) -> list[list[str]]:
        """Vertex classes of the spanning subgraph (V, subset)."""
        d = _DSU(self.vertices)
        emap = {e.id: e for e in self.edges}
        for eid in (emap if subset is None else subset):
            e = emap[eid]
            d.union(e.tail, e.head)
        groups: dict[str, list[str]] = {}
        for v in self.sorted_vertices():
            groups.setdefault(d.find(v), []).append(v)
        return sorted(groups.values(), key=lambda g: natural_key(g[0]))

    def k(self, subset: Sequence[str] | None = None) -> int:
        d = _DSU(self.vertices)
        emap = {e.id: e for e in self.edges}
        n = len(self.vertices)
        for eid in (emap if subset is None else subset):
            e = emap[eid]
            if d.union(e.tail, e.head):
                n -= 1
        return n

    def is_connected(self) -> bool:
        return self.k() <= 1

    def metrics(self, subset: Sequence[str] | None = None) -> tuple[int, int, int]:
        """(k, r, n) of the spanning subgraph; whole graph when subset is None."""
        a = self.E if subset is None else len(subset)
        kk = self.k(subset)
        r = self.V - kk
        return kk, r, a - r

    def classify(self, eid: str) -> EdgeKind:
        e = self.edge(eid)
        if e.is_loop:
            return EdgeKind.SELF_LOOP
        rest = [x.id for x in self.edges if x.id != eid]
        if self.k(rest) > self.k():
            return EdgeKind.BRIDGE
        return EdgeKind.REGULAR

    # -- minors ----------------------------------------------------------------
    def delete(self, eid: str) -> "Graph":
        self.edge(eid)
        return Graph(self.vertices, tuple(e for e in self.edges if e.id != eid),
                     self.flags, self.weighted, self.name)

    def merge_target(self, eid: str) -> tuple[str, str]:
        """(kept, removed) vertex ids when contracting a semi-regular edge."""
        e = self.edge(eid)
        a, b = sorted((e.tail, e.head), key=natural_key)
        return a, b

    def contract(self, eid: str) -> "Graph":
        e = self.edge(eid)
        if e.is_loop:
            return self.delete(eid)
        keep, gone = self.merge_target(eid)

        def re(v):
            return keep if v == gone else v

        edges = tuple(Edge(x.id, re(x.tail), re(x.head)) for x in self.edges if x.id != eid)
        flags = tuple(Flag(f.id, re(f.vertex), f.momentum) for f in self.flags)
        verts = tuple(v for v in self.vertices if v != gone)
        weighted = frozenset(re(v) for v in self.weighted)
        return Graph(verts, edges, flags, weighted, self.name)

    def subgraph(self, subset: Sequence[str]) -> "Graph":
        """Spanning subgraph keeping only the listed edges."""
        keep = set(subset)
        return Graph(self.vertices, tuple(e for e in self.edges if e.id in keep),
                     self.flags, self.weighted, self.name)

    # -- enumeration -----------------------------------------------------------
    def guard(self, limit: int | None = None) -> None:
        cap = max_edges(limit)
        if self.E > cap:
            raise ResourceLimitError(f"{self.E} edges exceeds the expansion limit {cap}")

    def subsets(self, family: str = "all_subsets", limit: int | None = None) -> Iterator[tuple[str, ...]]:
        """Stream edge subsets by binary counting over the sorted edge ids.

        Checks (size limit, connectivity) run eagerly, before the first item.
        """
        self.guard(limit)
        if family == "spanning_trees" and not self.is_connected():
            raise GraphError("spanning trees requested on a disconnected graph")
        if family not in ("all_subsets", "spanning_forests", "spanning_trees", "max_forests", "two_forests"):
            raise ValueError(f"unknown subset family {family!r}")
        return self._subsets(family)

    def _subsets(self, family: str) -> Iterator[tuple[str, ...]]:
        ids = self.edge_ids()
        kg = self.k()
        n = len(ids)
        for mask in range(1 << n):
            sub = tuple(ids[i] for i in range(n) if mask >> i & 1)
            if family == "all_subsets":
                yield sub
                continue
            kk, r, nul = self.metrics(sub)
            if nul != 0:
                continue
            if family == "spanning_forests":
                yield sub
            elif family == "spanning_trees":
                if kk == 1:
                    yield sub
            elif family == "max_forests":
                if kk == kg:
                    yield sub
            elif family == "two_forests":
                if kk == kg + 1:
                    yield sub

    # -- memo keys ---------------------------------------------------------------
    def canonical_order(self) -> dict[str, int]:
        """Vertices relabeled in BFS order from the smallest id (edges visited by sorted id)."""
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e in sorted(self.edges, key=lambda x: natural_key(x.id)):
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        order: dict[str, int] = {}
        for start in self.sorted_vertices():
            if start in order:
                continue
            order[start] = len(order)
            queue = [start]
            while queue:
                v = queue.pop(0)
                for w in adj[v]:
                    if w not in order:
                        order[w] = len(order)
                        queue.append(w)
        return order

    def canonical_key(self) -> tuple:
        """Structural encoding used as a memo key; no isomorphism reduction."""
        order = self.canonical_order()
        edges = tuple(sorted((e.id, order[e.tail], order[e.head]) for e in self.edges))
        flags = tuple(sorted((f.id, order[f.vertex]) for f in self.flags))
        return (len(order), edges, flags)

    def with_flags(self) -> "Graph":
        """Copy with one fresh flag on every flagless vertex (needed by the flag-set polynomials)."""
        have = {f.vertex for f in self.flags}
        extra = tuple(Flag(f"x{v}", v) for v in self.sorted_vertices() if v not in have)
        return Graph(self.vertices, self.edges, self.flags + extra, self.weighted, self.name)

    def __str__(self) -> str:
        return f"Graph({self.name}: V={self.V}, E={self.E}, flags={len(self.flags)})"
