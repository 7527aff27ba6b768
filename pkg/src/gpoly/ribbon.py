"""Ribbon graphs as rooted combinatorial maps.

Each vertex stores its slots (half-edge ends and flags) counterclockwise,
starting at the root slot.  A half-edge end is ``Slot('e', eid, 'a')`` at
the tail of the edge and ``Slot('e', eid, 'b')`` at its head.

Boundary rule: arriving at a slot, step to the previous slot of the
rotation after crossing the ribbon, i.e. ``phi = prev o tau`` where tau
swaps the two ends of an edge and fixes flags.  Boundaries are stored
with the orientation induced by the surface, which is the reverse of that
walk; around a bare vertex this is its rotation order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import GraphError, UnsupportedOperation
from .graph import Edge, Flag, Graph
from .polyring import least_rotation, natural_key


class Slot(NamedTuple):
    kind: str        # 'e' or 'f'
    id: str
    end: str = ""    # 'a' (tail) or 'b' (head) for half-edges

    def partner(self) -> "Slot":
        if self.kind != "e":
            return self
        return Slot("e", self.id, "b" if self.end == "a" else "a")

    def __str__(self) -> str:
        return f"e:{self.id}.{self.end}" if self.kind == "e" else f"f:{self.id}"


def he(eid: str, end: str) -> Slot:
    return Slot("e", eid, end)


def fl(fid: str) -> Slot:
    return Slot("f", fid)


@dataclass(frozen=True)
class Boundary:
    slots: tuple[Slot, ...]

    @property
    def flags(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.slots if s.kind == "f")

    @property
    def cyclic_flags(self) -> tuple[str, ...]:
        return least_rotation(self.flags)


@dataclass(frozen=True)
class RibbonGraph:
    graph: Graph
    rotation: tuple[tuple[str, tuple[Slot, ...]], ...] = field(default=())

    def __post_init__(self):
        g = self.graph
        rot = dict(self.rotation)
        if set(rot) != set(g.vertices):
            raise GraphError("rotation must list every vertex exactly once")
        expected: dict[str, list[Slot]] = {v: [] for v in g.vertices}
        for e in g.edges:
            expected[e.tail].append(he(e.id, "a"))
            expected[e.head].append(he(e.id, "b"))
        for f in g.flags:
            expected[f.vertex].append(fl(f.id))
        for v, slots in rot.items():
            if len(set(slots)) != len(slots) or set(slots) != set(expected[v]):
                raise GraphError(f"order at {v} must cover its half-edges and flags exactly once")
        canon = tuple(sorted(((v, tuple(s)) for v, s in rot.items()), key=lambda t: natural_key(t[0])))
        object.__setattr__(self, "rotation", canon)

    @classmethod
    def make(cls, graph: Graph, rotation: dict[str, Sequence]) -> "RibbonGraph":
        rot = {}
        for v, slots in rotation.items():
            rot[v] = tuple(s if isinstance(s, Slot) else parse_slot(s) for s in slots)
        return cls(graph, tuple(rot.items()))

    # -- basic data --------------------------------------------------------------
    @property
    def rot(self) -> dict[str, tuple[Slot, ...]]:
        return dict(self.rotation)

    @property
    def V(self) -> int:
        return self.graph.V

    @property
    def E(self) -> int:
        return self.graph.E

    def is_rosette(self) -> bool:
        return self.graph.V == 1

    def vertex_of(self) -> dict[Slot, str]:
        return {s: v for v, slots in self.rotation for s in slots}

    # -- boundaries ----------------------------------------------------------------
    def boundaries(self, subset: Sequence[str] | None = None) -> list[Boundary]:
        """Boundary components of the spanning ribbon subgraph (V, subset)."""
        keep = None if subset is None else set(subset)
        prev: dict[Slot, Slot] = {}
        order: list[Slot] = []
        out: list[Boundary] = []
        for v, slots in self.rotation:
            live = [s for s in slots if s.kind == "f" or keep is None or s.id in keep]
            if not live:
                out.append(Boundary(()))
                continue
            for i, s in enumerate(live):
                prev[s] = live[i - 1]
            order.extend(live)
        seen: set[Slot] = set()
        for start in order:
            if start in seen:
                continue
            cyc = []
            s = start
            while s not in seen:
                seen.add(s)
                cyc.append(s)
                s = prev[s.partner()]
            out.append(Boundary(tuple(cyc[:1] + cyc[:0:-1])))
        return out

    def bc(self, subset: Sequence[str] | None = None) -> int:
        return len(self.boundaries(subset))

    def broken_faces(self, subset: Sequence[str] | None = None) -> int:
        return sum(1 for b in self.boundaries(subset) if b.flags)

    def genus(self, subset: Sequence[str] | None = None) -> int:
        nE = self.E if subset is None else len(subset)
        kk = self.graph.k(subset)
        twice = 2 * kk - (self.V - nE + self.bc(subset))
        if twice % 2 or twice < 0:
            raise AssertionError(f"Euler characteristic inconsistent (2g={twice}); traversal bug")
        return twice // 2

    # -- duality -----------------------------------------------------------------
    def dual(self) -> "RibbonGraph":
        """Vertices of the dual are the boundaries, slots in induced boundary order."""
        if not self.graph.is_connected():
            raise UnsupportedOperation("dual of a disconnected ribbon graph")
        faces = self.boundaries()
        names = [f"F{i + 1}" for i in range(len(faces))]
        where: dict[Slot, str] = {}
        rot = {}
        for name, b in zip(names, faces):
            rot[name] = b.slots
            for s in b.slots:
                where[s] = name
        edges = tuple(Edge(e.id, where[he(e.id, "a")], where[he(e.id, "b")])
                      for e in self.graph.edges)
        flags = tuple(Flag(f.id, where[fl(f.id)], f.momentum) for f in self.graph.flags)
        g = Graph(tuple(names), edges, flags, frozenset(), self.graph.name + "*")
        return RibbonGraph(g, tuple(rot.items()))

    # -- minors ---------------------------------------------------------------------
    def delete(self, eid: str) -> "RibbonGraph":
        g = self.graph.delete(eid)
        rot = {v: tuple(s for s in slots if not (s.kind == "e" and s.id == eid))
               for v, slots in self.rotation}
        return RibbonGraph(g, tuple(rot.items()))

    def contract(self, eid: str) -> "RibbonGraph":
        """Merge the endpoints of a semi-regular edge, splicing the far rotation in."""
        e = self.graph.edge(eid)
        if e.is_loop:
            raise UnsupportedOperation("contraction of a ribbon self-loop is not supported")
        keep, gone = self.graph.merge_target(eid)
        rot = self.rot
        near_end = "a" if e.tail == keep else "b"
        far_end = "b" if near_end == "a" else "a"
        near = list(rot[keep])
        far = list(rot[gone])
        i = near.index(he(eid, near_end))
        j = far.index(he(eid, far_end))
        spliced = near[:i] + far[j + 1:] + far[:j] + near[i + 1:]
        g = self.graph.contract(eid)
        del rot[gone]
        rot[keep] = tuple(spliced)
        return RibbonGraph(g, tuple(rot.items()))

    def subgraph(self, subset: Sequence[str]) -> "RibbonGraph":
        keep = set(subset)
        g = self.graph.subgraph(subset)
        rot = {v: tuple(s for s in slots if s.kind == "f" or s.id in keep) for v, slots in self.rotation}
        return RibbonGraph(g, tuple(rot.items()))

    def canonical_key(self) -> tuple:
        order = self.graph.canonical_order()
        rot = tuple(sorted((order[v], slots) for v, slots in self.rotation))
        return self.graph.canonical_key(), rot

    def rerooted(self, shift: int = 1) -> "RibbonGraph":
        """Rotate every vertex's linear order by ``shift`` slots (same cyclic order)."""
        rot = {}
        for v, slots in self.rotation:
            if slots:
                k = shift % len(slots)
                slots = slots[k:] + slots[:k]
            rot[v] = slots
        return RibbonGraph(self.graph, tuple(rot.items()))

    # -- rosettes -------------------------------------------------------------------
    def _word(self) -> tuple[Slot, ...]:
        if not self.is_rosette():
            raise UnsupportedOperation("operation requires a rosette (single vertex)")
        return self.rotation[0][1]

    @staticmethod
    def _crossing(word: Sequence[Slot], e: str, f: str) -> bool:
        pos = [i for i, s in enumerate(word) if s.kind == "e" and s.id == e]
        lo, hi = sorted(pos)
        inside = sum(1 for i, s in enumerate(word) if s.kind == "e" and s.id == f and lo < i < hi)
        return inside == 1

    def nice_crossings(self) -> list[tuple[str, str]]:
        """Pairs of crossing self-loops whose ends are adjacent on the cycle, in cycle order.

        Adjacency is read on the half-edge ends only; flags in between are ignored.
        """
        word = self._word()
        ends = [s for s in word if s.kind == "e"]
        n = len(ends)
        out = []
        for i in range(n):
            a, b = ends[i], ends[(i + 1) % n]
            if a.id != b.id and self._crossing(word, a.id, b.id) and (a.id, b.id) not in out \
                    and (b.id, a.id) not in out:
                out.append((a.id, b.id))
        return out

    def nice_crossing(self) -> tuple[str, str] | None:
        found = self.nice_crossings()
        return found[0] if found else None

    def crosses(self, e: str) -> list[str]:
        """Loops of a rosette interlaced with loop e."""
        word = self._word()
        return [f for f in self.graph.edge_ids() if f != e and self._crossing(word, e, f)]

    def double_contract(self, e1: str, e2: str) -> "RibbonGraph":
        """Remove a nice crossing pair and swap the two stretches they encompass.

        With cyclic word ``e1 F e2 w1 e1' w2 e2' w3`` the result is ``F w2 w1 w3``.
        """
        word = list(self._word())
        n = len(word)
        for first, second in ((e1, e2), (e2, e1)):
            for i, s in enumerate(word):
                if s.kind != "e" or s.id != first:
                    continue
                w = word[i:] + word[:i]
                j = 1
                while j < n and w[j].kind == "f":
                    j += 1
                if j >= n or w[j].kind != "e" or w[j].id != second:
                    continue
                rest = w[j + 1:]
                k1 = next(t for t, s2 in enumerate(rest) if s2.kind == "e" and s2.id == first)
                k2 = next(t for t, s2 in enumerate(rest) if s2.kind == "e" and s2.id == second)
                if k1 > k2:
                    continue
                between = w[1:j]
                w1, w2, w3 = rest[:k1], rest[k1 + 1:k2], rest[k2 + 1:]
                new = between + w2 + w1 + w3
                root = word[0]
                if root in new:
                    r = new.index(root)
                    new = new[r:] + new[:r]
                g = self.graph.delete(e1).delete(e2)
                v = self.rotation[0][0]
                out = RibbonGraph(g, ((v, tuple(new)),))
                if out.bc() != self.bc() or out.genus() != self.genus() - 1:
                    raise AssertionError("double contraction broke the genus/boundary invariant")
                return out
        raise UnsupportedOperation(f"({e1}, {e2}) is not a nice crossing")

    def __str__(self) -> str:
        parts = [f"{v}: " + " ".join(str(s) for s in slots) for v, slots in self.rotation]
        return f"RibbonGraph({self.graph.name}; " + "; ".join(parts) + ")"


def parse_slot(text: str) -> Slot:
    text = text.strip()
    if text.startswith("f:"):
        return fl(text[2:])
    if text.startswith("e:") and "." in text:
        eid, end = text[2:].rsplit(".", 1)
        if end in ("a", "b"):
            return he(eid, end)
    raise GraphError(f"bad slot {text!r}; expected e:EID.a, e:EID.b or f:FID")
