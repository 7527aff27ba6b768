"""Reader and writer for the ``.gpg`` graph description format.

    graph NAME {
      vertex VID [weighted] ;
      flag FID at VID [momentum SYM] ;
      edge EID VID -> VID ;
      order VID : SLOT (, SLOT)* ;      # SLOT = e:EID.a | e:EID.b | f:FID
    }

A file with ``order`` lines describes a ribbon graph; then every vertex
with a half-edge or flag needs one.  The first slot of an order is the
root slot.  A file without any slots at all is trivially a ribbon graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from .errors import GraphError, ParseError
from .graph import Graph
from .polyring import natural_key
from .ribbon import RibbonGraph, Slot, fl, he

GRAMMAR = r"""
start: "graph" ID "{" stmt* "}"
?stmt: vertex | flag | edge | order
vertex: "vertex" ID WEIGHTED? ";"
flag: "flag" ID "at" ID ("momentum" SYM)? ";"
edge: "edge" ID ID "->" ID ";"
order: "order" ID ":" slot ("," slot)* ";"
slot: HALF | FLAGSLOT
HALF: "e:" ID_RAW "." ("a" | "b")
FLAGSLOT: "f:" ID_RAW
WEIGHTED: "weighted"
SYM: /-?[A-Za-z_][A-Za-z0-9_]*|0/
ID: ID_RAW
ID_RAW: /[A-Za-z0-9_]+/
COMMENT: /#[^\n]*/
%import common.WS
%ignore WS
%ignore COMMENT
"""

_PARSER = Lark(GRAMMAR, parser="lalr", propagate_positions=True)


@dataclass(frozen=True)
class GraphFile:
    graph: Graph
    ribbon: RibbonGraph | None

    @property
    def is_ribbon(self) -> bool:
        return self.ribbon is not None


def _pos(tok: Token) -> tuple[int, int]:
    return tok.line, tok.column


@v_args(inline=True)
class _Build(Transformer):
    def vertex(self, vid, weighted=None):
        return ("vertex", vid, weighted is not None)

    def flag(self, fid, vid, sym=None):
        return ("flag", fid, vid, None if sym is None else str(sym))

    def edge(self, eid, tail, head):
        return ("edge", eid, tail, head)

    def order(self, vid, *slots):
        return ("order", vid, slots)

    def slot(self, tok):
        text = str(tok)
        if text.startswith("f:"):
            return fl(text[2:]), tok
        eid, end = text[2:].rsplit(".", 1)
        return he(eid, end), tok

    def start(self, name, *stmts):
        return str(name), stmts


def parse(source: str | Path) -> GraphFile:
    """Parse a path or the text itself; errors carry line:column."""
    if isinstance(source, Path) or (isinstance(source, str) and "{" not in source):
        text = Path(source).read_text(encoding="utf-8")
    else:
        text = source
    try:
        tree = _PARSER.parse(text)
    except UnexpectedInput as exc:
        ctx = exc.get_context(text).rstrip()
        raise ParseError(f"syntax error near\n{ctx}", exc.line, exc.column) from None
    try:
        name, stmts = _Build().transform(tree)
    except VisitError as exc:        # pragma: no cover - transformer is total
        raise ParseError(str(exc.orig_exc)) from None
    return _assemble(name, stmts)


def _assemble(name: str, stmts) -> GraphFile:
    vertices, weighted = [], []
    edges, flags = [], []
    orders: dict[str, list[Slot]] = {}
    seen: dict[tuple[str, str], Token] = {}

    def fresh(kind, tok):
        key = (kind, str(tok))
        if key in seen:
            raise ParseError(f"duplicate {kind} id {tok}", *_pos(tok))
        seen[key] = tok

    for st in stmts:
        kind = st[0]
        if kind == "vertex":
            _, vid, w = st
            fresh("vertex", vid)
            vertices.append(str(vid))
            if w:
                weighted.append(str(vid))
        elif kind == "flag":
            _, fid, vid, sym = st
            fresh("flag", fid)
            flags.append((str(fid), vid, sym))
        elif kind == "edge":
            _, eid, t, h = st
            fresh("edge", eid)
            edges.append((str(eid), t, h))
        else:
            _, vid, slots = st
            if str(vid) in orders:
                raise ParseError(f"second order line for vertex {vid}", *_pos(vid))
            orders[str(vid)] = [s for s, _ in slots]
            for s, tok in slots:
                known = ("edge" if s.kind == "e" else "flag", s.id)
                if known not in seen:
                    raise ParseError(f"slot {tok} names an undeclared {known[0]}", *_pos(tok))
            seen[("order", str(vid))] = vid
    vs = set(vertices)
    for eid, t, h in edges:
        for v in (t, h):
            if str(v) not in vs:
                raise ParseError(f"edge {eid} uses undeclared vertex {v}", *_pos(v))
    for fid, v, _ in flags:
        if str(v) not in vs:
            raise ParseError(f"flag {fid} attached to undeclared vertex {v}", *_pos(v))
    g = Graph.build(vertices, [(e, str(t), str(h)) for e, t, h in edges],
                    [(f, str(v), s) for f, v, s in flags], weighted=weighted, name=name)
    busy = {e.tail for e in g.edges} | {e.head for e in g.edges} | {f.vertex for f in g.flags}
    if not orders and busy:
        return GraphFile(g, None)
    for v in vertices:
        if v in busy and v not in orders:
            raise ParseError(f"vertex {v} has no order line (a ribbon file needs one per vertex)")
    for v, slots in orders.items():
        if v not in vs:
            raise ParseError(f"order for undeclared vertex {v}", *_pos(seen[("order", v)]))
    try:
        R = RibbonGraph.make(g, {v: orders.get(v, []) for v in vertices})
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return GraphFile(g, R)


def dumps(obj: Graph | RibbonGraph) -> str:
    """Canonical text: vertices, flags and edges in natural id order."""
    R = obj if isinstance(obj, RibbonGraph) else None
    g = R.graph if R is not None else obj
    lines = [f"graph {g.name} {{"]
    for v in g.sorted_vertices():
        lines.append(f"  vertex {v}" + (" weighted" if v in g.weighted else "") + " ;")
    for f in g.sorted_flags():
        lines.append(f"  flag {f.id} at {f.vertex}" + (f" momentum {f.momentum}" if f.momentum else "") + " ;")
    for e in sorted(g.edges, key=lambda e: natural_key(e.id)):
        lines.append(f"  edge {e.id} {e.tail} -> {e.head} ;")
    if R is not None:
        for v, slots in R.rotation:
            if slots:
                lines.append(f"  order {v} : " + ", ".join(str(s) for s in slots) + " ;")
    lines.append("}")
    return "\n".join(lines) + "\n"
