"""Named example graphs and seeded random generators."""

from __future__ import annotations

import random

from .graph import Graph
from .polyring import natural_key
from .ribbon import RibbonGraph, fl, he


def p2() -> RibbonGraph:
    g = Graph.build(["u", "v"], [("e1", "u", "v")], [("f1", "u", "p"), ("f2", "v", "-p")], name="P2")
    return RibbonGraph.make(g, {"u": [fl("f1"), he("e1", "a")], "v": [fl("f2"), he("e1", "b")]})


def l1() -> RibbonGraph:
    g = Graph.build(["v"], [("e1", "v", "v")], [("f1", "v")], name="L1")
    return RibbonGraph.make(g, {"v": [fl("f1"), he("e1", "a"), he("e1", "b")]})


def b2() -> RibbonGraph:
    g = Graph.build(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v")], name="B2")
    return RibbonGraph.make(g, {"u": [he("e1", "a"), he("e2", "a")],
                                "v": [he("e2", "b"), he("e1", "b")]})


def b2f() -> RibbonGraph:
    """Bubble with flags 1, 2 on u and 3 on v; momenta p, 0 on u and -p on v."""
    g = Graph.build(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v")],
                    [("f1", "u", "p1"), ("f2", "u", "p2"), ("f3", "v", "p3")], name="B2F")
    return RibbonGraph.make(g, {"u": [fl("f1"), he("e1", "a"), fl("f2"), he("e2", "a")],
                                "v": [fl("f3"), he("e2", "b"), he("e1", "b")]})


def c3() -> RibbonGraph:
    g = Graph.build(["v1", "v2", "v3"], [("e1", "v1", "v2"), ("e2", "v2", "v3"), ("e3", "v3", "v1")],
                    [("f1", "v1"), ("f2", "v2"), ("f3", "v3")], name="C3")
    return RibbonGraph.make(g, {"v1": [fl("f1"), he("e1", "a"), he("e3", "b")],
                                "v2": [fl("f2"), he("e2", "a"), he("e1", "b")],
                                "v3": [fl("f3"), he("e3", "a"), he("e2", "b")]})


def np3() -> RibbonGraph:
    """Non-planar sunshine: two vertices, three edges, one boundary, genus one."""
    g = Graph.build(["u", "v"], [("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")],
                    [("f1", "u", "p"), ("f2", "v", "-p")], name="NP3")
    return RibbonGraph.make(g, {"u": [fl("f1"), he("e1", "a"), he("e2", "a"), he("e3", "a")],
                                "v": [fl("f2"), he("e1", "b"), he("e2", "b"), he("e3", "b")]})


def x2() -> RibbonGraph:
    g = Graph.build(["v"], [("e1", "v", "v"), ("e2", "v", "v")], name="X2")
    return RibbonGraph.make(g, {"v": [he("e1", "a"), he("e2", "a"), he("e1", "b"), he("e2", "b")]})


def bare(flags: int = 0) -> RibbonGraph:
    fs = [(f"f{i + 1}", "v") for i in range(flags)]
    g = Graph.build(["v"], [], fs, name="bare")
    return RibbonGraph.make(g, {"v": [fl(f[0]) for f in fs]})


NAMED = {"p2": p2, "l1": l1, "b2": b2, "b2f": b2f, "c3": c3, "np3": np3, "x2": x2}


def named() -> dict[str, RibbonGraph]:
    return {k: f() for k, f in NAMED.items()}


# -- random generators ---------------------------------------------------------------

def random_ribbon(seed: int, max_v: int = 6, max_e: int = 7, max_flags: int = 3,
                  connected: bool = False, loops: bool = True) -> RibbonGraph:
    """Seeded random ribbon graph: random multigraph, random rotations and roots."""
    rng = random.Random(seed)
    nv = rng.randint(1, max_v)
    vs = [f"v{i + 1}" for i in range(nv)]
    pairs = []
    if connected:
        for i in range(1, nv):
            pairs.append((vs[rng.randrange(i)], vs[i]))
    ne = rng.randint(len(pairs), max(len(pairs), max_e))
    while len(pairs) < ne:
        a, b = rng.choice(vs), rng.choice(vs)
        if a == b and not loops:
            continue
        pairs.append((a, b))
    rng.shuffle(pairs)
    edges = []
    for i, (a, b) in enumerate(pairs):
        if rng.random() < 0.5:
            a, b = b, a
        edges.append((f"e{i + 1}", a, b))
    nf = rng.randint(0, max_flags)
    flags = [(f"f{i + 1}", rng.choice(vs)) for i in range(nf)]
    g = Graph.build(vs, edges, flags, name=f"R{seed}")
    rot: dict[str, list] = {v: [] for v in vs}
    for eid, t, h in edges:
        rot[t].append(he(eid, "a"))
        rot[h].append(he(eid, "b"))
    for fid, v in flags:
        rot[v].append(fl(fid))
    for v in vs:
        rng.shuffle(rot[v])
    return RibbonGraph.make(g, rot)


def random_graph(seed: int, max_v: int = 6, max_e: int = 7, max_flags: int = 3,
                 connected: bool = False) -> Graph:
    return random_ribbon(seed, max_v, max_e, max_flags, connected).graph


def random_rosette(seed: int, min_e: int = 2, max_e: int = 6, max_flags: int = 2) -> RibbonGraph:
    rng = random.Random(seed)
    ne = rng.randint(min_e, max_e)
    nf = rng.randint(0, max_flags)
    edges = [(f"e{i + 1}", "v", "v") for i in range(ne)]
    flags = [(f"f{i + 1}", "v") for i in range(nf)]
    word = [he(e, end) for e, _, _ in edges for end in "ab"] + [fl(f) for f, _ in flags]
    rng.shuffle(word)
    g = Graph.build(["v"], edges, flags, name=f"Ros{seed}")
    return RibbonGraph.make(g, {"v": word})


def rosette(word: str, name: str = "Ros") -> RibbonGraph:
    """Rosette from a word of loop ends, e.g. ``"e1 e2 E1 E2"``; an upper-case initial marks the second end."""
    toks = word.split()
    ids = sorted({t.lower() for t in toks}, key=natural_key)
    g = Graph.build(["v"], [(i, "v", "v") for i in ids], name=name)
    return RibbonGraph.make(g, {"v": [he(t.lower(), "b" if t[0].isupper() else "a") for t in toks]})
