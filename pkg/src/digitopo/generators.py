"""Small named graphs and random subdivisions used as a test corpus."""

from __future__ import annotations

import random

from .classify import minimal_disk, minimal_sphere
from .graph import Graph, join
from .homotopy import Trace
from .dtransform import split_moves, split_vertex

__all__ = [
    "cycle",
    "path",
    "complete",
    "octahedron",
    "triangulated_torus",
    "torus16",
    "suspension",
    "random_subdivide",
    "subdivided_sphere",
    "corpus",
    "dunce_hat",
    "order_complex",
    "minimal_sphere",
    "minimal_disk",
]


def cycle(k: int, prefix: str = "c") -> Graph:
    names = [f"{prefix}{i}" for i in range(k)]
    return Graph(names, [(names[i], names[(i + 1) % k]) for i in range(k)], name=f"C{k}")


def path(k: int, prefix: str = "p") -> Graph:
    names = [f"{prefix}{i}" for i in range(k)]
    return Graph(names, [(names[i], names[i + 1]) for i in range(k - 1)], name=f"P{k}")


def complete(k: int, prefix: str = "k") -> Graph:
    names = [f"{prefix}{i}" for i in range(k)]
    return Graph(names, [(u, v) for i, u in enumerate(names) for v in names[i + 1:]], name=f"K{k}")


def octahedron() -> Graph:
    return minimal_sphere(2).renamed("octahedron")


def triangulated_torus(p: int = 4, q: int = 4) -> Graph:
    """Torus on a ``p x q`` grid with one diagonal per square.

    Vertex ``t{a}_{b}`` is adjacent to the offsets ``(±1,0), (0,±1), (1,1),
    (-1,-1)`` mod ``(p, q)``.  ``p, q >= 4`` gives a digital 2-manifold.
    """
    name = lambda a, b: f"t{a % p}_{b % q}"  # noqa: E731
    vs = [name(a, b) for a in range(p) for b in range(q)]
    edges = set()
    for a in range(p):
        for b in range(q):
            for da, db in ((1, 0), (0, 1), (1, 1)):
                edges.add(tuple(sorted((name(a, b), name(a + da, b + db)))))
    return Graph(vs, sorted(edges), name=f"T{p}x{q}")


def torus16() -> Graph:
    return triangulated_torus(4, 4).renamed("T16")


def suspension(g: Graph) -> Graph:
    """``S0 (+) g``."""
    return join(Graph(["n", "s"]), g, name=f"S0+{g.name}" if g.name else "")


def _split_once(g: Graph, rng: random.Random, stem: str) -> tuple[Graph, Trace]:
    v = rng.choice(g.vertices)
    rim = g.induced(g.neighbors(v))
    u = rng.choice(rim.vertices)
    k = 0
    while f"{stem}{k}" in g or f"{stem}{k + 1}" in g:
        k += 2
    a, b = f"{stem}{k}", f"{stem}{k + 1}"
    side_a = {u} | set(rim.neighbors(u))
    d = rim.with_vertex(a, side_a).with_vertex(b, [x for x in rim.vertices if x != u] + [a])
    iso = {x: x for x in rim.vertices}
    return split_vertex(g, v, d, iso), split_moves(g, v, d, iso)


def random_subdivide(g: Graph, steps: int, seed: int = 0, stem: str = "x") -> Graph:
    """Apply ``steps`` random splits, each trading one point for two.

    A point ``v`` is replaced by adjacent points ``a`` and ``b``: ``a`` takes
    the ball of some ``u`` in the rim of ``v``, ``b`` takes the rest of the
    rim.  The inserted disk has two interior points, so spheres stay spheres
    and the vertex count grows by one per step.
    """
    rng = random.Random(seed)
    for _ in range(steps):
        g, _ = _split_once(g, rng, stem)
    return g


def subdivided_sphere(n: int, vertices: int, seed: int = 0) -> Graph:
    s = minimal_sphere(n)
    out = random_subdivide(s, vertices - s.n_vertices, seed)
    return out.renamed(f"S{n}sub{vertices}s{seed}")


def order_complex(facets: list[tuple[str, ...]], name: str = "") -> Graph:
    """Graph of the barycentric subdivision of a simplicial complex.

    One vertex per face (named by its sorted vertices joined with ``|``),
    one edge per proper inclusion.  Its clique complex is the subdivision.
    """
    faces: set[tuple[str, ...]] = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, 1 << len(f)):
            faces.add(tuple(x for i, x in enumerate(f) if k >> i & 1))
    order = sorted(faces, key=lambda t: (len(t), t))
    names = {f: "|".join(f) for f in order}
    edges = [
        (names[a], names[b])
        for a in order for b in order
        if len(a) < len(b) and set(a) <= set(b)
    ]
    return Graph([names[f] for f in order], edges, name=name)


def dunce_hat(rounds: int = 2) -> Graph:
    """A contractible graph on which no point can be deleted.

    A triangle is barycentrically subdivided ``rounds`` times and its three
    sides are glued in the pattern ``a a a^-1``; the order complex of the
    result is returned.  The space is contractible, but no point has a
    contractible rim, so greedy deletion stalls at once.
    """
    from fractions import Fraction

    corners = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
    tris = [corners]
    for _ in range(rounds):
        nxt = []
        for t in tris:
            bary = (sum(p[0] for p in t) / 3, sum(p[1] for p in t) / 3)
            for i in range(3):
                for j in range(3):
                    if i != j:
                        a, b = t[i], t[j]
                        mid = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
                        nxt.append((a, mid, bary))
        tris = nxt

    def label(p: tuple[Fraction, Fraction]) -> str:
        x, y = p
        if y == 0:
            t = x  # v0 -> v1
        elif x == 0:
            t = y  # v0 -> v2, glued to v0 -> v1
        elif x + y == 1:
            t = y  # v1 -> v2, glued to v0 -> v1
        else:
            return f"({x},{y})"
        return f"a{t % 1}"

    facets = [tuple(label(p) for p in t) for t in tris]
    if any(len(set(f)) < 3 for f in facets) or len({frozenset(f) for f in facets}) != len(facets):
        raise ValueError("gluing is not simplicial; use more rounds")
    return order_complex(facets, name=f"dunce{rounds}")


def corpus() -> list[tuple[str, Graph, int]]:
    """Digital manifolds with their dimensions."""
    items = [(f"S{n}min", minimal_sphere(n), n) for n in (1, 2, 3)]
    items += [(f"C{k}", cycle(k), 1) for k in (5, 6, 8)]
    items += [("T16", torus16(), 2), ("T5x4", triangulated_torus(5, 4), 2)]
    items += [(f"S2sub{k}", subdivided_sphere(2, k, seed=k), 2) for k in (8, 12, 16)]
    items += [(f"S3sub{k}", subdivided_sphere(3, k, seed=k), 3) for k in (10, 14)]
    return items
