"""Simple undirected graphs with named vertices.

Every digital space in this package (manifolds, spheres, disks, nerves of
covers, digitized surfaces) is a :class:`Graph`.  Graphs are immutable; all
operations return new graphs.  Internally each vertex owns an index and its
neighbourhood is stored as an integer bitmask, which the recognisers in
:mod:`digitopo.homotopy` and :mod:`digitopo.classify` work on directly.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from typing import Any


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph operations."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """An immutable simple graph whose vertices are text names.

    Parameters
    ----------
    vertices : iterable of str
        Vertex names, in the order that defines the graph's vertex order.
    edges : iterable of pairs
        Unordered vertex pairs.  Repeated pairs are merged; self-loops and
        unknown endpoints raise :class:`GraphError`.
    name : str
        Free-form label carried into JSON output.
    """

    __slots__ = ("_names", "_index", "_adj", "name", "_memo")

    def __init__(
        self,
        vertices: Iterable[str] = (),
        edges: Iterable[Sequence[str]] = (),
        name: str = "",
    ) -> None:
        names = tuple(vertices)
        index: dict[str, int] = {}
        for i, v in enumerate(names):
            if not isinstance(v, str):
                raise GraphError(f"vertex names must be text, got {v!r}")
            if v in index:
                raise GraphError(f"duplicate vertex {v!r}")
            index[v] = i
        adj = [0] * len(names)
        for e in edges:
            u, v = e
            if u not in index or v not in index:
                raise GraphError(f"edge {u!r}-{v!r} has an unknown endpoint")
            if u == v:
                raise GraphError(f"self-loop on {u!r}")
            iu, iv = index[u], index[v]
            adj[iu] |= 1 << iv
            adj[iv] |= 1 << iu
        self._names = names
        self._index = index
        self._adj = tuple(adj)
        self.name = name
        self._memo: dict[str, Any] = {}

    @classmethod
    def _from_masks(cls, names: Sequence[str], adj: Sequence[int], name: str = "") -> Graph:
        g = cls.__new__(cls)
        g._names = tuple(names)
        g._index = {v: i for i, v in enumerate(g._names)}
        g._adj = tuple(adj)
        g.name = name
        g._memo = {}
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._names

    @property
    def edges(self) -> list[tuple[str, str]]:
        out = []
        for i, m in enumerate(self._adj):
            for j in iter_bits(m >> (i + 1)):
                out.append((self._names[i], self._names[i + 1 + j]))
        return out

    @property
    def n_vertices(self) -> int:
        return len(self._names)

    @property
    def n_edges(self) -> int:
        return sum(m.bit_count() for m in self._adj) // 2

    @property
    def full_mask(self) -> int:
        return (1 << len(self._names)) - 1

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self) -> Iterator[str]:
        return iter(self._names)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} |V|={self.n_vertices} |E|={self.n_edges}>"

    def __eq__(self, other: object) -> bool:
        # labelled equality: same vertex names, same edges; order ignored
        if not isinstance(other, Graph):
            return NotImplemented
        if set(self._names) != set(other._names):
            return False
        return self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        return hash((frozenset(self._names), self.edge_set()))

    def edge_set(self) -> frozenset[frozenset[str]]:
        if "edge_set" not in self._memo:
            self._memo["edge_set"] = frozenset(frozenset(e) for e in self.edges)
        return self._memo["edge_set"]

    def index(self, v: str) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise GraphError(f"unknown vertex {v!r}") from None

    def mask(self, vs: Iterable[str]) -> int:
        m = 0
        for v in vs:
            m |= 1 << self.index(v)
        return m

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(self._names[i] for i in iter_bits(mask))

    def adjacency_masks(self) -> tuple[int, ...]:
        return self._adj

    def neighbors(self, v: str) -> tuple[str, ...]:
        return self.names_of(self._adj[self.index(v)])

    def degree(self, v: str) -> int:
        return self._adj[self.index(v)].bit_count()

    def has_edge(self, u: str, v: str) -> bool:
        return bool(self._adj[self.index(u)] >> self.index(v) & 1)

    # -- derived graphs --------------------------------------------------

    def induced_mask(self, mask: int, name: str = "") -> Graph:
        idx = list(iter_bits(mask))
        pos = {old: new for new, old in enumerate(idx)}
        adj = []
        for old in idx:
            m = 0
            for j in iter_bits(self._adj[old] & mask):
                m |= 1 << pos[j]
            adj.append(m)
        return Graph._from_masks([self._names[i] for i in idx], adj, name)

    def induced(self, vs: Iterable[str], name: str = "") -> Graph:
        """Induced subgraph on ``vs``; the host's vertex order is kept."""
        return self.induced_mask(self.mask(vs), name)

    def without(self, vs: Iterable[str] | str) -> Graph:
        if isinstance(vs, str):
            vs = (vs,)
        return self.induced_mask(self.full_mask & ~self.mask(vs), self.name)

    def with_vertex(self, v: str, neighbors: Iterable[str] = ()) -> Graph:
        if v in self._index:
            raise GraphError(f"vertex {v!r} already present")
        nb = self.mask(neighbors)
        k = len(self._names)
        adj = [m | (1 << k) if nb >> i & 1 else m for i, m in enumerate(self._adj)]
        adj.append(nb)
        return Graph._from_masks(self._names + (v,), adj, self.name)

    def with_edge(self, u: str, v: str) -> Graph:
        iu, iv = self.index(u), self.index(v)
        if iu == iv:
            raise GraphError(f"self-loop on {u!r}")
        adj = list(self._adj)
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
        return Graph._from_masks(self._names, adj, self.name)

    def without_edge(self, u: str, v: str) -> Graph:
        iu, iv = self.index(u), self.index(v)
        if not self._adj[iu] >> iv & 1:
            raise GraphError(f"no edge {u!r}-{v!r}")
        adj = list(self._adj)
        adj[iu] &= ~(1 << iv)
        adj[iv] &= ~(1 << iu)
        return Graph._from_masks(self._names, adj, self.name)

    def relabel(self, mapping: Mapping[str, str] | Callable[[str], str]) -> Graph:
        f = mapping if callable(mapping) else (lambda v: mapping.get(v, v))
        return Graph._from_masks([f(v) for v in self._names], self._adj, self.name)

    def renamed(self, name: str) -> Graph:
        return Graph._from_masks(self._names, self._adj, name)

    # -- connectivity ----------------------------------------------------

    def component_masks(self, mask: int | None = None) -> list[int]:
        return component_masks(self._adj, self.full_mask if mask is None else mask)

    def components(self) -> list[tuple[str, ...]]:
        return [self.names_of(m) for m in self.component_masks()]

    def is_connected(self) -> bool:
        return len(self.component_masks()) == 1

    # -- serialisation ---------------------------------------------------

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "vertices": list(self._names),
            "edges": [list(e) for e in self.edges],
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Graph:
        """Strict reader for the graph JSON format.

        Rejects duplicate vertices, duplicate edges, self-loops and edges
        with unknown endpoints.
        """
        if not isinstance(data, Mapping) or "vertices" not in data or "edges" not in data:
            raise GraphError("graph JSON needs 'vertices' and 'edges'")
        vertices = data["vertices"]
        seen: set[frozenset[str]] = set()
        edges = []
        for e in data["edges"]:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise GraphError(f"malformed edge {e!r}")
            key = frozenset(e)
            if key in seen:
                raise GraphError(f"duplicate edge {e!r}")
            seen.add(key)
            edges.append(tuple(e))
        return cls(vertices, edges, name=str(data.get("name", "")))

    @classmethod
    def from_json(cls, text: str) -> Graph:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_edgelist(self) -> str:
        lines = [f"# {self.name}"] if self.name else []
        lines += [v for v in self._names if not self._adj[self._index[v]]]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_edgelist(cls, text: str, name: str = "") -> Graph:
        """Parse ``u v`` lines; a lone token declares an isolated vertex."""
        vertices: dict[str, None] = {}
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) > 2:
                raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
            for p in parts:
                vertices.setdefault(p, None)
            if len(parts) == 2:
                edges.append((parts[0], parts[1]))
        return cls(vertices, edges, name=name)

    def digest(self) -> str:
        """Label-sensitive fingerprint: equal digests iff ``==`` graphs."""
        if "digest" not in self._memo:
            payload = json.dumps(
                [sorted(self._names), sorted(sorted(e) for e in self.edges)],
                separators=(",", ":"),
            )
            self._memo["digest"] = hashlib.sha256(payload.encode()).hexdigest()[:32]
        return self._memo["digest"]


def component_masks(adj: Sequence[int], mask: int) -> list[int]:
    """Connected components of the subgraph induced by ``mask``."""
    comps = []
    rest = mask
    while rest:
        frontier = rest & -rest
        comp = frontier
        while frontier:
            nxt = 0
            for i in iter_bits(frontier):
                nxt |= adj[i]
            frontier = nxt & rest & ~comp
            comp |= frontier
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(adj: Sequence[int], mask: int) -> bool:
    if not mask:
        return False
    comp = frontier = mask & -mask
    while frontier:
        nxt = 0
        for i in iter_bits(frontier):
            nxt |= adj[i]
        frontier = nxt & mask & ~comp
        comp |= frontier
    return comp == mask


# -- named constructions -------------------------------------------------


def rim(g: Graph, v: str) -> Graph:
    """Induced subgraph on the neighbours of ``v`` (``v`` excluded)."""
    return g.induced_mask(g.adjacency_masks()[g.index(v)])


def ball(g: Graph, v: str) -> Graph:
    """Induced subgraph on ``v`` and its neighbours."""
    i = g.index(v)
    return g.induced_mask(g.adjacency_masks()[i] | 1 << i)


def joint_rim(g: Graph, vs: Iterable[str]) -> Graph:
    """Induced subgraph on the common neighbours of every vertex in ``vs``."""
    vs = list(vs)
    if not vs:
        raise GraphError("joint rim of an empty vertex set")
    m = g.full_mask
    adj = g.adjacency_masks()
    for v in vs:
        m &= adj[g.index(v)]
    return g.induced_mask(m)


def _fresh(name: str, taken: set[str]) -> str:
    k = 1
    while f"{name}.{k}" in taken:
        k += 1
    return f"{name}.{k}"


def disjoint_union(g: Graph, h: Graph, *, name: str = "") -> tuple[Graph, dict[str, str]]:
    """Disjoint union; ``h``'s colliding names get a ``.k`` suffix.

    Returns the union and the renaming applied to ``h``.
    """
    taken = set(g.vertices)
    ren: dict[str, str] = {}
    for v in h.vertices:
        new = v if v not in taken else _fresh(v, taken | set(h.vertices))
        ren[v] = new
        taken.add(new)
    n = g.n_vertices
    adj = list(g.adjacency_masks()) + [m << n for m in h.adjacency_masks()]
    names = list(g.vertices) + [ren[v] for v in h.vertices]
    return Graph._from_masks(names, adj, name), ren


def join(g: Graph, h: Graph, *, name: str = "") -> Graph:
    """Disjoint union of ``g`` and ``h`` plus every edge between them."""
    u, _ = disjoint_union(g, h)
    n, m = g.n_vertices, h.n_vertices
    gmask = (1 << n) - 1
    hmask = ((1 << m) - 1) << n
    adj = [a | hmask if i < n else a | gmask for i, a in enumerate(u.adjacency_masks())]
    return Graph._from_masks(u.vertices, adj, name)


def cone(g: Graph, apex: str = "apex", *, name: str = "") -> Graph:
    """The cone ``apex (+) g``."""
    return join(Graph([apex]), g, name=name)


def connected_sum(g: Graph, h: Graph, iso: Mapping[str, str], *, name: str = "") -> Graph:
    """Glue ``g`` and ``h`` by identifying ``a`` in g with ``iso[a]`` in h.

    ``iso`` must be an isomorphism between the induced subgraphs on its keys
    (in ``g``) and its values (in ``h``).  Identified vertices keep g's names.
    """
    if not iso:
        raise GraphError("connected sum needs a non-empty gluing set")
    a_names = list(iso)
    b_names = [iso[a] for a in a_names]
    if len(set(b_names)) != len(b_names):
        raise GraphError("gluing map is not injective")
    for x in a_names:
        g.index(x)
    for y in b_names:
        h.index(y)
    for i, x in enumerate(a_names):
        for y in a_names[i + 1:]:
            if g.has_edge(x, y) != h.has_edge(iso[x], iso[y]):
                raise GraphError(f"gluing map does not preserve adjacency of {x!r},{y!r}")
    inv = {iso[a]: a for a in a_names}
    rest = [v for v in h.vertices if v not in inv]
    taken = set(g.vertices)
    ren: dict[str, str] = dict(inv)
    for v in rest:
        new = v if v not in taken else _fresh(v, taken | set(h.vertices))
        ren[v] = new
        taken.add(new)
    names = list(g.vertices) + [ren[v] for v in rest]
    edges = set(g.edge_set())
    for u, v in h.edges:
        edges.add(frozenset((ren[u], ren[v])))
    return Graph(names, [tuple(e) for e in sorted(edges, key=sorted)], name=name)


def intersection_graph(
    family: Sequence[tuple[str, Any]] | Mapping[str, Any],
    intersects: Callable[[Any, Any], bool] | None = None,
    *,
    name: str = "",
) -> Graph:
    """One vertex per named set, an edge iff the two sets meet.

    ``family`` is a mapping or a sequence of ``(name, set)`` pairs.  By default
    the members are Python sets; pass ``intersects`` for anything else.
    """
    items = list(family.items()) if isinstance(family, Mapping) else list(family)
    if intersects is None:
        intersects = lambda a, b: bool(set(a) & set(b))  # noqa: E731
    names = [str(k) for k, _ in items]
    edges = []
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            if intersects(items[i][1], items[j][1]):
                edges.append((names[i], names[j]))
    return Graph(names, edges, name=name)


def as_graph(obj: Graph | Mapping[Hashable, Iterable[Hashable]]) -> Graph:
    """Accept a :class:`Graph` or an adjacency mapping of hashables."""
    if isinstance(obj, Graph):
        return obj
    vertices = {str(v): None for v in obj}
    edges = set()
    for u, nbrs in obj.items():
        for v in nbrs:
            vertices.setdefault(str(v), None)
            if str(u) != str(v):
                edges.add(frozenset((str(u), str(v))))
    return Graph(vertices, [tuple(sorted(e)) for e in edges])
