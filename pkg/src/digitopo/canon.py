"""Canonical labelling and exact isomorphism for small graphs.

Individualization-refinement: colour refinement to an equitable ordered
partition, then branch on the first non-singleton cell.  Leaves are compared
by their relabelled adjacency rows; equal leaves yield automorphisms that
prune sibling branches in the same orbit.
"""

from __future__ import annotations

from collections.abc import Sequence

from .graph import Graph, iter_bits
from .verdict import Verdict

SIZE_CAP = 64


class SizeCapExceeded(RuntimeError):
    """The graph is above the exact-isomorphism size cap."""


def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    cells = [c for c in cells]
    while True:
        for s in range(len(cells)):
            smask = 0
            for v in cells[s]:
                smask |= 1 << v
            new: list[list[int]] = []
            split = False
            for cell in cells:
                if len(cell) == 1:
                    new.append(cell)
                    continue
                groups: dict[int, list[int]] = {}
                for v in cell:
                    groups.setdefault((adj[v] & smask).bit_count(), []).append(v)
                if len(groups) == 1:
                    new.append(cell)
                else:
                    split = True
                    new.extend(groups[k] for k in sorted(groups))
            if split:
                cells = new
                break
        else:
            return cells


def _certificate(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    pos = {v: k for k, v in enumerate(order)}
    rows = []
    for v in order:
        m = 0
        for u in iter_bits(adj[v]):
            m |= 1 << pos[u]
        rows.append(m)
    return tuple(rows)


class _Search:
    def __init__(self, adj: Sequence[int]) -> None:
        self.adj = adj
        self.n = len(adj)
        self.first: tuple[tuple[int, ...], list[int]] | None = None
        self.best: tuple[tuple[int, ...], list[int]] | None = None
        self.autos: list[list[int]] = []

    def run(self) -> list[int]:
        if self.n == 0:
            return []
        # degree classes give a cheap invariant first split
        start = _refine(self.adj, [list(range(self.n))])
        self._visit(start, [])
        assert self.best is not None
        return self.best[1]

    def _orbit_rep(self, prefix: list[int]) -> list[int]:
        parent = list(range(self.n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if all(g[p] == p for p in prefix):
                for x in range(self.n):
                    a, b = find(x), find(g[x])
                    if a != b:
                        parent[a] = b
        return [find(x) for x in range(self.n)]

    def _visit(self, cells: list[list[int]], prefix: list[int]) -> None:
        if len(cells) == self.n:
            order = [c[0] for c in cells]
            cert = _certificate(self.adj, order)
            if self.first is None:
                self.first = self.best = (cert, order)
                return
            for ref in (self.first, self.best):
                if cert == ref[0]:
                    g = [0] * self.n
                    for a, b in zip(ref[1], order):
                        g[a] = b
                    self.autos.append(g)
                    return
            if cert > self.best[0]:
                self.best = (cert, order)
            return
        k = next(i for i, c in enumerate(cells) if len(c) > 1)
        target = sorted(cells[k])
        done: list[int] = []
        for v in target:
            if done:
                rep = self._orbit_rep(prefix)
                if any(rep[v] == rep[d] for d in done):
                    continue
            rest = [u for u in cells[k] if u != v]
            child = cells[:k] + [[v], rest] + cells[k + 1:]
            self._visit(_refine(self.adj, child), prefix + [v])
            done.append(v)


def canonical_order(g: Graph) -> list[str]:
    """Vertices of ``g`` listed in canonical order."""
    if g.n_vertices > SIZE_CAP:
        raise SizeCapExceeded(f"{g.n_vertices} vertices exceeds the cap of {SIZE_CAP}")
    memo = g._memo
    if "canon" not in memo:
        order = _Search(g.adjacency_masks()).run()
        memo["canon"] = [g.vertices[i] for i in order]
    return list(memo["canon"])


def canonical_key(g: Graph) -> tuple:
    """Hashable key; equal for two graphs exactly when they are isomorphic."""
    if "canon_key" not in g._memo:
        order = canonical_order(g)
        idx = [g.index(v) for v in order]
        g._memo["canon_key"] = (g.n_vertices,) + _certificate(g.adjacency_masks(), idx)
    return g._memo["canon_key"]


def canonical_form(g: Graph) -> Graph:
    """Relabel ``g`` with vertex names ``"0".."n-1"`` in canonical order."""
    order = canonical_order(g)
    return g.induced(order).relabel({v: str(k) for k, v in enumerate(order)}).renamed(g.name)


def _degree_sequence(g: Graph) -> list[int]:
    return sorted(m.bit_count() for m in g.adjacency_masks())


def is_isomorphic(g: Graph, h: Graph) -> Verdict:
    """Exact isomorphism test with a mapping ``g -> h`` as witness."""
    if g.n_vertices != h.n_vertices:
        return Verdict.no(certificate={"vertices": [g.n_vertices, h.n_vertices]})
    if g.n_edges != h.n_edges:
        return Verdict.no(certificate={"edges": [g.n_edges, h.n_edges]})
    if _degree_sequence(g) != _degree_sequence(h):
        return Verdict.no(certificate={"degrees": [_degree_sequence(g), _degree_sequence(h)]})
    if g.n_vertices > SIZE_CAP:
        return Verdict.unknown(note=f"above size cap {SIZE_CAP}")
    if canonical_key(g) != canonical_key(h):
        return Verdict.no(certificate="canonical forms differ")
    mapping = dict(zip(canonical_order(g), canonical_order(h)))
    return Verdict.yes(witness=mapping)


def check_isomorphism(g: Graph, h: Graph, mapping: dict[str, str]) -> bool:
    """Independent check that ``mapping`` is an isomorphism ``g -> h``."""
    if set(mapping) != set(g.vertices) or set(mapping.values()) != set(h.vertices):
        return False
    if len(set(mapping.values())) != len(mapping):
        return False
    vs = list(g.vertices)
    for i, u in enumerate(vs):
        for w in vs[i + 1:]:
            if g.has_edge(u, w) != h.has_edge(mapping[u], mapping[w]):
                return False
    return True
