"""Independent reference implementations used only by the tests.

Nothing here imports the package's algorithms; graphs are plain
``(n, frozenset of (i, j) pairs)`` or networkx objects.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from itertools import combinations, permutations

import networkx as nx
import numpy as np


# -- homology over GF(2) with dense numpy matrices -----------------------


def flag_simplices(G: nx.Graph) -> list[list[frozenset]]:
    by_size: dict[int, list[frozenset]] = {}
    for c in nx.enumerate_all_cliques(G):
        by_size.setdefault(len(c), []).append(frozenset(c))
    return [by_size[k] for k in sorted(by_size)]


def gf2_rank_dense(m: np.ndarray) -> int:
    a = (m.copy() % 2).astype(np.uint8)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i, c]), None)
        if pivot is None:
            continue
        a[[r, pivot]] = a[[pivot, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def betti_dense(G: nx.Graph) -> list[int]:
    levels = flag_simplices(G)
    if not levels:
        return []
    ranks = [0] * (len(levels) + 1)
    for k in range(1, len(levels)):
        idx = {s: i for i, s in enumerate(levels[k - 1])}
        m = np.zeros((len(levels[k - 1]), len(levels[k])), dtype=np.uint8)
        for j, s in enumerate(levels[k]):
            for v in s:
                m[idx[s - {v}], j] = 1
        ranks[k] = gf2_rank_dense(m)
    out = [len(levels[k]) - ranks[k] - ranks[k + 1] for k in range(len(levels))]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def euler_dense(G: nx.Graph) -> int:
    return sum((-1) ** k * len(lv) for k, lv in enumerate(flag_simplices(G)))


# -- exhaustive contractible-move search ---------------------------------

Small = tuple[int, frozenset]


def canon(n: int, edges: frozenset) -> Small:
    """Brute-force canonical form: lexicographically least relabelled edge set."""
    best = None
    for p in permutations(range(n)):
        key = tuple(sorted(tuple(sorted((p[a], p[b]))) for a, b in edges))
        if best is None or key < best:
            best = key
    return n, frozenset(best or ())


def _induced(n: int, edges: frozenset, keep: tuple[int, ...]) -> Small:
    pos = {v: i for i, v in enumerate(keep)}
    sub = frozenset((pos[a], pos[b]) for a, b in edges if a in pos and b in pos)
    return len(keep), sub


def _adj(n: int, edges: frozenset) -> list[set[int]]:
    adj = [set() for _ in range(n)]
    for a, b in edges:
        adj[a].add(b)
        adj[b].add(a)
    return adj


class MoveOracle:
    """Contractible graphs up to ``cap`` vertices by fixpoint over move graphs.

    A graph is contractible when it is connected to the one-point graph by
    the four moves; each move's legality asks whether a smaller (or equal)
    graph is contractible.  Searching inside graphs of at most ``cap``
    vertices and iterating until the answer set is stable gives the least
    family closed under the moves.
    """

    def __init__(self, cap: int) -> None:
        self.cap = cap
        self._canon: dict[Small, Small] = {}
        self.contractible: set[Small] = {canon(1, frozenset())}
        while True:
            before = len(self.contractible)
            self.contractible |= self._component()
            if len(self.contractible) == before:
                break

    def key(self, n: int, edges: frozenset) -> Small:
        k = (n, edges)
        if k not in self._canon:
            self._canon[k] = canon(n, edges)
        return self._canon[k]

    def _ok(self, n: int, edges: frozenset, verts: tuple[int, ...]) -> bool:
        if not verts:
            return False
        return self.key(*_induced(n, edges, verts)) in self.contractible

    def _neighbours(self, n: int, edges: frozenset):
        adj = _adj(n, edges)
        for v in range(n):
            if n > 1 and self._ok(n, edges, tuple(sorted(adj[v]))):
                keep = tuple(i for i in range(n) if i != v)
                yield _induced(n, edges, keep)
        for a, b in edges:
            if self._ok(n, edges, tuple(sorted(adj[a] & adj[b]))):
                yield n, edges - {(a, b)}
        for a, b in combinations(range(n), 2):
            if (a, b) not in edges and self._ok(n, edges, tuple(sorted(adj[a] & adj[b]))):
                yield n, edges | {(a, b)}
        if n < self.cap:
            for k in range(1, n + 1):
                for att in combinations(range(n), k):
                    if self._ok(n, edges, att):
                        yield n + 1, edges | {(a, n) for a in att}

    def _component(self) -> set[Small]:
        start = canon(1, frozenset())
        seen = {start}
        queue = deque([start])
        while queue:
            n, edges = queue.popleft()
            for m, e in self._neighbours(n, edges):
                k = self.key(m, frozenset(e))
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        return seen

    def is_contractible(self, G: nx.Graph) -> bool:
        nodes = sorted(G.nodes)
        pos = {v: i for i, v in enumerate(nodes)}
        edges = frozenset(tuple(sorted((pos[a], pos[b]))) for a, b in G.edges)
        return self.key(len(nodes), edges) in self.contractible


@lru_cache(maxsize=1)
def move_oracle(cap: int = 6) -> MoveOracle:
    return MoveOracle(cap)


# -- chordless cycles ----------------------------------------------------


def is_chordless_cycle(G: nx.Graph) -> bool:
    """Brute force: some cyclic order of all vertices is a cycle with no chords."""
    n = G.number_of_nodes()
    if n < 4 or G.number_of_edges() != n:
        return False
    nodes = list(G.nodes)
    first, rest = nodes[0], nodes[1:]
    for p in permutations(rest):
        order = (first, *p)
        ring = {frozenset((order[i], order[(i + 1) % n])) for i in range(n)}
        if all(G.has_edge(*tuple(e)) for e in ring):
            return {frozenset(e) for e in G.edges} == ring
    return False
