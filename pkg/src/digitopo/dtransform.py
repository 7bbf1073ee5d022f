"""Disk transformations, compression and class numbers.

A merge replaces the interior of a digital n-disk by one point joined to
the disk's boundary; a split is the inverse.  Both are realised here as
explicit sequences of contractible moves, so every compression comes with
a replayable trace.
"""

from __future__ import annotations

import random
from collections.abc import Mapping
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any

from .canon import check_isomorphism
from .classify import (
    ENUM_BUDGET,
    DiskSpec,
    _Rec,
    is_minimal_sphere,
    is_n_disk,
)
from .graph import Graph, GraphError, iter_bits
from .homotopy import Budget, Host, Move, Trace, as_budget, reduce
from .invariants import betti_mod2, cliques, euler_characteristic
from .verdict import Verdict


class DiskError(GraphError):
    """A disk transformation was given an uncertified or mismatched disk."""


@dataclass
class ClassReport:
    """Smallest manifold found over several randomized compressions.

    ``achieved_min_points`` is an upper bound on the class number; it is not
    a proof of minimality.
    """

    achieved_min_points: int
    runs: int
    best_graph: Graph
    trace: Trace | None = None
    sizes: list[int] = field(default_factory=list)
    note: str = "upper bound on the class number"

    def to_dict(self) -> dict[str, Any]:
        return {
            "achieved_min_points": self.achieved_min_points,
            "runs": self.runs,
            "sizes": self.sizes,
            "note": self.note,
            "best_graph": self.best_graph.to_dict(),
        }


def _fresh_merge_name(taken) -> str:
    k = 0
    while f"m{k}" in taken:
        k += 1
    return f"m{k}"


# -- merge / split -------------------------------------------------------


def merge_disk(
    g: Graph,
    d: DiskSpec,
    v: str | None = None,
    budget: Budget | int | None = None,
    check: bool = True,
) -> Graph:
    """Replace ``Int D`` by a single point ``v`` adjacent to exactly ``∂D``.

    ``v`` may be a fresh name or a member of ``Int D``; by default it is the
    first unused name ``m0``, ``m1``, ...
    """
    if check:
        if set(d.vertices) - set(g.vertices):
            raise DiskError("disk vertices are not all in the graph")
        if not d.interior:
            raise DiskError("disk has an empty interior")
        sub = DiskSpec(g, d.vertices, d.boundary, d.interior, d.dim)
        if not sub.check(budget):
            raise DiskError("disk is not certified in this graph")
    if v is None:
        v = _fresh_merge_name(set(g.vertices))
    elif v in g and v not in d.interior:
        raise DiskError(f"survivor {v!r} must be fresh or an interior point")
    out = g.without(d.interior)
    return out.with_vertex(v, d.boundary)


def merge_moves(g: Graph, d: DiskSpec, v: str | None = None) -> Trace:
    """Contractible moves realising :func:`merge_disk` on ``g``."""
    if v is None:
        v = _fresh_merge_name(set(g.vertices))
    moves: list[Move] = []
    if v in d.interior:
        t = _fresh_merge_name(set(g.vertices) | {v})
        moves.append(Move.glue_point(t, d.vertices))
        moves += [Move.delete_point(x) for x in d.interior if x != v]
        vn = set(g.neighbors(v))
        moves += [Move.glue_edge(v, b) for b in d.boundary if b not in vn]
        moves.append(Move.delete_point(t))
    else:
        moves.append(Move.glue_point(v, d.vertices))
        moves += [Move.delete_point(x) for x in d.interior]
    end = merge_disk(g, d, v, check=False)
    return Trace(g, moves, end.digest())


def _disk_dim(d: Graph) -> int:
    return len(cliques(d).simplices) - 1


def split_vertex(
    g: Graph,
    v: str,
    d: Graph,
    iso: Mapping[str, str],
    n: int | None = None,
    budget: Budget | int | None = None,
) -> Graph:
    """Replace ``v`` by the interior of the disk ``d``.

    ``iso`` maps the boundary of ``d`` onto the rim of ``v``.  Interior
    names of ``d`` are kept unless they clash with ``g``.
    """
    return _split(g, v, d, iso, n, budget)[0]


def _split(g, v, d, iso, n, budget):
    if v not in g:
        raise GraphError(f"unknown vertex {v!r}")
    if n is None:
        n = _disk_dim(d)
    dv = is_n_disk(d, n, budget)
    if not dv.is_yes:
        raise DiskError(f"split needs a certified {n}-disk ({dv.outcome.value})")
    spec: DiskSpec = dv.witness
    if set(iso) != set(spec.boundary):
        raise DiskError("iso must be defined exactly on the disk boundary")
    rim_g = g.induced(g.neighbors(v))
    if not check_isomorphism(d.induced(spec.boundary), rim_g, dict(iso)):
        raise DiskError("iso is not an isomorphism from the disk boundary onto the rim")
    taken = set(g.vertices) - {v}
    ren: dict[str, str] = {}
    for x in spec.interior:
        new = x
        k = 1
        while new in taken:
            new = f"{x}.{k}"
            k += 1
        ren[x] = new
        taken.add(new)
    ren.update(iso)
    out = g.without(v)
    for x in spec.interior:
        out = out.with_vertex(ren[x])
    for a, b in d.edges:
        if a in spec.interior or b in spec.interior:
            if not out.has_edge(ren[a], ren[b]):
                out = out.with_edge(ren[a], ren[b])
    return out, [ren[x] for x in spec.interior], spec


def split_moves(
    g: Graph, v: str, d: Graph, iso: Mapping[str, str], n: int | None = None
) -> Trace:
    """Contractible moves realising :func:`split_vertex` on ``g``."""
    out, new_interior, _ = _split(g, v, d, iso, n, None)
    moves = []
    glued: set[str] = set()
    for x in new_interior:
        att = [y for y in out.neighbors(x) if y not in new_interior or y in glued]
        moves.append(Move.glue_point(x, [v] + att))
        glued.add(x)
    moves.append(Move.delete_point(v))
    return Trace(g, moves, out.digest())


# -- disk search ---------------------------------------------------------


class _State:
    """A graph being compressed: a mask inside a growable host."""

    def __init__(self, g: Graph, budget: Budget) -> None:
        self.host = Host(g.adjacency_masks())
        self.names = list(g.vertices)
        self.cur = g.full_mask
        self.rec = _Rec(self.host, budget)
        self.moves: list[Move] = []

    @property
    def adj(self) -> list[int]:
        return self.host.adj

    def graph(self, name: str = "") -> Graph:
        idx = list(iter_bits(self.cur))
        pos = {old: k for k, old in enumerate(idx)}
        adj = []
        for i in idx:
            m = 0
            for j in iter_bits(self.adj[i] & self.cur):
                m |= 1 << pos[j]
            adj.append(m)
        return Graph._from_masks([self.names[i] for i in idx], adj, name)

    def closed_nbhd(self, interior: int) -> int:
        d = interior
        for i in iter_bits(interior):
            d |= self.adj[i]
        return d & self.cur

    def interior_of(self, dmask: int, n: int) -> int:
        _, bd = self.rec.mwb(dmask, n)
        return dmask & ~bd

    def is_big_disk(self, dmask: int, n: int) -> bool:
        if dmask == self.cur or self.rec.disk(dmask, n) is not True:
            return False
        return self.interior_of(dmask, n).bit_count() >= 2

    def merge(self, dmask: int, n: int) -> None:
        inner = self.interior_of(dmask, n)
        bd = dmask & ~inner
        name = _fresh_merge_name(set(self.names))
        k = self.host.add_vertex(bd)
        self.names.append(name)
        self.moves.append(Move.glue_point(name, [self.names[i] for i in iter_bits(dmask)]))
        self.moves += [Move.delete_point(self.names[i]) for i in iter_bits(inner)]
        self.cur = (self.cur & ~inner) | 1 << k


def _search(st: _State, n: int, rng: random.Random, tries: int) -> int | None:
    verts = list(iter_bits(st.cur))
    order = verts[:]
    rng.shuffle(order)
    # punctures: in a sphere every M - w is a disk
    for w in order:
        d = st.cur & ~(1 << w)
        if (d & ~st.adj[w]).bit_count() >= 2 and st.is_big_disk(d, n):
            return d
    pairs = [(u, v) for u in verts for v in iter_bits(st.adj[u] & st.cur) if u < v]
    rng.shuffle(pairs)
    for u, v in pairs:
        d = st.closed_nbhd(1 << u | 1 << v)
        if st.is_big_disk(d, n):
            return d
    for _ in range(tries):
        inner = 1 << rng.choice(verts)
        for _ in range(rng.randint(2, max(2, len(verts) // 2))):
            frontier = list(iter_bits(st.closed_nbhd(inner) & ~inner))
            if not frontier:
                break
            inner |= 1 << rng.choice(frontier)
            d = st.closed_nbhd(inner)
            if d == st.cur:
                break
            if st.is_big_disk(d, n):
                return d
    return None


def find_disk(
    g: Graph, n: int, budget: Budget | int | None = None, seed: int = 0, tries: int = 200
) -> DiskSpec | None:
    """Look for an n-disk with at least two interior points.

    Punctured graphs ``g - w`` are tried first, then closed neighbourhoods
    of adjacent pairs, then ``tries`` randomly grown interiors.
    """
    st = _State(g, as_budget(budget))
    d = _search(st, n, random.Random(seed), tries)
    if d is None:
        return None
    inner = st.interior_of(d, n)
    names = st.names
    return DiskSpec(
        g,
        tuple(names[i] for i in iter_bits(d)),
        tuple(names[i] for i in iter_bits(d & ~inner)),
        tuple(names[i] for i in iter_bits(inner)),
        n,
    )


def compress(
    g: Graph, n: int, budget: Budget | int | None = None, seed: int = 0, tries: int = 200
) -> tuple[Graph, Trace]:
    """Merge disks with two or more interior points until none is found.

    Returns the compressed graph and the contractible moves leading to it.
    """
    st = _State(g, as_budget(budget))
    rng = random.Random(seed)
    while is_minimal_sphere(st.graph()) is None:
        d = _search(st, n, rng, tries)
        if d is None:
            break
        st.merge(d, n)
    out = st.graph(g.name)
    return out, Trace(g, st.moves, out.digest())


def _pool_subsets(pool: int, min_size: int):
    bits = [1 << i for i in iter_bits(pool)]
    for k in range(min_size, len(bits) + 1):
        for combo in combinations(bits, k):
            m = 0
            for x in combo:
                m |= x
            yield m


def _on_short_cycle(adj: list[int], cur: int, u: int, v: int) -> bool:
    # an induced 4-cycle u - v - y - x - u
    for y in iter_bits(adj[v] & cur & ~adj[u] & ~(1 << u)):
        if adj[y] & adj[u] & cur & ~adj[v] & ~(1 << v):
            return True
    return False


def is_compressed(
    g: Graph,
    n: int,
    budget: Budget | int | None = None,
    max_candidates: int = ENUM_BUDGET,
) -> Verdict:
    """Decide whether every n-disk in the manifold ``g`` is a vertex ball.

    Any disk misses some point ``w``, so its interior lies in
    ``V - U(w)``; the subsets of those sets are scanned up to
    ``max_candidates``.  Two necessary conditions of compressedness are also
    checked: each edge lies on an induced 4-cycle, and no two separate points
    have a joint rim that is an (n-1)-disk.
    """
    st = _State(g, as_budget(budget))
    d = _search(st, n, random.Random(0), tries=0)
    if d is not None:
        return Verdict.no(certificate={"disk": list(st.graph().names_of(d))})
    adj, cur = st.adj, st.cur
    for u in iter_bits(cur):
        for v in iter_bits(adj[u] & cur):
            if u < v and not _on_short_cycle(adj, cur, u, v):
                return Verdict.no(certificate={"edge_off_4_cycle": [st.names[u], st.names[v]]})
    for u in iter_bits(cur):
        for v in iter_bits(cur & ~adj[u]):
            if u < v and st.rec.disk(adj[u] & adj[v] & cur, n - 1) is True:
                return Verdict.no(certificate={"joint_rim_disk": [st.names[u], st.names[v]]})
    seen: set[int] = set()
    spent = 0
    for w in iter_bits(cur):
        pool = cur & ~(adj[w] | 1 << w)
        for inner in _pool_subsets(pool, 2):
            if inner in seen:
                continue
            seen.add(inner)
            spent += 1
            if spent > max_candidates:
                return Verdict.unknown(budget_spent=spent, note="candidate budget exhausted")
            dm = st.closed_nbhd(inner)
            if st.is_big_disk(dm, n):
                return Verdict.no(certificate={"disk": [st.names[i] for i in iter_bits(dm)]},
                                  budget_spent=spent)
    return Verdict.yes(budget_spent=spent)


def class_number(
    g: Graph, n: int, runs: int = 20, budget: Budget | int | None = None, seed: int = 0
) -> ClassReport:
    """Fewest points reached over ``runs`` seeded compressions (an upper bound)."""
    best: tuple[Graph, Trace] | None = None
    sizes = []
    for k in range(runs):
        small, trace = compress(g, n, budget, seed=seed + k)
        sizes.append(small.n_vertices)
        if best is None or small.n_vertices < best[0].n_vertices:
            best = (small, trace)
    if best is None:
        return ClassReport(g.n_vertices, 0, g)
    return ClassReport(best[0].n_vertices, runs, best[0], best[1], sizes)


def punctured_profile(g: Graph, budget: Budget | int | None = None) -> dict[str, Any]:
    """Invariants of ``reduce(g - v)``, checked to be the same for every ``v``."""
    profiles = {}
    for v in g.vertices:
        red, _ = reduce(g.without(v), budget)
        profiles[v] = (euler_characteristic(red), tuple(betti_mod2(red)), red.n_vertices)
    first = g.vertices[0]
    chi, betti, size = profiles[first]
    same = all(p[:2] == (chi, betti) for p in profiles.values())
    return {
        "chi": chi,
        "betti": list(betti),
        "reduced_vertices": size,
        "vertex_independent": same,
        "punctured_at": first,
    }
