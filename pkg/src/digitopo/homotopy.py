"""Contractible transformations and contractibility.

Four moves generate the homotopy relation on graphs: deleting or gluing a
point whose rim (for a glue, the attachment set) is contractible, and
deleting or gluing an edge whose endpoints have a contractible joint rim.
A graph is contractible when some sequence of moves takes it to a single
point.

Contractibility is decided by greedy point deletion, which is memoized on
vertex bitmasks of a shared :class:`Host`.  When greedy deletion stalls, the
Euler characteristic and mod-2 Betti numbers of the stalled graph are
checked (a mismatch with the point is a proof of non-contractibility); if
they look like a point, a budgeted depth-first search over all four moves
takes over.  Exhausting the budget yields Unknown, never No.
"""

from __future__ import annotations

import os
from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

from .canon import SIZE_CAP, canonical_key
from .graph import Graph, GraphError, component_masks, is_connected_mask, iter_bits
from .invariants import betti_mask, euler_characteristic_mask, is_trivial
from .verdict import Verdict

DEFAULT_BUDGET = int(os.environ.get("DIGITOPO_BUDGET", "200"))

DELETE_POINT = "delete-point"
GLUE_POINT = "glue-point"
DELETE_EDGE = "delete-edge"
GLUE_EDGE = "glue-edge"
KINDS = (DELETE_POINT, GLUE_POINT, DELETE_EDGE, GLUE_EDGE)


class MoveError(GraphError):
    """A move is malformed or not valid on the given graph."""


class Budget:
    """Counter of candidate moves examined by the fallback search."""

    def __init__(self, limit: int | None = None) -> None:
        self.limit = DEFAULT_BUDGET if limit is None else int(limit)
        self.spent = 0

    def take(self) -> bool:
        if self.spent >= self.limit:
            return False
        self.spent += 1
        return True

    @property
    def exhausted(self) -> bool:
        return self.spent >= self.limit

    def __repr__(self) -> str:
        return f"Budget({self.spent}/{self.limit})"


def as_budget(budget: Budget | int | None) -> Budget:
    return budget if isinstance(budget, Budget) else Budget(budget)


@dataclass(frozen=True)
class Move:
    """One contractible transformation.

    ``target`` is ``(v,)`` for point moves and ``(u, v)`` for edge moves;
    ``attachment`` is the rim of a glued point.
    """

    kind: str
    target: tuple[str, ...]
    attachment: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        want = 1 if self.kind in (DELETE_POINT, GLUE_POINT) else 2
        if len(self.target) != want:
            raise MoveError(f"{self.kind} takes {want} target vertex(es), got {self.target!r}")
        if self.kind != GLUE_POINT and self.attachment:
            raise MoveError(f"{self.kind} takes no attachment")
        if want == 2 and self.target[0] == self.target[1]:
            raise MoveError("edge move on a single vertex")

    @classmethod
    def delete_point(cls, v: str) -> Move:
        return cls(DELETE_POINT, (v,))

    @classmethod
    def glue_point(cls, v: str, attachment: Iterable[str]) -> Move:
        return cls(GLUE_POINT, (v,), tuple(attachment))

    @classmethod
    def delete_edge(cls, u: str, v: str) -> Move:
        return cls(DELETE_EDGE, (u, v))

    @classmethod
    def glue_edge(cls, u: str, v: str) -> Move:
        return cls(GLUE_EDGE, (u, v))

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"kind": self.kind, "target": list(self.target)}
        if self.kind == GLUE_POINT:
            out["attachment"] = list(self.attachment)
        return out

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Move:
        try:
            return cls(data["kind"], tuple(data["target"]), tuple(data.get("attachment", ())))
        except (KeyError, TypeError) as exc:
            raise MoveError(f"malformed move record {data!r}") from exc


@dataclass
class Trace:
    """A replayable move sequence from ``start`` to the graph with ``end_digest``."""

    start: Graph
    moves: list[Move] = field(default_factory=list)
    end_digest: str = ""

    @property
    def start_digest(self) -> str:
        return self.start.digest()

    def __len__(self) -> int:
        return len(self.moves)

    def replay(self, validate: bool = True, budget: int | None = None) -> Graph:
        """Apply every move to ``start``; raises :class:`MoveError` on failure."""
        g = self.start
        for m in self.moves:
            g = apply_move(g, m, budget=budget, check=validate)
        if self.end_digest and g.digest() != self.end_digest:
            raise MoveError("replay did not reach the recorded end graph")
        return g

    def then(self, other: Trace) -> Trace:
        return Trace(self.start, self.moves + other.moves, other.end_digest)

    def to_dict(self) -> dict[str, Any]:
        return {
            "start": self.start.to_dict(),
            "start_digest": self.start_digest,
            "end_digest": self.end_digest,
            "moves": [m.to_dict() for m in self.moves],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Trace:
        start = Graph.from_dict(data["start"])
        if data.get("start_digest") and data["start_digest"] != start.digest():
            raise MoveError("trace start graph does not match its digest")
        moves = [Move.from_dict(m) for m in data.get("moves", [])]
        return cls(start, moves, data.get("end_digest", ""))


class Host:
    """Adjacency bitmasks plus memoized contractibility of induced subgraphs.

    Vertices may be appended (:meth:`add_vertex`) without invalidating the
    memo: a new vertex only gains edges to existing ones, so every mask not
    containing it still induces the same subgraph.
    """

    def __init__(self, adj: Sequence[int]) -> None:
        self.adj = list(adj)
        self._contr: dict[int, bool] = {}
        self._unknown: dict[int, int] = {}
        self.memo: dict[Any, Any] = {}  # scratch space for other modules

    @classmethod
    def of(cls, g: Graph) -> Host:
        host = g._memo.get("host")
        if host is None:
            host = g._memo["host"] = cls(g.adjacency_masks())
        return host

    def add_vertex(self, nbrs: int) -> int:
        k = len(self.adj)
        for i in iter_bits(nbrs):
            self.adj[i] |= 1 << k
        self.adj.append(nbrs)
        return k

    def is_cone(self, mask: int) -> bool:
        adj = self.adj
        for i in iter_bits(mask):
            if (adj[i] | 1 << i) & mask == mask:
                return True
        return False

    def greedy(self, mask: int, budget: Budget | None = None) -> tuple[int, list[int]]:
        """Delete points with contractible rims until none is left.

        Returns the stalled mask and the deleted indices in order.
        """
        adj = self.adj
        cur = mask
        deleted: list[int] = []
        queue = deque(iter_bits(mask))
        queued = mask
        while queue and cur & (cur - 1):
            v = queue.popleft()
            queued &= ~(1 << v)
            if not cur >> v & 1:
                continue
            r = adj[v] & cur
            if r and self.contractible(r, budget) is True:
                cur ^= 1 << v
                deleted.append(v)
                fresh = r & ~queued
                queue.extend(iter_bits(fresh))
                queued |= fresh
        return cur, deleted

    def stall_invariants(self, mask: int) -> tuple[int, tuple[int, ...]]:
        return euler_characteristic_mask(self.adj, mask), tuple(betti_mask(self.adj, mask))

    def contractible(self, mask: int, budget: Budget | None = None) -> bool | None:
        """True, False (proved by invariants) or None (search budget ran out)."""
        if not mask:
            return False
        if not mask & (mask - 1):
            return True
        hit = self._contr.get(mask)
        if hit is not None:
            return hit
        limit = budget.limit if budget is not None else DEFAULT_BUDGET
        if self._unknown.get(mask, -1) >= limit:
            return None
        if not is_connected_mask(self.adj, mask):
            self._contr[mask] = False
            return False
        if self.is_cone(mask):
            self._contr[mask] = True
            return True
        cur, _ = self.greedy(mask, budget)
        if not cur & (cur - 1):
            result: bool | None = True
        else:
            chi, betti = self.stall_invariants(cur)
            if chi != 1 or not is_trivial(betti):
                result = False
            else:
                b = budget if budget is not None else Budget()
                stalled = Graph._from_masks([str(i) for i in range(len(self.adj))], self.adj)
                found = _fallback_search(stalled.induced_mask(cur), b)
                result = True if found is not None else None
        if result is None:
            self._unknown[mask] = limit
        else:
            self._contr[mask] = result
            self._contr[cur] = result
        return result


def host_of(g: Graph) -> Host:
    return Host.of(g)


def contractible_flag(g: Graph, budget: Budget | int | None = None) -> bool | None:
    if g.n_vertices == 0:
        return False
    b = None if budget is None else as_budget(budget)
    return Host.of(g).contractible(g.full_mask, b)


# -- moves ---------------------------------------------------------------


def _relevant_mask(g: Graph, m: Move) -> int:
    adj = g.adjacency_masks()
    if m.kind == DELETE_POINT:
        (v,) = m.target
        if v not in g:
            raise MoveError(f"cannot delete missing vertex {v!r}")
        return adj[g.index(v)]
    if m.kind == GLUE_POINT:
        (v,) = m.target
        if v in g:
            raise MoveError(f"cannot glue existing vertex {v!r}")
        if len(set(m.attachment)) != len(m.attachment):
            raise MoveError("repeated vertex in attachment")
        try:
            return g.mask(m.attachment)
        except GraphError as exc:
            raise MoveError(str(exc)) from None
    u, v = m.target
    if u not in g or v not in g:
        raise MoveError(f"edge move on missing vertex in {m.target!r}")
    present = g.has_edge(u, v)
    if m.kind == DELETE_EDGE and not present:
        raise MoveError(f"no edge {u!r}-{v!r} to delete")
    if m.kind == GLUE_EDGE and present:
        raise MoveError(f"edge {u!r}-{v!r} already present")
    return adj[g.index(u)] & adj[g.index(v)]


def validate_move(g: Graph, m: Move, budget: Budget | int | None = None) -> Verdict:
    """Yes iff the rim, joint rim or attachment that ``m`` needs is contractible."""
    mask = _relevant_mask(g, m)
    b = as_budget(budget)
    flag = Host.of(g).contractible(mask, b)
    part = g.names_of(mask)
    if flag is True:
        return Verdict.yes(witness={"contractible": list(part)}, budget_spent=b.spent)
    if flag is False:
        return Verdict.no(certificate={"not_contractible": list(part)}, budget_spent=b.spent)
    return Verdict.unknown(budget_spent=b.spent, note="contractibility search exhausted")


def apply_move(g: Graph, m: Move, budget: Budget | int | None = None, check: bool = True) -> Graph:
    """Apply ``m``; with ``check`` the move must validate first."""
    if check:
        v = validate_move(g, m, budget)
        if not v.is_yes:
            raise MoveError(f"invalid move {m.to_dict()} ({v.outcome.value})")
    else:
        _relevant_mask(g, m)
    if m.kind == DELETE_POINT:
        return g.without(m.target[0])
    if m.kind == GLUE_POINT:
        return g.with_vertex(m.target[0], m.attachment)
    if m.kind == DELETE_EDGE:
        return g.without_edge(*m.target)
    return g.with_edge(*m.target)


def _names(g: Graph, idx: Iterable[int]) -> list[str]:
    return [g.vertices[i] for i in idx]


# -- fallback search -----------------------------------------------------


def _fresh(g: Graph, stem: str = "g") -> str:
    k = 0
    while f"{stem}{k}" in g:
        k += 1
    return f"{stem}{k}"


def _greedy_named(g: Graph) -> tuple[Graph, list[Move]]:
    host = Host.of(g)
    cur, deleted = host.greedy(g.full_mask)
    return g.induced_mask(cur), [Move.delete_point(v) for v in _names(g, deleted)]


def _candidates(g: Graph, allow_glue: bool) -> Iterable[Move]:
    vs = g.vertices
    for u, v in g.edges:
        yield Move.delete_edge(u, v)
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if not g.has_edge(u, v):
                yield Move.glue_edge(u, v)
    if allow_glue:
        for v in vs:
            yield Move.glue_point(_fresh(g), (v,) + g.neighbors(v))


def _fallback_search(
    g: Graph, budget: Budget, max_extra: int = 2, max_depth: int = 6
) -> list[Move] | None:
    """Depth-first search over all four moves for a route to a point."""
    seen: set[Any] = set()
    limit = g.n_vertices + max_extra

    def key(h: Graph) -> Any:
        return canonical_key(h) if h.n_vertices <= SIZE_CAP else h.digest()

    def dfs(h: Graph, depth: int) -> list[Move] | None:
        k = key(h)
        if k in seen or depth >= max_depth:
            return None
        seen.add(k)
        for m in _candidates(h, h.n_vertices < limit):
            if not budget.take():
                return None
            if Host.of(h).contractible(_relevant_mask(h, m), budget) is not True:
                continue
            h2, dels = _greedy_named(apply_move(h, m, check=False))
            if h2.n_vertices == 1:
                return [m] + dels
            rest = dfs(h2, depth + 1)
            if rest is not None:
                return [m] + dels + rest
        return None

    return dfs(g, 0)


# -- public decisions ----------------------------------------------------


def is_contractible(g: Graph, budget: Budget | int | None = None) -> Verdict:
    """Decide whether ``g`` reduces to a point.

    Yes carries a :class:`Trace` ending at a single vertex; No carries the
    Euler characteristic and Betti numbers of a homotopy-equivalent graph
    that differ from a point's; Unknown means the search budget ran out.
    """
    if g.n_vertices == 0:
        raise GraphError("contractibility of the empty graph is undefined")
    b = as_budget(budget)
    host = Host.of(g)
    comps = component_masks(host.adj, g.full_mask)
    if len(comps) > 1:
        return Verdict.no(certificate={"components": len(comps), "betti": [len(comps)]})
    cur, deleted = host.greedy(g.full_mask, b)
    moves = [Move.delete_point(v) for v in _names(g, deleted)]
    if not cur & (cur - 1):
        end = g.induced_mask(cur)
        return Verdict.yes(witness=Trace(g, moves, end.digest()), budget_spent=b.spent)
    chi, betti = host.stall_invariants(cur)
    if chi != 1 or not is_trivial(betti):
        cert = {"chi": chi, "betti": list(betti), "stalled_vertices": list(g.names_of(cur))}
        return Verdict.no(certificate=cert, budget_spent=b.spent)
    stalled = g.induced_mask(cur)
    extra = _fallback_search(stalled, b)
    if extra is None:
        return Verdict.unknown(budget_spent=b.spent, note="invariants trivial; search exhausted")
    trace = Trace(g, moves + extra)
    trace.end_digest = trace.replay(validate=False).digest()
    return Verdict.yes(witness=trace, budget_spent=b.spent)


def reduce(g: Graph, budget: Budget | int | None = None) -> tuple[Graph, Trace]:
    """Delete points with contractible rims until none remains.

    Vertices are examined in vertex order with a work queue, so the result
    is a deterministic function of the labelled input and ``reduce`` is
    idempotent.
    """
    b = None if budget is None else as_budget(budget)
    host = Host.of(g)
    cur, deleted = host.greedy(g.full_mask, b)
    out = g.induced_mask(cur, g.name)
    trace = Trace(g, [Move.delete_point(v) for v in _names(g, deleted)], out.digest())
    return out, trace


def deletion_trace(g: Graph, order: Sequence[str]) -> Trace:
    """Trace deleting ``order`` from ``g`` one point at a time (unvalidated)."""
    moves = [Move.delete_point(v) for v in order]
    t = Trace(g, moves)
    t.end_digest = t.replay(validate=False).digest()
    return t
