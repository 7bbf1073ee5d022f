"""Recognisers for normal spaces, manifolds, disks and spheres.

All recognisers recurse through rims.  They run on vertex bitmasks of a
shared :class:`~digitopo.homotopy.Host`, so the rims of rims that recur
throughout the recursion are decided once.  Every internal answer is
three-valued: ``True``, ``False`` or ``None`` (a contractibility search ran
out of budget somewhere below).
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from itertools import combinations
from typing import Any

from .graph import Graph, GraphError, component_masks, is_connected_mask, iter_bits
from .homotopy import Budget, Host, Trace, as_budget, is_contractible
from .verdict import ManifoldVerdict, Outcome, Verdict

ENUM_BUDGET = 200_000


class RecognizerDisagreement(RuntimeError):
    """The two sphere recognisers returned contradictory definite answers."""

    def __init__(self, a: Verdict, b: Verdict) -> None:
        super().__init__(f"sphere recognisers disagree: A={a.outcome.value} B={b.outcome.value}")
        self.a = a
        self.b = b


@dataclass(frozen=True)
class DiskSpec:
    """A digital disk inside ``host``: its vertices split into boundary and interior."""

    host: Graph
    vertices: tuple[str, ...]
    boundary: tuple[str, ...]
    interior: tuple[str, ...]
    dim: int
    trace: Trace | None = None

    @property
    def graph(self) -> Graph:
        return self.host.induced(self.vertices)

    def check(self, budget: Budget | int | None = None) -> bool:
        """Re-verify the disk from scratch; ``True`` only on a definite Yes."""
        if set(self.boundary) | set(self.interior) != set(self.vertices):
            return False
        if set(self.boundary) & set(self.interior) or not self.interior:
            return False
        v = is_n_disk(self.graph, self.dim, budget)
        return v.is_yes and set(v.witness.boundary) == set(self.boundary)

    def to_dict(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "vertices": list(self.vertices),
            "boundary": list(self.boundary),
            "interior": list(self.interior),
        }


# -- minimal spheres -----------------------------------------------------


def minimal_sphere(n: int) -> Graph:
    """Join of ``n + 1`` copies of the 0-sphere: ``2n + 2`` vertices."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    names = [f"s{k}{sign}" for k in range(n + 1) for sign in "+-"]
    edges = [(u, v) for u, v in combinations(names, 2) if u[:-1] != v[:-1]]
    return Graph(names, edges, name=f"S{n}min")


def minimal_disk(n: int) -> Graph:
    """Cone over the minimal ``(n-1)``-sphere."""
    if n < 1:
        return Graph(["c"], name="D0min")
    s = minimal_sphere(n - 1)
    return s.with_vertex("c", s.vertices).renamed(f"D{n}min")


def _minimal_sphere_mask(adj: list[int], mask: int) -> int | None:
    size = mask.bit_count()
    if size < 2 or size % 2:
        return None
    for i in iter_bits(mask):
        if (adj[i] & mask).bit_count() != size - 2:
            return None
    return (size - 2) // 2


def is_minimal_sphere(g: Graph) -> int | None:
    """``n`` if ``g`` is the minimal n-sphere, else ``None``."""
    return _minimal_sphere_mask(list(g.adjacency_masks()), g.full_mask)


# -- mask-level recursion ------------------------------------------------


class _Rec:
    """Recursive recognisers bound to one host and one budget."""

    def __init__(self, host: Host, budget: Budget) -> None:
        self.host = host
        self.adj = host.adj
        self.b = budget
        self.memo: dict[tuple, Any] = host.memo.setdefault("classify", {})

    def contractible(self, mask: int) -> bool | None:
        return self.host.contractible(mask, self.b)

    def normal(self, mask: int, n: int) -> bool | None:
        if n == 0:
            return mask.bit_count() == 2 and not self.adj[mask.bit_length() - 1] & mask
        key = ("N", mask, n)
        if key in self.memo:
            return self.memo[key]
        out: bool | None
        if not is_connected_mask(self.adj, mask):
            out = False
        else:
            out = True
            for v in iter_bits(mask):
                r = self.normal(self.adj[v] & mask, n - 1)
                if r is False:
                    out = False
                    break
                if r is None:
                    out = None
        self.memo[key] = out
        return out

    def manifold(self, mask: int, n: int) -> bool | None:
        if n == 0:
            return self.sphere(mask, 0)
        key = ("M", mask, n)
        if key in self.memo:
            return self.memo[key]
        out: bool | None
        if mask.bit_count() < 2 * n + 2 or not is_connected_mask(self.adj, mask):
            out = False
        else:
            out = True
            for v in iter_bits(mask):
                r = self.sphere(self.adj[v] & mask, n - 1)
                if r is False:
                    out = False
                    break
                if r is None:
                    out = None
        self.memo[key] = out
        return out

    def sphere(self, mask: int, n: int) -> bool | None:
        if n == 0:
            return mask.bit_count() == 2 and not self.adj[mask.bit_length() - 1] & mask
        key = ("S", mask, n)
        if key in self.memo:
            return self.memo[key]
        out = self.manifold(mask, n)
        if out is True:
            out = self._puncture(mask)[0]
        self.memo[key] = out
        return out

    def _puncture(self, mask: int) -> tuple[bool | None, int]:
        # for a manifold the homotopy type of M - v does not depend on v,
        # so one certified failure settles it
        for v in iter_bits(mask):
            c = self.contractible(mask & ~(1 << v))
            if c is not None:
                return c, v
        return None, -1

    def mwb(self, mask: int, n: int) -> tuple[bool | None, int]:
        """Manifold with boundary; returns the flag and the boundary mask."""
        key = ("B", mask, n)
        if key in self.memo:
            return self.memo[key]
        out: tuple[bool | None, int]
        if n < 1 or not is_connected_mask(self.adj, mask):
            out = (False, 0)
        else:
            bd = 0
            unsure = False
            failed = False
            for v in iter_bits(mask):
                r = self.adj[v] & mask
                s = self.sphere(r, n - 1)
                if s is True:
                    continue
                d = self.disk(r, n - 1)
                if d is True:
                    bd |= 1 << v
                elif s is None or d is None:
                    unsure = True
                else:
                    failed = True
                    break
            if failed:
                out = (False, 0)
            elif unsure:
                out = (None, bd)
            elif not bd:
                out = (False, 0)
            else:
                out = (self.sphere(bd, n - 1), bd)
        self.memo[key] = out
        return out

    def disk(self, mask: int, n: int) -> bool | None:
        if n == 0:
            return mask.bit_count() == 1
        key = ("D", mask, n)
        if key in self.memo:
            return self.memo[key]
        out, _ = self.mwb(mask, n)
        if out is True:
            out = self.contractible(mask)
        self.memo[key] = out
        return out


def _rec(g: Graph, budget: Budget | int | None) -> _Rec:
    return _Rec(Host.of(g), as_budget(budget))


def _mask_rec(host: Host, budget: Budget | int | None) -> _Rec:
    return _Rec(host, as_budget(budget))


# -- public recognisers --------------------------------------------------


def is_normal_space(g: Graph, n: int, budget: Budget | int | None = None) -> Verdict:
    """Normal n-space: two separate points for ``n = 0``; else connected with normal rims."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    r = _rec(g, budget)
    flag = r.normal(g.full_mask, n)
    if flag is False and n > 0 and g.is_connected():
        bad = [v for v in g.vertices if r.normal(r.adj[g.index(v)], n - 1) is False]
        return Verdict.no(certificate={"bad_rims": bad}, budget_spent=r.b.spent)
    if flag is False:
        return Verdict.no(certificate={"connected": g.is_connected()}, budget_spent=r.b.spent)
    return Verdict(Outcome.of(flag), budget_spent=r.b.spent)


def is_n_manifold(g: Graph, n: int, budget: Budget | int | None = None) -> ManifoldVerdict:
    """Connected, and the rim of every point is an (n-1)-sphere."""
    if n < 1:
        raise ValueError("manifold dimension must be at least 1")
    r = _rec(g, budget)
    if g.n_vertices == 0 or not g.is_connected():
        return ManifoldVerdict(Outcome.NO, certificate={"connected": False}, budget_spent=r.b.spent)
    rims: dict[str, str] = {}
    for v in g.vertices:
        rims[v] = Outcome.of(r.sphere(r.adj[g.index(v)], n - 1)).value
    if any(x == "no" for x in rims.values()):
        bad = [v for v, x in rims.items() if x == "no"]
        return ManifoldVerdict(Outcome.NO, certificate={"bad_rims": bad}, budget_spent=r.b.spent, rims=rims)
    if any(x == "unknown" for x in rims.values()):
        return ManifoldVerdict(Outcome.UNKNOWN, budget_spent=r.b.spent, rims=rims)
    if g.n_vertices < 2 * n + 2:
        return ManifoldVerdict(Outcome.NO, certificate={"too_small": g.n_vertices}, budget_spent=r.b.spent)
    return ManifoldVerdict(Outcome.YES, witness={"dim": n}, budget_spent=r.b.spent, dim=n, rims=rims)


def is_n_manifold_with_boundary(g: Graph, n: int, budget: Budget | int | None = None) -> Verdict:
    """Rims are (n-1)-spheres (interior) or (n-1)-disks (boundary); the boundary is an (n-1)-sphere."""
    if n < 1:
        raise ValueError("dimension must be at least 1")
    r = _rec(g, budget)
    if g.n_vertices == 0:
        return Verdict.no(certificate={"empty": True})
    flag, bd = r.mwb(g.full_mask, n)
    if flag is True:
        part = {
            "boundary": list(g.names_of(bd)),
            "interior": list(g.names_of(g.full_mask & ~bd)),
        }
        return Verdict.yes(witness=part, budget_spent=r.b.spent)
    return Verdict(Outcome.of(flag), budget_spent=r.b.spent)


def is_n_disk(g: Graph, n: int, budget: Budget | int | None = None) -> Verdict:
    """A contractible n-manifold with boundary; the single point for ``n = 0``."""
    if n < 0:
        raise ValueError("dimension must be non-negative")
    if n == 0:
        if g.n_vertices == 1:
            (v,) = g.vertices
            return Verdict.yes(witness=DiskSpec(g, (v,), (), (v,), 0))
        return Verdict.no(certificate={"vertices": g.n_vertices})
    b = as_budget(budget)
    mv = is_n_manifold_with_boundary(g, n, b)
    if not mv.is_yes:
        return Verdict(mv.outcome, certificate=mv.certificate, budget_spent=b.spent)
    cv = is_contractible(g, b)
    if not cv.is_yes:
        return Verdict(cv.outcome, certificate=cv.certificate, budget_spent=b.spent)
    spec = DiskSpec(
        g, g.vertices, tuple(mv.witness["boundary"]), tuple(mv.witness["interior"]), n, cv.witness
    )
    return Verdict.yes(witness=spec, budget_spent=b.spent)


def _sphere_a(g: Graph, n: int, b: Budget) -> Verdict:
    r = _rec(g, b)
    mv = r.manifold(g.full_mask, n)
    if mv is not True:
        return Verdict(Outcome.of(mv), certificate={"manifold": False} if mv is False else None,
                       budget_spent=b.spent)
    flag, v = r._puncture(g.full_mask)
    if flag is None:
        return Verdict.unknown(budget_spent=b.spent, note="no puncture resolved")
    name = g.vertices[v]
    if flag:
        return Verdict.yes(witness={"puncture": name}, budget_spent=b.spent)
    cv = is_contractible(g.without(name), b)
    return Verdict.no(certificate={"puncture": name, "invariants": cv.certificate}, budget_spent=b.spent)


def _sphere_b(g: Graph, n: int, b: Budget, seed: int) -> Verdict:
    from .dtransform import compress, is_compressed

    mv = _rec(g, b).manifold(g.full_mask, n)
    if mv is not True:
        return Verdict(Outcome.of(mv), budget_spent=b.spent)
    small, trace = compress(g, n, budget=b, seed=seed)
    if is_minimal_sphere(small) == n:
        return Verdict.yes(witness={"compressed_to": small.n_vertices, "trace": trace}, budget_spent=b.spent)
    cv = is_compressed(small, n, b)
    if cv.is_yes:
        cert = {"compressed_vertices": small.n_vertices, "minimal": False}
        return Verdict.no(certificate=cert, budget_spent=b.spent)
    return Verdict.unknown(budget_spent=b.spent, note="compression ended on an undecided graph")


def is_n_sphere(
    g: Graph,
    n: int,
    budget: Budget | int | None = None,
    algorithm: str = "both",
    seed: int = 0,
) -> Verdict:
    """Recognise digital n-spheres.

    Algorithm A checks the manifold condition and that some punctured graph
    ``g - v`` is contractible.  Algorithm B compresses by disk merges and
    compares with the minimal sphere.  With ``algorithm="both"`` a definite
    contradiction raises :class:`RecognizerDisagreement`.
    """
    if n < 0:
        raise ValueError("dimension must be non-negative")
    if n == 0:
        flag = is_minimal_sphere(g) == 0
        return Verdict.yes() if flag else Verdict.no(certificate={"vertices": g.n_vertices})
    b = as_budget(budget)
    if algorithm == "A":
        return _sphere_a(g, n, b)
    if algorithm == "B":
        return _sphere_b(g, n, b, seed)
    if algorithm != "both":
        raise ValueError(f"unknown algorithm {algorithm!r}")
    a = _sphere_a(g, n, b)
    bb = _sphere_b(g, n, b, seed)
    if not a.is_unknown and not bb.is_unknown and a.outcome != bb.outcome:
        raise RecognizerDisagreement(a, bb)
    final = a if not a.is_unknown else bb
    return Verdict(
        final.outcome,
        witness={"A": a.witness, "B": bb.witness} if final.is_yes else None,
        certificate={"A": a.certificate, "B": bb.certificate} if final.is_no else None,
        budget_spent=b.spent,
        note=f"A={a.outcome.value} B={bb.outcome.value}",
    )


# -- 1-spheres, bounding disks, containment ------------------------------


def enumerate_one_spheres(g: Graph, max_len: int | None = None) -> list[tuple[str, ...]]:
    """Induced chordless cycles with ``4 <= length <= max_len``, each once."""
    if max_len is None:
        max_len = g.n_vertices
    if max_len < 4:
        raise ValueError("max_len must be at least 4")
    adj = g.adjacency_masks()
    found: list[tuple[int, ...]] = []

    def extend(path: list[int], pmask: int, inner: int) -> None:
        # inner: path vertices other than the start and the last one
        s, last = path[0], path[-1]
        for w in iter_bits(adj[last] & ~pmask):
            if w < s or adj[w] & inner:
                continue
            if adj[w] >> s & 1:
                if len(path) >= 3 and path[1] < w:
                    found.append(tuple(path) + (w,))
                continue
            if len(path) + 1 < max_len:
                extend(path + [w], pmask | 1 << w, inner | (1 << last if len(path) > 1 else 0))

    for s in range(g.n_vertices):
        for p1 in iter_bits(adj[s]):
            if p1 > s:
                extend([s, p1], 1 << s | 1 << p1, 0)
    return [tuple(g.vertices[i] for i in c) for c in found]


def _disk_from_interior(g: Graph, r: _Rec, interior: int, n: int) -> tuple[bool | None, int]:
    d = interior
    for i in iter_bits(interior):
        d |= r.adj[i]
    flag = r.disk(d, n)
    return flag, d


def _spec(g: Graph, r: _Rec, dmask: int, n: int) -> DiskSpec:
    _, bd = r.mwb(dmask, n)
    return DiskSpec(g, g.names_of(dmask), g.names_of(bd), g.names_of(dmask & ~bd), n)


def bounds_disk(
    g: Graph, s: Iterable[str], n: int, budget: Budget | int | None = None
) -> Verdict:
    """Find an n-disk in ``g`` whose boundary is exactly ``s``.

    The interior of such a disk is closed under taking neighbours outside
    ``s``, so it is a union of components of ``g - s``.  Single balls are
    tried first, then every union of components, smallest first.
    """
    smask = g.mask(s)
    b = as_budget(budget if budget is not None else ENUM_BUDGET)
    r = _rec(g, b)
    if r.sphere(smask, n - 1) is not True:
        raise GraphError("the given vertex set is not a digital (n-1)-sphere")
    adj = r.adj
    tried = 0
    for v in iter_bits(g.full_mask & ~smask):
        if adj[v] & g.full_mask == smask:
            tried += 1
            flag, d = _disk_from_interior(g, r, 1 << v, n)
            if flag is True:
                return Verdict.yes(witness=_spec(g, r, d, n), budget_spent=tried)
    comps = component_masks(adj, g.full_mask & ~smask)
    comps.sort(key=lambda m: (m.bit_count(), m))
    unsure = False
    rejected = []
    for k in range(1, len(comps) + 1):
        for combo in combinations(comps, k):
            if tried >= b.limit:
                return Verdict.unknown(budget_spent=tried, note="candidate budget exhausted")
            tried += 1
            interior = 0
            for c in combo:
                interior |= c
            if not all(adj[i] & ~(interior | smask) == 0 for i in iter_bits(interior)):
                continue
            dmask = interior | smask
            flag = r.disk(dmask, n)
            if flag is True:
                spec = _spec(g, r, dmask, n)
                if set(spec.boundary) == set(g.names_of(smask)):
                    return Verdict.yes(witness=spec, budget_spent=tried)
            elif flag is None:
                unsure = True
            rejected.append(list(g.names_of(interior)))
    if unsure:
        return Verdict.unknown(budget_spent=tried, note="some candidate disks undecided")
    return Verdict.no(certificate={"rejected_interiors": rejected}, budget_spent=tried)


def sphere_bounding_hypothesis(
    g: Graph, n: int = 2, max_len: int | None = None, budget: Budget | int | None = None
) -> Verdict:
    """Every digital 1-sphere in ``g`` bounds a digital 2-disk (``n = 2``)."""
    spheres = enumerate_one_spheres(g, max_len)
    spent = 0
    witnesses = []
    unsure = False
    for s in spheres:
        v = bounds_disk(g, s, n, budget)
        spent += v.budget_spent
        if v.is_no:
            return Verdict.no(certificate={"sphere": list(s)}, budget_spent=spent)
        if v.is_unknown:
            unsure = True
        else:
            witnesses.append({"sphere": list(s), "interior": list(v.witness.interior)})
    if unsure:
        return Verdict.unknown(budget_spent=spent)
    return Verdict.yes(witness=witnesses, budget_spent=spent)


def _connected_subsets(adj: list[int], universe: int, max_size: int) -> list[int]:
    """All connected vertex sets of size 1..max_size within ``universe``."""
    out: list[int] = []
    for v in iter_bits(universe):
        # grow sets whose smallest vertex is v
        allowed = universe & ~((1 << v) - 1)
        seen = {1 << v}
        stack = [1 << v]
        while stack:
            s = stack.pop()
            out.append(s)
            if s.bit_count() >= max_size:
                continue
            frontier = 0
            for i in iter_bits(s):
                frontier |= adj[i]
            frontier &= allowed & ~s
            for w in iter_bits(frontier):
                t = s | 1 << w
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
    return out


def _subsets_containing(base: int, pool: int) -> Iterable[int]:
    extra = [1 << i for i in iter_bits(pool & ~base)]
    for k in range(len(extra) + 1):
        for combo in combinations(extra, k):
            m = base
            for x in combo:
                m |= x
            yield m


def disk_containment_hypothesis(
    g: Graph,
    m: int,
    n: int,
    budget: Budget | int | None = None,
    max_size: int = 5,
) -> Verdict:
    """Every m-disk ``L`` (up to ``max_size`` points) has an n-disk ``U`` with ``Int L`` inside ``Int U``.

    ``g`` must be a closed n-manifold.  A disk ``U`` misses some point ``w``,
    so its interior lies in ``V - U(w)``; candidate interiors are searched
    exhaustively inside those sets.  On No, one counterexample per size is
    recorded.
    """
    if not 0 < m < n:
        raise ValueError("need 0 < m < n")
    b = as_budget(budget if budget is not None else ENUM_BUDGET)
    r = _rec(g, b)
    adj = r.adj
    full = g.full_mask
    spent = 0
    counter: dict[int, dict[str, list[str]]] = {}
    unsure = False
    checked = 0
    closed = [full & ~(adj[w] | 1 << w) for w in range(g.n_vertices)]
    ok_cache: dict[int, bool | None] = {}
    for lmask in _connected_subsets(adj, full, max_size):
        size = lmask.bit_count()
        if size < 2 * m + 1 or size in counter:
            continue
        if r.disk(lmask, m) is not True:
            continue
        checked += 1
        _, lbd = r.mwb(lmask, m)
        inner = lmask & ~lbd
        if inner in ok_cache:
            result = ok_cache[inner]
        else:
            result = False
            for pool in closed:
                if inner & ~pool:
                    continue
                for cand in _subsets_containing(inner, pool):
                    if spent >= b.limit:
                        return Verdict.unknown(budget_spent=spent, note="candidate budget exhausted")
                    spent += 1
                    flag, _ = _disk_from_interior(g, r, cand, n)
                    if flag is True:
                        result = True
                        break
                    if flag is None:
                        result = None
                if result is True:
                    break
            ok_cache[inner] = result
        if result is False:
            counter[size] = {"disk": list(g.names_of(lmask)), "interior": list(g.names_of(inner))}
        elif result is None:
            unsure = True
    if counter:
        cert = {"counterexamples": {str(k): v for k, v in sorted(counter.items())}}
        return Verdict.no(certificate=cert, budget_spent=spent)
    if unsure:
        return Verdict.unknown(budget_spent=spent)
    return Verdict.yes(witness={"disks_checked": checked}, budget_spent=spent)
