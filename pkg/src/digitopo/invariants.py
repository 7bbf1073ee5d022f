"""Clique-complex invariants: Euler characteristic and mod-2 Betti numbers.

The homotopy moves preserve both, which is what makes them usable as
negative certificates for contractibility and sphere recognition.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .graph import Graph, iter_bits


@dataclass(frozen=True)
class CliqueComplex:
    """Cliques of a graph grouped by size.

    ``simplices[k]`` holds the cliques with ``k + 1`` vertices as bitmasks
    over the graph's vertex order.
    """

    graph: Graph
    simplices: tuple[tuple[int, ...], ...]
    truncated: bool = False

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def named(self, k: int) -> list[tuple[str, ...]]:
        return [self.graph.names_of(m) for m in self.simplices[k]]


def _enumerate(adj: Sequence[int], mask: int, max_size: int | None) -> list[list[int]]:
    levels: list[list[int]] = []

    def grow(clique: int, size: int, cand: int) -> None:
        while len(levels) < size:
            levels.append([])
        levels[size - 1].append(clique)
        if max_size is not None and size >= max_size:
            return
        while cand:
            low = cand & -cand
            i = low.bit_length() - 1
            cand ^= low
            # only higher-indexed candidates, so each clique appears once
            grow(clique | low, size + 1, cand & adj[i])

    for i in iter_bits(mask):
        higher = mask & ~((1 << (i + 1)) - 1)
        grow(1 << i, 1, adj[i] & higher)
    return levels


def cliques(g: Graph, max_size: int | None = None) -> CliqueComplex:
    """All cliques of ``g`` with at most ``max_size`` vertices."""
    levels = _enumerate(g.adjacency_masks(), g.full_mask, max_size)
    truncated = False
    if max_size is not None and len(levels) == max_size:
        top = levels[-1]
        adj = g.adjacency_masks()
        for c in top:
            common = g.full_mask
            for i in iter_bits(c):
                common &= adj[i]
            if common:
                truncated = True
                break
    return CliqueComplex(g, tuple(tuple(lv) for lv in levels), truncated)


def clique_counts_mask(adj: Sequence[int], mask: int) -> tuple[int, ...]:
    return tuple(len(lv) for lv in _enumerate(adj, mask, None))


def euler_characteristic_mask(adj: Sequence[int], mask: int) -> int:
    total = 0

    def walk(sign: int, cand: int) -> None:
        nonlocal total
        total += sign
        while cand:
            low = cand & -cand
            cand ^= low
            walk(-sign, cand & adj[low.bit_length() - 1])

    for i in iter_bits(mask):
        walk(1, adj[i] & mask & ~((1 << (i + 1)) - 1))
    return total


def euler_characteristic(g: Graph) -> int:
    """Alternating count of cliques: ``c_1 - c_2 + c_3 - ...``."""
    return euler_characteristic_mask(g.adjacency_masks(), g.full_mask)


class Betti(tuple):
    """Mod-2 Betti numbers ``(b_0, b_1, ...)``; ``truncated`` marks a dimension cap."""

    truncated: bool

    def __new__(cls, values: Sequence[int], truncated: bool = False) -> Betti:
        obj = super().__new__(cls, values)
        obj.truncated = truncated
        return obj

    def __repr__(self) -> str:
        flag = ", truncated" if self.truncated else ""
        return f"Betti({tuple(self)}{flag})"


def gf2_rank(columns: Sequence[int]) -> int:
    """Rank over GF(2) of vectors given as integer bitsets."""
    basis: dict[int, int] = {}
    rank = 0
    for col in columns:
        while col:
            p = col.bit_length() - 1
            if p in basis:
                col ^= basis[p]
            else:
                basis[p] = col
                rank += 1
                break
    return rank


def _boundary_columns(faces: Sequence[int], cells: Sequence[int]) -> list[int]:
    row = {f: i for i, f in enumerate(faces)}
    cols = []
    for c in cells:
        col = 0
        for i in iter_bits(c):
            col |= 1 << row[c & ~(1 << i)]
        cols.append(col)
    return cols


def betti_mask(adj: Sequence[int], mask: int, max_dim: int | None = None) -> Betti:
    cap = None if max_dim is None else max_dim + 2
    levels = _enumerate(adj, mask, cap)
    if not levels:
        return Betti(())
    top = len(levels) - 1 if max_dim is None else max_dim
    truncated = max_dim is not None and len(levels) == cap
    ranks = [0] * (max(top, len(levels)) + 2)
    for k in range(1, len(levels)):
        ranks[k] = gf2_rank(_boundary_columns(levels[k - 1], levels[k]))
    sizes = [len(lv) for lv in levels] + [0] * (top + 1)
    values = [sizes[k] - ranks[k] - ranks[k + 1] for k in range(top + 1)]
    if max_dim is None:
        while len(values) > 1 and values[-1] == 0:
            values.pop()
    return Betti(values, truncated)


def betti_mod2(g: Graph, max_dim: int | None = None) -> Betti:
    """Unreduced mod-2 Betti numbers of the clique complex of ``g``.

    Trailing zeros are dropped, so a point gives ``(1,)``.  With ``max_dim``
    set, exactly ``max_dim + 1`` numbers are returned and ``truncated``
    records whether any higher simplices were left out.
    """
    return betti_mask(g.adjacency_masks(), g.full_mask, max_dim)


def is_trivial(betti: Sequence[int]) -> bool:
    """Betti numbers of a point."""
    return len(betti) >= 1 and betti[0] == 1 and not any(betti[1:])


def invariants_report(g: Graph) -> dict:
    adj = g.adjacency_masks()
    return {
        "chi": euler_characteristic(g),
        "betti": list(betti_mod2(g)),
        "clique_counts": list(clique_counts_mask(adj, g.full_mask)),
    }
