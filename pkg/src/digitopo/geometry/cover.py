"""Covers by unions of boxes, the LCL conditions and nerve graphs."""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from ..classify import DiskSpec, is_n_disk, is_n_manifold, is_n_sphere
from ..dtransform import find_disk, merge_disk
from ..graph import Graph, GraphError, intersection_graph
from ..homotopy import contractible_flag
from ..invariants import cliques
from ..verdict import Outcome, Verdict
from .box import Box, frac, frac_text, intersect_unions


class CoverError(ValueError):
    """Malformed cover or an invalid cover operation."""


@dataclass(frozen=True)
class Cover:
    """Named elements, each a union of boxes in a common ambient space."""

    dim: int
    periods: tuple[Fraction | None, ...]
    elements: tuple[tuple[str, tuple[Box, ...]], ...]
    name: str = ""
    _index: dict[str, int] = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if len(self.periods) != self.dim:
            raise CoverError("one period entry per ambient axis")
        index = {}
        for i, (nm, boxes) in enumerate(self.elements):
            if nm in index:
                raise CoverError(f"duplicate element name {nm!r}")
            if not boxes:
                raise CoverError(f"element {nm!r} has no boxes")
            for b in boxes:
                if b.ambient != self.dim or b.periods != self.periods:
                    raise CoverError(f"element {nm!r} has a box in another ambient space")
            index[nm] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def build(
        cls,
        dim: int,
        elements: Iterable[tuple[str, Iterable[Sequence[Sequence[Any]]]]],
        periods: Sequence[Any] | None = None,
        name: str = "",
    ) -> Cover:
        per = tuple(None if p is None else frac(p) for p in (periods or [None] * dim))
        els = tuple(
            (str(nm), tuple(Box.make(iv, per) for iv in boxes)) for nm, boxes in elements
        )
        return cls(dim, per, els, name)

    @property
    def names(self) -> list[str]:
        return [nm for nm, _ in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, name: str) -> tuple[Box, ...]:
        try:
            return self.elements[self._index[name]][1]
        except KeyError:
            raise CoverError(f"unknown element {name!r}") from None

    def restrict(self, names: Iterable[str]) -> Cover:
        keep = set(names)
        for nm in keep:
            self[nm]
        return Cover(self.dim, self.periods, tuple(e for e in self.elements if e[0] in keep), self.name)

    def element_dimension(self, name: str) -> int:
        return max(b.dimension for b in self[name])

    @property
    def manifold_dim(self) -> int:
        return max(self.element_dimension(nm) for nm in self.names)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.dim,
            "periods": [None if p is None else frac_text(p) for p in self.periods],
            "elements": [
                {"name": nm, "boxes": [b.to_list() for b in boxes]} for nm, boxes in self.elements
            ],
        }

    def to_json(self, **kwargs: Any) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> Cover:
        try:
            dim = int(data["dim"])
            periods = data.get("periods") or [None] * dim
            elements = [(e["name"], e["boxes"]) for e in data["elements"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise CoverError(f"malformed cover JSON: {exc}") from exc
        return cls.build(dim, elements, periods, name=str(data.get("name", "")))

    @classmethod
    def from_json(cls, text: str) -> Cover:
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise CoverError(f"invalid JSON: {exc}") from exc


# -- intersections -------------------------------------------------------


def intersect(a: Sequence[Box], b: Sequence[Box]) -> tuple[list[Box], int] | None:
    """Exact intersection of two elements and its dimension, or ``None`` if empty."""
    pieces = intersect_unions(a, b)
    if not pieces:
        return None
    return pieces, max(p.dimension for p in pieces)


def common_intersection(c: Cover, names: Sequence[str]) -> list[Box]:
    pieces = list(c[names[0]])
    for nm in names[1:]:
        pieces = intersect_unions(pieces, c[nm])
        if not pieces:
            return []
    return pieces


def is_disk_union(pieces: Sequence[Box], d: int) -> bool:
    """Combinatorial disk test for a union of boxes.

    Every maximal piece must have dimension ``d`` and the pieces' nerve must
    be contractible (boxes are convex, so the nerve carries the union's
    homotopy type).
    """
    if not pieces or any(p.dimension != d for p in pieces):
        return False
    if len(pieces) == 1:
        return True
    family = [(str(i), p) for i, p in enumerate(pieces)]
    g = intersection_graph(family, lambda x, y: x.meets(y))
    return contractible_flag(g) is True


def nerve(c: Cover) -> Graph:
    """Intersection graph of the cover's elements."""
    return intersection_graph(
        [(nm, boxes) for nm, boxes in c.elements],
        lambda a, b: any(x.meets(y) for x in a for y in b),
        name=f"nerve({c.name})" if c.name else "",
    )


def is_lump(c: Cover, names: Sequence[str] | None = None, n: int | None = None) -> Verdict:
    """Common point, and every ``j``-wise intersection is an ``(n - j + 1)``-disk."""
    names = list(c.names if names is None else names)
    n = c.manifold_dim if n is None else n
    k = len(names)
    if k == 0:
        raise CoverError("empty subfamily")
    if k > n + 1:
        return Verdict.no(certificate={"too_many": k, "max": n + 1})
    for mask in range(1, 1 << k):
        sub = [names[i] for i in range(k) if mask >> i & 1]
        pieces = common_intersection(c, sub)
        if not pieces:
            return Verdict.no(certificate={"empty": sub})
        if not is_disk_union(pieces, n - len(sub) + 1):
            return Verdict.no(certificate={"not_disk": sub, "dims": sorted({p.dimension for p in pieces})})
    return Verdict.yes()


def is_lcl(c: Cover, n: int | None = None) -> Verdict:
    """Locally centred and lump.

    Every family of pairwise meeting elements (a clique of the nerve) must
    have a common point, and that intersection must be a disk of dimension
    ``n - k + 1`` for ``k`` elements.
    """
    n = c.manifold_dim if n is None else n
    g = nerve(c)
    cc = cliques(g)
    memo: dict[int, list[Box]] = {}
    for k, level in enumerate(cc.simplices, start=1):
        for m in level:
            names = list(g.names_of(m))
            if k == 1:
                pieces = list(c[names[0]])
            else:
                top = m.bit_length() - 1
                pieces = intersect_unions(memo[m & ~(1 << top)], c[g.vertices[top]])
            if not pieces:
                return Verdict.no(certificate={"reason": "not locally centred", "elements": names})
            if k > n + 1:
                return Verdict.no(certificate={"reason": "clique larger than n+1", "elements": names})
            if not is_disk_union(pieces, n - k + 1):
                return Verdict.no(certificate={"reason": "lump condition", "elements": names,
                                               "dims": sorted({p.dimension for p in pieces})})
            memo[m] = pieces
    return Verdict.yes(witness={"elements": len(c), "max_clique": len(cc.simplices)})


# -- segmented subfamilies and merging ----------------------------------


@dataclass(frozen=True)
class SegmentedKind:
    """How the nerve of a subfamily classifies, with the disk partition if any."""

    kind: str  # "disk", "sphere", "manifold" or "none"
    k: int
    verdict: Verdict
    boundary: tuple[str, ...] = ()
    interior: tuple[str, ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "k": self.k,
            "outcome": self.verdict.outcome.value,
            "boundary": list(self.boundary),
            "interior": list(self.interior),
        }


def segmented_kind(c: Cover, sub: Iterable[str], k: int, budget: int | None = None) -> SegmentedKind:
    sub = list(sub)
    g = nerve(c.restrict(sub))
    if len(sub) == 1:
        return SegmentedKind("disk", 0, Verdict.yes(), (), tuple(sub))
    dv = is_n_disk(g, k, budget)
    if dv.is_yes:
        spec: DiskSpec = dv.witness
        return SegmentedKind("disk", k, dv, spec.boundary, spec.interior)
    sv = is_n_sphere(g, k, budget)
    if sv.is_yes:
        return SegmentedKind("sphere", k, sv)
    mv = is_n_manifold(g, k, budget)
    if mv.is_yes:
        return SegmentedKind("manifold", k, mv)
    worst = Outcome.UNKNOWN if Outcome.UNKNOWN in (dv.outcome, sv.outcome, mv.outcome) else Outcome.NO
    return SegmentedKind("none", k, Verdict(worst))


def merge_cover(c: Cover, sub: Iterable[str], n: int | None = None, new_name: str | None = None,
                budget: int | None = None) -> Cover:
    """Replace the interior elements of a segmented n-disk by their union.

    The nerve of the result is checked to equal the disk merge applied to
    the nerve of ``c`` (same labels, same edges).
    """
    n = c.manifold_dim if n is None else n
    sub = list(sub)
    g = nerve(c)
    dv = is_n_disk(g.induced(sub), n, budget)
    if not dv.is_yes:
        raise CoverError(f"subfamily is not a certified segmented {n}-disk ({dv.outcome.value})")
    spec: DiskSpec = dv.witness
    if new_name is None:
        k = 0
        while f"m{k}" in c.names:
            k += 1
        new_name = f"m{k}"
    elif new_name in c.names and new_name not in spec.interior:
        raise CoverError(f"name {new_name!r} already used")
    inner = set(spec.interior)
    union = tuple(b for nm in spec.interior for b in c[nm])
    elements = [e for e in c.elements if e[0] not in inner] + [(new_name, union)]
    out = Cover(c.dim, c.periods, tuple(elements), c.name)
    expected = merge_disk(g, DiskSpec(g, spec.vertices, spec.boundary, spec.interior, n), new_name, check=False)
    if nerve(out) != expected:
        raise CoverError("nerve of the merged cover differs from the merged nerve")
    return out


def compress_cover(c: Cover, n: int | None = None, seed: int = 0, check_lcl: bool = True,
                   max_steps: int = 1000) -> tuple[Cover, list[dict[str, Any]]]:
    """Merge segmented disks until the nerve has no disk with two interior elements."""
    n = c.manifold_dim if n is None else n
    log = []
    for step in range(max_steps):
        g = nerve(c)
        d = find_disk(g, n, seed=seed + step)
        if d is None:
            break
        c = merge_cover(c, d.vertices, n)
        entry: dict[str, Any] = {"merged": list(d.interior), "elements": len(c)}
        if check_lcl:
            entry["lcl"] = is_lcl(c, n).outcome.value
        log.append(entry)
    else:
        raise GraphError("cover compression did not terminate")
    return c, log
