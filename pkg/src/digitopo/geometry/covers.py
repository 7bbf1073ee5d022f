"""Cover generators: cube boundaries, brick tilings, a torus, grid cubes."""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from itertools import product

from .box import Number, frac, frac_text
from .cover import Cover

F = Fraction


def cube_boundary_cover(n: int) -> Cover:
    """The ``2n + 2`` facets of the unit ``(n+1)``-cube."""
    if n < 1:
        raise ValueError("n must be at least 1")
    amb = n + 1
    elements = []
    for a in range(amb):
        for side, val in (("-", 0), ("+", 1)):
            iv = [(0, 1)] * amb
            iv[a] = (val, val)
            elements.append((f"F{a}{side}", [iv]))
    return Cover.build(amb, elements, name=f"cube{n}")


def refined_sphere_cover(n: int, k: int = 3) -> Cover:
    """Cube boundary with every facet cut into ``k`` strips.

    The facet normal to axis ``a`` is cut along axis ``(a + 1) mod (n + 1)``,
    giving ``k (2n + 2)`` elements.
    """
    if k < 1:
        raise ValueError("k must be positive")
    amb = n + 1
    elements = []
    for a in range(amb):
        b = (a + 1) % amb
        for side, val in (("-", 0), ("+", 1)):
            for j in range(k):
                iv: list[tuple[Number, Number]] = [(0, 1)] * amb
                iv[a] = (val, val)
                iv[b] = (F(j, k), F(j + 1, k))
                elements.append((f"F{a}{side}{j}", [iv]))
    return Cover.build(amb, elements, name=f"cube{n}x{k}")


def _extent(extent: int | Sequence[int], dims: int) -> tuple[int, ...]:
    if isinstance(extent, int):
        return (extent,) * dims
    out = tuple(int(e) for e in extent)
    if len(out) != dims:
        raise ValueError(f"extent needs {dims} entries")
    return out


def brick_tiling_patch(n: int, extent: int | Sequence[int] = 4) -> Cover:
    """A patch of running-bond bricks.

    In the plane, bricks are ``2 x 1`` and odd rows shift by one unit.  In
    space each layer is such a plane tiling, shifted by ``(1/2, 1/2)`` on
    odd layers, so no two layers share a vertical edge line.
    """
    if n == 2:
        ex, ey = _extent(extent, 2)
        if min(ex, ey) < 2:
            raise ValueError("extent must be at least 2 per axis")
        elements = []
        for j in range(ey):
            for i in range(ex):
                x0 = 2 * i + (j % 2)
                elements.append((f"b{i}_{j}", [[(x0, x0 + 2), (j, j + 1)]]))
        return Cover.build(2, elements, name=f"bricks2_{ex}x{ey}")
    if n == 3:
        ex, ey, ez = _extent(extent, 3)
        if min(ex, ey, ez) < 2:
            raise ValueError("extent must be at least 2 per axis")
        elements = []
        for k in range(ez):
            s = F(k % 2, 2)
            for j in range(ey):
                for i in range(ex):
                    x0 = 2 * i + (j % 2) + s
                    y0 = j + s
                    elements.append(
                        (f"b{i}_{j}_{k}", [[(x0, x0 + 2), (y0, y0 + 1), (k, k + 1)]])
                    )
        return Cover.build(3, elements, name=f"bricks3_{ex}x{ey}x{ez}")
    raise ValueError("brick tilings exist for n = 2 and n = 3")


def torus_cover_4x4() -> Cover:
    """Sixteen staircase elements on the flat torus ``R^2 / (8Z x 4Z)``.

    Element ``(i, j)`` is ``[2i, 2i+2] x [j, j+1/2]`` joined with
    ``[2i-1, 2i+1] x [j+1/2, j+1]``.  Its name ``t{a}_{b}`` uses
    ``a = -i mod 4`` and ``b = j``, which makes the nerve equal to the
    triangulated 4 x 4 torus vertex for vertex.
    """
    half = F(1, 2)
    elements = []
    for i in range(4):
        for j in range(4):
            lower = [(2 * i, 2 * i + 2), (j, j + half)]
            upper = [(2 * i - 1, 2 * i + 1), (j + half, j + 1)]
            elements.append((f"t{(-i) % 4}_{j}", [lower, upper]))
    elements.sort(key=lambda e: e[0])
    return Cover.build(2, elements, periods=[8, 4], name="torus4x4")


def grid_cover(box: Sequence[Sequence[Number]], h: Number) -> Cover:
    """Grid cubes of edge ``h`` (aligned to multiples of ``h``) meeting ``box``."""
    h = frac(h)
    if h <= 0:
        raise ValueError("h must be positive")
    iv = [(frac(a), frac(b)) for a, b in box]
    ranges = []
    for a, b in iv:
        # cube i is [ih, (i+1)h]; it meets [a, b] iff a/h - 1 <= i <= b/h
        lo = -((-a) // h) - 1
        ranges.append(range(lo, b // h + 1))
    elements = []
    for idx in product(*ranges):
        cube = [(i * h, (i + 1) * h) for i in idx]
        if all(c0 <= b and a <= c1 for (c0, c1), (a, b) in zip(cube, iv)):
            elements.append((",".join(map(str, idx)), [cube]))
    return Cover.build(len(iv), elements, name=f"grid_h{frac_text(h)}")
