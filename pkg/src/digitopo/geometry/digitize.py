"""Grid digitization of implicit surfaces and refinement reports."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field
from itertools import product
from typing import Any

import numpy as np

from ..graph import Graph
from ..homotopy import reduce
from ..invariants import betti_mod2, euler_characteristic
from .box import frac, frac_text

MAX_SAMPLES = 40_000_000


class DigitizeError(ValueError):
    """Empty selection or a grid over the sample cap."""


@dataclass(frozen=True)
class ImplicitSurface:
    """Zero set of ``func`` inside the bounding box ``bounds``.

    ``func`` maps an array of shape ``(..., dim)`` to values whose sign
    tells the two sides apart.
    """

    kind: str
    dim: int
    bounds: tuple[tuple[float, float], ...]
    func: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    params: dict[str, float] = field(default_factory=dict, compare=False)

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return self.func(pts)


def sphere(radius: float = 1.0, dim: int = 3) -> ImplicitSurface:
    r = float(radius)
    return ImplicitSurface(
        "sphere", dim, ((-r, r),) * dim,
        lambda p: np.sqrt((p**2).sum(axis=-1)) - r, {"radius": r},
    )


def circle(radius: float = 1.0) -> ImplicitSurface:
    s = sphere(radius, dim=2)
    return ImplicitSurface("circle", 2, s.bounds, s.func, s.params)


def torus(major: float = 1.0, minor: float = 0.4) -> ImplicitSurface:
    big, small = float(major), float(minor)

    def f(p: np.ndarray) -> np.ndarray:
        ring = np.sqrt(p[..., 0] ** 2 + p[..., 1] ** 2) - big
        return np.sqrt(ring**2 + p[..., 2] ** 2) - small

    reach = big + small
    return ImplicitSurface(
        "torus", 3, ((-reach, reach), (-reach, reach), (-small, small)), f,
        {"major": big, "minor": small},
    )


def plane_patch(half_width: float = 1.0) -> ImplicitSurface:
    """The plane ``z = 0`` cut down to ``|x|, |y| <= half_width``."""
    w = float(half_width)
    return ImplicitSurface(
        "plane", 3, ((-w, w), (-w, w), (0.0, 0.0)), lambda p: p[..., 2], {"half_width": w}
    )


def box_boundary(half_side: float = 1.0) -> ImplicitSurface:
    s = float(half_side)
    return ImplicitSurface(
        "box", 3, ((-s, s),) * 3, lambda p: np.abs(p).max(axis=-1) - s, {"half_side": s}
    )


SHAPES: dict[str, Callable[..., ImplicitSurface]] = {
    "sphere": sphere,
    "circle": circle,
    "torus": torus,
    "plane": plane_patch,
    "box": box_boundary,
}


def _axis_range(lo: float, hi: float, h: float) -> range:
    # grid aligned to multiples of h, widened by one cell each way
    start = int(np.floor(lo / h)) - 1
    stop = int(np.ceil(hi / h)) + 1
    return range(start, stop)


def digitize(
    s: ImplicitSurface, h: float | str, samples: int = 3, clip: bool = True
) -> tuple[list[tuple[int, ...]], Graph]:
    """Grid cubes of edge ``h`` that meet the surface, and their nerve.

    A cube is selected when the field changes sign (or vanishes) on a
    ``samples``-per-axis lattice over the closed cube, corners included.
    With ``clip`` the cube must also meet the bounding box, which is what
    turns an unbounded plane into a patch.  Closed cubes meet when their
    indices differ by at most one on every axis.
    """
    hq = frac(h)
    if hq <= 0:
        raise DigitizeError("grid step must be positive")
    if samples < 2:
        raise DigitizeError("need at least two samples per axis")
    hf = float(hq)
    ranges = [_axis_range(lo, hi, hf) for lo, hi in s.bounds]
    counts = [len(r) for r in ranges]
    step = samples - 1
    fine = [c * step + 1 for c in counts]
    if int(np.prod(fine)) > MAX_SAMPLES:
        raise DigitizeError(f"sample grid of {int(np.prod(fine))} points exceeds the cap")
    axes = [
        (r.start + np.arange(n) / step) * hf for r, n in zip(ranges, fine)
    ]
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    vals = s(mesh)
    lo_v = np.full(counts, np.inf)
    hi_v = np.full(counts, -np.inf)
    for off in product(range(samples), repeat=s.dim):
        sl = tuple(slice(o, o + c * step, step) for o, c in zip(off, counts))
        block = vals[sl]
        lo_v = np.minimum(lo_v, block)
        hi_v = np.maximum(hi_v, block)
    sel = (lo_v <= 0) & (hi_v >= 0)
    if clip:
        for ax, (r, (blo, bhi)) in enumerate(zip(ranges, s.bounds)):
            idx = np.arange(r.start, r.stop)
            inside = (idx * hf <= bhi) & ((idx + 1) * hf >= blo)
            shape = [1] * s.dim
            shape[ax] = -1
            sel &= inside.reshape(shape)
    coords = np.argwhere(sel)
    if len(coords) == 0:
        raise DigitizeError("no grid cube meets the surface")
    origin = np.array([r.start for r in ranges])
    cubes = [tuple(int(x) for x in c + origin) for c in coords]
    names = [",".join(map(str, c)) for c in cubes]
    pos = {c: i for i, c in enumerate(cubes)}
    edges = []
    offsets = [o for o in product((-1, 0, 1), repeat=s.dim) if o > (0,) * s.dim]
    for c in cubes:
        for o in offsets:
            d = tuple(a + b for a, b in zip(c, o))
            if d in pos:
                edges.append((names[pos[c]], names[pos[d]]))
    g = Graph(names, edges, name=f"{s.kind}_h{frac_text(hq)}")
    return cubes, g


def refinement_sequence(s: ImplicitSurface, h0: float | str, k: int, samples: int = 3) -> dict[str, Any]:
    """Digitize at ``h0, h0/2, ..., h0/2^(k-1)`` and report reduced invariants."""
    if k < 2:
        raise ValueError("need at least two levels")
    h = frac(h0)
    levels = []
    for _ in range(k):
        cubes, g = digitize(s, h, samples)
        red, _ = reduce(g)
        levels.append({
            "h": frac_text(h),
            "cubes": len(cubes),
            "reduced_vertices": red.n_vertices,
            "chi": euler_characteristic(red),
            "betti": list(betti_mod2(red)),
        })
        h /= 2
    stable = k - 1
    last = (levels[-1]["chi"], levels[-1]["betti"])
    while stable > 0 and (levels[stable - 1]["chi"], levels[stable - 1]["betti"]) == last:
        stable -= 1
    return {
        "shape": s.kind,
        "levels": levels,
        "stable_from": stable,
        "stable": {"chi": last[0], "betti": last[1]},
    }
