"""Exact-threshold Vietoris-Rips 2-skeleton over a point cloud.

Edges are pairs at squared distance <= a**2, compared as exact rationals
with the threshold INCLUSIVE: the rigid pairs of the construction sit at
length exactly a and must be present.  Triangles are the flag completion
(all three sides present), which is all the 2-skeleton needs since first
homology of a flag complex is determined by it.

Enumeration is the dense O(V^2) pair scan; exact big-rational arithmetic
dominates anyway at the intended desk scale of a few hundred points.
Everything built here is immutable and deterministically ordered.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .digits import format_rational

__all__ = [
    "RipsComplex2",
    "MonotonicityError",
    "sq_dist",
    "build_edges",
    "build_complex",
    "sweep",
]


class MonotonicityError(RuntimeError):
    """Nested scales produced non-nested complexes: an implementation bug."""


def sq_dist(p, q) -> Fraction:
    """Exact squared Euclidean distance between two labeled points."""
    return sum((a - b) ** 2 for a, b in zip(p.coords, q.coords))


def build_edges(cloud, a: Fraction) -> list[tuple[int, int]]:
    """All index pairs (i < j) with squared distance <= a**2, inclusive."""
    if a < 0:
        raise ValueError("scale must be nonnegative")
    aa = a * a
    pts = cloud.points
    edges = []
    for i in range(len(pts)):
        pi = pts[i]
        for j in range(i + 1, len(pts)):
            if sq_dist(pi, pts[j]) <= aa:
                edges.append((i, j))
    return edges


@dataclass(frozen=True)
class RipsComplex2:
    """Vertices, edges and flag triangles of Rips(cloud, scale), canonically
    ordered: edges (i, j) with i < j lexicographic, triangles (i, j, k)
    with i < j < k lexicographic, per-vertex neighbor lists ascending."""

    cloud: object
    scale: Fraction
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.cloud.points)

    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def to_json_dict(self) -> dict:
        return {
            "scale": format_rational(self.scale),
            "vertices": self.n_vertices,
            "edges": [list(e) for e in self.edges],
            "triangles": [list(t) for t in self.triangles],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"


def _merge_intersect_above(left: list[int], right: list[int], floor: int) -> list[int]:
    # Sorted-list intersection keeping values > floor.
    out = []
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            if a > floor:
                out.append(a)
            i += 1
            j += 1
        elif a < b:
            i += 1
        else:
            j += 1
    return out


def build_complex(cloud, a: Fraction) -> RipsComplex2:
    """Edges plus flag triangles via sorted-adjacency intersection."""
    edges = build_edges(cloud, a)
    n = len(cloud.points)
    adjacency: list[list[int]] = [[] for _ in range(n)]
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    # Pair scan emits j ascending per i, so each list is already sorted.
    triangles = []
    for i, j in edges:
        for k in _merge_intersect_above(adjacency[i], adjacency[j], j):
            triangles.append((i, j, k))
    triangles.sort()
    return RipsComplex2(
        cloud=cloud,
        scale=Fraction(a),
        edges=tuple(edges),
        triangles=tuple(triangles),
        adjacency=tuple(tuple(nbrs) for nbrs in adjacency),
    )


def sweep(cloud, scales) -> list[RipsComplex2]:
    """Complexes at strictly ascending scales, with nesting asserted.

    A monotonicity violation cannot arise from valid input; it is raised
    as MonotonicityError to flag an implementation bug loudly.
    """
    scales = list(scales)
    if any(b <= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be strictly ascending")
    out: list[RipsComplex2] = []
    for a in scales:
        cx = build_complex(cloud, a)
        if out:
            prev = out[-1]
            if not set(prev.edges) <= set(cx.edges):
                raise MonotonicityError(f"edges at {prev.scale} not nested in {a}")
            if not set(prev.triangles) <= set(cx.triangles):
                raise MonotonicityError(f"triangles at {prev.scale} not nested in {a}")
        out.append(cx)
    return out
