"""Independent oracles used by the test suite.

These deliberately share no code with the package: union-find for
component counting and a tiny random-cloud generator for cross-checking
the homology engine.
"""

from __future__ import annotations

import random
from fractions import Fraction

from exactrips.space import Cloud, LabeledPoint4


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[ri] = rj

    def component_count(self) -> int:
        return len({self.find(i) for i in range(len(self.parent))})


def component_count(n_vertices: int, edges) -> int:
    uf = UnionFind(n_vertices)
    for i, j in edges:
        uf.union(i, j)
    return uf.component_count()


def random_rational(rng: random.Random, max_num: int = 8, max_den: int = 6) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_cloud(rng: random.Random, max_points: int = 10) -> Cloud:
    n = rng.randint(1, max_points)
    points = tuple(
        LabeledPoint4(
            tuple(random_rational(rng) for _ in range(4)),
            "cube1",
        )
        for _ in range(n)
    )
    return Cloud(points, None)
