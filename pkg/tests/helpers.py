"""Shared builders and independent oracles used across the test modules.

The oracles here deliberately re-derive answers by a different route than
the library (union-find instead of BFS, transfer matrices instead of
backtracking) so that agreement actually means something.
"""

from __future__ import annotations

import random

from ditop.images import CK, DigitalImage, Explicit, Point


def naive_components(points, edges) -> list[frozenset]:
    """Connected components by union-find, no BFS involved."""
    parent = {p: p for p in points}

    def find(p):
        while parent[p] != p:
            parent[p] = parent[parent[p]]
            p = parent[p]
        return p

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[Point, set] = {}
    for p in points:
        groups.setdefault(find(p), set()).add(p)
    return [frozenset(g) for g in groups.values()]


def literal_ck_adjacent(p, q, k) -> bool:
    """The c_k definition transcribed directly: distinct points, every
    coordinate within 1, and between 1 and k coordinates actually moving."""
    if p == q:
        return False
    diffs = [abs(a - b) for a, b in zip(p, q)]
    if any(d > 1 for d in diffs):
        return False
    moved = sum(1 for d in diffs if d == 1)
    return 1 <= moved <= k


def transfer_matrix_count(n: int) -> int:
    """Closed walks of length n in the reflexive n-cycle, by integer
    matrix powers. Counts the continuous self-maps of a digital n-cycle."""
    size = n

    def mat_mul(a, b):
        return [[sum(a[i][t] * b[t][j] for t in range(size))
                 for j in range(size)] for i in range(size)]

    step = [[1 if (i == j or (i - j) % size in (1, size - 1)) else 0
             for j in range(size)] for i in range(size)]
    acc = step
    for _ in range(n - 1):
        acc = mat_mul(acc, step)
    return sum(acc[i][i] for i in range(size))


def random_grid_image(rng: random.Random, max_points: int = 9,
                      k: int = 1, connected: bool = True) -> DigitalImage:
    """A random subset of a 3x3 box under c_k, resampled until connected."""
    box = [(x, y) for x in range(3) for y in range(3)]
    while True:
        count = rng.randint(1, max_points)
        pts = tuple(sorted(rng.sample(box, count)))
        img = DigitalImage(pts, CK(k))
        if not connected or img.is_connected:
            return img


def random_explicit_image(rng: random.Random, max_points: int = 6) -> DigitalImage:
    """A random 1-dimensional point set with random explicit edges."""
    n = rng.randint(1, max_points)
    pts = tuple((i,) for i in range(n))
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.5:
                pairs.append(((i,), (j,)))
    return DigitalImage(pts, Explicit.of(pairs))


def random_map_values(rng: random.Random, dom: DigitalImage,
                      cod: DigitalImage) -> tuple[Point, ...]:
    return tuple(rng.choice(cod.points) for _ in dom.points)


def plane_isometry(rng: random.Random):
    """A random c1-isomorphism of Z^2: swap axes or not, flip signs, shift."""
    swap = rng.random() < 0.5
    sx = rng.choice((1, -1))
    sy = rng.choice((1, -1))
    ax = rng.randint(-3, 3)
    ay = rng.randint(-3, 3)

    def move(p):
        x, y = p
        if swap:
            x, y = y, x
        return (sx * x + ax, sy * y + ay)

    return move
