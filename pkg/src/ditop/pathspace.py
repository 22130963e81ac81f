"""Spaces of digital paths and the endpoint evaluation fibration.

A path of length m in (X, adj) is a map from {0,...,m} that moves by at
most one adjacency step per tick (stalling allowed). The motion-planning
construction works with wedges: n paths of equal length sharing their
start. Evaluating all free endpoints is the fibration e_n from the wedge
space onto the n-fold product of X; its sectional invariants are computed
in `complexity`.

Wedge tuples are plain nested tuples ((p0,...,pm), ... n arms ...) with
arm[0] shared, so they hash and sort like everything else here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .images import DigitalImage, Point, power_image, product_image

Path = tuple[Point, ...]
Wedge = tuple[Path, ...]

MODES = ("pointwise", "strong")


def _product_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    return "min" if mode == "pointwise" else "strong"


def is_path(img: DigitalImage, seq: Sequence[Point]) -> bool:
    """A walk: consecutive entries equal or adjacent, all points present."""
    seq = [tuple(p) for p in seq]
    if not seq:
        return False
    if any(p not in img for p in seq):
        return False
    adj = img.adjacency.adjacent
    return all(a == b or adj(a, b) for a, b in zip(seq, seq[1:]))


def paths_between(img: DigitalImage, start: Point, end: Point,
                  length: int) -> Iterator[Path]:
    """All walks of exactly `length` steps from start to end, in
    lexicographic order. Distance pruning keeps dead branches short."""
    start, end = tuple(start), tuple(end)
    for p in (start, end):
        if p not in img:
            raise ValueError(f"{p} is not in the image")
    if length < 0:
        return
    dist = img.distance_matrix
    idx = img.index
    ei = idx(end)
    pts = img.points

    def options(p: Point) -> list[Point]:
        cand = [p] + list(img.neighbors(p))
        cand.sort()
        return cand

    prefix: list[Point] = [start]

    def extend() -> Iterator[Path]:
        here = prefix[-1]
        remaining = length - (len(prefix) - 1)
        d = dist[idx(here)][ei]
        if d < 0 or d > remaining:
            return
        if remaining == 0:
            yield tuple(prefix)
            return
        for q in options(here):
            prefix.append(q)
            yield from extend()
            prefix.pop()

    yield from extend()


def count_paths(img: DigitalImage, start: Point, end: Point, length: int) -> int:
    """Path count by dynamic programming (independent of the generator)."""
    start, end = tuple(start), tuple(end)
    n = len(img.points)
    idx = img.index
    row = [0] * n
    row[idx(start)] = 1
    for _ in range(length):
        nxt = [0] * n
        for i, c in enumerate(row):
            if not c:
                continue
            nxt[i] += c
            for j in img.neighbor_index[i]:
                nxt[j] += c
        row = nxt
    return row[idx(end)]


class WedgeSpace:
    """Wedges of n equal-length paths with a common start, plus the two
    step relations between them.

    pointwise: wedges are one step apart when every arm is pointwise equal
    or adjacent at each tick. strong: additionally each arm must stay equal
    or adjacent across neighboring ticks of the other wedge (the stricter
    function-space relation); both are checked arm against same-indexed arm.
    """

    def __init__(self, base: DigitalImage, n: int, m: int,
                 mode: str = "pointwise"):
        if n < 1:
            raise ValueError("a wedge needs at least one arm")
        if m < 0:
            raise ValueError("arm length cannot be negative")
        self.base = base
        self.n = n
        self.m = m
        self.mode = mode
        self.product = power_image(base, n, _product_mode(mode),
                                   label=f"{base.label or 'X'}^{n}")

    def is_wedge(self, w: Wedge) -> bool:
        if len(w) != self.n:
            return False
        starts = {arm[0] for arm in w if arm}
        if len(starts) != 1:
            return False
        for arm in w:
            if len(arm) != self.m + 1 or not is_path(self.base, arm):
                return False
        return True

    def endpoints(self, w: Wedge) -> Point:
        """Concatenated arm endpoints: a point of the n-fold product."""
        out: tuple[int, ...] = ()
        for arm in w:
            out = out + arm[-1]
        return out

    def constant_wedge(self, p: Point) -> Wedge:
        arm = (tuple(p),) * (self.m + 1)
        return (arm,) * self.n

    def adjacent(self, w1: Wedge, w2: Wedge) -> bool:
        """Equal-or-one-step relation (reflexive on purpose: homotopy-style
        conditions only ever need "equal or adjacent")."""
        adj = self.base.adjacency.adjacent
        for a1, a2 in zip(w1, w2):
            for t in range(self.m + 1):
                p, q = a1[t], a2[t]
                if p != q and not adj(p, q):
                    return False
            if self.mode == "strong":
                for t in range(self.m):
                    for p, q in ((a1[t], a2[t + 1]), (a1[t + 1], a2[t])):
                        if p != q and not adj(p, q):
                            return False
        return True


class EndpointFibration:
    """e_n: wedge space over (X, adj) -> X^n, evaluation at the free ends."""

    def __init__(self, base: DigitalImage, n: int, m: int,
                 mode: str = "pointwise"):
        self.base = base
        self.n = n
        self.m = m
        self.mode = mode
        self.wedge = WedgeSpace(base, n, m, mode)
        self.product = self.wedge.product

    def split(self, u: Point) -> tuple[Point, ...]:
        d = self.base.dim
        return tuple(u[i * d:(i + 1) * d] for i in range(self.n))

    def start_candidates(self, u: Point) -> list[Point]:
        parts = self.split(u)
        dist = self.base.distance_matrix
        idx = self.base.index
        out = []
        for s in self.base.points:
            si = idx(s)
            if all(dist[si][idx(p)] <= self.m for p in parts):
                out.append(s)
        return out

    def fiber(self, u: Point, limit: int | None = None) -> Iterator[Wedge]:
        """All wedges with endpoints u, lexicographic by (start, arms)."""
        if u not in self.product:
            raise ValueError(f"{u} is not in the product image")
        parts = self.split(u)
        count = 0
        for s in self.start_candidates(u):
            arm_pools = [paths_between(self.base, s, p, self.m) for p in parts]
            for arms in itertools.product(*map(tuple, arm_pools)):
                yield arms
                count += 1
                if limit is not None and count >= limit:
                    return

    def fiber_nonempty(self, u: Point) -> bool:
        return bool(self.start_candidates(u))

    def is_surjective(self) -> tuple[bool, Optional[Point]]:
        """Whether every endpoint tuple is reachable: some start lies within
        m of every component. Returns the first unreachable tuple if not."""
        for u in self.product.points:
            if not self.fiber_nonempty(u):
                return False, u
        return True, None


class PairedWedge:
    """Step relation for pairs drawn from two wedge spaces.

    A pair moves one step when each component is equal or one step away
    and they do not both move — the same minimum-product discipline the
    base spaces use, lifted to the function spaces."""

    def __init__(self, left: WedgeSpace, right: WedgeSpace):
        self.left = left
        self.right = right

    def is_wedge(self, w) -> bool:
        return (len(w) == 2 and self.left.is_wedge(w[0])
                and self.right.is_wedge(w[1]))

    def endpoints(self, w) -> Point:
        return self.left.endpoints(w[0]) + self.right.endpoints(w[1])

    def constant_wedge(self, p: Point) -> tuple:
        dl = self.left.base.dim * self.left.n
        return (self.left.constant_wedge(p[:dl][:self.left.base.dim]),
                self.right.constant_wedge(p[dl:][:self.right.base.dim]))

    def adjacent(self, w1, w2) -> bool:
        a1, b1 = w1
        a2, b2 = w2
        if not self.left.adjacent(a1, a2):
            return False
        if not self.right.adjacent(b1, b2):
            return False
        return a1 == a2 or b1 == b2


class PairedFibration:
    """The product of two endpoint fibrations, over the minimum product
    of their bases. Elements of the total space are pairs (left wedge,
    right wedge); the projection evaluates both components at their free
    ends. Satisfies the same interface the section search consumes."""

    def __init__(self, left: EndpointFibration, right: EndpointFibration):
        self.left = left
        self.right = right
        self.n = (left.n, right.n)
        self.m = (left.m, right.m)
        self.wedge = PairedWedge(left.wedge, right.wedge)
        self.product = product_image(
            left.product, right.product, "min",
            label=f"({left.product.label}) x ({right.product.label})")

    def split(self, u: Point) -> tuple[Point, Point]:
        dl = self.left.base.dim * self.left.n
        return u[:dl], u[dl:]

    def fiber(self, u: Point, limit: int | None = None) -> Iterator[tuple]:
        ul, ur = self.split(u)
        count = 0
        right_pool = None
        for wl in self.left.fiber(ul, limit):
            if right_pool is None:
                right_pool = list(self.right.fiber(ur, limit))
            for wr in right_pool:
                yield (wl, wr)
                count += 1
                if limit is not None and count >= limit:
                    return

    def fiber_nonempty(self, u: Point) -> bool:
        ul, ur = self.split(u)
        return self.left.fiber_nonempty(ul) and self.right.fiber_nonempty(ur)

    def is_surjective(self) -> tuple[bool, Optional[Point]]:
        for u in self.product.points:
            if not self.fiber_nonempty(u):
                return False, u
        return True, None
