"""Minimal covers of an image by admissible subsets.

Both the category and the sectional-genus computations reduce to the same
question: cover the point set with as few subsets as possible, where a
subset is "admissible" by some expensive predicate (inclusion contracts /
a section exists). Admissibility is hereditary in every use here — subsets
of admissible sets stay admissible — so minimal covers can be searched
over maximal admissible sets only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from .images import DigitalImage, Point

Subset = tuple[Point, ...]


class CoverImpossible(Exception):
    """Some point lies in no admissible set, so no cover exists."""


@dataclass(frozen=True)
class BoundResult:
    """An integer bracketed from both sides, with how each side was won."""

    lower: int
    upper: Optional[int]
    witness: object = field(default=None, compare=False)
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.upper is not None and self.lower > self.upper:
            raise ValueError(f"lower bound {self.lower} exceeds upper {self.upper}")

    @property
    def exact(self) -> bool:
        return self.upper is not None and self.lower == self.upper

    @property
    def value(self) -> int:
        if not self.exact:
            raise ValueError("bounds are not tight, no single value")
        return self.lower


class AdmissibilityOracle:
    """Memoizing wrapper around an admissibility predicate.

    With hereditary=True a subset of a known-admissible set is accepted
    without calling the predicate, which matters when the predicate runs
    a homotopy or section search.
    """

    def __init__(self, base: DigitalImage,
                 predicate: Callable[[Subset], bool],
                 hereditary: bool = True):
        self.base = base
        self.predicate = predicate
        self.hereditary = hereditary
        self.calls = 0
        self._memo: dict[frozenset, bool] = {}
        self._good: list[frozenset] = []

    def canonical(self, subset: Iterable[Point]) -> Subset:
        sub = tuple(sorted(set(tuple(p) for p in subset)))
        for p in sub:
            if p not in self.base:
                raise ValueError(f"{p} is not a point of the base image")
        if not sub:
            raise ValueError("empty subsets are never admissible pieces")
        return sub

    def __call__(self, subset: Iterable[Point]) -> bool:
        sub = self.canonical(subset)
        key = frozenset(sub)
        if key in self._memo:
            return self._memo[key]
        if self.hereditary and any(key <= g for g in self._good):
            self._memo[key] = True
            return True
        self.calls += 1
        val = bool(self.predicate(sub))
        self._memo[key] = val
        if val and self.hereditary:
            self._good.append(key)
        return val


def maximal_admissible_sets(base: DigitalImage, oracle: AdmissibilityOracle,
                            guard: int = 14) -> list[Subset]:
    """All admissible subsets with no admissible strict superset, largest
    first, lexicographic within a size. Exhaustive over the power set, so
    guarded by point count."""
    n = len(base.points)
    if n > guard:
        raise ValueError(f"maximal-set sweep is limited to {guard} points, "
                         f"image has {n}")
    maximal: list[frozenset] = []
    out: list[Subset] = []
    for size in range(n, 0, -1):
        for combo in itertools.combinations(base.points, size):
            key = frozenset(combo)
            if any(key < m for m in maximal):
                continue
            if oracle(combo):
                maximal.append(key)
                out.append(combo)
    return out


def _check_coverable(base: DigitalImage, sets: Sequence[Subset]) -> None:
    covered = set()
    for s in sets:
        covered.update(s)
    missing = [p for p in base.points if p not in covered]
    if missing:
        raise CoverImpossible(
            f"no admissible set contains {missing[0]}; no cover exists")


def minimal_cover_exact(base: DigitalImage, oracle: AdmissibilityOracle,
                        guard: int = 14,
                        witness_guard: int = 500_000) -> tuple[Subset, ...]:
    """A minimum-size cover of the base by admissible sets.

    Optimum is found by branch and bound over the maximal admissible sets;
    the returned family is the lexicographically first cover of that size
    (the maximal-set list being ordered largest-first then lexicographic).
    """
    sets = maximal_admissible_sets(base, oracle, guard)
    _check_coverable(base, sets)
    masks = []
    index = {p: i for i, p in enumerate(base.points)}
    for s in sets:
        m = 0
        for p in s:
            m |= 1 << index[p]
        masks.append(m)
    full = (1 << len(base.points)) - 1
    biggest = max(bin(m).count("1") for m in masks)

    best = [len(sets) + 1]

    def descend(uncovered: int, used: int, chosen: tuple[int, ...]) -> None:
        if not uncovered:
            best[0] = min(best[0], used)
            return
        need = -(-bin(uncovered).count("1") // biggest)
        if used + need >= best[0]:
            return
        # branch on the lowest uncovered point to keep the tree small
        pivot = (uncovered & -uncovered).bit_length() - 1
        for i, m in enumerate(masks):
            if i in chosen or not (m >> pivot) & 1:
                continue
            descend(uncovered & ~m, used + 1, chosen + (i,))

    descend(full, 0, ())
    opt = best[0]

    count = 1
    for i in range(opt):
        count = count * (len(sets) - i) // (i + 1)
    if count > witness_guard:
        raise ValueError(f"canonical witness pass would scan {count} "
                         f"combinations, over the {witness_guard} guard")
    for combo in itertools.combinations(range(len(sets)), opt):
        got = 0
        for i in combo:
            got |= masks[i]
        if got == full:
            return tuple(sets[i] for i in combo)
    raise AssertionError("branch and bound found a size the scan cannot")


def minimal_cover_bounds(base: DigitalImage, oracle: AdmissibilityOracle,
                         seeds: Sequence[Subset] | None = None,
                         whole_admissible: bool | None = None,
                         ) -> BoundResult:
    """Bracket the minimum cover size without the exhaustive sweep.

    The oracle here may be sound but incomplete (True only with a verified
    witness in hand), so a False answer never feeds a lower bound. Upper
    route: verify the seed family if given and covering, else grow greedy
    pieces point by point. Lower route: 1, raised to 2 only when the caller
    settles `whole_admissible` as False by a complete method.
    """
    notes = []
    pieces: list[Subset] | None = None

    if whole_admissible is True or (whole_admissible is None and oracle(base.points)):
        notes.append("whole image admissible, cover of one")
        return BoundResult(1, 1, (base.points,), tuple(notes))

    if seeds:
        cand = [oracle.canonical(s) for s in seeds]
        covered = set()
        for s in cand:
            covered.update(s)
        if all(p in covered for p in base.points) and all(oracle(s) for s in cand):
            pieces = cand
            notes.append("upper from supplied seed cover")
    if pieces is None:
        pieces = _greedy_cover(base, oracle)
        notes.append("upper from greedy growth")

    lower = 1
    if whole_admissible is False:
        lower = 2
        notes.append("lower 2: the whole image is not admissible")
    elif len(pieces) > 1:
        notes.append("lower stays 1: whole-image admissibility unsettled")
    return BoundResult(lower, len(pieces), tuple(pieces), tuple(notes))


def _greedy_cover(base: DigitalImage, oracle: AdmissibilityOracle) -> list[Subset]:
    remaining = list(base.points)
    pieces: list[Subset] = []
    while remaining:
        seed = remaining[0]
        if not oracle((seed,)):
            raise CoverImpossible(
                f"no admissible set contains {seed}; no cover exists")
        piece = [seed]
        grown = True
        while grown:
            grown = False
            in_piece = set(piece)
            frontier = sorted({q for p in piece for q in base.neighbors(p)
                               if q not in in_piece})
            for q in frontier:
                if oracle(tuple(piece) + (q,)):
                    piece.append(q)
                    piece.sort()
                    grown = True
                    break
        pieces.append(tuple(piece))
        covered = set(piece)
        remaining = [p for p in remaining if p not in covered]
    return pieces
