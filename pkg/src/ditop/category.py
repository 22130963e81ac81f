"""Lusternik–Schnirelmann category of a digital image.

The category of (X, adj) is the least number of subsets covering X whose
inclusion maps are each nullhomotopic inside X. The count is of the sets
themselves, so a contractible image has category 1. Pieces need not be
connected: a homotopy only constrains adjacent domain points, so separate
chunks of a piece may drift together through the ambient image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .covers import (AdmissibilityOracle, BoundResult, CoverImpossible,
                     maximal_admissible_sets, minimal_cover_bounds,
                     minimal_cover_exact, Subset)
from .homotopy import (BudgetExhausted, HomotopyWitness, is_contractible,
                       nullhomotopy, slide_nullhomotopy, verify_homotopy)
from .images import DigitalImage, Point, induced_subimage
from .maps import DigitalMap


@dataclass(frozen=True)
class CatPiece:
    points: Subset
    contraction: HomotopyWitness = field(compare=False)


@dataclass(frozen=True)
class CatWitness:
    base: DigitalImage
    pieces: tuple[CatPiece, ...]

    @property
    def size(self) -> int:
        return len(self.pieces)

    def check(self) -> tuple[bool, str | None]:
        covered = set()
        for k, piece in enumerate(self.pieces):
            covered.update(piece.points)
            incl = DigitalMap.inclusion(
                induced_subimage(self.base, piece.points), self.base)
            w = piece.contraction
            ok, why = verify_homotopy(w, incl)
            if not ok:
                return False, f"piece {k}: {why}"
            if not w.end.is_constant():
                return False, f"piece {k}: homotopy does not end at a constant"
        missing = [p for p in self.base.points if p not in covered]
        if missing:
            return False, f"point {missing[0]} is not covered"
        return True, None


def piece_contraction(base: DigitalImage, subset: Sequence[Point],
                      node_budget: int | None = 2_000_000,
                      ) -> Optional[HomotopyWitness]:
    """Nullhomotopy of the inclusion of `subset` into the base, if any."""
    sub = induced_subimage(base, subset)
    incl = DigitalMap.inclusion(sub, base)
    return nullhomotopy(incl, node_budget=node_budget)


def piece_contraction_slide_only(base: DigitalImage, subset: Sequence[Point],
                                 ) -> Optional[HomotopyWitness]:
    """Sound but incomplete variant: only the geodesic slide is tried, so
    None means "not settled", never "impossible"."""
    sub = induced_subimage(base, subset)
    incl = DigitalMap.inclusion(sub, base)
    for t in base.points:
        w = slide_nullhomotopy(incl, t)
        if w is not None:
            return w
    return None


def cat_oracle(base: DigitalImage,
               node_budget: int | None = 2_000_000) -> AdmissibilityOracle:
    return AdmissibilityOracle(
        base, lambda sub: piece_contraction(base, sub, node_budget) is not None)


def cat_exact(base: DigitalImage, guard: int = 14,
              node_budget: int | None = 2_000_000) -> CatWitness:
    """Minimum categorical cover with verified contractions per piece.

    Exhaustive over subsets, so guarded by point count; raises
    BudgetExhausted if some piece's homotopy search cannot be settled.
    """
    if not base.is_connected:
        raise ValueError("category here is for connected images; "
                         "split into components first")
    sets = minimal_cover_exact(base, cat_oracle(base, node_budget), guard)
    pieces = []
    for s in sets:
        w = piece_contraction(base, s, node_budget)
        if w is None:
            raise AssertionError("cover piece lost its contraction on recheck")
        pieces.append(CatPiece(s, w))
    witness = CatWitness(base, tuple(pieces))
    ok, why = witness.check()
    if not ok:
        raise AssertionError(f"cat witness failed its own check: {why}")
    return witness


def cat(base: DigitalImage, guard: int = 14,
        node_budget: int | None = 2_000_000) -> int:
    return cat_exact(base, guard, node_budget).size


def cat_bounds(base: DigitalImage,
               seeds: Sequence[Subset] | None = None,
               node_budget: int | None = 200_000,
               contractibility_guard: int = 12) -> BoundResult:
    """Bracket the category when the exact sweep is out of reach.

    The piece test is slide-only (sound, incomplete). Whole-image
    contractibility is settled exactly only for small images; beyond the
    guard a successful slide still certifies True, otherwise it stays
    unknown and the lower bound honestly remains 1.
    """
    if not base.is_connected:
        raise ValueError("category here is for connected images; "
                         "split into components first")
    whole: bool | None
    idmap = DigitalMap.identity(base)
    slid = None
    for t in base.points:
        slid = slide_nullhomotopy(idmap, t)
        if slid is not None:
            break
    if slid is not None:
        whole = True
    elif len(base.points) <= contractibility_guard:
        try:
            whole = is_contractible(base, node_budget)
        except BudgetExhausted:
            whole = None
    else:
        whole = None

    oracle = AdmissibilityOracle(
        base, lambda sub: piece_contraction_slide_only(base, sub) is not None)
    return minimal_cover_bounds(base, oracle, seeds, whole_admissible=whole)


def categorical_subsets(base: DigitalImage, guard: int = 14,
                        node_budget: int | None = 2_000_000) -> list[Subset]:
    """The maximal subsets with nullhomotopic inclusion (for inspection)."""
    return maximal_admissible_sets(base, cat_oracle(base, node_budget), guard)
