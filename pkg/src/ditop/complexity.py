"""Sectional genus of the endpoint fibration and higher complexity.

TC_n of an image is the least number of subsets covering the n-fold
product, each admitting a continuous section of the endpoint evaluation
e_n (a motion planning rule: endpoints in, wedge of paths out, varying by
at most a step when the endpoints do).

Routes, by size:
  * tiny products: exact — admissibility of a piece is decided by a
    backtracking section search over materialized fibers;
  * group-bearing bases: the translation construction turns a categorical
    cover of the base into explicit verified sections, one piece per
    (n-1)-tuple of cover pieces, giving an upper bound with witnesses;
  * the category of the base bounds every TC_n from below.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .category import cat_exact, piece_contraction
from .covers import (AdmissibilityOracle, BoundResult, CoverImpossible,
                     minimal_cover_exact, Subset)
from .homotopy import (BudgetExhausted, HomotopyWitness, nullhomotopy,
                       slide_nullhomotopy)
from .images import DigitalImage, Point, induced_subimage
from .maps import DigitalMap
from .pathspace import EndpointFibration, PairedFibration, Wedge
from .groups import CayleyTable, is_topological_group


class TheoremViolation(Exception):
    """A construction that is guaranteed by a proved statement failed its
    verification — this signals a bug, never a legitimate outcome, so it
    is loud and carries the evidence."""


@dataclass(frozen=True)
class SectionWitness:
    """A continuous motion planning rule over one piece of the product."""

    piece: tuple[Point, ...]
    wedges: tuple[Wedge, ...] = field(compare=False)

    def wedge_for(self, u: Point) -> Wedge:
        return self.wedges[self.piece.index(tuple(u))]


def verify_section(fib: EndpointFibration, sw: SectionWitness,
                   ) -> tuple[bool, str | None]:
    """Pointwise and edgewise check of a section over its piece."""
    if len(sw.piece) != len(sw.wedges):
        return False, "piece and assignment lengths differ"
    if len(set(sw.piece)) != len(sw.piece):
        return False, "piece repeats a point"
    for u, w in zip(sw.piece, sw.wedges):
        if u not in fib.product:
            return False, f"{u} is not in the product image"
        if not fib.wedge.is_wedge(w):
            return False, f"assignment at {u} is not a wedge of {fib.n} " \
                          f"paths of length {fib.m}"
        if fib.wedge.endpoints(w) != u:
            return False, f"assignment at {u} ends at {fib.wedge.endpoints(w)}"
    sub = induced_subimage(fib.product, sw.piece)
    pos = {u: k for k, u in enumerate(sw.piece)}
    for a, b in sub.edges():
        wa, wb = sw.wedges[pos[a]], sw.wedges[pos[b]]
        if not fib.wedge.adjacent(wa, wb):
            return False, (f"section jumps across the edge {a} ~ {b}: "
                           f"assigned wedges are not within one step")
    return True, None


def find_section(fib: EndpointFibration, piece: Sequence[Point],
                 fiber_cap: int = 20_000) -> Optional[SectionWitness]:
    """Backtracking search for a section over the piece, or None.

    Variables are the piece's points, most-constrained-first (descending
    degree inside the piece, then canonical order, visited so each next
    variable touches assigned ones where possible); domains are whole
    fibers, materialized up to fiber_cap."""
    pts = tuple(sorted({tuple(p) for p in piece}))
    sub = induced_subimage(fib.product, pts)
    k = len(pts)
    nbrs = [[] for _ in range(k)]
    pos = {u: i for i, u in enumerate(pts)}
    for a, b in sub.edges():
        nbrs[pos[a]].append(pos[b])
        nbrs[pos[b]].append(pos[a])

    ranked = sorted(range(k), key=lambda i: (-len(nbrs[i]), pts[i]))
    order: list[int] = []
    placed = [False] * k
    pool = list(ranked)
    while pool:
        best = max(pool, key=lambda i: (sum(placed[j] for j in nbrs[i]),
                                        -ranked.index(i)))
        order.append(best)
        placed[best] = True
        pool.remove(best)

    domains: list[list[Wedge]] = [None] * k  # type: ignore[list-item]
    for i in order:
        dom = []
        for w in fib.fiber(pts[i], limit=fiber_cap + 1):
            dom.append(w)
        if len(dom) > fiber_cap:
            raise BudgetExhausted(
                f"fiber over {pts[i]} exceeds {fiber_cap} wedges")
        if not dom:
            return None
        domains[i] = dom

    assign: dict[int, Wedge] = {}

    def extend(step: int) -> bool:
        if step == k:
            return True
        i = order[step]
        for w in domains[i]:
            ok = True
            for j in nbrs[i]:
                if j in assign and not fib.wedge.adjacent(w, assign[j]):
                    ok = False
                    break
            if ok:
                assign[i] = w
                if extend(step + 1):
                    return True
                del assign[i]
        return False

    if not extend(0):
        return None
    return SectionWitness(pts, tuple(assign[i] for i in range(k)))


def section_oracle(fib: EndpointFibration,
                   fiber_cap: int = 20_000) -> AdmissibilityOracle:
    return AdmissibilityOracle(
        fib.product, lambda sub: find_section(fib, sub, fiber_cap) is not None)


def schwarz_genus(fib: EndpointFibration, guard: int = 14,
                  fiber_cap: int = 20_000,
                  ) -> tuple[int, tuple[SectionWitness, ...]]:
    """Exact minimum number of section-admitting pieces covering the
    product. Exhaustive over subsets of the product, hence tiny bases only."""
    ok, bad = fib.is_surjective()
    if not ok:
        raise CoverImpossible(
            f"endpoint tuple {bad} is unreachable by arms of length {fib.m}; "
            f"raise the arm length")
    sets = minimal_cover_exact(fib.product, section_oracle(fib, fiber_cap), guard)
    witnesses = []
    for s in sets:
        sw = find_section(fib, s, fiber_cap)
        if sw is None:
            raise AssertionError("cover piece lost its section on recheck")
        witnesses.append(sw)
    return len(sets), tuple(witnesses)


def constant_section(fib: EndpointFibration) -> SectionWitness:
    """The global section of e_1: stand still. Only exists for n = 1."""
    if fib.n != 1:
        raise ValueError("the constant-path section is an n=1 construction")
    pts = fib.product.points
    return SectionWitness(pts, tuple(fib.wedge.constant_wedge(u) for u in pts))


def contraction_section(base: DigitalImage, n: int, m: int | None = None,
                        mode: str = "pointwise",
                        node_budget: int | None = 2_000_000,
                        ) -> Optional[tuple[SectionWitness, int]]:
    """Global section over the whole product from a contraction of the base:
    every arm replays the contraction track of its endpoint, backwards from
    the common collapse point. Returns (witness, arm length) or None when
    the base is not contractible, the requested arm length is too short, or
    (in strong mode, where the argument is not available) the candidate
    fails verification."""
    from .homotopy import contraction

    w = contraction(base, node_budget)
    if w is None:
        return None
    steps = w.steps
    if m is not None and m < steps:
        return None
    m_used = steps if m is None else m
    track = [dict(zip(base.points, st.values)) for st in w.stages]

    def arm(p: Point) -> tuple[Point, ...]:
        return tuple(track[min(m_used - t, steps)][p] for t in range(m_used + 1))

    fib = EndpointFibration(base, n, m_used, mode)
    pts = fib.product.points
    wedges = []
    for u in pts:
        wedges.append(tuple(arm(p) for p in fib.split(u)))
    sw = SectionWitness(pts, tuple(wedges))
    ok, why = verify_section(fib, sw)
    if not ok:
        if mode == "pointwise":
            raise TheoremViolation(
                f"contraction-built global section failed verification: {why}")
        return None
    return sw, m_used


# ---- the group construction ----

def _piece_tracks(base: DigitalImage, table: CayleyTable, piece: Subset,
                  node_budget: int | None = 2_000_000,
                  ) -> list[tuple[int, Point, list[dict[Point, Point]]]]:
    """Candidate "retraction tracks" for one cover piece: a nullhomotopy of
    its inclusion to a constant target, extended by a walk from the target
    to the group identity. Returns (total steps, target, stages) sorted by
    (total, target); stages are value dictionaries per time tick.

    Slide candidates come first; if none exists the exact search runs per
    target. The list is never empty for a genuinely contractible-in-base
    piece (the exact search settles it), and an empty list means the piece
    is not admissible at all."""
    e = table.identity
    sub = induced_subimage(base, piece)
    incl = DigitalMap.inclusion(sub, base)
    dist = base.distance_matrix
    ei = base.index(e)

    def to_track(w: HomotopyWitness, target: Point) -> tuple[int, Point, list]:
        stages = [dict(zip(sub.points, st.values)) for st in w.stages]
        walk = base.lex_shortest_path(target, e)
        for q in walk[1:]:
            stages.append({p: q for p in sub.points})
        return (len(stages) - 1, target, stages)

    out = []
    for c in base.points:
        w = slide_nullhomotopy(incl, c)
        if w is not None:
            out.append(to_track(w, c))
    if not out:
        for c in sorted(base.points, key=lambda c: (dist[base.index(c)][ei], c)):
            w = nullhomotopy(incl, targets=(c,), node_budget=node_budget)
            if w is not None:
                out.append(to_track(w, c))
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def tc_upper_via_group(base: DigitalImage, table: CayleyTable, n: int = 2,
                       cover: Sequence[Subset] | None = None,
                       m: int | None = None, mode: str = "pointwise",
                       node_budget: int | None = 2_000_000,
                       ) -> tuple[int, tuple[SectionWitness, ...], int]:
    """Upper bound on TC_n from a group structure: every categorical cover
    piece M of the base yields a piece {(g, g*m_1, ..., g*m_{n-1})} of the
    product with an explicit section — walk each coordinate back along the
    translated contraction of its M. Returns (piece count, verified
    witnesses, arm length used).

    The base must be connected and the table a verified topological group;
    every returned section is re-verified, and a verification failure
    raises TheoremViolation since the construction is backed by proof.
    """
    if n < 2:
        raise ValueError("the group construction is for n >= 2")
    if mode != "pointwise":
        raise ValueError("the translation construction is backed by proof "
                         "for the pointwise step relation only")
    if not base.is_connected:
        raise ValueError("the construction needs a connected base")
    if table.image != base:
        raise ValueError("group table lives on a different carrier")
    verdict = is_topological_group(table)
    if not verdict.ok:
        raise ValueError("not a topological group: " + "; ".join(verdict.failures))

    if cover is None:
        pieces = tuple(p.points for p in cat_exact(base).pieces)
    else:
        pieces = tuple(tuple(sorted({tuple(q) for q in s})) for s in cover)
        covered = {q for s in pieces for q in s}
        if any(p not in covered for p in base.points):
            raise ValueError("supplied cover does not cover the base")

    tracks = []
    for s in pieces:
        cands = _piece_tracks(base, table, s, node_budget)
        if not cands:
            raise ValueError(f"cover piece {s} admits no contraction in the "
                             f"base; not a categorical cover")
        tracks.append(cands)

    if m is None:
        chosen = [c[0] for c in tracks]
        m_used = max(t[0] for t in chosen)
    else:
        chosen = []
        for s, cands in zip(pieces, tracks):
            fit = next((t for t in cands if t[0] <= m), None)
            if fit is None:
                need = min(t[0] for t in cands)
                raise ValueError(
                    f"arm length {m} is too short: piece {s} needs at "
                    f"least {need}")
            chosen.append(fit)
        m_used = m

    fib = EndpointFibration(base, n, m_used, mode)
    e = table.identity

    def gamma(track: list[dict[Point, Point]], mp: Point, t: int) -> Point:
        # value of the extended contraction at time t, padded with the
        # identity beyond its own length
        if t < len(track):
            return track[t][mp]
        return e

    witnesses = []
    for combo in itertools.product(range(len(pieces)), repeat=n - 1):
        upts = []
        assign = {}
        for x in base.points:
            for ms in itertools.product(*(pieces[i] for i in combo)):
                u = x
                ys = []
                for mp in ms:
                    y = table.product(x, mp)
                    ys.append(y)
                    u = u + y
                arms = [tuple([x] * (m_used + 1))]
                for i, mp in zip(combo, ms):
                    track = chosen[i][2]
                    arm = tuple(table.product(x, gamma(track, mp, m_used - t))
                                for t in range(m_used + 1))
                    arms.append(arm)
                if u not in assign:
                    upts.append(u)
                    assign[u] = tuple(arms)
        upts.sort()
        sw = SectionWitness(tuple(upts), tuple(assign[u] for u in upts))
        ok, why = verify_section(fib, sw)
        if not ok:
            raise TheoremViolation(
                f"translation section over cover pieces "
                f"{[pieces[i] for i in combo]} failed verification: {why}")
        witnesses.append(sw)

    covered = set()
    for sw in witnesses:
        covered.update(sw.piece)
    missing = [u for u in fib.product.points if u not in covered]
    if missing:
        raise TheoremViolation(
            f"translation pieces miss the product point {missing[0]}")
    return len(witnesses), tuple(witnesses), m_used


# ---- assembled bounds ----

def tc_n(base: DigitalImage, n: int, table: CayleyTable | None = None,
         cover: Sequence[Subset] | None = None, m: int | None = None,
         mode: str = "pointwise", genus_guard: int = 14, cat_guard: int = 14,
         node_budget: int | None = 2_000_000) -> BoundResult:
    """Best available bracket on TC_n, exact when the routes meet.

    n = 1 is settled by the stand-still section. Tiny products get the
    exact sweep. Otherwise the bracket combines the category lower bound
    with the group-construction upper bound when a table is supplied.
    """
    if n < 1:
        raise ValueError("TC_n needs n >= 1")
    if not base.is_connected:
        raise ValueError("complexity here is for connected images")
    if n == 1:
        fib = EndpointFibration(base, 1, m if m is not None else base.diameter,
                                mode)
        sw = constant_section(fib)
        ok, why = verify_section(fib, sw)
        if not ok:
            raise AssertionError(f"constant section failed: {why}")
        return BoundResult(1, 1, (sw,),
                           ("standing still is a global plan over one piece",))

    try:
        shortcut = contraction_section(base, n, m, mode, node_budget)
    except BudgetExhausted:
        shortcut = None
    if shortcut is not None:
        sw, m_used = shortcut
        return BoundResult(1, 1, (sw,),
                           (f"contractible base: one global section at arm "
                            f"length {m_used}",))

    if len(base.points) ** n <= genus_guard:
        fib = EndpointFibration(base, n, m if m is not None else base.diameter,
                                mode)
        k, ws = schwarz_genus(fib, genus_guard)
        return BoundResult(k, k, ws, ("exact sweep over the product",))

    notes: list[str] = []
    lower = 1
    witness = None
    upper = None
    if len(base.points) <= cat_guard:
        catv = cat_exact(base, cat_guard, node_budget).size
        lower = max(lower, catv)
        notes.append(f"lower {catv}: the category of the base is a lower "
                     f"bound for every TC_n, n >= 2")
    else:
        notes.append("lower stays 1: base too large for the exact category")
    if table is not None and mode == "pointwise":
        k, ws, m_used = tc_upper_via_group(base, table, n, cover, m, mode,
                                           node_budget)
        upper = k
        witness = ws
        notes.append(f"upper {k}: translation sections at arm length {m_used}")
    elif table is not None:
        notes.append("group route unavailable: the translation construction "
                     "covers the pointwise relation only")
    else:
        notes.append("no group structure supplied, no upper route")
    return BoundResult(lower, upper, witness, tuple(notes))


def tc_gap_step(prev_upper: int, cat_value: int) -> int:
    """One step of the chain inequality: TC_{n+1} never exceeds TC_n plus
    the category of the base (for a connected topological-group base)."""
    return prev_upper + cat_value


def tc_chain(base: DigitalImage, up_to: int, table: CayleyTable | None = None,
             cover: Sequence[Subset] | None = None, m: int | None = None,
             mode: str = "pointwise",
             node_budget: int | None = 2_000_000) -> list[BoundResult]:
    """TC_1 through TC_up_to with monotone lower bounds and, given a group,
    the chain upper bound folded in."""
    results: list[BoundResult] = []
    cat_upper: int | None = None
    if len(base.points) <= 14:
        cat_upper = cat_exact(base).size
    for k in range(1, up_to + 1):
        r = tc_n(base, k, table, cover, m, mode, node_budget=node_budget)
        if results:
            prev = results[-1]
            lower = max(r.lower, prev.lower)
            upper = r.upper
            notes = list(r.notes)
            if lower > r.lower:
                notes.append(f"lower raised to {lower}: TC never drops as n grows")
            if (table is not None and cat_upper is not None
                    and prev.upper is not None):
                cand = tc_gap_step(prev.upper, cat_upper)
                if upper is None or cand < upper:
                    upper = cand
                    notes.append(f"upper {cand}: previous TC plus category")
            r = BoundResult(lower, upper, r.witness, tuple(notes))
        results.append(r)
    return results


def product_of_sections(pair: PairedFibration,
                        left_cover: Sequence[SectionWitness],
                        right_cover: Sequence[SectionWitness],
                        ) -> list[SectionWitness]:
    """Sections for the product fibration from sections of the factors.

    Every product of a left piece with a right piece gets the pairwise
    section; each result is re-verified from scratch rather than trusted.
    The list covers the product base whenever the inputs cover theirs,
    so its length witnesses genus(left x right) <= (pieces) <= any bound
    the caller wants to draw from the factor counts."""
    out = []
    for sl in left_cover:
        at_l = dict(zip(sl.piece, sl.wedges))
        for sr in right_cover:
            at_r = dict(zip(sr.piece, sr.wedges))
            piece = tuple(ul + ur for ul in sl.piece for ur in sr.piece)
            wedges = tuple((at_l[ul], at_r[ur])
                           for ul in sl.piece for ur in sr.piece)
            sw = SectionWitness(piece, wedges)
            ok, why = verify_section(pair, sw)
            if not ok:
                raise TheoremViolation(
                    f"product of verified sections fails to verify: {why}")
            out.append(sw)
    covered = set()
    for sw in out:
        covered.update(sw.piece)
    missing = [u for u in pair.product.points if u not in covered]
    if missing:
        raise TheoremViolation(
            f"product cover misses {len(missing)} point(s), first {missing[0]}")
    return out
