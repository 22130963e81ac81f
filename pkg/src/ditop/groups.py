"""Group structures on digital images and their continuity.

A carrier image with a multiplication table is a topological group (for
its adjacency) when the group axioms hold, the multiplication is
continuous as a map from the min-product of the image with itself, and
inversion is continuous. Axioms are checked exhaustively with explicit
witnesses for every failure; continuity failures report the first bad
edge in canonical order.

Infinite groups (integers under addition and the like) are handled as
window checks: the axioms are taken as given globally, and continuity is
verified on a finite window against a global adjacency law, so that
operation values falling outside the window are still compared honestly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .images import DigitalImage, Point, product_image
from .maps import DigitalMap, continuity_violation


@dataclass(frozen=True)
class CayleyTable:
    """A binary operation on the points of an image.

    Entries are raw points and may even fall outside the carrier — that is
    reported as a closure failure by `verify_cayley`, not a construction
    error, so that broken tables read from files can be diagnosed.
    """

    image: DigitalImage
    identity: Point
    entries: tuple[tuple[Point, ...], ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = len(self.image.points)
        ident = tuple(self.identity)
        rows = tuple(tuple(tuple(v) for v in row) for row in self.entries)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ValueError(f"table must be {n}x{n} over the carrier points")
        if ident not in self.image:
            raise ValueError(f"identity {ident} is not in the carrier")
        object.__setattr__(self, "identity", ident)
        object.__setattr__(self, "entries", rows)

    @staticmethod
    def from_function(image: DigitalImage, op: Callable[[Point, Point], Point],
                      identity: Point, label: str = "") -> "CayleyTable":
        rows = tuple(tuple(tuple(op(a, b)) for b in image.points)
                     for a in image.points)
        return CayleyTable(image, identity, rows, label)

    def product(self, a: Point, b: Point) -> Point:
        return self.entries[self.image.index(tuple(a))][self.image.index(tuple(b))]

    def inverse(self, a: Point) -> Optional[Point]:
        """The two-sided inverse of a, or None."""
        e = self.identity
        for b in self.image.points:
            if self.product(a, b) == e and self.product(b, a) == e:
                return b
        return None

    def power(self, a: Point, k: int) -> Point:
        if k < 0:
            inv = self.inverse(a)
            if inv is None:
                raise ValueError(f"{a} has no inverse")
            return self.power(inv, -k)
        out = self.identity
        for _ in range(k):
            out = self.product(out, a)
        return out

    def left_translation(self, g: Point) -> DigitalMap:
        vals = tuple(self.product(g, p) for p in self.image.points)
        return DigitalMap(self.image, self.image, vals, f"L{tuple(g)}")

    def right_translation(self, g: Point) -> DigitalMap:
        vals = tuple(self.product(p, g) for p in self.image.points)
        return DigitalMap(self.image, self.image, vals, f"R{tuple(g)}")

    def multiplication_map(self, mode: str = "min") -> DigitalMap:
        """The operation as a map from the product image (needs closure)."""
        prod = product_image(self.image, self.image, mode)
        d = self.image.dim
        mapping = {}
        for u in prod.points:
            a, b = u[:d], u[d:]
            mapping[u] = self.product(a, b)
        return DigitalMap.from_mapping(prod, self.image, mapping, "mul")

    def inversion_map(self) -> DigitalMap:
        vals = []
        for p in self.image.points:
            q = self.inverse(p)
            if q is None:
                raise ValueError(f"{p} has no inverse")
            vals.append(q)
        return DigitalMap(self.image, self.image, tuple(vals), "inv")


def verify_cayley(table: CayleyTable) -> list[str]:
    """Exhaustive axiom check. Returns human-readable failures, each with
    its first witness; empty means the table is a group."""
    img = table.image
    pts = img.points
    e = table.identity
    failures: list[str] = []

    closed = True
    for a in pts:
        for b in pts:
            v = table.product(a, b)
            if v not in img:
                failures.append(f"not closed: {a} * {b} = {v} is outside the carrier")
                closed = False
                break
        if not closed:
            break

    for a in pts:
        if table.product(e, a) != a:
            failures.append(f"identity fails: {e} * {a} = {table.product(e, a)}")
            break
        if table.product(a, e) != a:
            failures.append(f"identity fails: {a} * {e} = {table.product(a, e)}")
            break

    if closed:
        done = False
        for a, b, c in itertools.product(pts, repeat=3):
            left = table.product(table.product(a, b), c)
            right = table.product(a, table.product(b, c))
            if left != right:
                failures.append(
                    f"not associative: ({a}*{b})*{c} = {left} but "
                    f"{a}*({b}*{c}) = {right}")
                done = True
                break
        if not done:
            for a in pts:
                if table.inverse(a) is None:
                    failures.append(f"no inverse: {a} has no two-sided inverse")
                    break
    return failures


@dataclass(frozen=True)
class GroupVerdict:
    ok: bool
    failures: tuple[str, ...]
    alpha_edge: Optional[tuple[Point, Point]] = None
    beta_edge: Optional[tuple[Point, Point]] = None


def is_topological_group(table: CayleyTable, mode: str = "min",
                         skip_axioms: bool = False) -> GroupVerdict:
    """Group axioms plus continuity of multiplication (on the min-product
    by default) and of inversion."""
    failures = [] if skip_axioms else verify_cayley(table)
    if failures:
        return GroupVerdict(False, tuple(failures))

    alpha_edge = beta_edge = None
    mul = table.multiplication_map(mode)
    bad = continuity_violation(mul)
    if bad is not None:
        u, v = bad
        d = table.image.dim
        failures.append(
            f"multiplication is not continuous: product points {u} and {v} "
            f"are adjacent but {table.product(u[:d], u[d:])} and "
            f"{table.product(v[:d], v[d:])} are not")
        alpha_edge = bad
    inv = table.inversion_map()
    bad = continuity_violation(inv)
    if bad is not None:
        a, b = bad
        failures.append(
            f"inversion is not continuous: {a} and {b} are adjacent but "
            f"{inv(a)} and {inv(b)} are not")
        beta_edge = bad
    return GroupVerdict(not failures, tuple(failures), alpha_edge, beta_edge)


# ---- enumeration ----

def enumerate_group_structures(image: DigitalImage,
                               identity: Point | None = None,
                               guard: int = 6) -> Iterator[CayleyTable]:
    """Every group structure on the carrier's point set, as Cayley tables.

    Backtracks over Latin squares with the identity row and column pinned,
    then filters by associativity. Output order is deterministic: by
    identity, then lexicographic over table rows. Guarded to tiny carriers
    (Latin square counts explode past 6)."""
    pts = image.points
    n = len(pts)
    if n > guard:
        raise ValueError(f"group enumeration is limited to {guard} points, "
                         f"carrier has {n}")
    idents = [image.index(tuple(identity))] if identity is not None else range(n)
    for ei in idents:
        grid = [[-1] * n for _ in range(n)]
        for j in range(n):
            grid[ei][j] = j
            grid[j][ei] = j
        cells = [(i, j) for i in range(n) for j in range(n)
                 if i != ei and j != ei]
        row_used = [set(r for r in row if r >= 0) for row in grid]
        col_used = [set(grid[i][j] for i in range(n) if grid[i][j] >= 0)
                    for j in range(n)]

        def fill(k: int) -> Iterator[None]:
            if k == len(cells):
                yield None
                return
            i, j = cells[k]
            for v in range(n):
                if v in row_used[i] or v in col_used[j]:
                    continue
                grid[i][j] = v
                row_used[i].add(v)
                col_used[j].add(v)
                yield from fill(k + 1)
                grid[i][j] = -1
                row_used[i].remove(v)
                col_used[j].remove(v)

        for _ in fill(0):
            if _associative(grid, n):
                rows = tuple(tuple(pts[grid[i][j]] for j in range(n))
                             for i in range(n))
                yield CayleyTable(image, pts[ei], rows)


def _associative(grid: list[list[int]], n: int) -> bool:
    for a in range(n):
        ga = grid[a]
        for b in range(n):
            ab = ga[b]
            gab = grid[ab]
            gb = grid[b]
            for c in range(n):
                if gab[c] != ga[gb[c]]:
                    return False
    return True


@dataclass(frozen=True)
class ScanResult:
    image: DigitalImage
    total: int
    topological: tuple[CayleyTable, ...]
    rejected: tuple[tuple[CayleyTable, GroupVerdict], ...]

    @property
    def topological_count(self) -> int:
        return len(self.topological)


def scan_group_structures(image: DigitalImage, guard: int = 6,
                          mode: str = "min") -> ScanResult:
    """Enumerate all group structures and test each for continuity."""
    good = []
    bad = []
    total = 0
    for table in enumerate_group_structures(image, guard=guard):
        total += 1
        verdict = is_topological_group(table, mode, skip_axioms=True)
        if verdict.ok:
            good.append(table)
        else:
            bad.append((table, verdict))
    return ScanResult(image, total, tuple(good), tuple(bad))


# ---- derived structures ----

def product_group(a: CayleyTable, b: CayleyTable, mode: str = "min",
                  label: str = "") -> CayleyTable:
    """Componentwise product structure on the product image."""
    prod = product_image(a.image, b.image, mode,
                         label or f"{a.label or 'G'}x{b.label or 'H'}")
    d = a.image.dim

    def op(u: Point, v: Point) -> Point:
        return (a.product(u[:d], v[:d]) + b.product(u[d:], v[d:]))

    return CayleyTable.from_function(prod, op, a.identity + b.identity, label)


def subgroup_check(table: CayleyTable, subset: Sequence[Point],
                   ) -> tuple[bool, str | None]:
    """Is the subset closed under products and inverses, with the identity?"""
    sub = {tuple(p) for p in subset}
    for p in sub:
        if p not in table.image:
            return False, f"{p} is not in the carrier"
    if table.identity not in sub:
        return False, f"identity {table.identity} is missing"
    for p in sorted(sub):
        for q in sorted(sub):
            v = table.product(p, q)
            if v not in sub:
                return False, f"not closed: {p} * {q} = {v}"
    for p in sorted(sub):
        inv = table.inverse(p)
        if inv is None or inv not in sub:
            return False, f"no inverse inside the subset for {p}"
    return True, None


# ---- homomorphisms ----

def is_group_homomorphism(f: DigitalMap, dom: CayleyTable, cod: CayleyTable,
                          ) -> tuple[bool, str | None]:
    if f.domain != dom.image or f.codomain != cod.image:
        raise ValueError("map does not connect the two carriers")
    for a in dom.image.points:
        for b in dom.image.points:
            lhs = f(dom.product(a, b))
            rhs = cod.product(f(a), f(b))
            if lhs != rhs:
                return False, (f"f({a} * {b}) = {lhs} but "
                               f"f({a}) * f({b}) = {rhs}")
    return True, None


def is_top_homomorphism(f: DigitalMap, dom: CayleyTable, cod: CayleyTable,
                        ) -> tuple[bool, str | None]:
    ok, why = is_group_homomorphism(f, dom, cod)
    if not ok:
        return False, why
    bad = continuity_violation(f)
    if bad is not None:
        return False, f"not continuous at edge {bad}"
    return True, None


def is_top_isomorphism(f: DigitalMap, dom: CayleyTable, cod: CayleyTable,
                       ) -> tuple[bool, str | None]:
    ok, why = is_top_homomorphism(f, dom, cod)
    if not ok:
        return False, why
    if not f.is_bijective():
        return False, "not bijective"
    bad = continuity_violation(f.inverse())
    if bad is not None:
        return False, f"inverse not continuous at edge {bad}"
    return True, None


# ---- window checks for infinite groups ----

@dataclass(frozen=True)
class WindowGroup:
    """A finite window onto a group with an infinite carrier. The axioms
    are assumed to hold globally (they are standard algebra); what gets
    verified digitally is continuity over the window.

    `law` is the ambient adjacency predicate on the full carrier, used to
    compare operation values even when they land outside the window.
    Without it, pairs whose values escape the window can only be skipped.
    """

    window: DigitalImage
    op: Callable[[Point, Point], Point] = field(compare=False)
    inv: Callable[[Point], Optional[Point]] = field(compare=False)
    identity: Point
    label: str = ""
    law: Optional[Callable[[Point, Point], bool]] = field(default=None, compare=False)


@dataclass(frozen=True)
class WindowReport:
    label: str
    window_size: int
    identity_in_window: bool
    alpha_checked: int
    alpha_skipped: int
    alpha_violation: Optional[tuple[Point, Point]]
    beta_checked: int
    beta_skipped: int
    beta_violation: Optional[tuple[Point, Point]]
    inverse_missing: tuple[Point, ...]
    notes: tuple[str, ...]

    @property
    def ok_on_window(self) -> bool:
        return (self.alpha_violation is None and self.beta_violation is None
                and not self.inverse_missing)


def window_group_report(wg: WindowGroup, mode: str = "min") -> WindowReport:
    """Continuity of the operation and inversion over one finite window.

    With a global law, every product edge is compared — values that land
    outside the window are judged by the ambient adjacency, which is how
    a sum like 3+5=8 can still convict a discontinuity even when 8 is not
    a window point.  Without a law, escaping edges are skipped and
    counted: a bare window can vouch only for what it contains.  Points
    with no inverse at all (not merely an inverse outside the window) are
    collected separately; that is an honest axiom failure."""
    img = wg.window
    d = img.dim
    law = wg.law
    adj = img.adjacency.adjacent

    def close(p: Point, q: Point) -> bool:
        if p == q:
            return True
        if law is not None:
            return law(p, q)
        return adj(p, q)

    prod = product_image(img, img, mode)
    alpha_checked = alpha_skipped = 0
    alpha_violation = None
    for i, j in prod.edge_index_pairs:
        u, v = prod.points[i], prod.points[j]
        pu = tuple(wg.op(u[:d], u[d:]))
        pv = tuple(wg.op(v[:d], v[d:]))
        if law is None and (pu not in img or pv not in img):
            alpha_skipped += 1
            continue
        alpha_checked += 1
        if not close(pu, pv):
            if alpha_violation is None:
                alpha_violation = (u, v)

    beta_checked = beta_skipped = 0
    beta_violation = None
    missing = []
    inv_vals: dict[Point, Point] = {}
    for p in img.points:
        q = wg.inv(p)
        if q is None:
            missing.append(p)
        elif law is not None or tuple(q) in img:
            inv_vals[p] = tuple(q)
    for i, j in img.edge_index_pairs:
        a, b = img.points[i], img.points[j]
        if a not in inv_vals or b not in inv_vals:
            beta_skipped += 1
            continue
        beta_checked += 1
        if not close(inv_vals[a], inv_vals[b]):
            if beta_violation is None:
                beta_violation = (a, b)

    if law is not None:
        notes = ["axioms assumed globally; continuity judged by the ambient adjacency law"]
    else:
        notes = ["axioms assumed globally; continuity checked on the window only"]
        if alpha_skipped:
            notes.append(f"{alpha_skipped} product edges escape the window")
    if beta_skipped:
        notes.append(f"{beta_skipped} edge(s) skipped where an inverse is unavailable")
    return WindowReport(
        wg.label, len(img.points), wg.identity in img,
        alpha_checked, alpha_skipped, alpha_violation,
        beta_checked, beta_skipped, beta_violation,
        tuple(missing), tuple(notes))


def window_alpha_pair(wg: WindowGroup, u: Point, v: Point,
                      mode: str = "min") -> tuple[bool, Point, Point, bool]:
    """Judge one candidate pair of product points under the operation.

    Returns (is_edge, op(u), op(v), images_close).  Useful for pinning a
    specific counterexample: the pair is checked on its own, independent
    of which violation a full report happens to meet first."""
    img = wg.window
    d = img.dim
    prod = product_image(img, img, mode)
    u, v = tuple(u), tuple(v)
    is_edge = prod.adjacency.adjacent(u, v)
    pu = tuple(wg.op(u[:d], u[d:]))
    pv = tuple(wg.op(v[:d], v[d:]))
    if pu == pv:
        ok = True
    elif wg.law is not None:
        ok = wg.law(pu, pv)
    else:
        ok = pu in img and pv in img and img.adjacency.adjacent(pu, pv)
    return is_edge, pu, pv, ok


@dataclass(frozen=True)
class WindowHomReport:
    """Verdict for a map between window groups, checked over the source
    window: does it respect the operations, is it continuous edge by
    edge, and is it injective on the window."""

    label: str
    pairs_checked: int
    algebra_violation: Optional[tuple[Point, Point]]
    edges_checked: int
    continuity_violation: Optional[tuple[Point, Point]]
    collision: Optional[tuple[Point, Point]]

    @property
    def is_homomorphism(self) -> bool:
        return self.algebra_violation is None and self.continuity_violation is None

    @property
    def injective_on_window(self) -> bool:
        return self.collision is None


def window_hom_report(src: WindowGroup, dst: WindowGroup,
                      fmap: Callable[[Point], Point],
                      label: str = "") -> WindowHomReport:
    """Check a candidate homomorphism between two window groups.

    The operation identity f(a*b) = f(a)*f(b) is evaluated with the
    global operations, so no pair needs skipping unless either side's
    operation is partial.  Continuity of f is judged edge by edge on the
    source window with the destination's law (falling back to the
    destination window's own adjacency)."""
    img = src.window
    pairs_checked = 0
    algebra_violation = None
    for a in img.points:
        for b in img.points:
            lhs = tuple(fmap(tuple(src.op(a, b))))
            rhs = tuple(dst.op(tuple(fmap(a)), tuple(fmap(b))))
            pairs_checked += 1
            if lhs != rhs and algebra_violation is None:
                algebra_violation = (a, b)
    edges_checked = 0
    continuity_violation = None
    dlaw = dst.law if dst.law is not None else dst.window.adjacency.adjacent
    for i, j in img.edge_index_pairs:
        a, b = img.points[i], img.points[j]
        fa, fb = tuple(fmap(a)), tuple(fmap(b))
        edges_checked += 1
        if fa != fb and not dlaw(fa, fb):
            if continuity_violation is None:
                continuity_violation = (a, b)
    collision = None
    seen: dict[Point, Point] = {}
    for p in img.points:
        fp = tuple(fmap(p))
        if fp in seen:
            if collision is None:
                collision = (seen[fp], p)
        else:
            seen[fp] = p
    return WindowHomReport(label or f"{src.label}->{dst.label}",
                           pairs_checked, algebra_violation,
                           edges_checked, continuity_violation, collision)
