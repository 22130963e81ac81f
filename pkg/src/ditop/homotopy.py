"""Digital homotopy as reachability between continuous maps.

A homotopy f ~ g over m steps is a sequence of continuous maps
F_0 = f, F_1, ..., F_m = g where consecutive maps are pointwise equal or
adjacent in the codomain. Such sequences are exactly paths in the "map
graph" whose vertices are the continuous maps X -> Y; homotopy questions
become breadth-first searches there.

The graph is huge (an 8-point loop already has 8872 continuous self-maps)
so it is never materialized. Neighbor states are produced by backtracking
over bitmasks of allowed codomain indices, and searches stop at the first
goal. For contractibility there is a cheap geodesic "slide" candidate that
is tried, and verified, before any search runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .images import DigitalImage, Point
from .maps import DigitalMap, continuity_violation, find_isomorphism, is_continuous

State = tuple[int, ...]


class BudgetExhausted(RuntimeError):
    """A search hit its node budget before reaching an answer."""


@dataclass(frozen=True)
class HomotopyWitness:
    """An explicit homotopy: the full list of intermediate maps."""

    stages: tuple[DigitalMap, ...]
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if not self.stages:
            raise ValueError("a homotopy needs at least one stage")
        object.__setattr__(self, "stages", tuple(self.stages))

    @property
    def start(self) -> DigitalMap:
        return self.stages[0]

    @property
    def end(self) -> DigitalMap:
        return self.stages[-1]

    @property
    def steps(self) -> int:
        """Number of unit time steps (stage count minus one)."""
        return len(self.stages) - 1

    def reversed(self) -> "HomotopyWitness":
        return HomotopyWitness(tuple(reversed(self.stages)), self.label)

    def then(self, other: "HomotopyWitness") -> "HomotopyWitness":
        if self.end != other.start:
            raise ValueError("homotopies do not meet: end of the first "
                             "differs from start of the second")
        return HomotopyWitness(self.stages + other.stages[1:])


def verify_homotopy(w: HomotopyWitness, f: DigitalMap | None = None,
                    g: DigitalMap | None = None) -> tuple[bool, str | None]:
    """Check a witness pointwise. Returns (ok, reason); reason pins the first
    failing stage/edge/point."""
    dom = w.stages[0].domain
    cod = w.stages[0].codomain
    for k, st in enumerate(w.stages):
        if st.domain != dom or st.codomain != cod:
            return False, f"stage {k} has a different domain or codomain"
        bad = continuity_violation(st)
        if bad is not None:
            return False, f"stage {k} is not continuous at edge {bad}"
    if f is not None and w.stages[0] != f:
        return False, "first stage is not the starting map"
    if g is not None and w.stages[-1] != g:
        return False, "last stage is not the ending map"
    adj = cod.adjacency.adjacent
    for k in range(len(w.stages) - 1):
        a = w.stages[k].values
        b = w.stages[k + 1].values
        for p, u, v in zip(dom.points, a, b):
            if u != v and not adj(u, v):
                return False, (f"stages {k} and {k + 1} jump at {p}: "
                               f"{u} to {v} is not a unit step")
    return True, None


def restrict_witness(w: HomotopyWitness, subset: Iterable[Point]) -> HomotopyWitness:
    """Restrict every stage to an induced subimage of the domain."""
    sub = tuple(subset)
    return HomotopyWitness(tuple(st.restricted(sub) for st in w.stages), w.label)


# ---- the map graph ----

class MapGraph:
    """Continuous maps domain -> codomain with the pointwise-step relation.

    States are tuples of codomain point indices aligned with the domain's
    canonical point order. Neighbor enumeration backtracks over positions:
    position i may take any index in the closed neighborhood of its current
    value, intersected with the closed neighborhoods of values already chosen
    at earlier domain-adjacent positions. Enumeration order is by codomain
    index, so searches are deterministic.
    """

    def __init__(self, domain: DigitalImage, codomain: DigitalImage):
        self.domain = domain
        self.codomain = codomain
        self.n = len(domain.points)
        closed = []
        for i, nbrs in enumerate(codomain.neighbor_index):
            m = 1 << i
            for j in nbrs:
                m |= 1 << j
            closed.append(m)
        self.closed_mask = closed
        self.prev = tuple(tuple(j for j in domain.neighbor_index[i] if j < i)
                          for i in range(self.n))

    def state_of(self, f: DigitalMap) -> State:
        if f.domain != self.domain or f.codomain != self.codomain:
            raise ValueError("map does not live in this graph")
        return f.value_indices

    def map_of(self, state: State, label: str = "") -> DigitalMap:
        pts = self.codomain.points
        return DigitalMap(self.domain, self.codomain,
                          tuple(pts[i] for i in state), label)

    def is_state_continuous(self, state: State) -> bool:
        closed = self.closed_mask
        for i in range(self.n):
            m = closed[state[i]]
            for j in self.prev[i]:
                if not (m >> state[j]) & 1:
                    return False
        return True

    def neighbor_states(self, state: State) -> Iterator[State]:
        """All continuous states pointwise within one step of `state`
        (the state itself included), in lexicographic index order."""
        n = self.n
        closed = self.closed_mask
        prev = self.prev
        chosen = [0] * n
        masks = [0] * n

        def allowed(i: int) -> int:
            m = closed[state[i]]
            for j in prev[i]:
                m &= closed[chosen[j]]
            return m

        masks[0] = allowed(0)
        level = 0
        while level >= 0:
            m = masks[level]
            if not m:
                level -= 1
                continue
            b = m & -m
            masks[level] = m ^ b
            chosen[level] = b.bit_length() - 1
            if level + 1 == n:
                yield tuple(chosen)
            else:
                level += 1
                masks[level] = allowed(level)

    def bfs(self, start: State, is_goal: Callable[[State], bool],
            node_budget: int | None = 2_000_000,
            ) -> tuple[State, dict[State, State | None]] | None:
        """Breadth-first search from `start` to the first state satisfying
        `is_goal`. Returns (goal, parents) or None when the whole component
        is exhausted without a goal. Raises BudgetExhausted when the budget
        is hit first, since no verdict is safe then."""
        if not self.is_state_continuous(start):
            raise ValueError("start state is not a continuous map")
        parents: dict[State, State | None] = {start: None}
        if is_goal(start):
            return start, parents
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in self.neighbor_states(cur):
                if nxt in parents:
                    continue
                parents[nxt] = cur
                if is_goal(nxt):
                    return nxt, parents
                if node_budget is not None and len(parents) > node_budget:
                    raise BudgetExhausted(
                        f"map-graph search exceeded {node_budget} states")
                queue.append(nxt)
        return None

    def path_from_parents(self, goal: State,
                          parents: dict[State, State | None]) -> list[State]:
        path = [goal]
        while parents[path[-1]] is not None:
            path.append(parents[path[-1]])
        path.reverse()
        return path

    def witness_from_states(self, states: Sequence[State],
                            label: str = "") -> HomotopyWitness:
        return HomotopyWitness(tuple(self.map_of(s) for s in states), label)

    def component_of(self, start: State,
                     node_budget: int | None = 2_000_000) -> set[State]:
        """Every state reachable from `start` (the homotopy class)."""
        if not self.is_state_continuous(start):
            raise ValueError("start state is not a continuous map")
        seen = {start}
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for nxt in self.neighbor_states(cur):
                if nxt not in seen:
                    seen.add(nxt)
                    if node_budget is not None and len(seen) > node_budget:
                        raise BudgetExhausted(
                            f"component sweep exceeded {node_budget} states")
                    queue.append(nxt)
        return seen


def are_homotopic(f: DigitalMap, g: DigitalMap,
                  node_budget: int | None = 2_000_000,
                  ) -> Optional[HomotopyWitness]:
    """Witness that f ~ g, or None when they are provably not homotopic.

    Raises BudgetExhausted if the search cannot settle within the budget,
    and ValueError when the maps do not share domain and codomain or are
    not continuous.
    """
    if f.domain != g.domain or f.codomain != g.codomain:
        raise ValueError("maps must share domain and codomain")
    for name, h in (("first", f), ("second", g)):
        if not is_continuous(h):
            raise ValueError(f"the {name} map is not continuous")
    graph = MapGraph(f.domain, f.codomain)
    target = graph.state_of(g)
    hit = graph.bfs(graph.state_of(f), lambda s: s == target, node_budget)
    if hit is None:
        return None
    goal, parents = hit
    return graph.witness_from_states(graph.path_from_parents(goal, parents))


# ---- contractibility ----

def slide_nullhomotopy(f: DigitalMap, target: Point) -> Optional[HomotopyWitness]:
    """Geodesic-slide candidate for a homotopy from f to the constant map at
    `target`: every value walks its lexicographic shortest path toward the
    target, one step per stage. Cheap, but only a candidate — each stage is
    verified and None is returned on any failure (the classic one being a
    loop, where opposite sides slide around different ways and tear)."""
    cod = f.codomain
    target = tuple(target)
    if target not in cod:
        return None
    try:
        paths = [cod.lex_shortest_path(v, target) for v in f.values]
    except ValueError:
        return None  # some value cannot reach the target
    span = max(len(p) - 1 for p in paths)
    stages = []
    for s in range(span + 1):
        vals = tuple(p[min(s, len(p) - 1)] for p in paths)
        st = DigitalMap(f.domain, cod, vals)
        if continuity_violation(st) is not None:
            return None
        stages.append(st)
    w = HomotopyWitness(tuple(stages), "slide")
    ok, _ = verify_homotopy(w, f, DigitalMap.constant(f.domain, cod, target))
    return w if ok else None


def nullhomotopy(f: DigitalMap,
                 targets: Sequence[Point] | None = None,
                 node_budget: int | None = 2_000_000,
                 ) -> Optional[HomotopyWitness]:
    """Witness that f is nullhomotopic (ends at some constant map), or None
    when f's homotopy class holds no constant map.

    Slide candidates are tried target by target first; only if every slide
    tears does the exact breadth-first search run, aimed at all requested
    constants at once.
    """
    if not is_continuous(f):
        raise ValueError("map is not continuous")
    cod = f.codomain
    pool = tuple(tuple(t) for t in targets) if targets is not None else cod.points
    for t in pool:
        if t not in cod:
            raise ValueError(f"target {t} is not in the codomain")
    for t in pool:
        w = slide_nullhomotopy(f, t)
        if w is not None:
            return w
    graph = MapGraph(f.domain, f.codomain)
    allowed = {cod.index(t) for t in pool}

    def at_constant(s: State) -> bool:
        first = s[0]
        return first in allowed and all(v == first for v in s)

    hit = graph.bfs(graph.state_of(f), at_constant, node_budget)
    if hit is None:
        return None
    goal, parents = hit
    return graph.witness_from_states(graph.path_from_parents(goal, parents))


def is_nullhomotopic(f: DigitalMap,
                     node_budget: int | None = 2_000_000) -> bool:
    return nullhomotopy(f, node_budget=node_budget) is not None


def is_contractible(img: DigitalImage,
                    node_budget: int | None = 2_000_000) -> bool:
    """Whether the identity map is nullhomotopic."""
    if not img.is_connected:
        return False
    return nullhomotopy(DigitalMap.identity(img), node_budget=node_budget) is not None


def contraction(img: DigitalImage,
                node_budget: int | None = 2_000_000) -> Optional[HomotopyWitness]:
    """A nullhomotopy of the identity map, when one exists."""
    if not img.is_connected:
        return None
    return nullhomotopy(DigitalMap.identity(img), node_budget=node_budget)


# ---- homotopy equivalence ----

def are_homotopy_equivalent(x: DigitalImage, y: DigitalImage,
                            node_budget: int | None = 2_000_000,
                            pair_budget: int = 200_000,
                            ) -> Optional[bool]:
    """Decide homotopy equivalence when a cheap route settles it.

    Routes, in order: component counts must match; two contractible connected
    images are equivalent; an isomorphism settles it; contractible vs not
    settles it; finally, for small images, enumerate map pairs (f, g) and
    test g o f ~ id and f o g ~ id. Returns None when no route is conclusive
    within budget — an honest "don't know".
    """
    from .maps import enumerate_continuous_maps  # cycle guard

    if len(x.components) != len(y.components):
        return False
    if len(x.components) == 1:
        cx = is_contractible(x, node_budget)
        cy = is_contractible(y, node_budget)
        if cx and cy:
            return True
        if cx != cy:
            return False
    if len(x.points) == len(y.points) and len(x.points) <= 16:
        if find_isomorphism(x, y) is not None:
            return True
    if len(x.points) > 10 or len(y.points) > 10:
        return None

    gx = MapGraph(x, x)
    gy = MapGraph(y, y)
    try:
        comp_x = gx.component_of(DigitalMap.identity(x).value_indices, node_budget)
        comp_y = gy.component_of(DigitalMap.identity(y).value_indices, node_budget)
    except BudgetExhausted:
        return None
    fwd = list(enumerate_continuous_maps(x, y, limit=pair_budget))
    bwd = list(enumerate_continuous_maps(y, x, limit=pair_budget))
    if len(fwd) * len(bwd) > pair_budget:
        return None
    for f in fwd:
        fi = f.value_indices
        for g in bwd:
            gi = g.value_indices
            gof = tuple(gi[v] for v in fi)
            if gof not in comp_x:
                continue
            fog = tuple(fi[v] for v in gi)
            if fog in comp_y:
                return True
    return False
