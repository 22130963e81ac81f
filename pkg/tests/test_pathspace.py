"""Path and wedge spaces: counting two ways, fibration plumbing."""

from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from ditop.corpus import loop_image
from ditop.images import interval_image
from ditop.pathspace import (EndpointFibration, PairedFibration, WedgeSpace,
                             count_paths, is_path, paths_between)

from helpers import random_grid_image


def test_is_path_checks_consecutive_steps():
    seg = interval_image(0, 3)
    assert is_path(seg, [(0,), (1,), (1,), (2,)])
    assert not is_path(seg, [(0,), (2,)])
    assert not is_path(seg, [])
    assert not is_path(seg, [(9,)])


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 4))
def test_path_listing_agrees_with_the_counting_recurrence(seed, length):
    rng = random.Random(seed)
    img = random_grid_image(rng, max_points=6, connected=False)
    start = rng.choice(img.points)
    end = rng.choice(img.points)
    listed = list(paths_between(img, start, end, length))
    assert len(listed) == count_paths(img, start, end, length)
    for p in listed:
        assert p[0] == start and p[-1] == end
        assert is_path(img, p)
    assert len(set(listed)) == len(listed)


def test_stationary_paths_exist_at_every_length():
    seg = interval_image(0, 2)
    for m in range(4):
        assert count_paths(seg, (1,), (1,), m) >= 1


def test_wedge_space_basics():
    seg = interval_image(0, 2)
    ws = WedgeSpace(seg, 2, 1)
    w = (((0,), (1,)), ((0,), (0,)))
    assert ws.is_wedge(w)
    # endpoints concatenate into one point of the product image
    assert ws.endpoints(w) == (1, 0)
    cw = ws.constant_wedge((1,))
    assert ws.is_wedge(cw)
    assert ws.endpoints(cw) == (1, 1)
    # arms must share their start
    assert not ws.is_wedge((((0,), (1,)), ((1,), (1,))))


def test_pointwise_wedge_steps_allow_one_arm_to_move():
    seg = interval_image(0, 3)
    ws = WedgeSpace(seg, 2, 1)
    a = (((0,), (1,)), ((0,), (0,)))
    b = (((0,), (0,)), ((0,), (0,)))
    assert ws.adjacent(a, b)


def test_strong_steps_are_a_subset_of_pointwise_steps():
    seg = interval_image(0, 2)
    soft = WedgeSpace(seg, 2, 2, "pointwise")
    hard = WedgeSpace(seg, 2, 2, "strong")
    wedges = []
    for p1 in paths_between(seg, (0,), (1,), 2):
        for p2 in paths_between(seg, (0,), (2,), 2):
            wedges.append((p1, p2))
    for u in wedges:
        for v in wedges:
            if u == v:
                continue
            if hard.adjacent(u, v):
                assert soft.adjacent(u, v)


def test_fiber_wedges_end_where_they_should():
    seg = interval_image(0, 2)
    fib = EndpointFibration(seg, 2, 2)
    target = (0, 2)
    seen = 0
    for w in fib.fiber(target):
        seen += 1
        assert fib.wedge.endpoints(w) == target
        assert fib.wedge.is_wedge(w)
    assert seen == fib_count(seg, fib.split(target), 2)


def fib_count(img, parts, m):
    total = 0
    for s in img.points:
        prod = 1
        for t in parts:
            prod *= count_paths(img, s, t, m)
        total += prod
    return total


def test_surjectivity_depends_on_the_arm_length():
    # arms share a start, so reaching (p, q) needs a point within m of both;
    # the loop has diameter 4, so m = 1 strands the antipodal pairs
    loop = loop_image()
    short = EndpointFibration(loop, 2, 1)
    ok, missing = short.is_surjective()
    assert not ok
    assert missing is not None
    full = EndpointFibration(loop, 2, 2)
    ok, missing = full.is_surjective()
    assert ok
    assert missing is None


def test_fibration_split_matches_the_product_layout():
    seg = interval_image(0, 1)
    loop = loop_image()
    pair = PairedFibration(EndpointFibration(seg, 2, 1),
                           EndpointFibration(loop, 1, 2))
    u = pair.product.points[0]
    left, right = pair.split(u)
    assert left + right == u
    assert len(left) == seg.dim * 2
    ok, missing = pair.is_surjective()
    assert ok, missing


def test_paired_wedges_pair_the_component_rules():
    seg = interval_image(0, 1)
    lw = WedgeSpace(seg, 1, 1)
    rw = WedgeSpace(seg, 1, 1)
    pw_fib = PairedFibration(EndpointFibration(seg, 1, 1),
                             EndpointFibration(seg, 1, 1))
    pw = pw_fib.wedge
    a = ((((0,), (1,)),), (((0,), (0,)),))
    assert pw.is_wedge(a)
    assert pw.endpoints(a) == (1, 0)
    b = ((((0,), (0,)),), (((0,), (1,)),))
    # both strictly moving at once is not a paired step
    assert not pw.adjacent(a, b)
    c = ((((0,), (1,)),), (((0,), (1,)),))
    assert pw.adjacent(a, c)
    assert lw.adjacent(a[0], c[0]) and rw.adjacent(a[1], c[1])
