"""Homotopy: witness verification, the search, contractibility."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ditop.corpus import cycle_image, loop_image, loop_rotation_table
from ditop.homotopy import (BudgetExhausted, HomotopyWitness, are_homotopic,
                            are_homotopy_equivalent, contraction,
                            is_contractible, is_nullhomotopic, nullhomotopy,
                            restrict_witness, slide_nullhomotopy,
                            verify_homotopy)
from ditop.images import DigitalImage, CK, interval_image
from ditop.maps import DigitalMap, enumerate_continuous_maps, is_continuous


def _const(img, t):
    return DigitalMap(img, img, (t,) * len(img.points))


def test_verify_homotopy_accepts_a_hand_built_slide():
    seg = interval_image(0, 2)
    stages = (
        DigitalMap(seg, seg, ((0,), (1,), (2,))),
        DigitalMap(seg, seg, ((0,), (1,), (1,))),
        DigitalMap(seg, seg, ((0,), (0,), (1,))),
        DigitalMap(seg, seg, ((0,), (0,), (0,))),
    )
    w = HomotopyWitness(stages)
    ok, why = verify_homotopy(w)
    assert ok, why


def test_verify_homotopy_rejects_a_tear_between_stages():
    seg = interval_image(0, 2)
    stages = (
        DigitalMap(seg, seg, ((0,), (1,), (2,))),
        DigitalMap(seg, seg, ((2,), (1,), (2,))),
    )
    ok, why = verify_homotopy(HomotopyWitness(stages))
    assert not ok
    assert "(0,)" in why


def test_verify_homotopy_rejects_a_discontinuous_stage():
    seg = interval_image(0, 2)
    stages = (
        DigitalMap(seg, seg, ((0,), (1,), (2,))),
        DigitalMap(seg, seg, ((0,), (1,), (1,))),
        DigitalMap(seg, seg, ((0,), (2,), (1,))),
    )
    ok, why = verify_homotopy(HomotopyWitness(stages))
    assert not ok


def test_verify_homotopy_checks_the_announced_endpoints():
    seg = interval_image(0, 1)
    ident = DigitalMap.identity(seg)
    w = HomotopyWitness((ident,))
    ok, _ = verify_homotopy(w, f=ident, g=ident)
    assert ok
    other = _const(seg, (0,))
    ok, why = verify_homotopy(w, f=ident, g=other)
    assert not ok


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_are_homotopic_is_reflexive_and_symmetric(seed):
    rng = random.Random(seed)
    seg = interval_image(0, 2)
    pool = list(enumerate_continuous_maps(seg, seg))
    f = rng.choice(pool)
    g = rng.choice(pool)
    assert are_homotopic(f, f) is not None
    fg = are_homotopic(f, g)
    gf = are_homotopic(g, f)
    assert (fg is None) == (gf is None)
    if fg is not None:
        ok, why = verify_homotopy(fg, f=f, g=g)
        assert ok, why


def test_every_self_map_of_an_interval_is_nullhomotopic():
    seg = interval_image(0, 2)
    for f in enumerate_continuous_maps(seg, seg):
        assert is_nullhomotopic(f)


def test_identity_component_of_the_loop_is_the_eight_rotations():
    loop = loop_image()
    table = loop_rotation_table()
    ident = DigitalMap.identity(loop)
    rotations = {table.left_translation(g).values for g in loop.points}
    assert len(rotations) == 8
    for f in enumerate_continuous_maps(loop, loop):
        w = are_homotopic(ident, f)
        if f.values in rotations:
            assert w is not None
            ok, why = verify_homotopy(w, f=ident, g=f)
            assert ok, why
        else:
            assert w is None


def test_the_loop_is_not_contractible_but_the_interval_is():
    assert not is_contractible(loop_image())
    assert is_contractible(interval_image(0, 9))
    assert is_contractible(DigitalImage(((0, 0),), CK(1)))


def test_contraction_witness_verifies_end_to_end():
    seg = interval_image(0, 5)
    w = contraction(seg)
    assert w is not None
    ok, why = verify_homotopy(w, f=DigitalMap.identity(seg))
    assert ok, why
    last = w.stages[-1]
    assert len(set(last.values)) == 1


def test_the_unit_square_cycle_is_contractible():
    # a 4-cycle in the plane contracts: opposite corners meet diagonally
    sq = cycle_image(4)
    w = contraction(sq)
    assert w is not None
    ok, why = verify_homotopy(w, f=DigitalMap.identity(sq))
    assert ok, why


def test_slide_nullhomotopy_works_on_trees_but_not_the_loop():
    seg = interval_image(0, 4)
    w = slide_nullhomotopy(DigitalMap.identity(seg), (0,))
    assert w is not None
    ok, why = verify_homotopy(w)
    assert ok, why
    loop = loop_image()
    for t in loop.points:
        assert slide_nullhomotopy(DigitalMap.identity(loop), t) is None


def test_nullhomotopy_respects_requested_targets():
    seg = interval_image(0, 3)
    w = nullhomotopy(DigitalMap.identity(seg), targets=[(2,)])
    assert w is not None
    assert set(w.stages[-1].values) == {(2,)}


def test_budget_exhaustion_is_loud_not_wrong():
    loop = loop_image()
    with pytest.raises(BudgetExhausted):
        nullhomotopy(DigitalMap.identity(loop), node_budget=3)


def test_restrict_witness_projects_onto_a_subset():
    seg = interval_image(0, 3)
    w = contraction(seg)
    sub = restrict_witness(w, [(0,), (1,)])
    assert sub.stages[0].domain.points == ((0,), (1,))
    ok, why = verify_homotopy(sub)
    assert ok, why


def test_homotopy_equivalence_spot_checks():
    assert are_homotopy_equivalent(interval_image(0, 4),
                                   DigitalImage(((7,),), CK(1)))
    assert are_homotopy_equivalent(loop_image(), cycle_image(8))
    assert not are_homotopy_equivalent(loop_image(), interval_image(0, 7))
