"""Groups: axioms, continuity verdicts, enumeration counts, windows, homs."""

from __future__ import annotations

import math

import pytest

from ditop.corpus import (flip_table, loop_image, loop_letter,
                          loop_rotation_table, mulwin_group, sign_embedding,
                          sign_image, sign_table, z2plus_group, zplus_group,
                          projection_map)
from ditop.groups import (CayleyTable, enumerate_group_structures,
                          is_group_homomorphism, is_top_homomorphism,
                          is_top_isomorphism, is_topological_group,
                          product_group, scan_group_structures, subgroup_check,
                          verify_cayley, window_alpha_pair, window_group_report,
                          window_hom_report)
from ditop.images import interval_image
from ditop.maps import DigitalMap


LOOP_ORDER = "b a h g f e d c".split()


def _position(letter):
    return LOOP_ORDER.index(letter)


def test_the_loop_table_is_a_group():
    table = loop_rotation_table()
    assert verify_cayley(table) == []
    assert table.identity == (0, 0)


def test_the_loop_table_is_rotation_by_position_arithmetic():
    # products add positions along the cycle, re-derived from scratch here
    table = loop_rotation_table()
    for p in table.image.points:
        for q in table.image.points:
            want = (_position(loop_letter(p)) + _position(loop_letter(q))) % 8
            got = table.product(p, q)
            assert _position(loop_letter(got)) == want


def test_the_loop_group_is_cyclic_of_order_eight():
    table = loop_rotation_table()
    gen = next(p for p in table.image.points
               if loop_letter(p) == LOOP_ORDER[1])
    seen = {table.identity}
    cur = table.identity
    for _ in range(7):
        cur = table.product(cur, gen)
        seen.add(cur)
    assert len(seen) == 8


def test_the_loop_group_is_topological():
    v = is_topological_group(loop_rotation_table())
    assert v.ok, v.failures


def test_translations_of_the_loop_group_are_isomorphisms():
    table = loop_rotation_table()
    from ditop.maps import is_digital_isomorphism
    for g in table.image.points:
        ok, why = is_digital_isomorphism(table.left_translation(g))
        assert ok, why


def test_verify_cayley_reports_broken_tables():
    seg = interval_image(0, 1)
    bad = CayleyTable(seg, (0,), (((0,), (1,)), ((1,), (1,))))
    problems = verify_cayley(bad)
    assert problems
    joined = " ".join(problems)
    assert "inverse" in joined or "Latin" in joined or "identity" in joined


def test_two_point_groups_verify():
    for table in (sign_table(), flip_table(8)):
        assert verify_cayley(table) == []
        v = is_topological_group(table)
        assert v.ok, v.failures


def _structure_count(n):
    """Number of group tables on n labeled points: sum over the groups of
    that order of n! / |Aut|."""
    if n == 2:
        return 2  # C2: 2!/1
    if n == 3:
        return 3  # C3: 3!/2
    if n == 4:
        return 16  # C4: 24/2 plus Klein: 24/6
    if n == 5:
        return 30  # C5: 120/4
    if n == 6:
        return 480  # C6: 720/2 plus S3: 720/6
    raise ValueError(n)


def test_enumeration_counts_match_the_automorphism_arithmetic():
    for n in (2, 3, 4, 5):
        seg = interval_image(0, n - 1)
        tables = list(enumerate_group_structures(seg))
        assert len(tables) == _structure_count(n)
        for t in tables:
            assert verify_cayley(t) == []


def test_enumeration_guard_stops_big_carriers():
    with pytest.raises(ValueError):
        list(enumerate_group_structures(interval_image(0, 8)))


def test_no_interval_of_prime_length_carries_a_topological_group():
    # three and five points: every structure fails continuity
    for p in (3, 5):
        seg = interval_image(0, p - 1)
        res = scan_group_structures(seg)
        assert res.total == _structure_count(p)
        assert res.topological_count == 0
        assert len(res.rejected) == res.total


def test_rejections_follow_the_endpoint_middle_pattern():
    # identity at an end tears inversion; identity in the middle tears
    # multiplication near the ends
    seg = interval_image(0, 2)
    res = scan_group_structures(seg)
    for table, verdict in res.rejected:
        e = table.identity[0]
        if e in (0, 2):
            inv = table.inversion_map()
            from ditop.maps import continuity_violation
            assert continuity_violation(inv) is not None
        else:
            mul = table.multiplication_map("min")
            from ditop.maps import continuity_violation
            assert continuity_violation(mul) is not None


def test_two_point_interval_scan_finds_topological_structures():
    res = scan_group_structures(interval_image(0, 1))
    assert res.total == 2
    assert res.topological_count == 2


def test_sign_scan_is_all_topological():
    res = scan_group_structures(sign_image())
    assert res.total == 2
    assert res.topological_count == 2


def test_product_of_topological_groups_is_topological():
    a = sign_table()
    b = flip_table(8)
    for left, right in ((a, a), (a, b), (b, b)):
        prod = product_group(left, right)
        assert verify_cayley(prod) == []
        v = is_topological_group(prod)
        assert v.ok, v.failures


def test_product_with_the_loop_group_is_topological():
    prod = product_group(loop_rotation_table(), sign_table())
    assert len(prod.image.points) == 16
    v = is_topological_group(prod)
    assert v.ok, v.failures


def _restrict(table, subset):
    sub = table.image.induced(subset)
    rows = tuple(tuple(table.product(a, b) for b in sub.points)
                 for a in sub.points)
    return CayleyTable(sub, table.identity, rows)


def test_subgroups_of_the_loop_group_stay_topological():
    table = loop_rotation_table()
    by_pos = {_position(loop_letter(p)): p for p in table.image.points}
    subgroups = [
        [by_pos[0]],
        [by_pos[0], by_pos[4]],
        [by_pos[0], by_pos[2], by_pos[4], by_pos[6]],
        list(table.image.points),
    ]
    for subset in subgroups:
        ok, why = subgroup_check(table, subset)
        assert ok, why
        v = is_topological_group(_restrict(table, subset))
        assert v.ok, v.failures


def test_non_subgroups_are_rejected_with_reasons():
    table = loop_rotation_table()
    by_pos = {_position(loop_letter(p)): p for p in table.image.points}
    ok, why = subgroup_check(table, [by_pos[0], by_pos[3]])
    assert not ok
    assert "closed" in why or "inverse" in why
    ok, why = subgroup_check(table, [by_pos[1], by_pos[7]])
    assert not ok
    assert "identity" in why


def test_every_subset_closed_under_the_loop_operation_is_found():
    # brute-force: exactly four subgroups of a cyclic group of order 8
    table = loop_rotation_table()
    pts = table.image.points
    import itertools
    found = []
    for r in range(1, 9):
        for combo in itertools.combinations(pts, r):
            ok, _ = subgroup_check(table, combo)
            if ok:
                found.append(set(combo))
    assert len(found) == 4


def test_window_addition_is_continuous_under_min_product():
    r = window_group_report(zplus_group(), "min")
    assert r.ok_on_window
    assert r.alpha_violation is None
    assert r.beta_violation is None
    assert not r.inverse_missing
    assert r.alpha_skipped == 0


def test_window_addition_fails_under_strong_product():
    r = window_group_report(zplus_group(), "strong")
    assert not r.ok_on_window
    assert r.alpha_violation is not None


def test_the_targeted_strong_pair_convicts_addition():
    wg = zplus_group()
    is_edge, pu, pv, ok = window_alpha_pair(wg, (3, 5), (4, 6), "strong")
    assert is_edge
    assert (pu, pv) == ((8,), (10,))
    assert not ok
    # under the one-factor-at-a-time product the same pair is not even an edge
    is_edge, _, _, _ = window_alpha_pair(wg, (3, 5), (4, 6), "min")
    assert not is_edge


def test_grid_addition_window_is_topological_under_min():
    r = window_group_report(z2plus_group(), "min")
    assert r.ok_on_window, (r.alpha_violation, r.beta_violation)


def test_multiplication_window_reports_missing_inverses_and_alpha_tear():
    r = window_group_report(mulwin_group(), "min")
    assert not r.ok_on_window
    assert (2,) in r.inverse_missing
    assert r.alpha_violation is not None


def test_projection_is_a_window_homomorphism_but_not_injective():
    r = window_hom_report(z2plus_group(), zplus_group(),
                          lambda p: (p[0],), "proj1")
    assert r.is_homomorphism
    assert r.algebra_violation is None
    assert r.continuity_violation is None
    assert not r.injective_on_window
    assert r.collision is not None


def test_finite_projection_map_is_continuous():
    assert projection_map().codomain.dim == 1
    from ditop.maps import is_continuous
    assert is_continuous(projection_map())


def test_sign_embedding_is_an_algebraic_iso_with_torn_inverse():
    f = sign_embedding()
    dom = sign_table()
    cod = flip_table(8)
    ok, why = is_group_homomorphism(f, dom, cod)
    assert ok, why
    ok, why = is_top_homomorphism(f, dom, cod)
    assert ok, why
    assert f.is_bijective()
    ok, why = is_top_isomorphism(f, dom, cod)
    assert not ok
    assert "inverse" in why


def test_a_true_topological_isomorphism_passes():
    table = sign_table()
    ident = DigitalMap.identity(table.image)
    ok, why = is_top_isomorphism(ident, table, table)
    assert ok, why


def test_homomorphism_failure_is_reported_with_the_pair():
    dom = sign_table()
    cod = flip_table(8)
    # constant at the non-identity element: not a homomorphism
    f = DigitalMap(dom.image, cod.image, ((9,), (9,)))
    ok, why = is_group_homomorphism(f, dom, cod)
    assert not ok
    assert "*" in why
