"""Both exact counters against a tiny independent cube scan and each other,
the fiber map round trip, per-fiber counts, histogram, and reconciliation."""

import math

import pytest
from hypothesis import given, settings, strategies as st

from delpezzo4 import counting, surface
from delpezzo4.errors import BadInput, BoundTooLarge, MismatchError

from conftest import brute_points

FROZEN = {1: 0, 2: 0, 3: 8, 4: 8, 5: 8, 6: 24, 10: 88, 25: 304, 50: 1016, 100: 3424}


def cube_scan(B):
    """Independent five-fold loop; feasible only for tiny B."""
    pts = set()
    for x1 in range(-B, B + 1):
        for x2 in range(-B, B + 1):
            for x3 in range(-B, B + 1):
                x34 = x1 * x2
                if x3 != 0 and x34 % x3 != 0:
                    continue
                if x3 == 0:
                    if x34 != 0:
                        continue
                    x4_candidates = range(-B, B + 1)
                else:
                    x4_candidates = [x34 // x3]
                for x4 in x4_candidates:
                    if abs(x4) > B:
                        continue
                    ss = x1 * x1 + x2 * x2 + x3 * x3 - x4 * x4
                    if ss < 0 or ss % 2 != 0:
                        continue
                    x5 = math.isqrt(ss // 2)
                    if 2 * x5 * x5 != ss or x5 > B:
                        continue
                    for x5s in {x5, -x5}:
                        t = (x1, x2, x3, x4, x5s)
                        if all(v == 0 for v in t):
                            continue
                        g = math.gcd(math.gcd(math.gcd(abs(x1), abs(x2)), math.gcd(abs(x3), abs(x4))), abs(x5s))
                        if g != 1:
                            continue
                        if surface.line_id(t) is not None:
                            continue
                        pts.add(surface.canonical_tuple(t))
    return pts


@pytest.mark.parametrize("B", [1, 2, 3, 4, 5])
def test_both_counters_match_cube_scan(B):
    expected = cube_scan(B)
    rec, pts = counting.brute_enumerate(B, collect=True)
    assert {p.coords for p in pts} == expected
    assert rec.count == len(expected)
    assert counting.fiber_points(B) == expected
    assert counting.fiber_count(B).count == len(expected)


def test_frozen_counts():
    for B, want in FROZEN.items():
        assert counting.brute_enumerate(B).count == want, B
        assert counting.fiber_count(B).count == want, B


def test_point_sets_agree_at_50():
    assert {p.coords for p in brute_points(50)} == counting.fiber_points(50)


@given(st.integers(min_value=1, max_value=60))
@settings(max_examples=25)
def test_counter_equivalence_property(B):
    assert counting.brute_enumerate(B).count == counting.fiber_count(B).count


def test_fiber_round_trip(points_100):
    for p in points_100:
        key, X = counting.fiber_of(p)
        assert surface.normalize_pair(key) == tuple(key)
        assert counting.lift_to_surface(key, X).coords == p.coords


def test_count_fiber_frozen():
    assert counting.count_fiber((1, 2), 38) == 20
    assert counting.count_fiber((1, 0), 3) == 4
    assert counting.count_fiber((1, 1), 10) == 0
    with pytest.raises(BadInput):
        counting.count_fiber((2, 4), 10)
    with pytest.raises(BadInput):
        counting.count_fiber((1, 2), 0)


def test_fiber_count_is_sum_over_keys():
    B = 20
    total = 0
    seen = set()
    for r in range(0, B + 1):
        for s in range(-B, B + 1):
            if (r, s) == (0, 0) or max(r, abs(s)) > B:
                continue
            if surface.normalize_pair((r, s)) != (r, s) or (r, s) in seen:
                continue
            seen.add((r, s))
            total += counting.count_fiber((r, s), B)
    assert total == counting.fiber_count(B).count


def test_histogram_prefix_sums():
    hist = counting.fiber_height_histogram(100)
    cum = hist.cumsum()
    for h in (1, 10, 37, 50, 100):
        assert int(cum[h]) == counting.fiber_count(h).count
    assert int(cum[-1]) == FROZEN[100]


def test_worker_split_agrees():
    assert counting.fiber_count(120, workers=2).count == counting.fiber_count(120).count


def test_ceilings():
    with pytest.raises(BoundTooLarge):
        counting.brute_enumerate(counting.BRUTE_CEILING + 1)
    with pytest.raises(BoundTooLarge):
        counting.fiber_count(counting.FIBER_CEILING + 1)
    with pytest.raises(BadInput):
        counting.fiber_count(0)
    assert counting.brute_enumerate(10, ceiling=10).count == FROZEN[10]


def test_reconcile_report_and_mismatch():
    rep = counting.reconcile([1, 3, 10, 25])
    assert rep.ok
    assert [(b, c) for b, c, *_ in rep.rows] == [(1, 0), (3, 8), (10, 88), (25, 304)]

    real = counting.fiber_count

    def lying_fiber_count(B, workers=1, ceiling=counting.FIBER_CEILING):
        rec = real(B, workers=workers, ceiling=ceiling)
        rec.count += 1
        return rec

    counting.fiber_count = lying_fiber_count
    try:
        with pytest.raises(MismatchError) as exc:
            counting.reconcile([5])
        assert exc.value.B == 5
    finally:
        counting.fiber_count = real
