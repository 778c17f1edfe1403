"""Surface membership, canonical representatives, the 16-line filter, and
the two conic projections."""

import math

import pytest
from hypothesis import given, strategies as st

from delpezzo4 import surface
from delpezzo4.errors import BadInput, NotOnSurface, ZeroVector

WITNESS = (19, -18, 38, -9, -32)


def test_quadrics_on_witness():
    assert surface.quadric1(WITNESS) == 0
    assert surface.quadric2(WITNESS) == 0
    assert surface.is_on_surface(WITNESS)
    assert not surface.is_on_surface((19, -18, 38, -9, -31))


def test_norm_inf():
    assert surface.norm_inf(WITNESS) == 38
    assert surface.norm_inf((0, -3)) == 3


def test_surface_point_validation():
    p = surface.SurfacePoint(WITNESS)
    assert p.height == 38
    assert p.line is None
    assert str(p) == "19 -18 38 -9 -32"
    with pytest.raises(ZeroVector):
        surface.SurfacePoint((0, 0, 0, 0, 0))
    with pytest.raises(NotOnSurface):
        surface.SurfacePoint((1, 1, 1, 1, 2))
    with pytest.raises(BadInput):
        surface.SurfacePoint(tuple(2 * c for c in WITNESS))  # not primitive
    with pytest.raises(BadInput):
        surface.SurfacePoint(tuple(-c for c in WITNESS))  # sign rule


def test_canonical_tuple_normalizes():
    assert surface.canonical_tuple(tuple(3 * c for c in WITNESS)) == WITNESS
    assert surface.canonical_tuple(tuple(-c for c in WITNESS)) == WITNESS
    assert surface.canonical_tuple(WITNESS) == WITNESS


@given(st.integers(min_value=1, max_value=7), st.booleans())
def test_canonical_tuple_projective_invariance(k, flip):
    raw = tuple((-k if flip else k) * c for c in WITNESS)
    assert surface.canonical_tuple(raw) == WITNESS


def test_line_id_rational_patterns():
    # first family: (x3, x4, x5) = (e1 x1, e1 x2, e2 x1)
    assert surface.line_id((1, 2, 1, 2, 1)) == 1
    assert surface.line_id((1, 2, 1, 2, -1)) == 2
    assert surface.line_id((1, 2, -1, -2, 1)) == 3
    assert surface.line_id((1, 2, -1, -2, -1)) == 4
    # second family swaps the head pair: (x3, x4, x5) = (e1 x2, e1 x1, e2 x2)
    assert surface.line_id((2, 1, 1, 2, 1)) == 5
    assert surface.line_id((2, 1, 1, 2, -1)) == 6
    assert surface.line_id((2, 1, -1, -2, 1)) == 7
    assert surface.line_id((2, 1, -1, -2, -1)) == 8
    assert surface.line_id((1, 1, 1, 1, 1)) == 1  # tie resolves to the smallest id
    assert surface.line_id(WITNESS) is None


@given(st.integers(min_value=-30, max_value=30), st.integers(min_value=-30, max_value=30),
       st.sampled_from([1, -1]), st.sampled_from([1, -1]), st.booleans())
def test_line_points_are_on_surface_and_flagged(a, b, e1, e2, swap):
    if (a, b) == (0, 0):
        return
    if swap:
        p = (a, b, e1 * b, e1 * a, e2 * b)
    else:
        p = (a, b, e1 * a, e1 * b, e2 * a)
    assert surface.is_on_surface(p)
    assert surface.line_id(p) is not None


def test_line_mask_matches_line_id(points_100):
    import numpy as np

    coords = np.array([p.coords for p in points_100], dtype=np.int64)
    mask = surface.line_mask(*(coords[:, i] for i in range(5)))
    assert not mask.any()  # enumerated U-points are off every line
    line_pts = np.array([(1, 2, 1, 2, 1), (2, 1, -1, -2, -1), (1, 1, 1, 1, -1)], dtype=np.int64)
    mask = surface.line_mask(*(line_pts[:, i] for i in range(5)))
    assert mask.all()


def test_project_axes():
    assert surface.project(1, WITNESS) == (1, 2)
    assert surface.project(2, WITNESS) == (19, -9)
    with pytest.raises(BadInput):
        surface.project(3, WITNESS)


def test_normalize_pair():
    assert surface.normalize_pair((0, -1)) == (0, 1)
    assert surface.normalize_pair((-2, 4)) == (1, -2)
    assert surface.normalize_pair((6, 9)) == (2, 3)
    with pytest.raises(ZeroVector):
        surface.normalize_pair((0, 0))


@given(st.integers(min_value=-50, max_value=50), st.integers(min_value=-50, max_value=50))
def test_normalize_pair_canonical(a, b):
    if (a, b) == (0, 0):
        return
    r, s = surface.normalize_pair((a, b))
    assert math.gcd(r, s) == 1
    assert (r, s) >= (0, 0)
    assert surface.normalize_pair((r, s)) == (r, s)
    assert surface.normalize_pair((-3 * a, -3 * b)) == (r, s)


def test_complex_line_scan_small():
    assert surface.complex_line_scan(50) == 0
