"""Exact geometry: squared distances and proper segment crossings."""

import random
from fractions import Fraction

import pytest

from udgcut.errors import DegenerateOverlapError, InputError
from udgcut.geometry import (ONE_DIST2_UNITS, SCALE, Point, Segment, dist2,
                             dist2_units, orient, segments_properly_cross)


def test_dist2_gadget_coordinates():
    # the gadget model forces these values exactly
    assert dist2(Point.of(Fraction(1, 2), 0), Point.of(0, Fraction(1, 2))) == Fraction(1, 2)
    assert dist2(Point.of(Fraction(1, 2), 0), Point.of(Fraction(-1, 2), 0)) == 1
    assert dist2(Point.of(Fraction(1, 2), 0),
                 Point.of(Fraction(4, 5), Fraction(4, 5))) == Fraction(73, 100)


def test_point_encoding_is_canonical():
    assert Point.of(Fraction(1, 2), 0) == Point(10, 0)
    assert Point.mesh(3, -2) == Point(60, -40)
    assert Point.mesh(1, 1).is_mesh_cross()
    assert not Point(10, 0).is_mesh_cross()
    with pytest.raises(InputError):
        Point.of(Fraction(1, 3), 0)


def test_dist2_symmetric_and_zero_iff_equal():
    rng = random.Random(11)
    for _ in range(200):
        p = Point(rng.randrange(-400, 400), rng.randrange(-400, 400))
        q = Point(rng.randrange(-400, 400), rng.randrange(-400, 400))
        assert dist2(p, q) == dist2(q, p)
        assert (dist2(p, q) == 0) == (p == q)
        assert dist2(p, q) == Fraction(dist2_units(p, q), ONE_DIST2_UNITS)


def test_plus_shaped_crossing_at_origin():
    s = Segment.make(Point.mesh(0, -1), Point.mesh(0, 1))
    t = Segment.make(Point.mesh(-1, 0), Point.mesh(1, 0))
    assert segments_properly_cross(s, t) == (Fraction(0), Fraction(0))


def test_parallel_segments_do_not_cross():
    s = Segment.make(Point.mesh(0, 0), Point.mesh(1, 0))
    t = Segment.make(Point.mesh(0, 10), Point.mesh(1, 10))
    assert segments_properly_cross(s, t) is None


def test_endpoint_touch_is_not_a_crossing():
    s = Segment.make(Point.mesh(0, 0), Point.mesh(1, 1))
    t = Segment.make(Point.mesh(1, 1), Point.mesh(2, 0))
    assert segments_properly_cross(s, t) is None
    # T-contact: endpoint of t interior to s
    t2 = Segment.make(Point.mesh(1, 0), Point.mesh(1, -2))
    s2 = Segment.make(Point.mesh(0, 0), Point.mesh(2, 0))
    assert segments_properly_cross(s2, t2) is None


def test_collinear_overlap_raises():
    s = Segment.make(Point.mesh(0, 0), Point.mesh(4, 0))
    t = Segment.make(Point.mesh(2, 0), Point.mesh(6, 0))
    with pytest.raises(DegenerateOverlapError):
        segments_properly_cross(s, t)
    # collinear but disjoint, and collinear endpoint touch: no crossing
    assert segments_properly_cross(
        s, Segment.make(Point.mesh(5, 0), Point.mesh(7, 0))) is None
    assert segments_properly_cross(
        s, Segment.make(Point.mesh(4, 0), Point.mesh(7, 0))) is None


def test_crossing_symmetric_and_strictly_interior():
    rng = random.Random(23)
    produced = 0
    while produced < 50:
        pts = [Point(rng.randrange(-10 * SCALE, 10 * SCALE),
                     rng.randrange(-10 * SCALE, 10 * SCALE)) for _ in range(4)]
        if len(set(pts)) < 4:
            continue
        s = Segment.make(pts[0], pts[1])
        t = Segment.make(pts[2], pts[3])
        try:
            p = segments_properly_cross(s, t)
            q = segments_properly_cross(t, s)
        except DegenerateOverlapError:
            continue
        assert p == q
        if p is None:
            continue
        produced += 1
        px, py = p
        for seg in (s, t):
            ax, ay = Fraction(seg.a.xu, SCALE), Fraction(seg.a.yu, SCALE)
            bx, by = Fraction(seg.b.xu, SCALE), Fraction(seg.b.yu, SCALE)
            # on the supporting line
            assert (bx - ax) * (py - ay) == (by - ay) * (px - ax)
            # strictly between the endpoints: the interior parameter bound
            if bx != ax:
                lam = (px - ax) / (bx - ax)
            else:
                lam = (py - ay) / (by - ay)
            assert 0 < lam < 1


def test_orient_signs():
    a, b = Point.mesh(0, 0), Point.mesh(2, 0)
    assert orient(a, b, Point.mesh(1, 1)) == 1
    assert orient(a, b, Point.mesh(1, -1)) == -1
    assert orient(a, b, Point.mesh(5, 0)) == 0


def test_degenerate_segment_rejected():
    with pytest.raises(InputError):
        Segment.make(Point.mesh(1, 1), Point.mesh(1, 1))
