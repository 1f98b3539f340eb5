"""Builders: point sets, syzygy matrices, normal forms.

The Hilbert-Burch tests work against geometry that is checkable by hand:
evaluation matrices at explicit points, conic membership, and vanishing
of determinants at the chosen points.
"""

import random
from fractions import Fraction

import pytest

from sheafstrata.builders import (PointSet, hilbert_burch, ideal_generators,
                                  sextic_sheaf, twisted_ideal_sheaf,
                                  x5_normal_form, x6_normal_form)
from sheafstrata.cohomology import cohomology_table, h0, h1
from sheafstrata.errors import ShapeError
from sheafstrata.forms import parse_form, random_form, span_dimension
from sheafstrata.presentation import compose, determinant, dualize
from sheafstrata.strata import StratumId, classify, verify_w

SIX_POINTS = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3), (3, 1, 2)]

ON_CONIC = [(1, 0, 0), (0, 0, 1), (1, 1, 1), (4, 2, 1), (9, 3, 1), (16, 4, 1)]


def random_points(rng, n):
    pts = []
    while len(pts) < n:
        cand = tuple(rng.randint(-9, 9) for _ in range(3))
        if not any(cand):
            continue
        try:
            PointSet(pts + [cand])
        except ShapeError:
            continue
        pts.append(cand)
    return PointSet(pts)


def test_pointset_rejects_degenerate_input():
    with pytest.raises(ShapeError):
        PointSet([(0, 0, 0)])
    with pytest.raises(ShapeError):
        PointSet([(1, 2, 3), (2, 4, 6)])
    with pytest.raises(ShapeError):
        PointSet([(1, 2)])
    assert len(PointSet(SIX_POINTS)) == 6


def test_pointset_geometry_flags():
    Z = PointSet(SIX_POINTS)
    assert not Z.on_conic()
    assert not Z.four_colinear()
    assert Z.imposes_independent_conditions(3)
    C = PointSet(ON_CONIC)
    # all six satisfy X*Z = Y^2
    assert C.on_conic()
    L = PointSet([(1, 0, 0), (0, 1, 0), (1, 1, 0), (2, -1, 0), (0, 0, 1)])
    assert L.four_colinear()


def test_ideal_generators_dimensions():
    Z = PointSet(SIX_POINTS)
    assert ideal_generators(Z, 2) == []
    cubics = ideal_generators(Z, 3)
    assert len(cubics) == 4
    assert span_dimension(cubics) == 4
    for g in cubics:
        for pt in Z:
            assert g.evaluate(tuple(Fraction(x) for x in pt)) == 0
    # three colinear points cut out their line in degree one
    L = PointSet([(1, 0, 0), (0, 1, 0), (1, 1, 0)])
    lines = ideal_generators(L, 1)
    assert len(lines) == 1
    assert lines[0].coeffs.keys() == {(0, 0, 1)}


def test_hilbert_burch_on_the_reference_points():
    Z = PointSet(SIX_POINTS)
    M = hilbert_burch(Z)
    assert M.source_twists == (-1, -1, -1)
    assert M.target_twists == (0, 0, 0, 0)
    gens = ideal_generators(Z, 3)
    # G * M = 0, with G as a 1x4 row of cubics
    from sheafstrata.presentation import Presentation
    G = Presentation((0, 0, 0, 0), (3,), [gens])
    prod = compose(G, M)
    assert all(e.is_zero for row in prod.entries for e in row)


def test_hilbert_burch_minors_span_the_generators():
    rng = random.Random(120)
    for _ in range(3):
        Z = random_points(rng, 6)
        try:
            M = hilbert_burch(Z)
        except ShapeError:
            continue
        from sheafstrata.presentation import maximal_minors
        gens = ideal_generators(Z, 3)
        both = gens + maximal_minors(M)
        assert span_dimension(both) == 4


def test_hilbert_burch_rejects_conic_and_wrong_count():
    with pytest.raises(ShapeError):
        hilbert_burch(PointSet(ON_CONIC))
    with pytest.raises(ShapeError):
        hilbert_burch(PointSet(SIX_POINTS[:5]))


def test_twisted_ideal_sheaf_classifies_and_vanishes():
    rng = random.Random(121)
    Z = PointSet(SIX_POINTS)
    gens = ideal_generators(Z, 3)
    f = sum((random_form(3, rng) * g for g in gens),
            parse_form("0", degree=6))
    P = twisted_ideal_sheaf(Z, f)
    assert classify(P) == StratumId.X3
    assert cohomology_table(P).as_tuple() == (0, 1, 3)
    # four cubics through the points and chi = 3 force (h0, h1) = (4, 1)
    assert h0(P, 0) == 4 and h1(P, 0) == 1
    d = determinant(P)
    for pt in Z:
        assert d.evaluate(tuple(Fraction(x) for x in pt)) == 0
    assert classify(dualize(P)) == StratumId.X3D


def test_twisted_ideal_sheaf_rejects_foreign_sextic():
    Z = PointSet(SIX_POINTS)
    with pytest.raises(ShapeError):
        twisted_ideal_sheaf(Z, parse_form("X^6 + Y^6 + Z^6"))


def test_sextic_sheaf_smooth_and_reducible():
    P = sextic_sheaf(parse_form("X^6 + Y^6 + Z^6"))
    assert P.source_twists == (-4,)
    assert P.target_twists == (2,)
    assert classify(P) == StratumId.X7
    assert determinant(P) == parse_form("X^6 + Y^6 + Z^6")
    # reducibility does not change the cohomology triple
    Q = sextic_sheaf(parse_form("X*Y^5"))
    assert classify(Q) == StratumId.X7
    with pytest.raises(ShapeError):
        sextic_sheaf(parse_form("X^2"))
    with pytest.raises(ShapeError):
        sextic_sheaf(parse_form("0", degree=6))


def test_x5_normal_form_reference_input():
    rng = random.Random(122)
    P = x5_normal_form(parse_form("Y*Z"), parse_form("X"),
                       parse_form("X*Y"), parse_form("Z"), rng=rng)
    assert classify(P) == StratumId.X5
    checks = verify_w(P, StratumId.X5, rng=rng)
    assert all(c.verdict == "pass" for c in checks)
    assert P.entry(0, 0) == parse_form("Y*Z")
    assert P.entry(0, 1) == parse_form("X")
    assert P.entry(2, 2) == parse_form("X*Y")
    assert P.entry(1, 2) == parse_form("Z")
    assert P.entry(0, 2).is_zero


def test_x5_normal_form_rejects_divisible_pair():
    rng = random.Random(123)
    with pytest.raises(ShapeError):
        x5_normal_form(parse_form("X*Y"), parse_form("X"),
                       parse_form("X*Y"), parse_form("Z"), rng=rng)
    with pytest.raises(ShapeError):
        x5_normal_form(parse_form("Y*Z"), parse_form("X"),
                       parse_form("X*Z"), parse_form("Z"), rng=rng)
    with pytest.raises(ShapeError):
        x5_normal_form(parse_form("Y*Z"), parse_form("X"),
                       parse_form("X*Y"), parse_form("Z^2"), rng=rng)


def test_x6_normal_form_reference_input():
    rng = random.Random(124)
    P = x6_normal_form((1, 0, 0), (0, 0, 1), rng=rng)
    assert classify(P) == StratumId.X6
    assert cohomology_table(P).as_tuple() == (2, 2, 6)
    d = determinant(P)
    assert d.degree == 6
    # the linear pencil in the first row vanishes at p1
    p1 = (Fraction(1), Fraction(0), Fraction(0))
    assert P.entry(0, 0).evaluate(p1) == 0
    assert P.entry(0, 1).evaluate(p1) == 0
    # the pencil column vanishes at p2
    p2 = (Fraction(0), Fraction(0), Fraction(1))
    assert P.entry(1, 2).evaluate(p2) == 0
    assert P.entry(2, 2).evaluate(p2) == 0


def test_builders_emit_valid_presentations():
    from sheafstrata.presentation import validate
    from sheafstrata.cohomology import hilbert_polynomial
    rng = random.Random(125)
    Z = PointSet(SIX_POINTS)
    gens = ideal_generators(Z, 3)
    f = sum((random_form(3, rng) * g for g in gens), parse_form("0", degree=6))
    outputs = [
        sextic_sheaf(parse_form("X^6 - Y^6 + X*Z^5")),
        twisted_ideal_sheaf(Z, f),
        x5_normal_form(parse_form("Y*Z"), parse_form("X"),
                       parse_form("X*Y"), parse_form("Z"), rng=rng),
        x6_normal_form((1, 0, 0), (0, 1, 0), rng=rng),
    ]
    for P in outputs:
        assert validate(P) == []
        assert hilbert_polynomial(P) == (6, 3)
