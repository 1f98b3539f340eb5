"""Stratum table, classification, membership verification, samplers.

Failure-path constructions plant each forbidden degeneration explicitly
and expect the matching check to fail; the planted matrices are rebuilt
until they stay injective, so the failure is always the planted one.
"""

import random

import pytest

from sheafstrata.errors import RetryBudgetError, TwistMismatchError
from sheafstrata.forms import Form, parse_form, random_form, span_dimension
from sheafstrata.presentation import Presentation, determinant, dualize
from sheafstrata.strata import (FAIL, PASS, PROBABLY, TABLE,
                                TRIPLE_TO_STRATUM, StratumId, classify,
                                classify_report, codim_audit, sample,
                                verify_w)

from conftest import presentation_from_grid


def check_map(checks):
    return {c.name: c.verdict for c in checks}


def test_table_is_consistent():
    assert len(TABLE) == 9
    assert len(TRIPLE_TO_STRATUM) == 9
    for sid, info in TABLE.items():
        assert len(info.source) == len(info.target)
        assert TRIPLE_TO_STRATUM[info.triple] == sid
        # multiplicity six: twist sums differ by the determinant degree
        assert sum(info.target) - sum(info.source) == 6


def test_samples_classify_to_their_stratum(strata_samples):
    for sid, samples in strata_samples.items():
        for P in samples:
            assert classify(P) == sid


def test_sampler_is_deterministic():
    for sid in StratumId:
        a = sample(sid, random.Random(77))
        b = sample(sid, random.Random(77))
        assert a.source_twists == b.source_twists
        assert a.entries == b.entries


def test_sampler_output_has_canonical_shape(strata_samples):
    for sid, samples in strata_samples.items():
        info = TABLE[sid]
        for P in samples:
            assert P.source_twists == info.source
            assert P.target_twists == info.target
            assert not determinant(P).is_zero


def test_classify_report_on_generic_samples(strata_samples):
    rng = random.Random(7)
    for sid, samples in strata_samples.items():
        report = classify_report(samples[0], rng=rng)
        assert report.stratum == sid
        assert report.triple == TABLE[sid].triple
        assert report.hilbert == (6, 3)
        assert report.passed()
        assert "w-conditions-failed" not in report.flags
        assert "noncanonical-shape" not in report.flags
        assert "linear-syzygy-pattern" not in report.flags
        names = check_map(report.checks)
        assert names["injective"] == PASS
        if sid in (StratumId.X3, StratumId.X3D):
            assert names["kronecker_block_semistable"] == PROBABLY
            assert not report.certified()
        else:
            assert report.certified()


def test_verify_w_rejects_wrong_shape(strata_samples):
    P = strata_samples[StratumId.X0][0]
    with pytest.raises(TwistMismatchError):
        verify_w(P, StratumId.X1)


def _x1_with_blocks(rng, phi11_row, phi22_col, phi21_cols=None):
    """X1-shaped presentation with chosen blocks, resampled until injective."""
    for _ in range(50):
        if phi21_cols is None:
            cols = [[random_form(2, rng) for _ in range(3)] for _ in range(3)]
        else:
            cols = phi21_cols
        rows = [list(phi11_row) + [Form.zero(0)]]
        for l in range(3):
            rows.append([cols[0][l], cols[1][l], cols[2][l], phi22_col[l]])
        P = Presentation((-2, -2, -2, -1), (-1, 0, 0, 0), rows)
        if not determinant(P).is_zero:
            return P
    raise AssertionError("could not build an injective planted matrix")


def test_verify_x1_rejects_rank_one_row():
    rng = random.Random(100)
    X = parse_form("X")
    P = _x1_with_blocks(rng, [X, X.scale(2), X.scale(3)],
                        [parse_form("Y"), parse_form("Z"), parse_form("Y + Z")])
    names = check_map(verify_w(P, StratumId.X1, rng=rng))
    assert names["phi11_span_at_least_2"] == FAIL
    assert names["phi22_span_at_least_2"] == PASS


def test_verify_x1_rejects_rank_one_column():
    rng = random.Random(101)
    Z = parse_form("Z")
    P = _x1_with_blocks(rng, [parse_form("X"), parse_form("Y"), parse_form("Z")],
                        [Z, Z.scale(-1), Z.scale(4)])
    names = check_map(verify_w(P, StratumId.X1, rng=rng))
    assert names["phi22_span_at_least_2"] == FAIL
    assert names["phi11_span_at_least_2"] == PASS


def test_verify_x1_rejects_planted_corner_degeneration():
    # phi11 and phi22 both have kernel vector (1, 1, -1); the quadric
    # column combination col1 + col2 - col3 is forced into the kernel of
    # r, so r . phi21 . c = 0 and the corner 2x2 shape is reachable
    rng = random.Random(102)
    X, Y = parse_form("X"), parse_form("Y")
    phi11 = [X, Y, X + Y]
    phi22 = [X, Y, X + Y]
    for _ in range(50):
        col1 = [random_form(2, rng) for _ in range(3)]
        col2 = [random_form(2, rng) for _ in range(3)]
        q = random_form(2, rng)
        v = [q, -q, Form.zero(2)]
        col3 = [a + b - w for a, b, w in zip(col1, col2, v)]
        P = _x1_with_blocks(rng, phi11, phi22, [col1, col2, col3])
        names = check_map(verify_w(P, StratumId.X1, rng=rng))
        assert names["corner_block_exclusion"] == FAIL
        assert names["phi11_span_at_least_2"] == PASS
        assert names["phi22_span_at_least_2"] == PASS
        return


def test_verify_x1_passes_generic_sample(strata_samples):
    rng = random.Random(103)
    for P in strata_samples[StratumId.X1]:
        names = check_map(verify_w(P, StratumId.X1, rng=rng))
        assert all(v == PASS for v in names.values())


def test_verify_x2_rejects_dependent_minors():
    # a zero column in the 2x3 linear block kills two of the three
    # maximal minors, while the quadric rows keep the matrix injective
    rng = random.Random(104)
    for _ in range(30):
        base = sample(StratumId.X2, rng)
        rows = [list(r) for r in base.entries]
        rows[0] = [Form.zero(1)] + list(rows[0][1:])
        rows[1] = [Form.zero(1)] + list(rows[1][1:])
        P = Presentation(base.source_twists, base.target_twists, rows)
        if determinant(P).is_zero:
            continue
        names = check_map(verify_w(P, StratumId.X2))
        assert names["phi11_minors_independent"] == FAIL
        assert names["phi22_minors_independent"] == PASS
        return
    raise AssertionError("no injective degenerate matrix found")


def test_verify_x3_detects_planted_instability():
    rng = random.Random(105)
    for _ in range(30):
        base = sample(StratumId.X3, rng)
        rows = [list(r) for r in base.entries]
        # zero out the first row of the linear block: a 1x3 forbidden block
        rows[0] = [rows[0][0], Form.zero(1), Form.zero(1), Form.zero(1)]
        P = Presentation(base.source_twists, base.target_twists, rows)
        if determinant(P).is_zero:
            continue
        names = check_map(verify_w(P, StratumId.X3, rng=rng))
        assert names["kronecker_block_semistable"] == FAIL
        return
    raise AssertionError("no injective planted matrix found")


def test_verify_x4_rejects_planted_divisibility():
    rng = random.Random(106)
    for _ in range(30):
        q = random_form(2, rng)
        l = random_form(1, rng)
        if q.is_zero or l.is_zero:
            continue
        rows = [[q * l, q], [random_form(4, rng), random_form(3, rng)]]
        P = Presentation((-3, -2), (0, 1), rows)
        if determinant(P).is_zero:
            continue
        names = check_map(verify_w(P, StratumId.X4))
        assert names["phi12_not_divides_phi11"] == FAIL
        assert names["phi12_not_divides_phi22"] == PASS
        return
    raise AssertionError("no injective planted matrix found")


def test_verify_x5_rejects_planted_divisibility():
    rng = random.Random(107)
    for _ in range(30):
        l1 = random_form(1, rng)
        if l1.is_zero:
            continue
        q1 = l1 * random_form(1, rng)
        if q1.is_zero:
            continue
        rows = [
            [q1, l1, Form.zero(0)],
            [random_form(3, rng), random_form(2, rng), random_form(1, rng)],
            [random_form(4, rng), random_form(3, rng), random_form(2, rng)],
        ]
        P = Presentation((-3, -2, -1), (-1, 0, 1), rows)
        if determinant(P).is_zero:
            continue
        names = check_map(verify_w(P, StratumId.X5))
        assert names["l1_not_divides_q1"] == FAIL
        return
    raise AssertionError("no injective planted matrix found")


def test_verify_x6_rejects_proportional_pencil():
    rng = random.Random(108)
    X = parse_form("X")
    for _ in range(30):
        rows = [
            [X, X.scale(3), Form.zero(0)],
            [random_form(4, rng), random_form(4, rng), random_form(1, rng)],
            [random_form(4, rng), random_form(4, rng), random_form(1, rng)],
        ]
        P = Presentation((-3, -3, 0), (-2, 1, 1), rows)
        if determinant(P).is_zero:
            continue
        names = check_map(verify_w(P, StratumId.X6))
        assert names["phi11_independent"] == FAIL
        return
    raise AssertionError("no injective planted matrix found")


def properly_semistable_pattern():
    """The boundary matrix built from a conic g and a quartic h.

    Rows 0..2 carry the Koszul-style linear block with an exact linear
    column syzygy (0, X, Y, Z); row 3 carries cubics with X f1 + Y f2
    + Z f3 equal to the quartic.
    """
    return presentation_from_grid(
        (-2, -2, -2, -2), (-1, -1, -1, 1),
        [["X", "-Y", "X", "0"],
         ["Y", "-Z", "0", "X"],
         ["Z", "0", "-Z", "Y"],
         ["X^2*Y - Z^3", "X^3", "Y^3", "Z^3"]])


def test_linear_syzygy_flag_on_boundary_pattern():
    P = properly_semistable_pattern()
    assert not determinant(P).is_zero
    report = classify_report(P, rng=random.Random(109))
    assert report.stratum == StratumId.X3D
    assert report.triple == (1, 0, 3)
    assert "linear-syzygy-pattern" in report.flags
    dual_report = classify_report(dualize(P), rng=random.Random(109))
    assert dual_report.stratum == StratumId.X3
    assert "linear-syzygy-pattern" in dual_report.flags


def test_linear_syzygy_flag_quiet_on_generic_samples(strata_samples):
    rng = random.Random(110)
    for sid in (StratumId.X3, StratumId.X3D):
        for P in strata_samples[sid]:
            report = classify_report(P, rng=rng)
            assert "linear-syzygy-pattern" not in report.flags


def test_noncanonical_shape_flag():
    # an X1-shaped matrix with nonzero upper-right constant presents a
    # sheaf from the open stratum, so the shape no longer matches
    rng = random.Random(111)
    for _ in range(30):
        rows = [[random_form(1, rng) for _ in range(3)] + [parse_form("1", degree=0)]]
        for _l in range(3):
            rows.append([random_form(2, rng) for _ in range(3)]
                        + [random_form(1, rng)])
        P = Presentation((-2, -2, -2, -1), (-1, 0, 0, 0), rows)
        if determinant(P).is_zero:
            continue
        report = classify_report(P, rng=rng)
        assert report.stratum == StratumId.X0
        assert "noncanonical-shape" in report.flags
        assert report.checks == []
        return
    raise AssertionError("no injective chart matrix found")


def test_w_conditions_failed_flag_from_report():
    rng = random.Random(112)
    X = parse_form("X")
    P = _x1_with_blocks(rng, [X, X.scale(2), X.scale(3)],
                        [parse_form("Y"), parse_form("Z"), parse_form("Y + Z")])
    report = classify_report(P, rng=rng)
    assert report.stratum == StratumId.X1
    assert not report.passed()
    assert "w-conditions-failed" in report.flags


def test_codim_audit_reproduces_table():
    rows = codim_audit()
    assert len(rows) == 9
    by_stratum = {r.stratum: r for r in rows}
    dims = [by_stratum[sid].dim for sid in StratumId]
    assert dims == [37, 36, 33, 33, 33, 32, 31, 29, 27]
    for sid, info in TABLE.items():
        row = by_stratum[sid]
        assert row.ok
        assert row.codim == info.codim
        assert row.expected_codim == info.codim
        assert row.dim == 37 - info.codim
