"""Kronecker modules and the randomized instability search.

The forbidden-shape list is rebuilt here straight from the slope
inequality, and every witness the search returns is re-verified exactly
over the rationals, so a false positive cannot slip through.
"""

import random
from fractions import Fraction

import pytest

from sheafstrata.errors import ShapeError
from sheafstrata.fields import QQ
from sheafstrata.forms import parse_form, random_form, variables
from sheafstrata.kronecker import (KroneckerModule, base_change,
                                   default_prime, dim_N,
                                   forbidden_block_shapes,
                                   instability_witness_search,
                                   is_semistable_minors, verify_witness,
                                   violating_pairs)


def quadric_product_module():
    X, Y, Z = variables()
    gens = (X, Y, Z)
    rows = [[a * b for b in gens] for a in gens]
    return KroneckerModule.from_forms(rows)


def random_module(rng, p, q, m_degree=1):
    rows = [[random_form(m_degree, rng) for _ in range(p)] for _ in range(q)]
    return KroneckerModule.from_forms(rows)


def planted_module(rng, p, q, zero_rows, zero_cols):
    """Module with an explicit zero block in the top-right corner."""
    rows = []
    for r in range(q):
        row = []
        for c in range(p):
            if r < zero_rows and c >= p - zero_cols:
                row.append(parse_form("0", degree=1))
            else:
                row.append(random_form(1, rng))
        rows.append(row)
    return KroneckerModule.from_forms(rows)


def test_dim_N_values():
    assert dim_N(6, 3, 3) == 37
    assert dim_N(3, 3, 4) == 12
    assert dim_N(3, 4, 3) == 12
    assert dim_N(3, 3, 1) == 0
    assert dim_N(3, 1, 3) == 0
    assert dim_N(3, 3, 2) == 6
    assert dim_N(3, 2, 3) == 6


def test_violating_pairs_from_slope_inequality():
    for p in range(1, 6):
        for q in range(1, 6):
            expected = [(du, dw)
                        for du in range(1, p + 1)
                        for dw in range(0, q)
                        if q * du > p * dw]
            assert violating_pairs(p, q) == expected


def test_forbidden_block_shapes_are_inclusion_minimal():
    for p in range(1, 6):
        for q in range(1, 6):
            blocks = {(q - dw, du) for du, dw in violating_pairs(p, q)}
            minimal = sorted(b for b in blocks
                             if not any(o != b and o[0] <= b[0] and o[1] <= b[1]
                                        for o in blocks))
            assert forbidden_block_shapes(p, q) == minimal


def test_forbidden_block_shapes_three_by_three():
    assert forbidden_block_shapes(3, 3) == [(1, 3), (2, 2), (3, 1)]


def test_quadric_product_module_has_no_witness():
    M = quadric_product_module()
    assert M.p == 3 and M.q == 3 and M.m == 6
    witness = instability_witness_search(M, trials=2000, rng=random.Random(0))
    assert witness is None


def test_planted_zero_blocks_yield_verified_witnesses():
    rng = random.Random(90)
    for zero_rows, zero_cols in forbidden_block_shapes(3, 3):
        M = planted_module(rng, 3, 3, zero_rows, zero_cols)
        witness = instability_witness_search(M, trials=400, rng=rng)
        assert witness is not None
        assert verify_witness(M, witness)
        du, dw = witness.shape
        assert M.q * du > M.p * dw


def test_conjugated_planted_blocks_are_still_found():
    rng = random.Random(91)
    for _ in range(5):
        M = planted_module(rng, 3, 3, 2, 2)
        g = _random_invertible(rng, 3)
        h = _random_invertible(rng, 3)
        N = base_change(M, g, h)
        witness = instability_witness_search(N, trials=600, rng=rng)
        assert witness is not None
        assert verify_witness(N, witness)


def _random_invertible(rng, n):
    from sheafstrata import linalg
    while True:
        m = [[QQ.from_int(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        if linalg.rank(m) == n:
            return m


def test_verify_witness_rejects_bad_subspaces():
    from sheafstrata.kronecker import InstabilityWitness
    rng = random.Random(92)
    M = planted_module(rng, 3, 3, 1, 3)
    one, zero = QQ.one, QQ.zero
    # U = everything, W = everything violates nothing and must be refused
    bogus = InstabilityWitness(
        u_basis=[[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        w_basis=[[one, zero, zero], [zero, one, zero], [zero, zero, one]],
        field=QQ)
    assert not verify_witness(M, bogus)
    # a U not actually mapped into W must be refused even when slopes violate
    generic = random_module(rng, 3, 3)
    claimed = InstabilityWitness(
        u_basis=[[one, zero, zero]],
        w_basis=[],
        field=QQ)
    assert not verify_witness(generic, claimed)


def test_search_survives_prime_dividing_denominators():
    rng = random.Random(93)
    p = default_prime()
    bad = Fraction(1, p)
    rows = []
    for r in range(3):
        row = []
        for c in range(3):
            if r == 0:
                row.append(parse_form("0", degree=1))
            else:
                f = random_form(1, rng)
                row.append(f.scale(bad) if r == 1 else f)
        rows.append(row)
    M = KroneckerModule.from_forms(rows)
    # reduction mod p is impossible here; the exact fallback must still
    # find the zero row, which is a certain instability
    witness = instability_witness_search(M, trials=400, rng=rng)
    assert witness is not None
    assert verify_witness(M, witness)


def test_default_prime_env_override(monkeypatch):
    monkeypatch.setenv("SHEAF_STRATA_PRIME", "31")
    assert default_prime() == 31
    monkeypatch.delenv("SHEAF_STRATA_PRIME")
    assert default_prime() == 10007


def test_module_construction_and_accessors():
    M = quadric_product_module()
    mats = M.coordinate_matrices()
    assert len(mats) == M.m
    for k in range(M.m):
        for r in range(M.q):
            for c in range(M.p):
                assert mats[k][r][c] == M.entries[r][c][k]
    # forms() reassembles the original matrix of forms
    back = M.forms(2)
    X, Y, Z = variables()
    assert back[0][0] == X * X
    assert back[2][1] == Z * Y


def test_module_rejects_mixed_degrees_and_ragged_input():
    X, Y, Z = variables()
    with pytest.raises(ShapeError):
        KroneckerModule.from_forms([[X, X * Y]])
    with pytest.raises(ShapeError):
        KroneckerModule([[(1, 0, 0)], [(0, 1, 0), (0, 0, 1)]], 3)


def test_is_semistable_minors_hand_cases():
    X, Y, Z = variables()
    one_by_three = KroneckerModule.from_forms([[X, Y, Z]])
    assert is_semistable_minors(one_by_three)
    dependent = KroneckerModule.from_forms([[X, Y, X + Y]])
    assert not is_semistable_minors(dependent)
    three_by_one = KroneckerModule.from_forms([[X], [Y], [Z]])
    assert is_semistable_minors(three_by_one)


def test_is_semistable_minors_two_by_three():
    rng = random.Random(94)
    X, Y, Z = variables()
    generic = random_module(rng, 3, 2)
    assert is_semistable_minors(generic)
    # proportional rows kill every 2x2 minor
    rows = [[X, Y, Z], [X.scale(Fraction(2)), Y.scale(Fraction(2)), Z.scale(Fraction(2))]]
    degenerate = KroneckerModule.from_forms(rows)
    assert not is_semistable_minors(degenerate)


def test_base_change_preserves_minors_criterion():
    rng = random.Random(95)
    for _ in range(5):
        M = random_module(rng, 3, 2)
        g = _random_invertible(rng, 2)
        h = _random_invertible(rng, 3)
        assert is_semistable_minors(base_change(M, g, h)) == is_semistable_minors(M)
