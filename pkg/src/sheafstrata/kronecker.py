"""Kronecker modules and semistability checks.

A module is a q x p matrix whose entries live in an m-dimensional
coefficient space (m = 3 for linear forms, m = 6 for quadrics).  A module
is unstable exactly when some base change produces a forbidden zero block;
the search below looks for such a block with randomized seeds and exact
verification, so "unstable" verdicts are certified while "semistable"
verdicts from the search alone are only probabilistic.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from . import linalg
from .errors import ShapeError
from .fields import GF, QQ, lift_centered
from .forms import Form, basis_size, monomial_basis, span_dimension

DEFAULT_PRIME = 10007


def default_prime():
    value = os.environ.get("SHEAF_STRATA_PRIME")
    return int(value) if value else DEFAULT_PRIME


class KroneckerModule:
    __slots__ = ("p", "q", "m", "entries", "field")

    def __init__(self, entries, m, field=QQ):
        entries = tuple(tuple(tuple(v) for v in row) for row in entries)
        if not entries or not entries[0]:
            raise ShapeError("empty Kronecker module")
        q = len(entries)
        p = len(entries[0])
        for row in entries:
            if len(row) != p:
                raise ShapeError("ragged Kronecker module")
            for v in row:
                if len(v) != m:
                    raise ShapeError("entry vector has length %d, expected %d"
                                     % (len(v), m))
        self.p = p
        self.q = q
        self.m = m
        self.entries = entries
        self.field = field

    @classmethod
    def from_forms(cls, rows, field=QQ):
        degree = None
        for row in rows:
            for f in row:
                if not f.is_zero:
                    degree = f.degree
                    break
            if degree is not None:
                break
        if degree is None:
            degree = 1
        entries = []
        for row in rows:
            out = []
            for f in row:
                if not f.is_zero and f.degree != degree:
                    raise ShapeError("mixed entry degrees in Kronecker module")
                zero = field.zero
                out.append(tuple(f.coeffs.get(mono, zero)
                                 for mono in monomial_basis(degree)))
            entries.append(out)
        return cls(entries, basis_size(degree), field)

    def coordinate_matrices(self):
        return [[[self.entries[r][c][k] for c in range(self.p)]
                 for r in range(self.q)] for k in range(self.m)]

    def forms(self, degree):
        if basis_size(degree) != self.m:
            raise ShapeError("degree %d has %d monomials, module has m=%d"
                             % (degree, basis_size(degree), self.m))
        basis = monomial_basis(degree)
        out = []
        for row in self.entries:
            out.append([Form(degree, dict(zip(basis, v)), self.field) for v in row])
        return out

    def reduce_mod(self, prime):
        gf = GF(prime)
        entries = [[tuple(_to_gf(x, gf) for x in v) for v in row]
                   for row in self.entries]
        return KroneckerModule(entries, self.m, gf)


def _to_gf(x, gf):
    if isinstance(x, int):
        return gf.from_int(x)
    if isinstance(x, Fraction):
        return gf.from_fraction(x)
    return x


def base_change(M, g, h):
    """The module with coordinate matrices g @ M_k @ h (scalar g, h)."""
    mats = M.coordinate_matrices()
    changed = [linalg.matmul(linalg.matmul(g, mk, M.field), h, M.field)
               for mk in mats]
    entries = [[tuple(changed[k][r][c] for k in range(M.m))
                for c in range(M.p)] for r in range(M.q)]
    return KroneckerModule(entries, M.m, M.field)


def dim_N(m, p, q):
    """Dimension of the moduli space of semistable q x p modules."""
    return m * p * q - p * p - q * q + 1


def violating_pairs(p, q):
    """All (dU, dW) with q*dU > p*dW; such a pair defeats semistability."""
    out = []
    for du in range(1, p + 1):
        for dw in range(0, q):
            if q * du > p * dw:
                out.append((du, dw))
    return out


def forbidden_block_shapes(p, q):
    """Inclusion-minimal zero-block shapes (rows, cols) certifying instability.

    A pair (dU, dW) corresponds to a zero block of q - dW rows by dU
    columns; a block containing a smaller forbidden block is dropped.
    """
    blocks = {(q - dw, du) for du, dw in violating_pairs(p, q)}
    minimal = []
    for b in blocks:
        if not any(o != b and o[0] <= b[0] and o[1] <= b[1] for o in blocks):
            minimal.append(b)
    return sorted(minimal)


@dataclass
class InstabilityWitness:
    """Subspaces U (source side) and W (target side) with M(V ⊗ U) ⊆ W
    and q*dim U > p*dim W, both given by explicit basis vectors."""

    u_basis: list
    w_basis: list
    field: object

    @property
    def shape(self):
        return (len(self.u_basis), len(self.w_basis))


def verify_witness(M, witness):
    """Exact check of a witness against the module, over the module's field."""
    u_basis = witness.u_basis
    w_basis = witness.w_basis
    du = linalg.rank(u_basis) if u_basis else 0
    dw = linalg.rank(w_basis) if w_basis else 0
    if du != len(u_basis) or dw != len(w_basis):
        return False
    if M.q * du <= M.p * dw:
        return False
    w_rref, w_pivots = linalg.rref(w_basis) if w_basis else ([], [])
    mats = M.coordinate_matrices()
    for u in u_basis:
        for mk in mats:
            img = linalg.matvec(mk, u, M.field)
            if any(img):
                if not w_basis:
                    return False
                if not linalg.in_span(w_rref, w_pivots, img):
                    return False
    return True


def _image_span(mats, u_basis, field):
    vecs = []
    for u in u_basis:
        for mk in mats:
            img = linalg.matvec(mk, u, field)
            if any(img):
                vecs.append(img)
    return linalg.row_space(vecs)


def _u_max(mats, w_basis, p, q, field):
    functionals = linalg.nullspace(w_basis, q, field) if w_basis \
        else linalg.identity_matrix(q, field)
    rows = []
    for f in functionals:
        for mk in mats:
            rows.append([sum((f[r] * mk[r][c] for r in range(q)), field.zero)
                         for c in range(p)])
    return linalg.nullspace(rows, p, field)


def _closure_check(mats, p, q, field, seed_kind, seed_data):
    """Grow a candidate pair from a seed and test the slope inequality."""
    if seed_kind == "full":
        u = linalg.identity_matrix(p, field)
    elif seed_kind == "cols":
        u = [linalg.identity_row(p, c, field) for c in seed_data]
    elif seed_kind == "rows":
        w = [linalg.identity_row(q, r, field) for r in seed_data]
        u = _u_max(mats, w, p, q, field)
    elif seed_kind == "lambda_kernel":
        comb = [[sum((field.from_int(seed_data[k]) * mats[k][r][c]
                      for k in range(len(mats))), field.zero)
                 for c in range(p)] for r in range(q)]
        u = linalg.nullspace(comb, p, field)
    elif seed_kind == "random_u":
        u = linalg.row_space([[field.from_int(x) for x in v] for v in seed_data])
    elif seed_kind == "random_w":
        w = linalg.row_space([[field.from_int(x) for x in v] for v in seed_data])
        u = _u_max(mats, w, p, q, field)
    else:
        raise ValueError(seed_kind)
    for _ in range(p + 1):
        if not u:
            return None
        w = _image_span(mats, u, field)
        if q * len(u) > p * len(w):
            return u, w
        u_next = _u_max(mats, w, p, q, field)
        if len(u_next) <= len(u):
            return None
        u = u_next
    return None


def _seed_recipes(M, trials, rng):
    p, q = M.p, M.q
    yield ("full", None)
    for size in range(1, p):
        for subset in combinations(range(p), size):
            yield ("cols", subset)
    for size in range(1, q):
        for subset in combinations(range(q), size):
            yield ("rows", subset)
    for _ in range(trials):
        kind = rng.randrange(3)
        if kind == 0:
            yield ("lambda_kernel", tuple(rng.randint(-20, 20) for _ in range(M.m)))
        elif kind == 1:
            d = rng.randint(1, max(p - 1, 1))
            yield ("random_u", tuple(tuple(rng.randint(-20, 20) for _ in range(p))
                                     for _ in range(d)))
        else:
            d = rng.randint(1, max(q - 1, 1))
            yield ("random_w", tuple(tuple(rng.randint(-20, 20) for _ in range(q))
                                     for _ in range(d)))


def instability_witness_search(M, trials=10000, rng=None, prime=None):
    """Randomized search for a certified instability witness.

    Rational modules are searched mod a prime for speed; any hit is then
    re-derived from the same seed over the rationals and verified exactly.
    Finding nothing proves nothing, so a None result is only a
    probabilistic semistability verdict.
    """
    if rng is None:
        rng = random.Random(0)
    if prime is None:
        prime = default_prime()
    rational = M.field is QQ or getattr(M.field, "characteristic", None) == 0
    search_module = M
    if rational:
        try:
            search_module = M.reduce_mod(prime)
        except ZeroDivisionError:
            # a denominator hits the prime; search exactly instead
            rational = False
    search_field = search_module.field
    mats = search_module.coordinate_matrices()
    exact_mats = M.coordinate_matrices() if rational else mats
    for seed_kind, seed_data in _seed_recipes(M, trials, rng):
        hit = _closure_check(mats, M.p, M.q, search_field, seed_kind, seed_data)
        if hit is None:
            continue
        if not rational:
            witness = InstabilityWitness(hit[0], hit[1], search_field)
            if verify_witness(M, witness):
                return witness
            continue
        exact_hit = _closure_check(exact_mats, M.p, M.q, M.field,
                                   seed_kind, seed_data)
        if exact_hit is None:
            # try lifting the mod-p subspace directly
            lifted = [[lift_centered(x) for x in v] for v in hit[0]]
            w_span = _image_span(exact_mats, lifted, M.field)
            witness = InstabilityWitness(lifted, w_span, M.field)
            if verify_witness(M, witness):
                return witness
            continue
        witness = InstabilityWitness(exact_hit[0], exact_hit[1], M.field)
        if verify_witness(M, witness):
            return witness
    return None


def is_semistable_minors(M):
    """Exact maximal-minor semistability test for the small linear shapes.

    Valid for q x p modules of linear forms (m = 3) with shapes 1x3, 3x1,
    2x3 and 3x2: semistable exactly when the maximal minors are linearly
    independent.
    """
    if M.m != 3:
        raise ShapeError("minors criterion needs linear entries (m = 3)")
    shape = (M.q, M.p)
    if shape not in {(1, 3), (3, 1), (2, 3), (3, 2)}:
        raise ShapeError("minors criterion does not cover shape %dx%d" % shape)
    from .presentation import Presentation, maximal_minors
    rows = M.forms(1)
    pres = Presentation([-1] * M.p, [0] * M.q, rows, M.field)
    mins = maximal_minors(pres)
    return span_dimension(mins) == len(mins)
