"""Constructors of presentations from geometric input.

Point sets in the plane give ideal generators and Hilbert-Burch syzygy
matrices; sextic equations give rank-one presentations; the X5 and X6
normal forms are assembled from their defining data.
"""

from __future__ import annotations

import random

from . import linalg
from .errors import InternalCheckError, RetryBudgetError, ShapeError
from .fields import QQ
from .forms import (Form, basis_size, divide_exact, monomial_basis,
                    mult_matrix, random_form, span_dimension)
from .presentation import (Presentation, determinant, maximal_minors,
                           sigma_membership)


class PointSet:
    """Distinct rational points in the projective plane."""

    __slots__ = ("points", "field")

    def __init__(self, points, field=QQ):
        pts = []
        for raw in points:
            pt = tuple(c if not isinstance(c, (int, str)) else field.parse(str(c))
                       for c in raw)
            if len(pt) != 3:
                raise ShapeError("a plane point needs 3 coordinates, got %d" % len(pt))
            if not any(pt):
                raise ShapeError("(0:0:0) is not a projective point")
            pts.append(pt)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _proportional(pts[i], pts[j]):
                    raise ShapeError("points %d and %d coincide up to scale" % (i, j))
        self.points = tuple(pts)
        self.field = field

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def evaluation_matrix(self, degree):
        """One row per point, one column per degree-d monomial."""
        monos = monomial_basis(degree)
        rows = []
        for pt in self.points:
            rows.append([_eval_monomial(mono, pt, self.field) for mono in monos])
        return rows

    def imposes_independent_conditions(self, degree):
        return linalg.rank(self.evaluation_matrix(degree)) == len(self.points)

    def on_conic(self):
        return len(ideal_generators(self, 2)) > 0

    def four_colinear(self):
        pts = self.points
        n = len(pts)
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    for d in range(c + 1, n):
                        rows = [list(pts[i]) for i in (a, b, c, d)]
                        if linalg.rank(rows) <= 2:
                            return True
        return False


def _proportional(p, q):
    for i in range(3):
        for j in range(i + 1, 3):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return True


def _eval_monomial(mono, point, field):
    value = field.one
    for coord, exponent in zip(point, mono):
        for _ in range(exponent):
            value = value * coord
    return value


def ideal_generators(Z, degree):
    """Basis of the forms of the given degree vanishing on all points."""
    matrix = Z.evaluation_matrix(degree)
    kernel = linalg.nullspace(matrix, basis_size(degree), Z.field)
    monos = monomial_basis(degree)
    return [Form(degree, dict(zip(monos, vec)), Z.field) for vec in kernel]


def hilbert_burch(Z):
    """The 4x3 linear syzygy matrix of the cubic ideal of 6 general points.

    Requires a 6-point set not on a conic whose cubic ideal has exactly
    4 generators.  Returns a presentation block with source twists
    (-1,-1,-1) and target twists (0,0,0,0); the row of generators G
    satisfies G*M = 0 and the maximal minors of M regenerate the
    generators through an invertible change of basis.
    """
    if len(Z) != 6:
        raise ShapeError("need exactly 6 points, got %d" % len(Z))
    if Z.on_conic():
        raise ShapeError("the six points lie on a conic")
    gens = ideal_generators(Z, 3)
    if len(gens) != 4:
        raise ShapeError("expected 4 cubic generators, found %d" % len(gens))

    # linear syzygies: unknown column (h1..h4) of linear forms with
    # sum_i h_i * g_i = 0 in degree 4
    blocks = [mult_matrix(g, 1) for g in gens]
    nrows = len(blocks[0])
    equations = [sum((blocks[i][r] for i in range(4)), []) for r in range(nrows)]
    kernel = linalg.nullspace(equations, 12, Z.field)
    if len(kernel) != 3:
        raise InternalCheckError("syzygy space has dimension %d, expected 3" % len(kernel))

    monos = monomial_basis(1)
    entries = [[None] * 3 for _ in range(4)]
    for col, vec in enumerate(kernel):
        for i in range(4):
            coeffs = dict(zip(monos, vec[3 * i:3 * i + 3]))
            entries[i][col] = Form(1, coeffs, Z.field)
    M = Presentation((-1, -1, -1), (0, 0, 0, 0), entries, Z.field)

    for col in range(3):
        total = Form.zero(4, Z.field)
        for i in range(4):
            total = total + gens[i] * M.entry(i, col)
        if not total.is_zero:
            raise InternalCheckError("syzygy identity G*M = 0 fails")
    _check_minors_regenerate(M, gens)
    return M


def _check_minors_regenerate(M, gens):
    """Solve minors = T * gens and require T invertible."""
    gen_cols = linalg.transpose([g.coeff_vector() for g in gens])
    rows_T = []
    for minor in maximal_minors(M):
        coeffs = linalg.solve(gen_cols, minor.coeff_vector(), M.field)
        if coeffs is None:
            raise InternalCheckError("a maximal minor is outside the generator span")
        rows_T.append(coeffs)
    if linalg.scalar_determinant(rows_T, M.field) == M.field.zero:
        raise InternalCheckError("minors do not regenerate the cubic generators")


def twisted_ideal_sheaf(Z, f):
    """Presentation of the twisted ideal sheaf of Z inside the sextic {f=0}.

    Writes f = sum_i c_i * g_i with cubic coefficients and places the
    column (c_1..c_4) next to the Hilbert-Burch block, giving the
    resolution with source twists (-3,-1,-1,-1) and targets (0,0,0,0).
    """
    if f.degree != 6:
        raise ShapeError("need a sextic, got degree %d" % f.degree)
    for k, pt in enumerate(Z):
        if f.evaluate(pt) != Z.field.zero:
            raise ShapeError("the sextic does not vanish at point %d" % k)
    if not Z.imposes_independent_conditions(3):
        raise ShapeError("points impose dependent conditions on cubics")
    M = hilbert_burch(Z)
    gens = ideal_generators(Z, 3)

    blocks = [mult_matrix(g, 3) for g in gens]
    nrows = len(blocks[0])
    stacked = [sum((blocks[i][r] for i in range(4)), []) for r in range(nrows)]
    solution = linalg.solve(stacked, f.coeff_vector(), Z.field)
    if solution is None:
        raise ShapeError("the sextic is not in the cubic ideal's degree-6 part")
    monos3 = monomial_basis(3)
    width = basis_size(3)
    entries = []
    for i in range(4):
        coeffs = dict(zip(monos3, solution[width * i:width * (i + 1)]))
        entries.append([Form(3, coeffs, Z.field)] + list(M.entries[i]))
    P = Presentation((-3, -1, -1, -1), (0, 0, 0, 0), entries, Z.field)

    det = determinant(P)
    if det.is_zero or span_dimension([det, f]) != 1:
        raise InternalCheckError("determinant is not proportional to the sextic")
    return P


def sextic_sheaf(f):
    """The rank-one presentation of a sextic curve's twisted structure sheaf."""
    if f.degree != 6:
        raise ShapeError("need a sextic, got degree %d" % f.degree)
    if f.is_zero:
        raise ShapeError("the zero form does not define a curve")
    return Presentation((-4,), (2,), [[f]], f.field)


def x5_normal_form(q1, l1, q2, l2, free=None, rng=None, height=5, retries=64):
    """The X5 shape [[q1, l1, 0], [f1, q, l2], [p, f2, q2]].

    Requires l1, l2 nonzero and l1 not dividing q1, l2 not dividing q2.
    The four starred entries come from `free` = (f1, q, p, f2) or are
    sampled until the determinant is nonzero.
    """
    field = q1.field
    if l1.is_zero or l2.is_zero:
        raise ShapeError("the pivot linear forms must be nonzero")
    if (q1.degree, l1.degree, q2.degree, l2.degree) != (2, 1, 2, 1):
        raise ShapeError("expected degrees (2,1,2,1) for (q1,l1,q2,l2)")
    if divide_exact(q1, l1) is not None:
        raise ShapeError("l1 divides q1")
    if divide_exact(q2, l2) is not None:
        raise ShapeError("l2 divides q2")
    if rng is None:
        rng = random.Random(0)

    def assemble(f1, q, p, f2):
        entries = [
            [q1, l1, Form.zero(0, field)],
            [f1, q, l2],
            [p, f2, q2],
        ]
        return Presentation((-3, -2, -1), (-1, 0, 1), entries, field)

    if free is not None:
        f1, q, p, f2 = free
        P = assemble(f1, q, p, f2)
        if determinant(P).is_zero:
            raise ShapeError("the supplied entries give a zero determinant")
        return P
    for _ in range(retries):
        P = assemble(random_form(3, rng, height, field),
                     random_form(2, rng, height, field),
                     random_form(4, rng, height, field),
                     random_form(3, rng, height, field))
        if not determinant(P).is_zero:
            return P
    raise RetryBudgetError("no injective X5 form within %d retries" % retries)


def x6_normal_form(p1, p2, phi21=None, rng=None, height=5, retries=64):
    """The X6 shape from two base points and a 2x2 quartic block.

    The first row is a pencil of lines through p1, the last column a
    pencil through p2.  The quartic block is resampled until the result
    is injective and avoids the split locus.
    """
    field = QQ
    if rng is None:
        rng = random.Random(0)
    pencil1 = _pencil_through(p1, field)
    pencil2 = _pencil_through(p2, field)

    def assemble(block):
        entries = [
            [pencil1[0], pencil1[1], Form.zero(0, field)],
            [block[0][0], block[0][1], pencil2[0]],
            [block[1][0], block[1][1], pencil2[1]],
        ]
        return Presentation((-3, -3, 0), (-2, 1, 1), entries, field)

    def acceptable(P):
        if determinant(P).is_zero:
            return False
        phi11 = P.submatrix([0], [0, 1])
        phi21_sub = P.submatrix([1, 2], [0, 1])
        phi22 = P.submatrix([1, 2], [2])
        return sigma_membership(phi21_sub, phi11, phi22) is None

    if phi21 is not None:
        P = assemble(phi21)
        if not acceptable(P):
            raise ShapeError("the supplied quartic block is degenerate")
        return P
    for _ in range(retries):
        block = [[random_form(4, rng, height, field) for _ in range(2)]
                 for _ in range(2)]
        P = assemble(block)
        if acceptable(P):
            return P
    raise RetryBudgetError("no X6 form within %d retries" % retries)


def _pencil_through(point, field):
    pt = tuple(c if not isinstance(c, (int, str)) else field.parse(str(c))
               for c in point)
    if len(pt) != 3 or not any(pt):
        raise ShapeError("need a projective plane point")
    basis = linalg.nullspace([list(pt)], 3, field)
    monos = monomial_basis(1)
    return [Form(1, dict(zip(monos, vec)), field) for vec in basis]
