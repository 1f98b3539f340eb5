"""Graded matrices of forms between direct sums of line bundle twists.

A Presentation is the matrix of a morphism from ⊕O(a_i) to ⊕O(b_j) on the
projective plane: entry [j][i] is a form of degree b_j - a_i, and slots
with b_j - a_i < 0 must hold the zero form.  Rows follow targets, columns
follow sources.
"""

from __future__ import annotations

import itertools
import json

from . import linalg
from .errors import InvalidPresentationError, ParseError, ShapeError, TwistMismatchError
from .fields import QQ
from .forms import Form, format_form, monomial_basis, mult_matrix, parse_form, random_form


class Presentation:
    __slots__ = ("source_twists", "target_twists", "entries", "field", "_cache")

    def __init__(self, source_twists, target_twists, entries, field=QQ):
        source_twists = tuple(int(a) for a in source_twists)
        target_twists = tuple(int(b) for b in target_twists)
        entries = tuple(tuple(row) for row in entries)
        if len(entries) != len(target_twists):
            raise ShapeError("expected %d rows, got %d"
                             % (len(target_twists), len(entries)))
        for row in entries:
            if len(row) != len(source_twists):
                raise ShapeError("ragged or mis-sized entry rows")
        fixed = []
        for j, row in enumerate(entries):
            new_row = []
            for i, e in enumerate(row):
                if not isinstance(e, Form):
                    raise ShapeError("entry [%d][%d] is not a Form" % (j, i))
                d = target_twists[j] - source_twists[i]
                if e.is_zero and e.degree != max(d, 0):
                    e = Form.zero(max(d, 0), field)
                new_row.append(e)
            fixed.append(tuple(new_row))
        self.source_twists = source_twists
        self.target_twists = target_twists
        self.entries = tuple(fixed)
        self.field = field
        self._cache = {}

    @property
    def nrows(self):
        return len(self.target_twists)

    @property
    def ncols(self):
        return len(self.source_twists)

    def entry(self, j, i):
        return self.entries[j][i]

    def submatrix(self, row_indices, col_indices):
        return Presentation(
            [self.source_twists[i] for i in col_indices],
            [self.target_twists[j] for j in row_indices],
            [[self.entries[j][i] for i in col_indices] for j in row_indices],
            self.field)

    def is_square(self):
        return self.nrows == self.ncols

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.source_twists == other.source_twists
                and self.target_twists == other.target_twists
                and self.entries == other.entries)

    def __repr__(self):
        return "Presentation(%r -> %r)" % (list(self.source_twists),
                                           list(self.target_twists))

    def to_json_dict(self):
        return {
            "source_twists": list(self.source_twists),
            "target_twists": list(self.target_twists),
            "entries": [[format_form(e) for e in row] for row in self.entries],
        }

    def to_json(self, indent=None):
        return json.dumps(self.to_json_dict(), indent=indent)


def from_json_dict(data, field=QQ):
    try:
        source = data["source_twists"]
        target = data["target_twists"]
        raw = data["entries"]
    except (KeyError, TypeError) as exc:
        raise ParseError("presentation JSON missing %s" % exc) from None
    entries = []
    for j, row in enumerate(raw):
        new_row = []
        for i, text in enumerate(row):
            try:
                f = parse_form(text, field)
            except ParseError as exc:
                if "cannot infer" in str(exc):
                    d = max(int(target[j]) - int(source[i]), 0)
                    f = parse_form(text, field, degree=d)
                else:
                    raise
            new_row.append(f)
        entries.append(new_row)
    return Presentation(source, target, entries, field)


def from_json(text, field=QQ):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("bad JSON: %s" % exc) from None
    return from_json_dict(data, field)


def validate(P):
    """Degree bookkeeping violations as human-readable strings."""
    problems = []
    for j in range(P.nrows):
        for i in range(P.ncols):
            e = P.entries[j][i]
            d = P.target_twists[j] - P.source_twists[i]
            if d < 0:
                if not e.is_zero:
                    problems.append(
                        "entry [%d][%d] must be zero (degree slot %d)" % (j, i, d))
            elif not e.is_zero and e.degree != d:
                problems.append(
                    "entry [%d][%d] has degree %d, expected %d"
                    % (j, i, e.degree, d))
    return problems


def require_valid(P):
    problems = validate(P)
    if problems:
        raise InvalidPresentationError("; ".join(problems))


def compose(Q, P):
    """Matrix of Q after P; Q's sources must equal P's targets."""
    if Q.source_twists != P.target_twists:
        raise TwistMismatchError(
            "cannot compose: %r vs %r" % (Q.source_twists, P.target_twists))
    entries = []
    for j in range(Q.nrows):
        row = []
        for i in range(P.ncols):
            acc = Form.zero(max(Q.target_twists[j] - P.source_twists[i], 0), P.field)
            for k in range(Q.ncols):
                a = Q.entries[j][k]
                b = P.entries[k][i]
                if a.is_zero or b.is_zero:
                    continue
                acc = acc + a * b
            row.append(acc)
        entries.append(row)
    return Presentation(P.source_twists, Q.target_twists, entries, P.field)


def _laplace(entries, rows, cols, field):
    if len(rows) == 1:
        return entries[rows[0]][cols[0]]
    best_c = 0
    best_zeros = -1
    for ci, c in enumerate(cols):
        zeros = sum(1 for r in rows if entries[r][c].is_zero)
        if zeros > best_zeros:
            best_zeros = zeros
            best_c = ci
    c = cols[best_c]
    rest_cols = cols[:best_c] + cols[best_c + 1:]
    total = None
    for ri, r in enumerate(rows):
        e = entries[r][c]
        if e.is_zero:
            continue
        minor = _laplace(entries, rows[:ri] + rows[ri + 1:], rest_cols, field)
        if minor.is_zero:
            continue
        term = e * minor
        if (ri + best_c) % 2:
            term = -term
        total = term if total is None else total + term
    return total


def determinant(P, method="auto"):
    """Determinant as a form of degree sum(b) - sum(a).

    Laplace expansion for matrices up to 4x4, evaluation at an affine grid
    followed by exact interpolation for larger ones.  Either route can be
    forced through ``method`` for cross-checking.
    """
    if not P.is_square():
        raise ShapeError("determinant of a %dx%d matrix" % (P.nrows, P.ncols))
    key = ("det", method)
    if key in P._cache:
        return P._cache[key]
    if method == "auto":
        method = "laplace" if P.nrows <= 4 else "interpolation"
    if method == "laplace":
        result = _det_laplace(P)
    elif method == "interpolation":
        result = _det_interpolation(P)
    else:
        raise ValueError("unknown determinant method %r" % method)
    P._cache[key] = result
    P._cache[("det", "auto")] = result
    return result


def _det_degree(P):
    return sum(P.target_twists) - sum(P.source_twists)


def _det_laplace(P):
    n = P.nrows
    if n == 0:
        return Form(0, {(0, 0, 0): P.field.one}, P.field)
    total = _laplace(P.entries, tuple(range(n)), tuple(range(n)), P.field)
    if total is None:
        return Form.zero(max(_det_degree(P), 0), P.field)
    return total


def _det_interpolation(P):
    D = _det_degree(P)
    if D < 0:
        return Form.zero(0, P.field)
    field = P.field
    basis = monomial_basis(D)
    rows = []
    rhs = []
    one = field.one
    for i in range(D + 1):
        for j in range(D + 1):
            point = (one, field.from_int(i), field.from_int(j))
            scalar_rows = [[e.evaluate(point) for e in row] for row in P.entries]
            value = linalg.scalar_determinant(scalar_rows, field)
            rows.append([_eval_monomial(mono, point, field) for mono in basis])
            rhs.append(value)
    sol = linalg.solve(rows, rhs, field)
    if sol is None:
        raise ShapeError("interpolation system inconsistent; entries are not forms")
    return Form.from_coeff_vector(D, sol, field)


def _eval_monomial(mono, point, field):
    v = field.one
    for base, e in zip(point, mono):
        for _ in range(e):
            v = v * base
    return v


def minors(P, k):
    """All k x k minors, row and column subsets in lexicographic order."""
    out = []
    for rset in itertools.combinations(range(P.nrows), k):
        for cset in itertools.combinations(range(P.ncols), k):
            out.append(determinant(P.submatrix(rset, cset)))
    return out


def maximal_minors(P):
    """Minors of full size min(nrows, ncols), subsets in lex order.

    For a tall matrix these run over row subsets, for a wide one over
    column subsets; no extra sign is applied to the determinants.
    """
    k = min(P.nrows, P.ncols)
    out = []
    if P.nrows >= P.ncols:
        for rset in itertools.combinations(range(P.nrows), k):
            out.append(determinant(P.submatrix(rset, range(P.ncols))))
    else:
        for cset in itertools.combinations(range(P.ncols), k):
            out.append(determinant(P.submatrix(range(P.nrows), cset)))
    return out


def dualize(P, extra_twist=1):
    """Transpose with twists a -> -b-3+e and b -> -a-3+e, sorted ascending.

    With extra_twist 1 this models F -> Ext1(F, omega)(1) on presentations;
    applying it twice returns the original up to the sorting permutation.
    """
    new_source = [-b - 3 + extra_twist for b in P.target_twists]
    new_target = [-a - 3 + extra_twist for a in P.source_twists]
    entries = [[P.entries[j][i] for j in range(P.nrows)] for i in range(P.ncols)]
    src_perm = sorted(range(len(new_source)), key=lambda k: new_source[k])
    tgt_perm = sorted(range(len(new_target)), key=lambda k: new_target[k])
    return Presentation(
        [new_source[k] for k in src_perm],
        [new_target[k] for k in tgt_perm],
        [[entries[j][i] for i in src_perm] for j in tgt_perm],
        P.field)


def sigma_membership(phi21, phi11, phi22):
    """Solve phi21 = v . phi11 + phi22 . u for graded blocks (u, v).

    phi11 maps S1 -> T1, phi22 maps S2 -> T2 and phi21 maps S1 -> T2; the
    unknowns are u: S1 -> S2 and v: T1 -> T2.  Returns (u, v) or None.
    """
    if phi11.source_twists != phi21.source_twists:
        raise TwistMismatchError("phi11 and phi21 sources differ")
    if phi22.target_twists != phi21.target_twists:
        raise TwistMismatchError("phi22 and phi21 targets differ")
    field = phi21.field
    s1 = phi11.source_twists
    s2 = phi22.source_twists
    t1 = phi11.target_twists
    t2 = phi21.target_twists

    eq_offsets = {}
    total_rows = 0
    for l in range(len(t2)):
        for i in range(len(s1)):
            d = t2[l] - s1[i]
            eq_offsets[(l, i)] = total_rows
            total_rows += len(monomial_basis(d))

    unknowns = []          # (kind, l_or_r, j_or_i, degree)
    for l in range(len(t2)):
        for j in range(len(t1)):
            d = t2[l] - t1[j]
            if d >= 0:
                unknowns.append(("v", l, j, d))
    for r in range(len(s2)):
        for i in range(len(s1)):
            d = s2[r] - s1[i]
            if d >= 0:
                unknowns.append(("u", r, i, d))

    cols = []
    for kind, a, b, d in unknowns:
        for mono in monomial_basis(d):
            unit = Form(d, {mono: field.one}, field)
            col = [field.zero] * total_rows
            if kind == "v":
                l, j = a, b
                for i in range(len(s1)):
                    f = phi11.entries[j][i]
                    if f.is_zero:
                        continue
                    _write_block(col, eq_offsets[(l, i)], unit * f)
            else:
                r, i = a, b
                for l in range(len(t2)):
                    f = phi22.entries[l][r]
                    if f.is_zero:
                        continue
                    _write_block(col, eq_offsets[(l, i)], f * unit)
            cols.append(col)

    rhs = [field.zero] * total_rows
    for l in range(len(t2)):
        for i in range(len(s1)):
            _write_block(rhs, eq_offsets[(l, i)], phi21.entries[l][i])

    matrix = linalg.transpose(cols) if cols else [[] for _ in range(total_rows)]
    sol = linalg.solve(matrix, rhs, field)
    if sol is None:
        return None

    u_entries = [[Form.zero(max(s2[r] - s1[i], 0), field) for i in range(len(s1))]
                 for r in range(len(s2))]
    v_entries = [[Form.zero(max(t2[l] - t1[j], 0), field) for j in range(len(t1))]
                 for l in range(len(t2))]
    pos = 0
    for kind, a, b, d in unknowns:
        basis = monomial_basis(d)
        coeffs = {}
        for mono in basis:
            c = sol[pos]
            pos += 1
            if c:
                coeffs[mono] = c
        f = Form(d, coeffs, field)
        if kind == "v":
            v_entries[a][b] = f
        else:
            u_entries[a][b] = f
    u = Presentation(s1, s2, u_entries, field)
    v = Presentation(t1, t2, v_entries, field)
    return u, v


def _write_block(vec, offset, form):
    if form.is_zero:
        return
    idx = {m: i for i, m in enumerate(monomial_basis(form.degree))}
    for mono, c in form.coeffs.items():
        vec[offset + idx[mono]] = vec[offset + idx[mono]] + c


def identity_presentation(twists, field=QQ):
    n = len(twists)
    entries = [[Form(0, {(0, 0, 0): field.one}, field) if i == j else Form.zero(0, field)
                for i in range(n)] for j in range(n)]
    return Presentation(twists, twists, entries, field)


def _scalar_part(P):
    """Entries of degree-0 slots as a scalar matrix (None elsewhere)."""
    out = []
    for j in range(P.nrows):
        row = []
        for i in range(P.ncols):
            e = P.entries[j][i]
            row.append(e.coeffs.get((0, 0, 0), P.field.zero))
        out.append(row)
    return out


def is_graded_automorphism(P):
    if P.source_twists != P.target_twists:
        return False
    if validate(P):
        return False
    try:
        invert_automorphism(P)
    except ShapeError:
        return False
    return True


def invert_automorphism(P):
    """Exact inverse of a graded automorphism.

    Splits P into the block-diagonal scalar part D (slots with equal source
    and target twist) and the strictly twist-raising remainder M, then uses
    the finite Neumann series of D^-1 M.
    """
    if P.source_twists != P.target_twists:
        raise ShapeError("automorphism must have equal source and target twists")
    field = P.field
    twists = P.source_twists
    n = len(twists)
    values = sorted(set(twists))
    dinv_entries = [[Form.zero(max(twists[j] - twists[i], 0), field)
                     for i in range(n)] for j in range(n)]
    scal = _scalar_part(P)
    for val in values:
        idxs = [i for i, t in enumerate(twists) if t == val]
        block = [[scal[j][i] for i in idxs] for j in idxs]
        inv = linalg.inverse(block, field)
        if inv is None:
            raise ShapeError("scalar part is singular: not an automorphism")
        for bj, j in enumerate(idxs):
            for bi, i in enumerate(idxs):
                dinv_entries[j][i] = Form(0, {(0, 0, 0): inv[bj][bi]}, field)
    dinv = Presentation(twists, twists, dinv_entries, field)

    m_entries = [[P.entries[j][i] if twists[j] != twists[i]
                  else Form.zero(0, field)
                  for i in range(n)] for j in range(n)]
    m_part = Presentation(twists, twists, m_entries, field)
    k = compose(dinv, m_part)

    result = dinv
    power = dinv
    sign = -1
    for _ in range(len(values) - 1):
        power = compose(k, power)
        result = _axpy(result, power, sign)
        sign = -sign
    return result


def _axpy(P, Q, sign):
    entries = []
    for j in range(P.nrows):
        row = []
        for i in range(P.ncols):
            q = Q.entries[j][i]
            row.append(P.entries[j][i] + (q if sign > 0 else -q))
        entries.append(row)
    return Presentation(P.source_twists, P.target_twists, entries, P.field)


def apply_equivalence(g, P, h):
    """g . P . h^-1 for graded automorphisms g (targets) and h (sources)."""
    if g.source_twists != P.target_twists:
        raise TwistMismatchError("g does not act on the targets of P")
    if h.source_twists != P.source_twists:
        raise TwistMismatchError("h does not act on the sources of P")
    return compose(compose(g, P), invert_automorphism(h))


def random_automorphism(twists, rng, field=QQ, height=3):
    """Random graded automorphism of ⊕O(t) for the given twist vector."""
    n = len(twists)
    entries = [[None] * n for _ in range(n)]
    values = sorted(set(twists))
    for val in values:
        idxs = [i for i, t in enumerate(twists) if t == val]
        while True:
            block = [[field.from_int(rng.randint(-height, height))
                      for _ in idxs] for _ in idxs]
            if linalg.inverse(block, field) is not None:
                break
        for bj, j in enumerate(idxs):
            for bi, i in enumerate(idxs):
                entries[j][i] = Form(0, {(0, 0, 0): block[bj][bi]}, field)
    for j in range(n):
        for i in range(n):
            if entries[j][i] is not None:
                continue
            d = twists[j] - twists[i]
            if d > 0:
                entries[j][i] = random_form(d, rng, height, field)
            else:
                entries[j][i] = Form.zero(max(d, 0), field)
    return Presentation(twists, twists, entries, field)


def map_field(P, field, convert):
    """Entrywise coefficient conversion, e.g. reduction mod p."""
    entries = [[e.map_coefficients(convert, field) for e in row] for row in P.entries]
    return Presentation(P.source_twists, P.target_twists, entries, field)
