"""Exact linear algebra over the coefficient fields.

Matrices are plain lists of row lists.  Nothing here ever touches floating
point: ranks of integer matrices go through fraction-free Bareiss
elimination, everything else through ordinary division-based elimination.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _as_int_rows(rows):
    # returns integer copies of the rows, scaling Fraction rows by the lcm
    # of their denominators (row scaling changes neither rank nor kernel),
    # or None if some entry is not rational
    out = []
    for row in rows:
        scale = 1
        for x in row:
            if isinstance(x, Fraction):
                scale = lcm(scale, x.denominator)
            elif not isinstance(x, int):
                return None
        out.append([int(x * scale) for x in row])
    return out


def _rank_bareiss(m):
    # fraction-free elimination; every row below the pivot is updated at
    # every step (Sylvester's identity needs the uniform update to keep
    # the divisions exact)
    nrows = len(m)
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        lead = pr[c]
        for i in range(r + 1, nrows):
            ri = m[i]
            t = ri[c]
            if t:
                for j in range(c + 1, ncols):
                    ri[j] = (ri[j] * lead - t * pr[j]) // prev
            else:
                for j in range(c + 1, ncols):
                    ri[j] = (ri[j] * lead) // prev
            ri[c] = 0
        prev = lead
        r += 1
        if r == nrows:
            break
    return r


def _rank_division(m):
    nrows = len(m)
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        lead = pr[c]
        for i in range(r + 1, nrows):
            t = m[i][c]
            if t:
                ri = m[i]
                f = t / lead
                for j in range(c, ncols):
                    ri[j] = ri[j] - f * pr[j]
        r += 1
        if r == nrows:
            break
    return r


def rank(rows):
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    ints = _as_int_rows(rows)
    if ints is not None:
        return _rank_bareiss(ints)
    return _rank_division(rows)


def rref(rows):
    """Reduced row echelon form.  Returns (new rows, pivot column list)."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return [], []
    nrows = len(m)
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        pr = m[r]
        for i in range(nrows):
            if i != r and m[i][c]:
                t = m[i][c]
                ri = m[i]
                for j in range(c, ncols):
                    ri[j] = ri[j] - t * pr[j]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(rows, ncols, field):
    """Basis of {x : rows @ x = 0} inside field^ncols."""
    if ncols == 0:
        return []
    if not rows:
        basis = []
        for c in range(ncols):
            v = [field.zero] * ncols
            v[c] = field.one
            basis.append(v)
        return basis
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for c in free:
        v = [field.zero] * ncols
        v[c] = field.one
        for row, p in zip(red, pivots):
            v[p] = -row[c]
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution of rows @ x = rhs, or None if inconsistent.

    Free variables are set to zero, so the answer is deterministic.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    if nrows == 0:
        return [field.zero] * ncols
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    for row, p in zip(red, pivots):
        if p == ncols:
            return None
    x = [field.zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def inverse(rows, field):
    """Inverse of a square scalar matrix, or None if singular."""
    n = len(rows)
    if n == 0:
        return []
    aug = [list(r) + identity_row(n, i, field) for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in red]


def identity_row(n, i, field):
    row = [field.zero] * n
    row[i] = field.one
    return row


def identity_matrix(n, field):
    return [identity_row(n, i, field) for i in range(n)]


def matmul(a, b, field):
    if not a:
        return []
    inner = len(b)
    ncols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(ncols):
            s = field.zero
            for k in range(inner):
                s = s + row[k] * b[k][j]
            new.append(s)
        out.append(new)
    return out


def matvec(a, v, field):
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            s = s + x * y
        out.append(s)
    return out


def transpose(rows):
    if not rows:
        return []
    return [list(col) for col in zip(*rows)]


def scalar_determinant(rows, field):
    """Determinant of a square scalar matrix by elimination."""
    n = len(rows)
    if n == 0:
        return field.one
    m = [list(r) for r in rows]
    det = field.one
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            return field.zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        lead = m[c][c]
        det = det * lead
        for i in range(c + 1, n):
            t = m[i][c]
            if t:
                f = t / lead
                for j in range(c, n):
                    m[i][j] = m[i][j] - f * m[c][j]
    return det


def row_space(rows):
    """rref basis of the span of the given vectors."""
    red, _ = rref(rows)
    return red


def in_span(basis_rref, pivots, vec):
    """Whether vec lies in the row space given by an rref basis."""
    v = list(vec)
    for row, p in zip(basis_rref, pivots):
        if v[p]:
            t = v[p]
            for j in range(len(v)):
                v[j] = v[j] - t * row[j]
    return all(not x for x in v)
