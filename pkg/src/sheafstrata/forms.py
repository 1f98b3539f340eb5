"""Homogeneous forms in three variables X, Y, Z over an exact field.

A form is a dict from exponent triples to nonzero coefficients together
with an explicit degree, so the zero form still knows its degree and
graded-matrix validation stays total.  Monomials of a fixed degree are
ordered graded-lexicographically with X > Y > Z.
"""

from __future__ import annotations

from functools import lru_cache

from . import linalg
from .errors import DegreeMismatchError, ParseError
from .fields import QQ

VARIABLES = ("X", "Y", "Z")


@lru_cache(maxsize=None)
def monomial_basis(degree):
    """Exponent triples of the given degree, graded-lex descending, X > Y > Z.

    Example: degree 2 gives X^2, XY, XZ, Y^2, YZ, Z^2.
    """
    if degree < 0:
        return ()
    basis = []
    for ex in range(degree, -1, -1):
        for ey in range(degree - ex, -1, -1):
            basis.append((ex, ey, degree - ex - ey))
    return tuple(basis)


@lru_cache(maxsize=None)
def _basis_index(degree):
    return {m: i for i, m in enumerate(monomial_basis(degree))}


def basis_size(degree):
    if degree < 0:
        return 0
    return (degree + 1) * (degree + 2) // 2


class Form:
    """A homogeneous form of known degree with exact coefficients."""

    __slots__ = ("degree", "coeffs", "field")

    def __init__(self, degree, coeffs, field=QQ):
        if degree < 0:
            raise DegreeMismatchError("form degree must be non-negative")
        clean = {}
        for mono, c in coeffs.items():
            if sum(mono) != degree:
                raise DegreeMismatchError(
                    "monomial %r does not have degree %d" % (mono, degree))
            if c:
                clean[mono] = c
        self.degree = degree
        self.coeffs = clean
        self.field = field

    @classmethod
    def zero(cls, degree, field=QQ):
        return cls(degree, {}, field)

    @classmethod
    def from_coeff_vector(cls, degree, vec, field=QQ):
        basis = monomial_basis(degree)
        if len(vec) != len(basis):
            raise DegreeMismatchError("coefficient vector has wrong length")
        return cls(degree, dict(zip(basis, vec)), field)

    @property
    def is_zero(self):
        return not self.coeffs

    def coeff_vector(self):
        zero = self.field.zero
        return [self.coeffs.get(m, zero) for m in monomial_basis(self.degree)]

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.degree != other.degree:
            # a zero form may be retagged; nonzero degrees must agree
            if self.is_zero:
                return other
            if other.is_zero:
                return self
            raise DegreeMismatchError(
                "cannot add forms of degrees %d and %d" % (self.degree, other.degree))
        coeffs = dict(self.coeffs)
        for mono, c in other.coeffs.items():
            coeffs[mono] = coeffs.get(mono, self.field.zero) + c
        return Form(self.degree, coeffs, self.field)

    def __neg__(self):
        return Form(self.degree, {m: -c for m, c in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Form):
            coeffs = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    mono = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                    prev = coeffs.get(mono)
                    coeffs[mono] = c1 * c2 if prev is None else prev + c1 * c2
            return Form(self.degree + other.degree, coeffs, self.field)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar):
        if not scalar:
            return Form.zero(self.degree, self.field)
        return Form(self.degree, {m: scalar * c for m, c in self.coeffs.items()},
                    self.field)

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, frozenset(self.coeffs.items())))

    def evaluate(self, point):
        """Value at a projective point given as a scalar triple."""
        x, y, z = point
        total = self.field.zero
        for (ex, ey, ez), c in self.coeffs.items():
            v = c
            for base, e in ((x, ex), (y, ey), (z, ez)):
                for _ in range(e):
                    v = v * base
            total = total + v
        return total

    def map_coefficients(self, fn, field):
        return Form(self.degree, {m: fn(c) for m, c in self.coeffs.items()}, field)

    def __repr__(self):
        return "Form(%r)" % format_form(self)


def variable(name, field=QQ):
    i = VARIABLES.index(name)
    mono = tuple(1 if j == i else 0 for j in range(3))
    return Form(1, {mono: field.one}, field)


def variables(field=QQ):
    return tuple(variable(v, field) for v in VARIABLES)


def mult_matrix(g, d_from):
    """Matrix of multiplication by g from degree d_from to d_from + deg g.

    Rows run over monomial_basis(d_from + g.degree), columns over
    monomial_basis(d_from).
    """
    zero = g.field.zero
    d_to = d_from + g.degree
    nrows = basis_size(d_to)
    idx = _basis_index(d_to)
    cols = monomial_basis(d_from)
    rows = [[zero] * len(cols) for _ in range(nrows)]
    for ci, m in enumerate(cols):
        for mono, c in g.coeffs.items():
            target = (mono[0] + m[0], mono[1] + m[1], mono[2] + m[2])
            rows[idx[target]][ci] = c
    return rows


def span_dimension(forms_list):
    """Dimension of the linear span of forms of one common degree."""
    forms_list = [f for f in forms_list]
    if not forms_list:
        return 0
    degree = None
    for f in forms_list:
        if not f.is_zero:
            if degree is None:
                degree = f.degree
            elif f.degree != degree:
                raise DegreeMismatchError("span of mixed degrees")
    if degree is None:
        return 0
    rows = [f.coeff_vector() for f in forms_list if not f.is_zero]
    return linalg.rank(rows)


def divide_exact(f, g):
    """The form h with g*h == f, or None when g does not divide f exactly."""
    if g.is_zero:
        raise ZeroDivisionError("division by the zero form")
    if f.is_zero:
        if f.degree < g.degree:
            return None
        return Form.zero(f.degree - g.degree, f.field)
    if f.degree < g.degree:
        return None
    d_h = f.degree - g.degree
    matrix = mult_matrix(g, d_h)
    sol = linalg.solve(matrix, f.coeff_vector(), f.field)
    if sol is None:
        return None
    return Form.from_coeff_vector(d_h, sol, f.field)


def random_form(degree, rng, height=5, field=QQ):
    """Random form with integer coefficients drawn uniformly from [-height, height]."""
    coeffs = {}
    for mono in monomial_basis(degree):
        c = rng.randint(-height, height)
        if c:
            coeffs[mono] = field.from_int(c)
    return Form(degree, coeffs, field)


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == "*" and i + 1 < n and text[i + 1] == "*":
            tokens.append("^")
            i += 2
        elif ch in "+-*^()":
            tokens.append(ch)
            i += 1
        elif ch == "−":  # unicode minus
            tokens.append("-")
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and (text[j].isdigit() or text[j] == "/"):
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch in "XYZ":
            tokens.append(ch)
            i += 1
        else:
            raise ParseError("unexpected character %r in form" % ch)
    return tokens


def parse_form(text, field=QQ, degree=None):
    """Parse the textual grammar, e.g. ``3*X^2*Y - 1/2*Z^3``.

    Terms are joined by + or -; a term is an optional rational coefficient
    and '*'-separated variable powers.  When ``degree`` is given the parsed
    form must be homogeneous of that degree (the string "0" is accepted at
    any declared degree); otherwise the degree is inferred and parsing the
    zero form is an error.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty form")
    terms = []
    i = 0
    sign = 1
    while i < len(tokens):
        tok = tokens[i]
        if tok == "+":
            i += 1
            continue
        if tok == "-":
            sign = -sign
            i += 1
            continue
        coeff = field.one
        mono = [0, 0, 0]
        saw_factor = False
        expect_factor = True
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-":
                break
            if tok == "*":
                i += 1
                expect_factor = True
                continue
            if not expect_factor:
                raise ParseError("missing operator before %r" % tok)
            if tok in VARIABLES:
                power = 1
                if i + 1 < len(tokens) and tokens[i + 1] == "^":
                    if i + 2 >= len(tokens) or not tokens[i + 2].isdigit():
                        raise ParseError("bad exponent after %s" % tok)
                    power = int(tokens[i + 2])
                    i += 2
                mono[VARIABLES.index(tok)] += power
                i += 1
            else:
                coeff = coeff * field.parse(tok)
                i += 1
            saw_factor = True
            expect_factor = False
        if not saw_factor:
            raise ParseError("empty term in form")
        if sign < 0:
            coeff = -coeff
        terms.append((tuple(mono), coeff))
        sign = 1
    degrees = {sum(m) for m, c in terms if c}
    if len(degrees) > 1:
        raise ParseError("form is not homogeneous: degrees %s" % sorted(degrees))
    if not degrees:
        if degree is None:
            raise ParseError("cannot infer the degree of the zero form")
        return Form.zero(degree, field)
    d = degrees.pop()
    if degree is not None and d != degree:
        raise ParseError("expected degree %d, found %d" % (degree, d))
    coeffs = {}
    for mono, c in terms:
        coeffs[mono] = coeffs.get(mono, field.zero) + c
    return Form(d, coeffs, field)


def _format_coeff(c):
    return str(c)


def _format_monomial(mono):
    parts = []
    for name, e in zip(VARIABLES, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append("%s^%d" % (name, e))
    return "*".join(parts)


def format_form(f):
    """Inverse of parse_form up to whitespace; round trips exactly."""
    if f.is_zero:
        return "0"
    pieces = []
    for mono in monomial_basis(f.degree):
        c = f.coeffs.get(mono)
        if not c:
            continue
        mono_str = _format_monomial(mono)
        negative = _is_negative(c)
        mag = -c if negative else c
        if mono_str and mag == f.field.one:
            body = mono_str
        elif mono_str:
            body = "%s*%s" % (_format_coeff(mag), mono_str)
        else:
            body = _format_coeff(mag)
        if not pieces:
            pieces.append("-" + body if negative else body)
        else:
            pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)


def _is_negative(c):
    try:
        return c < 0
    except TypeError:
        return False
