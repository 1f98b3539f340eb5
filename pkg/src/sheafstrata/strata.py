"""The nine strata: table data, classification, verification, sampling.

Semistable one-dimensional plane sheaves with Hilbert polynomial 6m+3 fall
into nine locally closed strata, pinned down by the cohomology triple
(h0(F(-1)), h1(F), h0(F ⊗ Omega^1(1))).  Each stratum has a canonical
two-term resolution shape; verify_w checks the matrix conditions that
characterize membership for a presentation in that shape.

The triple is the classification authority.  The W-condition checks are
consistency validators: exact where linear algebra decides them, and
explicitly probabilistic where only a randomized instability search is
available.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from enum import Enum

from . import linalg
from .cohomology import cohomology_table, hilbert_polynomial
from .errors import (NoStratumMatchError, NotInjectiveError, RetryBudgetError,
                     ShapeError, TwistMismatchError)
from .fields import QQ
from .forms import Form, basis_size, monomial_basis, mult_matrix, random_form, span_dimension, divide_exact
from .kronecker import KroneckerModule, instability_witness_search, is_semistable_minors, dim_N
from .presentation import Presentation, determinant, dualize, require_valid, sigma_membership


class StratumId(str, Enum):
    X0 = "X0"
    X1 = "X1"
    X2 = "X2"
    X3 = "X3"
    X3D = "X3D"
    X4 = "X4"
    X5 = "X5"
    X6 = "X6"
    X7 = "X7"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class StratumInfo:
    source: tuple
    target: tuple
    triple: tuple
    codim: int


TABLE = {
    StratumId.X0: StratumInfo((-2, -2, -2), (0, 0, 0), (0, 0, 0), 0),
    StratumId.X1: StratumInfo((-2, -2, -2, -1), (-1, 0, 0, 0), (0, 0, 1), 1),
    StratumId.X2: StratumInfo((-2, -2, -2, -1, -1), (-1, -1, 0, 0, 0), (0, 0, 2), 4),
    StratumId.X3: StratumInfo((-3, -1, -1, -1), (0, 0, 0, 0), (0, 1, 3), 4),
    StratumId.X3D: StratumInfo((-2, -2, -2, -2), (-1, -1, -1, 1), (1, 0, 3), 4),
    StratumId.X4: StratumInfo((-3, -2), (0, 1), (1, 1, 3), 5),
    StratumId.X5: StratumInfo((-3, -2, -1), (-1, 0, 1), (1, 1, 4), 6),
    StratumId.X6: StratumInfo((-3, -3, 0), (-2, 1, 1), (2, 2, 6), 8),
    StratumId.X7: StratumInfo((-4,), (2,), (3, 3, 8), 10),
}

TRIPLE_TO_STRATUM = {info.triple: sid for sid, info in TABLE.items()}

PASS = "pass"
FAIL = "fail"
PROBABLY = "probabilistic-pass"


@dataclass
class CheckResult:
    name: str
    verdict: str
    detail: str = ""


@dataclass
class StratumReport:
    stratum: StratumId
    triple: tuple
    hilbert: tuple
    checks: list
    flags: list = dataclass_field(default_factory=list)

    def passed(self):
        return all(c.verdict != FAIL for c in self.checks)

    def certified(self):
        return all(c.verdict == PASS for c in self.checks)


def classify(P):
    """StratumId of the cokernel sheaf, by its cohomology triple.

    The caller is responsible for semistability (builders and samplers
    provide it); classify only sees the triple.  Raises
    NoStratumMatchError when the triple is not one of the nine.
    """
    table = cohomology_table(P)
    triple = table.as_tuple()
    sid = TRIPLE_TO_STRATUM.get(triple)
    if sid is None:
        raise NoStratumMatchError("cohomology triple %r matches no stratum" % (triple,))
    return sid


def classify_report(P, rng=None, trials=600):
    """classify plus the W-condition consistency checks and warning flags."""
    table = cohomology_table(P)
    triple = table.as_tuple()
    sid = TRIPLE_TO_STRATUM.get(triple)
    if sid is None:
        raise NoStratumMatchError("cohomology triple %r matches no stratum" % (triple,))
    info = TABLE[sid]
    flags = []
    if (P.source_twists, P.target_twists) == (info.source, info.target):
        checks = verify_w(P, sid, rng=rng, trials=trials)
        if not all(c.verdict != FAIL for c in checks):
            flags.append("w-conditions-failed")
        if sid in (StratumId.X3, StratumId.X3D) and _has_linear_syzygy(P, sid):
            flags.append("linear-syzygy-pattern")
    else:
        checks = []
        flags.append("noncanonical-shape")
    return StratumReport(sid, triple, hilbert_polynomial(P), checks, flags)


def _group_indices(twists):
    groups = {}
    for i, t in enumerate(twists):
        groups.setdefault(t, []).append(i)
    return [groups[t] for t in sorted(groups)]


def _injective_check(P):
    if determinant(P).is_zero:
        return CheckResult("injective", FAIL, "determinant is zero")
    return CheckResult("injective", PASS)


def verify_w(P, stratum, rng=None, trials=1200):
    """Check the membership conditions for the stratum's canonical shape.

    Raises TwistMismatchError when P does not have that shape.  Kronecker
    semistability conditions without a minors criterion get a randomized
    verdict: fail is certified, a pass is only probabilistic.
    """
    info = TABLE[stratum]
    if (P.source_twists, P.target_twists) != (info.source, info.target):
        raise TwistMismatchError(
            "presentation %r -> %r does not have the %s resolution shape"
            % (list(P.source_twists), list(P.target_twists), stratum))
    require_valid(P)
    if rng is None:
        rng = random.Random(0)
    checks = [_injective_check(P)]
    if stratum in (StratumId.X0, StratumId.X7):
        pass
    elif stratum == StratumId.X1:
        checks.extend(_verify_x1(P, rng))
    elif stratum == StratumId.X2:
        checks.extend(_verify_x2(P))
    elif stratum in (StratumId.X3, StratumId.X3D):
        checks.extend(_verify_kronecker_stratum(P, stratum, rng, trials))
    elif stratum == StratumId.X4:
        checks.extend(_verify_x4(P))
    elif stratum == StratumId.X5:
        checks.extend(_verify_x5(P))
    elif stratum == StratumId.X6:
        checks.extend(_verify_x6(P))
    return checks


def _bool_check(name, ok, detail_fail=""):
    return CheckResult(name, PASS if ok else FAIL, "" if ok else detail_fail)


def _verify_x1(P, rng):
    phi11 = P.submatrix([0], [0, 1, 2])
    phi21 = P.submatrix([1, 2, 3], [0, 1, 2])
    phi22 = P.submatrix([1, 2, 3], [3])
    checks = [
        _bool_check("phi12_zero", P.entry(0, 3).is_zero,
                    "upper right constant must vanish"),
        _bool_check("phi11_span_at_least_2",
                    span_dimension(phi11.entries[0]) >= 2,
                    "row of linear forms spans a line"),
        _bool_check("phi22_span_at_least_2",
                    span_dimension([r[0] for r in phi22.entries]) >= 2,
                    "column of linear forms spans a line"),
        _bool_check("sigma_exclusion",
                    sigma_membership(phi21, phi11, phi22) is None,
                    "phi21 = v*phi11 + phi22*u is solvable"),
    ]
    checks.append(_x1_corner_exclusion(P, phi11, phi21, phi22, rng))
    return checks


def _kernel_of_span(forms_list, field):
    """Basis of {c : sum c_k f_k = 0} for forms of one degree."""
    cols = [f.coeff_vector() for f in forms_list]
    matrix = linalg.transpose(cols)
    return linalg.nullspace(matrix, len(forms_list), field)


def _x1_corner_exclusion(P, phi11, phi21, phi22, rng):
    """Exclusion of the 2x2 corner degeneration.

    The shape with zeros at entries (1,3), (1,4), (2,3), (2,4) is reachable
    exactly when some c with phi11.c = 0 and r with r.phi22 = 0 satisfy
    r.phi21.c = 0.  With one-dimensional kernels this is a single quadric
    test; larger kernels are probed with random c (each probe is exact in r).
    """
    field = P.field
    ker_c = _kernel_of_span(list(phi11.entries[0]), field)
    ker_r = _kernel_of_span([row[0] for row in phi22.entries], field)
    name = "corner_block_exclusion"
    if not ker_c or not ker_r:
        return CheckResult(name, PASS)

    def pair_form(r_vec, c_vec):
        acc = Form.zero(2, field)
        for l in range(3):
            if not r_vec[l]:
                continue
            for k in range(3):
                if not c_vec[k]:
                    continue
                acc = acc + (r_vec[l] * c_vec[k]) * phi21.entries[l][k]
        return acc

    if len(ker_c) == 1 and len(ker_r) == 1:
        ok = not pair_form(ker_r[0], ker_c[0]).is_zero
        return _bool_check(name, ok, "corner 2x2 block shape is reachable")

    # degenerate spans: probe candidate c, solve exactly for r each time
    for _ in range(200):
        c_vec = [field.zero] * 3
        for base in ker_c:
            t = field.from_int(rng.randint(-10, 10))
            c_vec = [x + t * y for x, y in zip(c_vec, base)]
        if not any(c_vec):
            continue
        rows = [pair_form(r_base, c_vec).coeff_vector() for r_base in ker_r]
        if linalg.rank(rows) < len(ker_r):
            return CheckResult(name, FAIL, "corner 2x2 block shape is reachable")
    return CheckResult(name, PROBABLY, "no degeneration found by probing")


def _verify_x2(P):
    phi12_zero = all(P.entry(j, i).is_zero for j in (0, 1) for i in (3, 4))
    phi11 = KroneckerModule.from_forms(
        [[P.entry(j, i) for i in (0, 1, 2)] for j in (0, 1)])
    phi22 = KroneckerModule.from_forms(
        [[P.entry(j, i) for i in (3, 4)] for j in (2, 3, 4)])
    return [
        _bool_check("phi12_zero", phi12_zero, "upper right constants must vanish"),
        _bool_check("phi11_minors_independent", is_semistable_minors(phi11),
                    "2x3 linear block has dependent maximal minors"),
        _bool_check("phi22_minors_independent", is_semistable_minors(phi22),
                    "3x2 linear block has dependent maximal minors"),
    ]


def _kronecker_block(P, stratum):
    if stratum == StratumId.X3:
        rows = [[P.entry(j, i) for i in (1, 2, 3)] for j in range(4)]
    else:
        rows = [[P.entry(j, i) for i in range(4)] for j in (0, 1, 2)]
    return KroneckerModule.from_forms(rows)


def _verify_kronecker_stratum(P, stratum, rng, trials):
    module = _kronecker_block(P, stratum)
    witness = instability_witness_search(module, trials=trials, rng=rng)
    if witness is not None:
        return [CheckResult("kronecker_block_semistable", FAIL,
                            "verified instability witness of shape %r"
                            % (witness.shape,))]
    return [CheckResult("kronecker_block_semistable", PROBABLY,
                        "no witness in %d trials" % trials)]


def _has_linear_syzygy(P, stratum):
    """Linear syzygy of the Kronecker block, the marker of the properly
    semistable boundary pattern inside the X3 and X3D shapes."""
    module = _kronecker_block(P, stratum)
    rows_of_forms = module.forms(1)
    field = P.field
    if stratum == StratumId.X3:
        # row syzygy: sum_j K_j * B[j][i] = 0 for all columns i
        n_unknown_blocks = module.q
        equations = []
        for i in range(module.p):
            blocks = []
            for j in range(module.q):
                blocks.append(mult_matrix(rows_of_forms[j][i], 1))
            rows = [sum((blocks[j][r] for j in range(module.q)), [])
                    for r in range(len(blocks[0]))]
            equations.extend(rows)
    else:
        # column syzygy: sum_i B[l][i] * K_i = 0 for all rows l
        n_unknown_blocks = module.p
        equations = []
        for l in range(module.q):
            blocks = []
            for i in range(module.p):
                blocks.append(mult_matrix(rows_of_forms[l][i], 1))
            rows = [sum((blocks[i][r] for i in range(module.p)), [])
                    for r in range(len(blocks[0]))]
            equations.extend(rows)
    ncols = 3 * n_unknown_blocks
    return len(linalg.nullspace(equations, ncols, field)) > 0


def _verify_x4(P):
    f11 = P.entry(0, 0)
    f12 = P.entry(0, 1)
    f22 = P.entry(1, 1)
    checks = [_bool_check("phi12_nonzero", not f12.is_zero,
                          "upper right quadric must not vanish")]
    if f12.is_zero:
        return checks
    checks.append(_bool_check("phi12_not_divides_phi11",
                              divide_exact(f11, f12) is None,
                              "quadric divides the upper cubic"))
    checks.append(_bool_check("phi12_not_divides_phi22",
                              divide_exact(f22, f12) is None,
                              "quadric divides the lower cubic"))
    return checks


def _verify_x5(P):
    l1 = P.entry(0, 1)
    l2 = P.entry(1, 2)
    checks = [
        _bool_check("phi13_zero", P.entry(0, 2).is_zero,
                    "upper right constant must vanish"),
        _bool_check("l1_nonzero", not l1.is_zero, "entry (1,2) vanishes"),
        _bool_check("l2_nonzero", not l2.is_zero, "entry (2,3) vanishes"),
    ]
    if not l1.is_zero:
        checks.append(_bool_check("l1_not_divides_q1",
                                  divide_exact(P.entry(0, 0), l1) is None,
                                  "l1 divides q1"))
    if not l2.is_zero:
        checks.append(_bool_check("l2_not_divides_q2",
                                  divide_exact(P.entry(2, 2), l2) is None,
                                  "l2 divides q2"))
    return checks


def _verify_x6(P):
    phi11 = P.submatrix([0], [0, 1])
    phi21 = P.submatrix([1, 2], [0, 1])
    phi22 = P.submatrix([1, 2], [2])
    return [
        _bool_check("phi11_independent",
                    span_dimension(phi11.entries[0]) == 2,
                    "pencil entries are proportional"),
        _bool_check("phi22_independent",
                    span_dimension([r[0] for r in phi22.entries]) == 2,
                    "pencil entries are proportional"),
        _bool_check("sigma_exclusion",
                    sigma_membership(phi21, phi11, phi22) is None,
                    "phi21 = v*phi11 + phi22*u is solvable"),
    ]


SAMPLE_RETRIES = 64
SAMPLE_TRIALS = 120


def sample(stratum, rng=None, height=5, retries=SAMPLE_RETRIES):
    """Random presentation in the stratum's canonical shape passing verify_w.

    The rng fully determines the output.  Raises RetryBudgetError after
    the retry budget is exhausted (the conditions are generic, so this
    only happens for adversarial budgets).
    """
    if rng is None:
        rng = random.Random(0)
    stratum = StratumId(stratum)
    for _ in range(retries):
        P = _build_candidate(stratum, rng, height)
        if determinant(P).is_zero:
            continue
        checks = verify_w(P, stratum, rng=rng, trials=SAMPLE_TRIALS)
        if all(c.verdict != FAIL for c in checks):
            return P
    raise RetryBudgetError("no %s sample within %d retries" % (stratum, retries))


def _rand_forms(rng, height, degree, rows, cols, field):
    return [[random_form(degree, rng, height, field) for _ in range(cols)]
            for _ in range(rows)]


def _build_candidate(stratum, rng, height, field=QQ):
    info = TABLE[stratum]
    z = Form.zero
    if stratum == StratumId.X0:
        entries = _rand_forms(rng, height, 2, 3, 3, field)
    elif stratum == StratumId.X1:
        row0 = ([random_form(1, rng, height, field) for _ in range(3)]
                + [z(0, field)])
        rows = [[random_form(2, rng, height, field) for _ in range(3)]
                + [random_form(1, rng, height, field)] for _ in range(3)]
        entries = [row0] + rows
    elif stratum == StratumId.X2:
        top = [[random_form(1, rng, height, field) for _ in range(3)]
               + [z(0, field), z(0, field)] for _ in range(2)]
        bottom = [[random_form(2, rng, height, field) for _ in range(3)]
                  + [random_form(1, rng, height, field) for _ in range(2)]
                  for _ in range(3)]
        entries = top + bottom
    elif stratum == StratumId.X3:
        entries = [[random_form(3, rng, height, field)]
                   + [random_form(1, rng, height, field) for _ in range(3)]
                   for _ in range(4)]
    elif stratum == StratumId.X3D:
        return dualize(_sample_inner(StratumId.X3, rng, height), 1)
    elif stratum == StratumId.X4:
        entries = [[random_form(3, rng, height, field), random_form(2, rng, height, field)],
                   [random_form(4, rng, height, field), random_form(3, rng, height, field)]]
    elif stratum == StratumId.X5:
        entries = [
            [random_form(2, rng, height, field), random_form(1, rng, height, field), z(0, field)],
            [random_form(3, rng, height, field), random_form(2, rng, height, field),
             random_form(1, rng, height, field)],
            [random_form(4, rng, height, field), random_form(3, rng, height, field),
             random_form(2, rng, height, field)],
        ]
    elif stratum == StratumId.X6:
        p1 = _random_point(rng, height, field)
        p2 = _random_point(rng, height, field)
        pencil1 = _point_pencil(p1, field)
        pencil2 = _point_pencil(p2, field)
        entries = [
            [pencil1[0], pencil1[1], z(0, field)],
            [random_form(4, rng, height, field), random_form(4, rng, height, field), pencil2[0]],
            [random_form(4, rng, height, field), random_form(4, rng, height, field), pencil2[1]],
        ]
    elif stratum == StratumId.X7:
        f = random_form(6, rng, height, field)
        while f.is_zero:
            f = random_form(6, rng, height, field)
        entries = [[f]]
    else:
        raise ShapeError("unknown stratum %r" % (stratum,))
    return Presentation(info.source, info.target, entries, field)


def _sample_inner(stratum, rng, height):
    for _ in range(SAMPLE_RETRIES):
        P = _build_candidate(stratum, rng, height)
        if not determinant(P).is_zero:
            return P
    raise RetryBudgetError("no injective %s candidate" % (stratum,))


def _random_point(rng, height, field):
    while True:
        pt = tuple(field.from_int(rng.randint(-height, height)) for _ in range(3))
        if any(pt):
            return pt


def _point_pencil(point, field):
    """Two independent linear forms vanishing at the point."""
    basis = linalg.nullspace([list(point)], 3, field)
    return [Form(1, dict(zip(monomial_basis(1), vec)), field) for vec in basis]


# projectivized fibre dimensions of the bundle constructions over the
# parameter spaces of each stratum
_FIBRE_X1 = 36
_FIBRE_X2 = 21
_FIBRE_X3 = 21
_FIBRE_X4 = 21
_FIBRE_X5 = 23
_FIBRE_X6 = 25
_HILB2_DIM = 4
_P2_DIM = 2


@dataclass
class AuditRow:
    stratum: StratumId
    dim: int
    codim: int
    expected_codim: int

    @property
    def ok(self):
        return self.codim == self.expected_codim


def codim_audit():
    """Recompute each stratum's dimension and compare codimensions."""
    total = dim_N(6, 3, 3)
    dims = {
        StratumId.X0: dim_N(6, 3, 3),
        StratumId.X1: dim_N(3, 3, 1) + dim_N(3, 1, 3) + _FIBRE_X1,
        StratumId.X2: dim_N(3, 3, 2) + dim_N(3, 2, 3) + _FIBRE_X2,
        StratumId.X3: dim_N(3, 3, 4) + _FIBRE_X3,
        StratumId.X3D: dim_N(3, 4, 3) + _FIBRE_X3,
        StratumId.X4: (basis_size(2) - 1) + (basis_size(3) - basis_size(1) - 1) + _FIBRE_X4,
        StratumId.X5: 2 * _HILB2_DIM + _FIBRE_X5,
        StratumId.X6: 2 * _P2_DIM + _FIBRE_X6,
        StratumId.X7: basis_size(6) - 1,
    }
    rows = []
    for sid in StratumId:
        dim = dims[sid]
        rows.append(AuditRow(sid, dim, total - dim, TABLE[sid].codim))
    return rows
