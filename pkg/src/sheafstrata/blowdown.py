"""Blow-down maps collapsing a bordered resolution to a smaller one.

Two variants: an X1-shaped presentation with corner scalar c maps to a
3x3 quadric matrix (X0 shape), and an X5-shaped presentation maps to a
2x2 matrix with the X4 grading.  Away from c = 0 the image presents the
same sheaf class; at c = 0 the image is a rank-one product matrix.

Each map multiplies determinants by a fixed monomial in c.  The sign
and exponent below were established once by an evaluation oracle over
random inputs and are frozen here; the tests re-derive them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cohomology import cohomology_table
from .errors import ShapeError, TwistMismatchError
from .presentation import Presentation

X1_SHAPE = ((-2, -2, -2, -1), (-1, 0, 0, 0))
X5_SHAPE = ((-3, -2, -1), (-1, 0, 1))

DET_SIGN_10 = -1
DET_POWER_10 = 2
DET_SIGN_7 = 1
DET_POWER_7 = 1


def _require_shape(P, shape, variant):
    if (P.source_twists, P.target_twists) != shape:
        raise TwistMismatchError(
            "variant %s needs twists %r -> %r, got %r -> %r"
            % (variant, list(shape[0]), list(shape[1]),
               list(P.source_twists), list(P.target_twists)))


def chart_parameter(P):
    """The corner scalar c of either blow-down input shape."""
    if (P.source_twists, P.target_twists) == X1_SHAPE:
        return P.entry(0, 3)
    if (P.source_twists, P.target_twists) == X5_SHAPE:
        return P.entry(0, 2)
    raise TwistMismatchError("no blow-down variant matches the twists")


def delta10(P):
    """c*phi21 - phi22*phi11 for an X1-shaped input; a 3x3 quadric matrix."""
    _require_shape(P, X1_SHAPE, "10")
    c = P.entry(0, 3)
    entries = []
    for l in (1, 2, 3):
        row = []
        for k in (0, 1, 2):
            row.append(c * P.entry(l, k) - P.entry(l, 3) * P.entry(0, k))
        entries.append(row)
    return Presentation((-2, -2, -2), (0, 0, 0), entries, P.field)


def delta7(P):
    """The 2x2 collapse of an X5-shaped input, with the X4 grading."""
    _require_shape(P, X5_SHAPE, "7")
    q1, l1 = P.entry(0, 0), P.entry(0, 1)
    c = P.entry(0, 2)
    f1, q, l2 = P.entry(1, 0), P.entry(1, 1), P.entry(1, 2)
    p, f2, q2 = P.entry(2, 0), P.entry(2, 1), P.entry(2, 2)
    entries = [
        [c * f1 - l2 * q1, c * q - l2 * l1],
        [c * p - q2 * q1, c * f2 - q2 * l1],
    ]
    return Presentation((-3, -2), (0, 1), entries, P.field)


def blow_down(P):
    """Dispatch to the variant matching P's twists."""
    if (P.source_twists, P.target_twists) == X1_SHAPE:
        return delta10(P)
    if (P.source_twists, P.target_twists) == X5_SHAPE:
        return delta7(P)
    raise TwistMismatchError("no blow-down variant matches the twists")


@dataclass
class FiberReport:
    variant: str
    input_table: tuple
    image_table: tuple

    @property
    def match(self):
        return self.input_table == self.image_table


def fiber_consistency(P):
    """Compare the cohomology tables of P and its blow-down image.

    Away from c = 0 both presentations describe the same sheaf class, so
    the tables must agree.  Raises ShapeError when c = 0 (the image then
    degenerates to a rank-one matrix and presents nothing).
    """
    if (P.source_twists, P.target_twists) == X1_SHAPE:
        variant, image = "10", delta10(P)
    elif (P.source_twists, P.target_twists) == X5_SHAPE:
        variant, image = "7", delta7(P)
    else:
        raise TwistMismatchError("no blow-down variant matches the twists")
    if chart_parameter(P).is_zero:
        raise ShapeError("the chart parameter c vanishes; no comparison sheaf")
    input_table = cohomology_table(P).as_tuple()
    image_table = cohomology_table(image).as_tuple()
    return FiberReport(variant, input_table, image_table)
