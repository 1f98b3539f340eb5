"""Shared fixtures and helpers for the test suite."""

import random

import pytest

from sheafstrata.forms import parse_form
from sheafstrata.presentation import Presentation
from sheafstrata.strata import StratumId, sample


def presentation_from_grid(source, target, grid):
    """Build a Presentation from a grid of polynomial strings.

    Zero entries may be written "0"; their degree is taken from the twist
    difference, clamped at zero.
    """
    entries = []
    for i, row in enumerate(grid):
        out = []
        for j, text in enumerate(row):
            degree = max(target[i] - source[j], 0)
            out.append(parse_form(text, degree=degree))
        entries.append(out)
    return Presentation(tuple(source), tuple(target), entries)


@pytest.fixture(scope="session")
def strata_samples():
    """Three seeded samples per stratum, shared across the whole run."""
    rng = random.Random(90125)
    return {sid: [sample(sid, rng) for _ in range(3)] for sid in StratumId}
