"""scikit-learn adapters for the classifier and the cohomology features.

The estimators are stateless wrappers: fit validates input and records
metadata, predict/transform run the exact pipeline.  They exist so the
classifier can slot into sklearn tooling (pipelines, cross-checks over
labeled corpora); the exact computations live in the core modules.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .cohomology import cohomology_table, euler_characteristic, h0, h1
from .presentation import Presentation
from .strata import StratumId, classify


def check_presentations(X):
    """Validate an iterable of Presentation values, returning a list."""
    items = list(X)
    if not items:
        raise ValueError("empty input; need at least one presentation")
    for k, P in enumerate(items):
        if not isinstance(P, Presentation):
            raise TypeError("element %d is %r, not a Presentation" % (k, type(P)))
    return items


class StratumClassifier(BaseEstimator):
    """Labels each presentation with its stratum name.

    There is nothing to learn: predict runs the exact cohomology
    pipeline.  fit validates the input and exposes classes_ so the
    estimator composes with sklearn model-selection utilities.
    """

    def fit(self, X, y=None):
        check_presentations(X)
        self.classes_ = np.array([s.value for s in StratumId], dtype=object)
        return self

    def predict(self, X):
        items = check_presentations(X)
        return np.array([classify(P).value for P in items], dtype=object)

    def fit_predict(self, X, y=None):
        return self.fit(X).predict(X)


class CohomologyFeatures(TransformerMixin, BaseEstimator):
    """Maps presentations to integer feature rows of cohomology values.

    The first three columns are the classifying triple; each extra twist
    n in `twists` appends h0(F(n)), h1(F(n)) and the Euler characteristic.
    """

    def __init__(self, twists=()):
        self.twists = tuple(twists)

    def fit(self, X, y=None):
        check_presentations(X)
        self.n_features_out_ = 3 + 3 * len(self.twists)
        return self

    def transform(self, X):
        items = check_presentations(X)
        rows = []
        for P in items:
            row = list(cohomology_table(P).as_tuple())
            for n in self.twists:
                row.extend((h0(P, n), h1(P, n), euler_characteristic(P, n)))
            rows.append(row)
        return np.array(rows, dtype=np.int64)

    def get_feature_names_out(self, input_features=None):
        names = ["h0_twist_minus_1", "h1_twist_0", "h0_omega_twist_1"]
        for n in self.twists:
            names.extend(("h0_twist_%d" % n, "h1_twist_%d" % n, "chi_twist_%d" % n))
        return np.array(names, dtype=object)
