"""Pairwise dependence filtering of attributes."""
import csv
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_matrix, attribute_names

DEFAULT_THRESHOLD = 0.7


@dataclass(frozen=True)
class CorrelationMatrix:
    names: tuple
    values: np.ndarray
    constant: tuple

    def __getitem__(self, pair):
        a, b = pair
        return self.values[self.names.index(a), self.names.index(b)]


@dataclass(frozen=True)
class CatalogEntry:
    attribute: str
    kept: bool
    reason: str
    dependent_with: str = None


@dataclass(frozen=True)
class AttributeCatalog:
    entries: tuple

    @property
    def kept(self):
        return [e.attribute for e in self.entries if e.kept]

    @property
    def pruned(self):
        return [e.attribute for e in self.entries if not e.kept]

    def __getitem__(self, name):
        for e in self.entries:
            if e.attribute == name:
                return e
        raise KeyError(name)

    def to_csv(self, path):
        with open(path, "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["attribute", "kept", "reason", "dependent_with"])
            for e in self.entries:
                writer.writerow([e.attribute, "true" if e.kept else "false", e.reason, e.dependent_with or ""])

    @classmethod
    def from_csv(cls, path):
        with open(path, encoding="utf-8", newline="") as fh:
            rows = list(csv.DictReader(fh))
        return cls(tuple(
            CatalogEntry(r["attribute"], r["kept"] == "true", r["reason"], r["dependent_with"] or None)
            for r in rows
        ))


def correlation_matrix(X, names=None):
    """Pearson correlations between the columns of ``X`` (documents x attributes).

    Constant columns correlate 0 with everything else and are flagged.
    """
    X = as_matrix(X)
    if X.shape[0] < 3:
        raise ValueError("insufficient sample: correlation needs at least 3 documents")
    names = attribute_names(names, X.shape[1])
    centered = X - X.mean(axis=0)
    norms = np.sqrt((centered ** 2).sum(axis=0))
    constant = np.ptp(X, axis=0) == 0
    safe = np.where(constant, 1.0, norms)
    z = centered / safe
    values = z.T @ z
    values[constant, :] = 0.0
    values[:, constant] = 0.0
    values = np.clip((values + values.T) / 2, -1.0, 1.0)
    np.fill_diagonal(values, 1.0)
    return CorrelationMatrix(names, values, tuple(bool(c) for c in constant))


def _visit_order(names, priority):
    if priority is None:
        return list(names)
    unknown = [p for p in priority if p not in names]
    if unknown:
        raise ValueError(f"priority names unknown attributes: {unknown}")
    seen = list(dict.fromkeys(priority))
    return seen + [n for n in names if n not in seen]


def prune_dependent(corr, threshold=DEFAULT_THRESHOLD, priority=None):
    """Build the kept/pruned catalog from a correlation matrix.

    Attributes are visited in ``priority`` order (default: matrix order). An
    attribute is pruned when its absolute correlation with any attribute
    visited before it reaches ``threshold``; its partner is the strongest such
    predecessor. Raising the threshold can therefore only grow the kept set.
    """
    if not 0 < threshold <= 1:
        raise ValueError("threshold must be in (0, 1]")
    index = {n: i for i, n in enumerate(corr.names)}
    absval = np.abs(corr.values)
    verdict = {}
    visited = []
    for name in _visit_order(corr.names, priority):
        i = index[name]
        if corr.constant[i]:
            verdict[name] = CatalogEntry(name, False, "zero variance")
            continue
        partner, best = None, -1.0
        for prev in visited:
            r = absval[i, index[prev]]
            if r >= threshold and r > best:
                partner, best = prev, r
        if partner is None:
            verdict[name] = CatalogEntry(name, True, "independent")
        else:
            verdict[name] = CatalogEntry(name, False, f"dependent |r|={best:.3f}", partner)
        visited.append(name)
    return AttributeCatalog(tuple(verdict[n] for n in corr.names))


class DependencyFilter(TransformerMixin, BaseEstimator):
    """Drop attributes that correlate with a higher-priority attribute.

    Parameters
    ----------
    threshold : float
        Absolute Pearson correlation at which two attributes count as dependent.
    priority : sequence of str, optional
        Visit order for attribute names; unlisted attributes follow in input order.
    """

    def __init__(self, threshold=DEFAULT_THRESHOLD, priority=None):
        self.threshold = threshold
        self.priority = priority

    def fit(self, X, y=None, feature_names=None):
        if feature_names is None and hasattr(X, "columns"):
            feature_names = [str(c) for c in X.columns]
        X = as_matrix(X)
        self.feature_names_in_ = np.array(attribute_names(feature_names, X.shape[1]), dtype=object)
        self.n_features_in_ = X.shape[1]
        self.correlation_ = correlation_matrix(X, tuple(self.feature_names_in_))
        self.catalog_ = prune_dependent(self.correlation_, self.threshold, self.priority)
        kept = set(self.catalog_.kept)
        self.support_ = np.array([n in kept for n in self.feature_names_in_])
        return self

    def transform(self, X):
        check_is_fitted(self, "support_")
        X = as_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} attributes, got {X.shape[1]}")
        return X[:, self.support_]

    def get_support(self):
        check_is_fitted(self, "support_")
        return self.support_.copy()

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "support_")
        return self.feature_names_in_[self.support_]
