"""Condorcet-style demographic clustering and cluster-vs-population profiles."""
from collections import Counter
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_matrix, attribute_names


def vote_matrix(Z, alpha):
    """Pairwise Condorcet votes summed over attributes.

    ``V[x, y]`` = (#attributes with |x_a - y_a| <= alpha) - (#attributes beyond alpha).
    """
    close = np.zeros((Z.shape[0], Z.shape[0]), dtype=np.int64)
    for a in range(Z.shape[1]):
        col = Z[:, a]
        close += np.abs(col[:, None] - col[None, :]) <= alpha
    return 2 * close - Z.shape[1]


def _scores(V, labels, x, n_clusters):
    """Score of record ``x`` against every cluster, excluding ``x`` itself."""
    row = V[x].copy()
    row[x] = 0
    others = labels.copy()
    others[x] = n_clusters  # bucket for x itself, dropped below
    return np.bincount(others, weights=row, minlength=n_clusters + 1)[:n_clusters]


def _compact(labels):
    """Relabel clusters 0..k-1 in order of their first member."""
    mapping = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels):
        if lab not in mapping:
            mapping[lab] = len(mapping)
        out[i] = mapping[lab]
    return out


def condorcet_assign(V, max_passes=10, rng=None):
    """Run the voting passes on a precomputed vote matrix.

    Returns ``(labels, passes, converged)``. Each visited record joins the
    cluster with the highest positive score (its current cluster wins ties)
    or founds a new one.
    """
    n = V.shape[0]
    rng = rng if rng is not None else np.random.default_rng(0)
    labels = np.full(n, -1, dtype=np.int64)
    n_clusters = 0
    passes = 0
    converged = False
    for passes in range(1, max_passes + 1):
        changed = False
        for x in rng.permutation(n):
            current = labels[x]
            # clusters holding no record but x score 0 and can never be joined
            scores = _scores(V, np.where(labels < 0, n_clusters, labels), x, n_clusters)
            best = -1
            if scores.size:
                top = scores.max()
                if top > 0:
                    best = current if current >= 0 and scores[current] == top else int(np.flatnonzero(scores == top)[0])
            if best < 0:
                if current >= 0 and np.count_nonzero(labels == current) == 1:
                    continue  # already a singleton
                best = n_clusters
                n_clusters += 1
            if best != current:
                labels[x] = best
                changed = True
        labels = _compact(labels)
        n_clusters = int(labels.max()) + 1
        if not changed:
            converged = True
            break
    return labels, passes, converged


def record_scores(V, labels):
    """Matrix of every record's score against every cluster (self excluded)."""
    k = int(labels.max()) + 1
    onehot = np.zeros((len(labels), k))
    onehot[np.arange(len(labels)), labels] = 1
    S = V @ onehot
    S[np.arange(len(labels)), labels] -= np.diag(V)
    return S


@dataclass(frozen=True)
class Cluster:
    id: int
    members: tuple
    mean: np.ndarray
    spread: np.ndarray


def demographic_cluster(X, alpha=0.5, max_passes=10, seed=42, ids=None):
    """Cluster the rows of ``X`` and return a list of :class:`Cluster`.

    Attributes are z-scored first; ``alpha`` is the similarity tolerance in
    standard deviations.
    """
    model = DemographicClustering(alpha=alpha, max_passes=max_passes, random_state=seed).fit(X)
    return model.clusters(X, ids)


class DemographicClustering(ClusterMixin, BaseEstimator):
    """Demographic clustering by pairwise Condorcet votes.

    Two records vote +1 on an attribute when their z-scores differ by at most
    ``alpha``, otherwise -1. A record's score for a cluster is the vote total
    over all members and attributes.

    Attributes
    ----------
    labels_ : ndarray of shape (n_samples,)
    n_passes_ : int
    converged_ : bool
    """

    def __init__(self, alpha=0.5, max_passes=10, random_state=42):
        self.alpha = alpha
        self.max_passes = max_passes
        self.random_state = random_state

    def fit(self, X, y=None):
        X = as_matrix(X)
        if self.alpha < 0:
            raise ValueError("alpha must be >= 0")
        if self.max_passes < 1:
            raise ValueError("max_passes must be >= 1")
        self._mean = X.mean(axis=0)
        sd = X.std(axis=0)
        self._sd = np.where(sd > 0, sd, 1.0)
        Z = (X - self._mean) / self._sd
        self._Z = Z
        self._V = vote_matrix(Z, self.alpha)
        rng = np.random.default_rng(self.random_state)
        self.labels_, self.n_passes_, self.converged_ = condorcet_assign(self._V, self.max_passes, rng)
        self.n_clusters_ = int(self.labels_.max()) + 1
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        """Best-scoring training cluster per row, or -1 when no score is positive."""
        check_is_fitted(self, "labels_")
        Z = (as_matrix(X) - self._mean) / self._sd
        out = np.empty(Z.shape[0], dtype=np.int64)
        for i, z in enumerate(Z):
            votes = np.where(np.abs(self._Z - z) <= self.alpha, 1, -1).sum(axis=1)
            scores = np.bincount(self.labels_, weights=votes, minlength=self.n_clusters_)
            out[i] = int(np.argmax(scores)) if scores.max() > 0 else -1
        return out

    def is_stable(self):
        """True if no record could strictly raise its score by switching cluster."""
        check_is_fitted(self, "labels_")
        S = record_scores(self._V, self.labels_)
        own = S[np.arange(len(self.labels_)), self.labels_]
        alternatives = np.maximum(S.max(axis=1), 0)
        return bool(np.all(own >= alternatives))

    def clusters(self, X, ids=None):
        check_is_fitted(self, "labels_")
        X = as_matrix(X)
        ids = list(ids) if ids is not None else list(range(X.shape[0]))
        out = []
        for k in range(self.n_clusters_):
            rows = np.flatnonzero(self.labels_ == k)
            sub = X[rows]
            out.append(Cluster(k, tuple(ids[r] for r in rows), sub.mean(axis=0), sub.std(axis=0)))
        return out


@dataclass(frozen=True)
class AttributeDeviation:
    attribute: str
    cluster_mean: float
    cluster_sd: float
    population_mean: float
    population_sd: float
    deviation: float
    zero_variance: bool


def cluster_profile(cluster_X, population_X, names=None):
    """Per-attribute deviation ``(cluster mean - population mean) / population sd``.

    Sorted by absolute deviation, largest first (ties by name).
    """
    C = as_matrix(cluster_X)
    P = as_matrix(population_X)
    if C.shape[1] != P.shape[1]:
        raise ValueError("cluster and population differ in attribute count")
    names = attribute_names(names, P.shape[1])
    rows = []
    for j, name in enumerate(names):
        pm, ps = P[:, j].mean(), P[:, j].std()
        cm, cs = C[:, j].mean(), C[:, j].std()
        flat = not ps > 0
        dev = 0.0 if flat else float((cm - pm) / ps)
        rows.append(AttributeDeviation(name, float(cm), float(cs), float(pm), float(ps), dev, flat))
    rows.sort(key=lambda r: (-abs(r.deviation), r.attribute))
    return rows


def purity(labels, truth):
    """Fraction of records whose cluster's majority label matches their own."""
    labels = list(labels)
    total = 0
    for k in set(labels):
        members = [t for lab, t in zip(labels, truth) if lab == k]
        total += Counter(members).most_common(1)[0][1]
    return total / len(labels)


def cluster_report(X, names, ids, authors, genres, alpha=0.5, max_passes=10, seed=42):
    """JSON-ready clustering summary with profiles and dominant author/genre."""
    X = as_matrix(X)
    model = DemographicClustering(alpha=alpha, max_passes=max_passes, random_state=seed).fit(X)
    clusters = []
    for k in range(model.n_clusters_):
        rows = np.flatnonzero(model.labels_ == k)
        a_counts = Counter(authors[r] for r in rows)
        g_counts = Counter(genres[r] for r in rows)
        top_author = min(a_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        top_genre = min(g_counts.items(), key=lambda kv: (-kv[1], kv[0]))
        profile = cluster_profile(X[rows], X, names)
        clusters.append({
            "id": k,
            "size": int(len(rows)),
            "members": [ids[r] for r in rows],
            "authors": dict(sorted(a_counts.items())),
            "n_authors": len(a_counts),
            "dominant_author": {"author": top_author[0], "share": top_author[1] / len(rows)},
            "dominant_genre": {"genre": top_genre[0], "share": top_genre[1] / len(rows)},
            "profile": [
                {
                    "attribute": d.attribute,
                    "deviation": d.deviation,
                    "cluster_mean": d.cluster_mean,
                    "population_mean": d.population_mean,
                    "zero_variance": d.zero_variance,
                }
                for d in profile
            ],
        })
    return {
        "alpha": alpha,
        "max_passes": max_passes,
        "seed": seed,
        "passes": model.n_passes_,
        "converged": model.converged_,
        "n_clusters": model.n_clusters_,
        "author_purity": purity(model.labels_, authors),
        "genre_purity": purity(model.labels_, genres),
        "clusters": clusters,
    }
