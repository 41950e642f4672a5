"""Genetic median-vector authorship classifier.

Each author is represented by the componentwise median of their documents'
z-scored attribute vectors. A document goes to the author whose median is
nearest under a weighted Euclidean distance, and a genetic algorithm learns
the attribute weights by maximising leave-one-out accuracy, recomputing the
held-out author's median without the held-out document.
"""
import json
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import as_labels, as_matrix, attribute_names

FORMAT_VERSION = 1


@dataclass(frozen=True)
class GaParams:
    population_size: int = 64
    generations: int = 200
    crossover_rate: float = 0.8
    mutation_rate: float = 0.1
    mutation_sigma: float = 0.1
    elitism_count: int = 2
    tournament_size: int = 3
    seed: int = 42

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")
        for name in ("crossover_rate", "mutation_rate"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.mutation_sigma < 0:
            raise ValueError("mutation_sigma must be >= 0")
        if not 0 <= self.elitism_count <= self.population_size:
            raise ValueError("elitism_count must be in [0, population_size]")
        if self.tournament_size < 1:
            raise ValueError("tournament_size must be >= 1")


def median_vector(vectors):
    """Componentwise median; even counts average the two central values."""
    V = np.asarray(vectors, dtype=float)
    if V.ndim == 1:
        V = V[None, :]
    if V.shape[0] == 0:
        raise ValueError("median of an empty set of vectors")
    return np.median(V, axis=0)


def normalize_weights(W):
    """Clip to >= 0 and rescale rows to sum 1; all-zero rows become uniform."""
    W = np.clip(np.asarray(W, dtype=float), 0.0, None)
    single = W.ndim == 1
    W = np.atleast_2d(W)
    sums = W.sum(axis=1, keepdims=True)
    zero = sums[:, 0] <= 0
    W[zero] = 1.0
    sums[zero] = W.shape[1]
    W = W / sums
    return W[0] if single else W


@dataclass
class MedianModel:
    """Per-author median vectors in z-score space plus attribute weights."""

    attributes: tuple
    mean: np.ndarray
    sd: np.ndarray
    authors: tuple
    medians: np.ndarray
    weights: np.ndarray
    input_attributes: tuple = ()
    excluded: tuple = ()
    degenerate: bool = False
    fitness: dict = field(default_factory=dict)

    @classmethod
    def fit(cls, X, authors, names=None, weights=None):
        """Normalization and medians from training data; weights default to uniform."""
        X = as_matrix(X)
        authors = as_labels(authors, X.shape[0])
        names = attribute_names(names, X.shape[1])
        sd = X.std(axis=0)
        keep = sd > 0
        degenerate = not keep.any()
        if degenerate:
            # no attribute varies: keep them all at unit scale so distances are defined (all zero)
            keep = np.ones(X.shape[1], dtype=bool)
            sd = np.ones(X.shape[1])
        mean = X.mean(axis=0)[keep]
        sd = sd[keep]
        Z = (X[:, keep] - mean) / sd
        labels = tuple(sorted(set(authors)))
        y = np.array([labels.index(a) for a in authors])
        medians = np.vstack([median_vector(Z[y == c]) for c in range(len(labels))])
        m = int(keep.sum())
        if weights is None:
            weights = np.ones(m)
        else:
            # weights may be given per input attribute or per kept attribute
            weights = np.asarray(weights, dtype=float)
            if weights.shape == keep.shape:
                weights = weights[keep]
            elif weights.shape != (m,):
                raise ValueError(f"expected {len(keep)} or {m} weights, got {weights.size}")
        w = normalize_weights(weights)
        return cls(
            attributes=tuple(n for n, k in zip(names, keep) if k),
            mean=mean,
            sd=sd,
            authors=labels,
            medians=medians,
            weights=w,
            input_attributes=names,
            excluded=tuple(n for n, k in zip(names, keep) if not k),
            degenerate=degenerate,
        )

    def normalize(self, X):
        """Z-scores of raw rows given over ``input_attributes``."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if X.shape[1] != len(self.input_attributes):
            raise ValueError(f"expected {len(self.input_attributes)} attributes, got {X.shape[1]}")
        idx = [self.input_attributes.index(a) for a in self.attributes]
        return (X[:, idx] - self.mean) / self.sd

    def distances(self, z):
        return np.sqrt(((z - self.medians) ** 2 * self.weights).sum(axis=1))

    def predict(self, X):
        return [classify(z, self) for z in self.normalize(X)]

    def to_dict(self):
        return {
            "format_version": FORMAT_VERSION,
            "input_attributes": list(self.input_attributes),
            "attributes": list(self.attributes),
            "excluded_attributes": list(self.excluded),
            "normalization": {
                a: {"mean": float(mu), "sd": float(s)} for a, mu, s in zip(self.attributes, self.mean, self.sd)
            },
            "weights": {a: float(w) for a, w in zip(self.attributes, self.weights)},
            "medians": {
                author: [float(v) for v in row] for author, row in zip(self.authors, self.medians)
            },
            "degenerate": self.degenerate,
            "fitness": self.fitness,
        }

    @classmethod
    def from_dict(cls, d):
        if d.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported model format version {d.get('format_version')!r}")
        attrs = tuple(d["attributes"])
        authors = tuple(d["medians"])
        return cls(
            attributes=attrs,
            mean=np.array([d["normalization"][a]["mean"] for a in attrs]),
            sd=np.array([d["normalization"][a]["sd"] for a in attrs]),
            authors=authors,
            medians=np.array([d["medians"][a] for a in authors], dtype=float).reshape(len(authors), len(attrs)),
            weights=np.array([d["weights"][a] for a in attrs]),
            input_attributes=tuple(d["input_attributes"]),
            excluded=tuple(d.get("excluded_attributes", ())),
            degenerate=bool(d.get("degenerate", False)),
            fitness=d.get("fitness", {}),
        )

    def save(self, path):
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(self.to_dict(), fh, indent=2)
            fh.write("\n")

    @classmethod
    def load(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def classify(x, model):
    """Author whose median is nearest to normalized vector ``x``.

    Ties go to the lexicographically smallest author label.
    """
    if not model.authors:
        raise ValueError("model has no authors")
    d = model.distances(np.asarray(x, dtype=float))
    # authors are stored sorted, so the first minimum is the lexicographic tie-break
    return model.authors[int(np.argmin(d))]


# ---------------------------------------------------------------------------
# genetic weight search


def _check_training_set(authors):
    counts = Counter(authors)
    if len(counts) < 2:
        raise ValueError("training needs at least two authors")
    for author in sorted(counts):
        if counts[author] < 2:
            raise ValueError(f"author {author!r} has {counts[author]} document(s); training needs at least 2")


class LeaveOneOutFitness:
    """Leave-one-out accuracy of weight vectors on a fixed training set.

    For every held-out document the squared attribute differences to all
    author medians are precomputed, with its own author's median rebuilt
    without it. Scoring a population is then a single matrix product.
    """

    def __init__(self, Z, y, n_authors):
        self.y = np.asarray(y)
        n, m = Z.shape
        full = np.vstack([median_vector(Z[self.y == c]) for c in range(n_authors)])
        diffs = np.empty((n, n_authors, m))
        for i in range(n):
            med = full.copy()
            rest = (self.y == self.y[i]) & (np.arange(n) != i)
            med[self.y[i]] = median_vector(Z[rest])
            diffs[i] = (Z[i] - med) ** 2
        self.diffs = diffs

    def distances(self, W):
        """Squared distances, shape (population, documents, authors)."""
        W = np.atleast_2d(W)
        n, c, m = self.diffs.shape
        return (self.diffs.reshape(n * c, m) @ W.T).T.reshape(len(W), n, c)

    def __call__(self, W):
        """(accuracy, margin) per genome; margin breaks accuracy ties."""
        D = self.distances(W)
        n = len(self.y)
        rows = np.arange(n)
        acc = (np.argmin(D, axis=2) == self.y).mean(axis=1)
        true = D[:, rows, self.y]
        wrong = D.copy()
        wrong[:, rows, self.y] = np.inf
        nearest_wrong = wrong.min(axis=2)
        if not np.isfinite(nearest_wrong).all():
            return acc, np.zeros(len(acc))
        margin = ((nearest_wrong - true) / (nearest_wrong + true + 1e-12)).mean(axis=1)
        return acc, margin


def _rank(acc, margin):
    """Genome indices from best to worst (accuracy, then margin, then index)."""
    return np.lexsort((np.arange(len(acc)), -margin, -acc))


def evolve(fitness, n_attributes, params):
    """Run the GA, yielding ``(generation, population, accuracy, margin)`` each step."""
    rng = np.random.default_rng(params.seed)
    P, m = params.population_size, n_attributes
    pop = rng.random((P, m))
    pop[0] = 1.0
    pop = normalize_weights(pop)
    for gen in range(params.generations + 1):
        acc, margin = fitness(pop)
        yield gen, pop, acc, margin
        if gen == params.generations:
            return
        order = _rank(acc, margin)
        rank = np.empty(P, dtype=int)
        rank[order] = np.arange(P)
        n_children = P - params.elitism_count
        cand = rng.integers(0, P, size=(n_children, 2, params.tournament_size))
        winners = np.take_along_axis(cand, np.argmin(rank[cand], axis=2)[..., None], axis=2)[..., 0]
        mum, dad = pop[winners[:, 0]], pop[winners[:, 1]]
        cross = rng.random(n_children) < params.crossover_rate
        mask = rng.random((n_children, m)) < 0.5
        children = np.where(cross[:, None] & mask, dad, mum)
        hit = rng.random((n_children, m)) < params.mutation_rate
        noise = rng.normal(0.0, params.mutation_sigma, size=(n_children, m))
        children = normalize_weights(children + hit * noise)
        pop = np.vstack([pop[order[:params.elitism_count]], children])


def train(X, authors, params=None, names=None):
    """Fit a :class:`MedianModel` whose weights come from the genetic search."""
    params = params or GaParams()
    X = as_matrix(X)
    authors = as_labels(authors, X.shape[0])
    _check_training_set(authors)
    base = MedianModel.fit(X, authors, names)
    Z = base.normalize(X)
    y = np.array([base.authors.index(a) for a in authors])
    fitness = LeaveOneOutFitness(Z, y, len(base.authors))
    history = []
    best = None
    for gen, pop, acc, margin in evolve(fitness, Z.shape[1], params):
        top = _rank(acc, margin)[0]
        history.append(float(acc[top]))
        if best is None or (acc[top], margin[top]) > (best[0], best[1]):
            best = (float(acc[top]), float(margin[top]), pop[top].copy(), gen)
    acc, margin, weights, gen = best
    base.weights = weights
    base.fitness = {
        "loo_accuracy": acc,
        "loo_margin": margin,
        "best_generation": gen,
        "history": history,
        "params": asdict(params),
    }
    return base


# ---------------------------------------------------------------------------
# evaluation


def rates_report(true_authors, predicted, genres, ids=None, model_authors=()):
    """Overall and per-genre accuracy plus an author x author confusion matrix."""
    n = len(true_authors)
    labels = sorted(set(true_authors) | set(predicted) | set(model_authors))
    pos = {a: i for i, a in enumerate(labels)}
    confusion = np.zeros((len(labels), len(labels)), dtype=int)
    for t, p in zip(true_authors, predicted):
        confusion[pos[t], pos[p]] += 1
    hits = [t == p for t, p in zip(true_authors, predicted)]
    per_genre = {}
    for g in sorted(set(genres)):
        sel = [h for h, gg in zip(hits, genres) if gg == g]
        per_genre[g] = sum(sel) / len(sel)
    report = {
        "n_documents": n,
        "overall_accuracy": sum(hits) / n if n else 0.0,
        "per_genre_accuracy": per_genre,
        "labels": labels,
        "confusion_matrix": confusion.tolist(),
    }
    if ids is not None:
        report["predictions"] = [
            {"id": i, "author": t, "predicted": p} for i, t, p in zip(ids, true_authors, predicted)
        ]
    return report


def evaluate(model, X, authors, genres, ids=None):
    """Classify raw test rows with ``model`` and summarise the hit rates."""
    X = as_matrix(X)
    authors = as_labels(authors, X.shape[0])
    genres = as_labels(genres, X.shape[0])
    predicted = model.predict(X)
    return rates_report(authors, predicted, genres, ids, model.authors)


def loo_evaluate(X, authors, genres, params=None, names=None, ids=None):
    """Leave-one-out protocol: retrain (normalization, medians, GA) without each document."""
    params = params or GaParams()
    X = as_matrix(X)
    authors = as_labels(authors, X.shape[0])
    genres = as_labels(genres, X.shape[0])
    predicted = []
    for i in range(X.shape[0]):
        keep = np.arange(X.shape[0]) != i
        model = train(X[keep], [a for a, k in zip(authors, keep) if k], params, names)
        predicted.append(model.predict(X[i:i + 1])[0])
    report = rates_report(authors, predicted, genres, ids, sorted(set(authors)))
    report["protocol"] = "leave-one-out"
    return report


class ClusGenClassifier(ClassifierMixin, BaseEstimator):
    """Nearest-median classifier with GA-learned attribute weights."""

    def __init__(
        self,
        population_size=64,
        generations=200,
        crossover_rate=0.8,
        mutation_rate=0.1,
        mutation_sigma=0.1,
        elitism_count=2,
        tournament_size=3,
        random_state=42,
    ):
        self.population_size = population_size
        self.generations = generations
        self.crossover_rate = crossover_rate
        self.mutation_rate = mutation_rate
        self.mutation_sigma = mutation_sigma
        self.elitism_count = elitism_count
        self.tournament_size = tournament_size
        self.random_state = random_state

    def _params(self):
        return GaParams(
            population_size=self.population_size,
            generations=self.generations,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
            mutation_sigma=self.mutation_sigma,
            elitism_count=self.elitism_count,
            tournament_size=self.tournament_size,
            seed=self.random_state,
        )

    def fit(self, X, y, feature_names=None):
        if feature_names is None and hasattr(X, "columns"):
            feature_names = [str(c) for c in X.columns]
        X = as_matrix(X)
        self.model_ = train(X, y, self._params(), feature_names)
        self.classes_ = np.array(self.model_.authors, dtype=object)
        self.n_features_in_ = X.shape[1]
        return self

    @property
    def weights_(self):
        check_is_fitted(self, "model_")
        return dict(zip(self.model_.attributes, self.model_.weights))

    def predict(self, X):
        check_is_fitted(self, "model_")
        return np.array(self.model_.predict(as_matrix(X)), dtype=object)
