"""Chi-square ranking of attributes against genre."""
from collections import Counter
from dataclasses import dataclass

import numpy as np

from ._validation import as_labels, as_matrix, attribute_names

DEFAULT_BINS = 5


@dataclass(frozen=True)
class Bins:
    """Equal-frequency bin edges; a degenerate binning has a single edge."""

    edges: np.ndarray
    degenerate: bool = False

    @property
    def n_bins(self):
        return max(len(self.edges) - 1, 1)

    def assign(self, values):
        values = np.asarray(values, dtype=float)
        if self.degenerate or len(self.edges) < 3:
            return np.zeros(len(values), dtype=int)
        # half-open bins, last one closed; values outside the edges clamp to the ends
        return np.searchsorted(self.edges[1:-1], values, side="right")

    def labels(self):
        if self.degenerate:
            return [f"= {self.edges[0]:.4g}"]
        e = self.edges
        return [f"[{e[i]:.4g}, {e[i + 1]:.4g}{']' if i == len(e) - 2 else ')'}" for i in range(len(e) - 1)]


def bin_numeric(values, k=DEFAULT_BINS):
    """Quantile bins with duplicate edges merged and empty bins folded away."""
    if k < 2:
        raise ValueError("k must be >= 2")
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        raise ValueError("cannot bin an empty sample")
    if np.ptp(values) == 0:
        return Bins(np.array([values[0]]), degenerate=True)
    edges = np.unique(np.quantile(values, np.linspace(0, 1, k + 1)))
    while len(edges) > 2:
        counts = np.bincount(Bins(edges).assign(values), minlength=len(edges) - 1)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            break
        b = empty[0]
        # fold the empty bin into its right neighbour, or the left one for the last bin
        edges = np.delete(edges, b if b == len(edges) - 2 else b + 1)
    return Bins(edges)


def chi_square_counts(population_hist, genre_hist):
    """Sum over bins of (O - E)^2 / E with E = population share * genre total."""
    pop = np.asarray(population_hist, dtype=float)
    obs = np.asarray(genre_hist, dtype=float)
    if pop.shape != obs.shape:
        raise ValueError("histograms differ in length")
    total = pop.sum()
    if total == 0:
        return 0.0
    expected = pop / total * obs.sum()
    used = expected > 0
    return float(((obs[used] - expected[used]) ** 2 / expected[used]).sum())


def chi_square(bin_index, genres, genre, n_bins=None):
    """Chi-square of one genre's bin occupancy against the whole population."""
    genres = list(genres)
    if genre not in genres:
        raise ValueError(f"genre {genre!r} not present in corpus")
    bin_index = np.asarray(bin_index, dtype=int)
    n_bins = n_bins or int(bin_index.max()) + 1
    pop = np.bincount(bin_index, minlength=n_bins)
    mask = np.array([g == genre for g in genres])
    within = np.bincount(bin_index[mask], minlength=n_bins)
    return chi_square_counts(pop, within)


@dataclass(frozen=True)
class AttributeStat:
    attribute: str
    chi_square: float
    bins: Bins
    within_genre_hist: tuple
    population_hist: tuple
    mean_shift: float

    @property
    def direction(self):
        """+1 when the genre mean is above the population mean, -1 below, 0 equal."""
        return int(np.sign(self.mean_shift))


@dataclass(frozen=True)
class GenreReport:
    genre: str
    genre_shares: dict
    per_attribute: tuple

    def ranking(self):
        return [s.attribute for s in self.per_attribute]

    def to_dict(self):
        return {
            "genre": self.genre,
            "genre_shares": self.genre_shares,
            "attributes": [
                {
                    "attribute": s.attribute,
                    "chi_square": s.chi_square,
                    "bin_edges": [float(e) for e in s.bins.edges],
                    "degenerate": s.bins.degenerate,
                    "within_genre_hist": list(s.within_genre_hist),
                    "population_hist": list(s.population_hist),
                    "mean_shift": s.mean_shift,
                    "direction": s.direction,
                }
                for s in self.per_attribute
            ],
        }


def genre_shares(genres):
    counts = Counter(genres)
    n = len(genres)
    return {g: counts[g] / n for g in sorted(counts)}


def genre_report(X, genres, genre, names=None, k=DEFAULT_BINS):
    """Rank attributes by how far ``genre``'s distribution departs from the population.

    Each attribute gets the chi-square value, both histograms, and a mean
    shift ``(genre mean - population mean) / population sd``.
    """
    X = as_matrix(X)
    genres = as_labels(genres, X.shape[0])
    names = attribute_names(names, X.shape[1])
    if len(set(genres)) < 2:
        raise ValueError("genre report needs at least two genres")
    if genre not in genres:
        raise ValueError(f"genre {genre!r} not present in corpus")
    mask = np.array([g == genre for g in genres])
    stats = []
    for j, name in enumerate(names):
        col = X[:, j]
        bins = bin_numeric(col, k)
        idx = bins.assign(col)
        pop = np.bincount(idx, minlength=bins.n_bins)
        within = np.bincount(idx[mask], minlength=bins.n_bins)
        sd = col.std()
        shift = float((col[mask].mean() - col.mean()) / sd) if sd > 0 else 0.0
        stats.append(AttributeStat(
            name, chi_square_counts(pop, within), bins,
            tuple(int(c) for c in within), tuple(int(c) for c in pop), shift,
        ))
    stats.sort(key=lambda s: (-s.chi_square, s.attribute))
    return GenreReport(genre, genre_shares(genres), tuple(stats))


def genre_reports(X, genres, names=None, k=DEFAULT_BINS):
    """One :class:`GenreReport` per genre, keyed by genre label."""
    genres = list(genres)
    return {g: genre_report(X, genres, g, names, k) for g in sorted(set(genres))}


def chi_square_priority(X, genres, genre, names=None, k=DEFAULT_BINS):
    """Attribute names ordered by descending chi-square for ``genre``."""
    return genre_report(X, genres, genre, names, k).ranking()
