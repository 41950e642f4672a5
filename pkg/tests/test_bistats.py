import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from styloprint.bistats import (
    bin_numeric,
    chi_square,
    chi_square_counts,
    chi_square_priority,
    genre_report,
    genre_reports,
    genre_shares,
)


class TestBins:
    def test_uniform_quantiles(self):
        b = bin_numeric(np.arange(1, 11), k=5)
        assert b.n_bins == 5
        assert_array_equal(np.bincount(b.assign(np.arange(1, 11))), [2, 2, 2, 2, 2])

    def test_constant_is_degenerate(self):
        b = bin_numeric([7, 7, 7], k=5)
        assert b.degenerate and b.n_bins == 1
        assert_array_equal(b.assign([7, 7, 7]), [0, 0, 0])

    def test_merged_edges(self):
        values = [1, 1, 1, 1, 2, 3]
        b = bin_numeric(values, k=3)
        assert_allclose(b.edges, [1, 4 / 3, 3])
        counts = np.bincount(b.assign(values), minlength=b.n_bins)
        assert_array_equal(counts, [4, 2])

    def test_k_must_be_at_least_two(self):
        with pytest.raises(ValueError):
            bin_numeric([1, 2, 3], k=1)

    def test_labels(self):
        assert bin_numeric([1, 2, 3, 4], k=2).labels() == ["[1, 2.5)", "[2.5, 4]"]

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(-5, 5), min_size=1, max_size=40), st.integers(2, 8))
    def test_no_empty_bins_and_increasing_edges(self, values, k):
        b = bin_numeric(values, k)
        counts = np.bincount(b.assign(values), minlength=b.n_bins)
        assert counts.sum() == len(values)
        assert np.all(counts > 0)
        assert b.n_bins <= k
        assert np.all(np.diff(b.edges) > 0)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(-100, 100), min_size=2, max_size=40), st.floats(0.01, 1000))
    def test_scale_equivariant_occupancy(self, values, c):
        values = np.array(values)
        a = bin_numeric(values, 5)
        b = bin_numeric(values * c, 5)
        assert_array_equal(a.assign(values), b.assign(values * c))


class TestChiSquare:
    def test_hand_case(self):
        assert chi_square_counts([10, 10], [5, 0]) == pytest.approx(5.0, abs=1e-9)

    def test_identical_distribution(self):
        assert chi_square_counts([10, 20, 30], [1, 2, 3]) == 0.0

    def test_monotone_in_discrepancy(self):
        assert chi_square_counts([10, 10], [5, 1]) < chi_square_counts([10, 10], [6, 0])

    def test_zero_expected_skipped(self):
        assert chi_square_counts([0, 10], [0, 4]) == 0.0

    def test_from_bin_index(self):
        idx = [0] * 10 + [1] * 10
        genres = ["a"] * 5 + ["b"] * 15
        assert chi_square(idx, genres, "a") == pytest.approx(5.0)

    def test_absent_genre(self):
        with pytest.raises(ValueError, match="not present"):
            chi_square([0, 1], ["a", "b"], "c")

    @given(st.lists(st.integers(0, 20), min_size=1, max_size=6), st.data())
    def test_non_negative_and_zero_when_proportional(self, pop, data):
        within = [data.draw(st.integers(0, p)) for p in pop]
        assert chi_square_counts(pop, within) >= 0.0
        assert chi_square_counts([3 * p for p in pop], pop) == pytest.approx(0.0, abs=1e-9)


def split_genres(counts):
    out = []
    for g, n in counts.items():
        out += [g] * n
    return out


def test_genre_shares_42_32_26():
    genres = split_genres({"fairy_tale": 42, "common_speech": 32, "technical_language": 26})
    shares = genre_shares(genres)
    assert shares == {"common_speech": 0.32, "fairy_tale": 0.42, "technical_language": 0.26}
    assert sum(shares.values()) == pytest.approx(1.0, abs=1e-9)


class TestGenreReport:
    @pytest.fixture
    def data(self):
        rng = np.random.default_rng(0)
        genres = split_genres({"a": 10, "b": 10, "c": 10})
        separating = np.array([0.0] * 10 + list(rng.uniform(5, 10, 20)))
        noise = rng.normal(size=30)
        constant = np.full(30, 3.0)
        return np.column_stack([noise, constant, separating]), genres

    def test_ranking(self, data):
        X, genres = data
        rep = genre_report(X, genres, "a", ["noise", "constant", "separating"])
        assert rep.ranking()[0] == "separating"
        assert rep.ranking()[-1] == "constant"
        assert rep.per_attribute[-1].chi_square == 0.0
        chis = [s.chi_square for s in rep.per_attribute]
        assert chis == sorted(chis, reverse=True)
        sep = rep.per_attribute[0]
        assert sep.direction == -1 and sep.mean_shift < 0
        for s in rep.per_attribute:
            assert sum(s.population_hist) == 30 and sum(s.within_genre_hist) == 10

    def test_single_genre_rejected(self):
        with pytest.raises(ValueError, match="two genres"):
            genre_report(np.ones((3, 1)), ["a"] * 3, "a")

    def test_permutation_invariance(self, data):
        X, genres = data
        perm = np.random.default_rng(3).permutation(30)
        a = genre_report(X, genres, "b")
        b = genre_report(X[perm], [genres[i] for i in perm], "b")
        assert a.ranking() == b.ranking()
        assert_allclose([s.chi_square for s in a.per_attribute], [s.chi_square for s in b.per_attribute])

    def test_scaling_keeps_chi_square(self, data):
        X, genres = data
        a = genre_report(X, genres, "c")
        b = genre_report(X * np.array([3.0, 0.5, 7.0]), genres, "c")
        assert a.ranking() == b.ranking()
        assert_allclose([s.chi_square for s in a.per_attribute], [s.chi_square for s in b.per_attribute])

    def test_json_ready(self, data):
        X, genres = data
        reps = genre_reports(X, genres)
        assert sorted(reps) == ["a", "b", "c"]
        json.dumps(reps["a"].to_dict())
        assert chi_square_priority(X, genres, "a")[0] == "x2"
