import re

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose, assert_array_equal

from styloprint.attribute_filter import (
    AttributeCatalog,
    CorrelationMatrix,
    DependencyFilter,
    correlation_matrix,
    prune_dependent,
)
from styloprint.plots import PANEL, ring_chart, scatter_matrix

PANEL_RE = r'<g class="panel" data-row="(\d+)" data-col="(\d+)"[^>]*>(.*?)</g>'


def linear_fixture(seed=0, n=50):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=n)
    return np.column_stack([x, 2 * x, -x, rng.normal(size=n)])


class TestCorrelation:
    def test_linear(self):
        c = correlation_matrix(linear_fixture(), ["x", "y", "neg", "noise"])
        assert c["x", "y"] == pytest.approx(1.0)
        assert c["x", "neg"] == pytest.approx(-1.0)
        assert_allclose(c.values, c.values.T, atol=1e-12)
        assert_array_equal(np.diag(c.values), 1.0)

    def test_independent_uniform(self):
        rng = np.random.default_rng(2024)
        X = rng.uniform(size=(100, 2))
        assert abs(correlation_matrix(X).values[0, 1]) < 0.3

    def test_constant_column(self):
        X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
        c = correlation_matrix(X, ["a", "b"])
        assert c.constant == (False, True)
        assert c["a", "b"] == 0.0

    def test_insufficient_sample(self):
        with pytest.raises(ValueError, match="insufficient sample"):
            correlation_matrix(np.ones((2, 3)))

    def test_matches_numpy(self):
        X = np.random.default_rng(5).normal(size=(30, 6))
        assert_allclose(correlation_matrix(X).values, np.corrcoef(X, rowvar=False), atol=1e-12)


class TestPrune:
    def test_linear_pair_pruned(self):
        cat = prune_dependent(correlation_matrix(linear_fixture(), ["x", "y", "neg", "noise"]))
        assert cat.kept == ["x", "noise"]
        assert cat["y"].dependent_with == "x" and cat["neg"].dependent_with == "x"
        assert re.fullmatch(r"dependent \|r\|=1\.000", cat["y"].reason)

    def test_zero_variance(self):
        X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
        cat = prune_dependent(correlation_matrix(X, ["a", "b"]))
        assert cat["b"].reason == "zero variance" and not cat["b"].kept

    def test_threshold_one_keeps_everything_without_perfect_pairs(self):
        X = np.random.default_rng(3).normal(size=(20, 5))
        assert len(prune_dependent(correlation_matrix(X), threshold=1.0).kept) == 5

    def test_threshold_bounds(self):
        c = correlation_matrix(linear_fixture())
        for t in (0.0, 1.5):
            with pytest.raises(ValueError):
                prune_dependent(c, t)

    def test_priority_changes_survivor(self):
        c = correlation_matrix(linear_fixture(), ["x", "y", "neg", "noise"])
        cat = prune_dependent(c, priority=["y"])
        assert cat.kept == ["y", "noise"]
        assert [e.attribute for e in cat.entries] == ["x", "y", "neg", "noise"]

    def test_unknown_priority_name(self):
        with pytest.raises(ValueError, match="unknown"):
            prune_dependent(correlation_matrix(linear_fixture()), priority=["nope"])

    def test_mutually_dependent_group_keeps_first(self):
        # entropy / TTR / mean frequency class move together; hapax and yules_k do not
        rng = np.random.default_rng(8)
        base = rng.normal(size=60)
        X = np.column_stack([
            base + 0.1 * rng.normal(size=60),
            base + 0.1 * rng.normal(size=60),
            -base + 0.1 * rng.normal(size=60),
            rng.normal(size=60),
            rng.normal(size=60),
        ])
        names = ["entropy", "type_token_ratio", "mean_freq_class", "hapax_count", "yules_k"]
        cat = prune_dependent(correlation_matrix(X, names))
        assert cat.kept == ["entropy", "hapax_count", "yules_k"]

    def test_chain_is_monotone(self):
        # a-b 0.6, b-c 0.8, a-c 0.3: comparing only against kept attributes would keep
        # {a, c} at 0.5 and {a, b} at 0.7, which is not a subset relation
        names = ("a", "b", "c")
        vals = np.array([[1, 0.6, 0.3], [0.6, 1, 0.8], [0.3, 0.8, 1.0]])
        corr = CorrelationMatrix(names, vals, (False, False, False))
        k5 = set(prune_dependent(corr, 0.5).kept)
        k7 = set(prune_dependent(corr, 0.7).kept)
        assert k5 <= k7
        assert k5 == {"a"} and k7 == {"a", "b"}


def _check_catalog(corr, cat, t):
    kept = cat.kept
    idx = {n: i for i, n in enumerate(corr.names)}
    for i, a in enumerate(kept):
        for b in kept[i + 1:]:
            assert abs(corr.values[idx[a], idx[b]]) < t
    assert sorted(e.attribute for e in cat.entries) == sorted(corr.names)
    for e in cat.entries:
        if not e.kept and e.reason != "zero variance":
            assert e.dependent_with in corr.names


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_monotone_and_sound(seed, t1, t2):
    t1, t2 = sorted((t1, t2))
    rng = np.random.default_rng(seed)
    n, m = int(rng.integers(4, 25)), int(rng.integers(1, 8))
    X = rng.normal(size=(n, m)) @ rng.normal(size=(m, m))
    corr = correlation_matrix(X)
    c1, c2 = prune_dependent(corr, t1), prune_dependent(corr, t2)
    assert set(c1.kept) <= set(c2.kept)
    _check_catalog(corr, c1, t1)
    _check_catalog(corr, c2, t2)


def test_row_permutation_invariance():
    X = linear_fixture(4) + np.random.default_rng(1).normal(scale=0.5, size=(50, 4))
    perm = np.random.default_rng(9).permutation(50)
    a = prune_dependent(correlation_matrix(X))
    b = prune_dependent(correlation_matrix(X[perm]))
    assert a.kept == b.kept


def test_catalog_csv_round_trip(tmp_path):
    cat = prune_dependent(correlation_matrix(linear_fixture(), ["x", "y", "neg", "noise"]))
    path = tmp_path / "catalog.csv"
    cat.to_csv(path)
    assert path.read_text(encoding="utf-8").splitlines()[0] == "attribute,kept,reason,dependent_with"
    assert AttributeCatalog.from_csv(path) == cat


def test_dependency_filter_estimator():
    X = linear_fixture()
    f = DependencyFilter(threshold=0.7).fit(X, feature_names=["x", "y", "neg", "noise"])
    assert_array_equal(f.get_support(), [True, False, False, True])
    assert list(f.get_feature_names_out()) == ["x", "noise"]
    assert f.transform(X).shape == (50, 2)
    assert f.get_params() == {"threshold": 0.7, "priority": None}
    with pytest.raises(ValueError):
        f.transform(X[:, :2])


class TestScatter:
    def test_structure(self):
        rng = np.random.default_rng(0)
        X = rng.normal(size=(20, 5))
        svg = scatter_matrix(X, [f"a{i}" for i in range(5)])
        assert svg.count('class="panel"') == 25
        panels = re.findall(PANEL_RE, svg, re.S)
        assert len(panels) == 25
        for r, c, body in panels:
            if r == c:
                assert body.count('class="label"') == 1 and "<circle" not in body
            else:
                assert body.count('class="pt"') == 20

    def test_mirrored_panels(self):
        X = np.array([[0.0, 1.0], [1.0, 3.0], [2.0, 2.0]])
        svg = scatter_matrix(X, ["u", "v"])
        panels = {(r, c): body for r, c, body in re.findall(PANEL_RE, svg, re.S)}
        pts = lambda body: [(float(x), float(y)) for x, y in re.findall(r'cx="([\d.]+)" cy="([\d.]+)"', body)]
        a, b = pts(panels["0", "1"]), pts(panels["1", "0"])
        assert len(a) == len(b) == 3
        # swapping the axes reflects every point across the panel's anti-diagonal
        for (ax, ay), (bx, by) in zip(a, b):
            assert bx == pytest.approx(PANEL - ay, abs=0.011)
            assert by == pytest.approx(PANEL - ax, abs=0.011)

    def test_single_and_kept_subset(self):
        X = np.random.default_rng(1).normal(size=(10, 3))
        svg = scatter_matrix(X, ["a", "b", "c"], kept=["b"])
        assert svg.count('class="panel"') == 1 and ">b<" in svg and "<circle" not in svg

    def test_deterministic(self):
        X = np.random.default_rng(1).normal(size=(10, 3))
        assert scatter_matrix(X, ["a", "b", "c"]) == scatter_matrix(X, ["a", "b", "c"])


def test_ring_chart():
    svg = ring_chart("t", [3, 0, 1], [5, 5, 2], ["x", "y", "z"])
    assert svg.startswith("<svg") or svg.startswith("<?xml")
    assert 'class="inner"' in svg and 'class="outer"' in svg


def test_dependence_pattern_on_synthetic_corpus():
    from styloprint.features import FeatureExtractor
    from styloprint.synthetic import synthetic_corpus

    ext = FeatureExtractor().fit(None)
    X = ext.transform([d.text for d in synthetic_corpus()])
    corr = correlation_matrix(X, tuple(ext.get_feature_names_out()))
    assert abs(corr["entropy", "type_token_ratio"]) >= 0.7
    assert abs(corr["hapax_count", "yules_k"]) < 0.7
    col = list(ext.get_feature_names_out()).index
    pair = lambda a, b: prune_dependent(correlation_matrix(X[:, [col(a), col(b)]], (a, b))).kept
    assert pair("entropy", "type_token_ratio") == ["entropy"]
    assert pair("hapax_count", "yules_k") == ["hapax_count", "yules_k"]
