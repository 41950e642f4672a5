"""Stylometric author profiling: attribute extraction, dependence filtering,
chi-square genre statistics, demographic clustering and a genetic
median-vector classifier."""

from .attribute_filter import AttributeCatalog, DependencyFilter, correlation_matrix, prune_dependent
from .bistats import bin_numeric, chi_square, genre_report
from .clusgen import (
    ClusGenClassifier,
    GaParams,
    MedianModel,
    classify,
    evaluate,
    loo_evaluate,
    median_vector,
    train,
)
from .cluster import DemographicClustering, cluster_profile, demographic_cluster
from .corpus import Document, TokenStream, load_corpus, tokenize
from .features import FeatureExtractor, FeatureVector, extract_features
from .lexicon import Lexica, default_lexica, frequency_class, pos_tag

__version__ = "0.1.0"
