"""Per-document stylometric attributes."""
import csv
import math
from collections import Counter
from dataclasses import astuple, dataclass, fields

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .corpus import Document, tokenize
from .lexicon import default_lexica, frequency_class, pos_tag

DEFAULT_ENTROPY_WINDOW = 1000
RELATIVE_PRONOUNS = frozenset({"der", "die", "das", "welcher", "welche", "welches"})


class EmptyDocumentError(ValueError):
    pass


@dataclass(frozen=True)
class FeatureVector:
    word_count: int
    distinct_word_count: int
    pronoun_i_count: int
    pronoun_we_count: int
    top_word: str
    top_word_freq: int
    avg_word_length: float
    mean_sentence_len: float
    var_sentence_len: float
    yules_k: float
    hapax_count: int
    hypotaxis_ratio: float
    parataxis_ratio: float
    type_token_ratio: float
    entropy: float
    entropy_window: int
    stopword_hapax_count: int
    top_stopword: str
    top_stopword_freq: int
    top_stopword_pct: float
    mean_freq_class: float
    adjective_count: int
    verb_count: int
    noun_count: int

    def numeric(self):
        return np.array([getattr(self, name) for name in NUMERIC_FIELDS], dtype=float)

    def as_dict(self):
        return dict(zip(FIELD_NAMES, astuple(self)))


FIELD_NAMES = tuple(f.name for f in fields(FeatureVector))
TEXT_FIELDS = ("top_word", "top_stopword")
NUMERIC_FIELDS = tuple(n for n in FIELD_NAMES if n not in TEXT_FIELDS)
INTEGER_FIELDS = frozenset(f.name for f in fields(FeatureVector) if f.type is int)


def _require_tokens(stream):
    if not stream.tokens:
        raise EmptyDocumentError("empty document")


def _require_sentences(stream):
    if not stream.sentences:
        raise EmptyDocumentError("document has no sentences")


def _most_common(counter):
    """(item, count) with the highest count; ties go to the smallest item."""
    return min(counter.items(), key=lambda kv: (-kv[1], kv[0]))


def yules_k(stream):
    """Yule's characteristic K = 1e4 * (sum_i i^2 V_i - N) / N^2 over case-folded types."""
    _require_tokens(stream)
    n = len(stream.tokens)
    spectrum = Counter(Counter(stream.folded).values())
    s2 = sum(i * i * v for i, v in spectrum.items())
    return 1e4 * (s2 - n) / (n * n)


def entropy(stream, window=DEFAULT_ENTROPY_WINDOW):
    """Shannon entropy (bits) of the first ``window`` case-folded tokens.

    Returns ``(H, tokens_used)``.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    _require_tokens(stream)
    head = stream.folded[:window]
    n = len(head)
    h = 0.0
    for c in Counter(head).values():
        p = c / n
        h -= p * math.log2(p)
    return max(h, 0.0), n


def hapax_count(stream):
    return sum(1 for c in Counter(stream.folded).values() if c == 1)


def sentence_stats(stream):
    """Mean and population variance of sentence length in tokens."""
    _require_sentences(stream)
    lengths = np.array([end - start for start, end in stream.sentences], dtype=float)
    return float(lengths.mean()), float(lengths.var())


def is_hypotactic(tokens, folded, comma_positions, lex):
    if any(pos_tag(t, lex) == "conjunction_sub" for t in tokens):
        return True
    for c in comma_positions:
        if any(w in RELATIVE_PRONOUNS for w in folded[c:c + 2]):
            return True
    return False


def hypotaxis_ratio(stream, lex):
    """Share of sentences with a subordinate clause, and its complement.

    A sentence is hypotactic when it contains a subordinating conjunction or
    a comma followed within two tokens by a relative pronoun.
    """
    _require_sentences(stream)
    folded = stream.folded
    hypo = 0
    for start, end in stream.sentences:
        local_commas = [c - start for c in stream.commas if start <= c < end]
        if is_hypotactic(stream.tokens[start:end], folded[start:end], local_commas, lex):
            hypo += 1
    ratio = hypo / len(stream.sentences)
    return ratio, 1.0 - ratio


def stopword_stats(stream, stops):
    """(hapax stop words, top stop word, its count, its share of all tokens)."""
    counts = Counter(t for t in stream.folded if t in stops)
    if not counts:
        return 0, "", 0, 0.0
    hapax = sum(1 for c in counts.values() if c == 1)
    top, freq = _most_common(counts)
    return hapax, top, freq, freq / len(stream.tokens)


def _pos_counts(stream, lex):
    counts = Counter()
    for start, end in stream.sentences:
        for i in range(start, end):
            counts[pos_tag(stream.tokens[i], lex, midsentence=i > start)] += 1
    return counts


def extract_features(doc, stream=None, lexica=None, entropy_window=DEFAULT_ENTROPY_WINDOW):
    """Compute the full :class:`FeatureVector` for one document.

    ``doc`` may be a :class:`Document` or a plain string; ``stream`` is
    tokenized from it when omitted.
    """
    text = doc.text if isinstance(doc, Document) else doc
    stream = stream if stream is not None else tokenize(text)
    lexica = lexica or default_lexica()
    _require_tokens(stream)

    folded = stream.folded
    n = len(folded)
    types = Counter(folded)
    top_word, top_freq = _most_common(types)
    mean_len, var_len = sentence_stats(stream)
    hypo, para = hypotaxis_ratio(stream, lexica.pos)
    h, window_used = entropy(stream, entropy_window)
    stop_hapax, top_stop, top_stop_freq, top_stop_pct = stopword_stats(stream, lexica.stopwords)
    pos = _pos_counts(stream, lexica.pos)
    freq_classes = [frequency_class(t, lexica.frequencies) for t in folded]

    return FeatureVector(
        word_count=n,
        distinct_word_count=len(types),
        pronoun_i_count=types.get("ich", 0),
        pronoun_we_count=types.get("wir", 0),
        top_word=top_word,
        top_word_freq=top_freq,
        avg_word_length=sum(len(t) for t in stream.tokens) / n,
        mean_sentence_len=mean_len,
        var_sentence_len=var_len,
        yules_k=yules_k(stream),
        hapax_count=sum(1 for c in types.values() if c == 1),
        hypotaxis_ratio=hypo,
        parataxis_ratio=para,
        type_token_ratio=len(types) / n,
        entropy=h,
        entropy_window=window_used,
        stopword_hapax_count=stop_hapax,
        top_stopword=top_stop,
        top_stopword_freq=top_stop_freq,
        top_stopword_pct=top_stop_pct,
        mean_freq_class=sum(freq_classes) / n,
        adjective_count=pos["adjective"],
        verb_count=pos["verb"],
        noun_count=pos["noun"],
    )


class FeatureExtractor(TransformerMixin, BaseEstimator):
    """Turn documents (or raw strings) into the numeric attribute matrix.

    Stateless: ``fit`` only records the output feature names.
    """

    def __init__(self, lexica=None, entropy_window=DEFAULT_ENTROPY_WINDOW):
        self.lexica = lexica
        self.entropy_window = entropy_window

    def fit(self, X, y=None):
        self.feature_names_out_ = np.array(NUMERIC_FIELDS, dtype=object)
        return self

    def vectors(self, X):
        return [extract_features(d, lexica=self.lexica, entropy_window=self.entropy_window) for d in X]

    def transform(self, X):
        rows = [fv.numeric() for fv in self.vectors(X)]
        if not rows:
            return np.empty((0, len(NUMERIC_FIELDS)))
        return np.vstack(rows)

    def get_feature_names_out(self, input_features=None):
        return np.array(NUMERIC_FIELDS, dtype=object)


# ---------------------------------------------------------------------------
# CSV export / import

META_COLUMNS = ("id", "author", "genre")


def format_value(value):
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    return f"{float(value):.9g}"


def write_feature_csv(path, docs, vectors):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(META_COLUMNS + FIELD_NAMES)
        for doc, fv in zip(docs, vectors):
            writer.writerow([doc.id, doc.author, doc.genre] + [format_value(v) for v in astuple(fv)])


@dataclass
class FeatureTable:
    """Feature CSV contents: document metadata plus the numeric matrix."""

    ids: list
    authors: list
    genres: list
    names: tuple
    X: np.ndarray

    def select(self, names):
        idx = [self.names.index(n) for n in names]
        return FeatureTable(self.ids, self.authors, self.genres, tuple(names), self.X[:, idx])

    def subset(self, mask):
        mask = np.asarray(mask)
        pick = lambda seq: [v for v, m in zip(seq, mask) if m]
        return FeatureTable(pick(self.ids), pick(self.authors), pick(self.genres), self.names, self.X[mask])


def read_feature_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = [c for c in META_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"{path}: feature CSV lacks column(s) {', '.join(missing)}")
        names = tuple(c for c in header if c not in META_COLUMNS and c not in TEXT_FIELDS)
        ids, authors, genres, rows = [], [], [], []
        for lineno, row in enumerate(reader, start=2):
            ids.append(row["id"])
            authors.append(row["author"])
            genres.append(row["genre"])
            try:
                rows.append([float(row[n]) for n in names])
            except (TypeError, ValueError):
                raise ValueError(f"{path}:{lineno}: non-numeric attribute value") from None
    X = np.array(rows, dtype=float).reshape(len(rows), len(names))
    return FeatureTable(ids, authors, genres, names, X)
