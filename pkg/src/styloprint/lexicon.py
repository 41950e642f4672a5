"""Stop words, POS lexicon and reference frequency table.

The package ships small default German lexica under ``styloprint/data``;
every loader also accepts a user-supplied path.
"""
import math
from dataclasses import dataclass, field
from importlib import resources
from types import MappingProxyType

WORD_CLASSES = (
    "noun",
    "verb",
    "adjective",
    "pronoun",
    "conjunction_sub",
    "conjunction_coord",
    "other",
)


class LexiconError(ValueError):
    pass


def _data_path(name):
    return resources.files("styloprint") / "data" / name


def _lines(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if line and not line.startswith("#"):
                yield lineno, line


def _tsv(path):
    for lineno, line in _lines(path):
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(f"{path}:{lineno}: expected two tab-separated columns")
        yield lineno, parts[0].strip(), parts[1].strip()


@dataclass(frozen=True)
class StopWordList:
    words: frozenset

    def __post_init__(self):
        if not self.words:
            raise LexiconError("stop word list is empty")
        bad = [w for w in self.words if w != w.lower() or any(c.isspace() for c in w) or not w]
        if bad:
            raise LexiconError(f"stop words must be lowercase without whitespace: {sorted(bad)[:5]}")

    def __contains__(self, word):
        return word in self.words

    @classmethod
    def load(cls, path=None):
        path = path or _data_path("stopwords_de.txt")
        return cls(frozenset(line.lower() for _, line in _lines(path)))


@dataclass(frozen=True)
class FrequencyTable:
    """Reference corpus counts, keyed by lowercase token."""

    freq: MappingProxyType
    f_max: int = field(init=False)
    unknown_class: int = field(init=False)

    def __post_init__(self):
        if not self.freq:
            raise LexiconError("frequency table is empty")
        if any(c < 1 for c in self.freq.values()):
            raise LexiconError("frequency counts must be >= 1")
        f_max = max(self.freq.values())
        object.__setattr__(self, "f_max", f_max)
        rarest = _freq_class(f_max, min(self.freq.values()))
        object.__setattr__(self, "unknown_class", rarest + 1)

    @classmethod
    def from_counts(cls, counts):
        merged = {}
        for tok, c in counts.items():
            key = tok.lower()
            merged[key] = merged.get(key, 0) + int(c)
        return cls(MappingProxyType(merged))

    @classmethod
    def load(cls, path=None):
        path = path or _data_path("freq_de.tsv")
        counts = {}
        for lineno, tok, count in _tsv(path):
            try:
                value = int(count)
            except ValueError:
                raise LexiconError(f"{path}:{lineno}: count {count!r} is not an integer") from None
            key = tok.lower()
            counts[key] = counts.get(key, 0) + value
        return cls.from_counts(counts)


def _freq_class(f_max, f):
    return math.floor(0.5 + math.log2(f_max / f))


def frequency_class(token, table):
    """Leipzig-style frequency class: floor(0.5 + log2(f_max / f(token)))."""
    f = table.freq.get(token.lower())
    if f is None:
        return table.unknown_class
    return _freq_class(table.f_max, f)


@dataclass(frozen=True)
class PosLexicon:
    entries: MappingProxyType
    suffix_rules: tuple = ()

    def __post_init__(self):
        for cls_ in list(self.entries.values()) + [c for _, c in self.suffix_rules]:
            if cls_ not in WORD_CLASSES:
                raise LexiconError(f"unknown word class {cls_!r}")

    @classmethod
    def from_entries(cls, entries, suffix_rules=()):
        return cls(
            MappingProxyType({k.lower(): v for k, v in entries.items()}),
            tuple((s.lower(), c) for s, c in suffix_rules),
        )

    @classmethod
    def load(cls, path=None, suffix_path=None):
        path = path or _data_path("pos_de.tsv")
        suffix_path = suffix_path or _data_path("suffix_de.tsv")
        entries = {tok: c for _, tok, c in _tsv(path)}
        rules = [(suf, c) for _, suf, c in _tsv(suffix_path)]
        return cls.from_entries(entries, rules)


def pos_tag(token, lex, midsentence=False):
    """Word class of ``token``.

    Lexicon entries win, then the first matching suffix rule; a capitalized
    token that does not open its sentence is taken as a noun.
    """
    low = token.lower()
    cls_ = lex.entries.get(low)
    if cls_ is not None:
        return cls_
    for suffix, rule_cls in lex.suffix_rules:
        if len(low) > len(suffix) and low.endswith(suffix):
            return rule_cls
    if midsentence and token[:1].isupper():
        return "noun"
    return "other"


@dataclass(frozen=True)
class Lexica:
    stopwords: StopWordList
    frequencies: FrequencyTable
    pos: PosLexicon

    @classmethod
    def load(cls, stopwords=None, frequencies=None, pos=None, suffixes=None):
        return cls(
            StopWordList.load(stopwords),
            FrequencyTable.load(frequencies),
            PosLexicon.load(pos, suffixes),
        )


_DEFAULT = None


def default_lexica():
    """The bundled German lexica (loaded once)."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Lexica.load()
    return _DEFAULT
