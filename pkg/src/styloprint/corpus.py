"""Corpus loading and tokenization.

A corpus is a directory holding ``manifest.csv`` (header
``id,author,genre,title,path``) plus one UTF-8 text file per document.
"""
import csv
import re
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path

MANIFEST_NAME = "manifest.csv"
MANIFEST_FIELDS = ("id", "author", "genre", "title", "path")

# letters/digits, joined by single internal hyphens or apostrophes
_TOKEN_RE = re.compile(r"[^\W_]+(?:['’\-][^\W_]+)*")
_TERMINATORS = ".!?"
_CLOSERS = "\"'“”’»«)]"
_OPENERS = "\"'„“‚‘»«(["
_PARAGRAPH_RE = re.compile(r"\n[ \t\r\f\v]*\n")


class CorpusError(ValueError):
    """Raised when a corpus directory or manifest is malformed."""


@dataclass(frozen=True)
class Document:
    id: str
    author: str
    genre: str
    title: str
    text: str

    def __post_init__(self):
        for name in ("id", "author", "genre"):
            if not getattr(self, name).strip():
                raise CorpusError(f"document {self.id!r}: empty {name}")
        if not self.text.strip():
            raise CorpusError(f"document {self.id!r}: empty text")


@dataclass(frozen=True)
class TokenStream:
    """Tokens of a text plus half-open sentence ranges into them.

    ``commas`` holds the indices of tokens that directly follow a comma; the
    punctuation itself is dropped from ``tokens``.
    """

    tokens: tuple = ()
    sentences: tuple = ()
    commas: frozenset = field(default_factory=frozenset)

    @property
    def raw_sentence_count(self):
        return len(self.sentences)

    @property
    def folded(self):
        """Lowercase view of ``tokens``."""
        return tuple(t.lower() for t in self.tokens)

    def __len__(self):
        return len(self.tokens)

    def sentence_tokens(self):
        for start, end in self.sentences:
            yield self.tokens[start:end]


def _boundary_after_period(text, i):
    """True if the period at ``text[i]`` ends a sentence (abbreviation guard)."""
    j = i + 1
    n = len(text)
    while j < n and text[j] in _TERMINATORS + _CLOSERS:
        j += 1
    if j == n:
        return True
    if not text[j].isspace():
        return False
    while j < n and text[j].isspace():
        j += 1
    if j == n:
        return True
    while j < n and text[j] in _OPENERS:
        j += 1
    return j < n and text[j].isupper()


def _split_segments(text):
    """Cut ``text`` into sentence-sized character spans."""
    cuts = set()
    for m in _PARAGRAPH_RE.finditer(text):
        cuts.add(m.start())
    for i, ch in enumerate(text):
        if ch in "!?":
            cuts.add(i + 1)
        elif ch == "." and _boundary_after_period(text, i):
            cuts.add(i + 1)
    cuts.add(len(text))
    start = 0
    for cut in sorted(cuts):
        if cut > start:
            yield start, cut
            start = cut


def tokenize(text):
    """Tokenize ``text`` into words and sentences.

    Punctuation is dropped; original casing is kept. Sentences end at ``!``,
    ``?``, paragraph breaks, and at periods followed by whitespace and an
    uppercase letter (or end of text).
    """
    text = unicodedata.normalize("NFC", text)
    tokens = []
    sentences = []
    commas = set()
    for seg_start, seg_end in _split_segments(text):
        first = len(tokens)
        last_end = seg_start
        for m in _TOKEN_RE.finditer(text, seg_start, seg_end):
            if len(tokens) > first and "," in text[last_end:m.start()]:
                commas.add(len(tokens))
            tokens.append(m.group())
            last_end = m.end()
        if len(tokens) > first:
            sentences.append((first, len(tokens)))
    return TokenStream(tuple(tokens), tuple(sentences), frozenset(commas))


def read_manifest(root):
    root = Path(root)
    path = root / MANIFEST_NAME
    if not path.is_file():
        raise CorpusError(f"no {MANIFEST_NAME} in {root}")
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return []
        missing = [f for f in MANIFEST_FIELDS if f not in reader.fieldnames]
        if missing:
            raise CorpusError(f"{path}: manifest header lacks {', '.join(missing)}")
        return [dict(row) for row in reader]


def load_corpus(root):
    """Load every document listed in ``root/manifest.csv``, ordered by id."""
    root = Path(root)
    docs = {}
    for line, row in enumerate(read_manifest(root), start=2):
        doc_id = (row["id"] or "").strip()
        rel = (row["path"] or "").strip()
        if not doc_id:
            raise CorpusError(f"manifest line {line}: empty id")
        if doc_id in docs:
            raise CorpusError(f"manifest line {line}: duplicate id {doc_id!r}")
        file = root / rel
        if not rel or not file.is_file():
            raise CorpusError(f"document {doc_id!r}: missing file {rel!r}")
        try:
            text = file.read_bytes().decode("utf-8")
        except UnicodeDecodeError as exc:
            raise CorpusError(f"document {doc_id!r}: {rel!r} is not valid UTF-8 ({exc.reason})") from None
        docs[doc_id] = Document(
            id=doc_id,
            author=(row["author"] or "").strip(),
            genre=(row["genre"] or "").strip(),
            title=(row["title"] or "").strip(),
            text=text,
        )
    return [docs[k] for k in sorted(docs)]


def write_corpus(root, docs):
    """Write ``docs`` as a corpus directory (one ``<id>.txt`` per document)."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    with open(root / MANIFEST_NAME, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MANIFEST_FIELDS)
        for doc in docs:
            name = f"{doc.id}.txt"
            (root / name).write_text(doc.text, encoding="utf-8")
            writer.writerow([doc.id, doc.author, doc.genre, doc.title, name])
