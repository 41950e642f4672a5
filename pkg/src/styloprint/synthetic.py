"""Synthetic German-like corpora with author-specific style parameters.

Each author gets their own sentence-length distribution, subordinate-clause
rate, word-class mix, pronoun habits, vocabulary size and word-length
preference; documents are sampled from those parameters. The genre shifts
the ranges the author parameters are drawn from.

    python -m styloprint.synthetic OUT_DIR [--authors-per-genre 5] [--docs 4] [--seed 42]
"""
import argparse
from dataclasses import dataclass

import numpy as np

from .corpus import Document, write_corpus
from .lexicon import default_lexica

GENRES = ("fairy_tale", "common_speech", "technical_language")
SUBORDINATORS = ("weil", "dass", "obwohl", "wenn", "nachdem", "damit", "bevor")
RELATIVES = ("der", "die", "das", "welche")
CATEGORIES = ("noun", "verb", "adjective", "function")

# (low, high) ranges for author parameters, per genre
GENRE_RANGES = {
    "fairy_tale": dict(sent_mean=(8, 22), hypo=(0.15, 0.7), adj=(0.10, 0.25), ich=(0.0, 0.03),
                       wir=(0.0, 0.02), vocab=(150, 700), length_bias=(-0.3, 0.1), doc_len=(350, 650)),
    "common_speech": dict(sent_mean=(5, 14), hypo=(0.05, 0.45), adj=(0.04, 0.15), ich=(0.01, 0.06),
                          wir=(0.0, 0.03), vocab=(120, 600), length_bias=(-0.4, 0.0), doc_len=(300, 600)),
    "technical_language": dict(sent_mean=(10, 26), hypo=(0.2, 0.8), adj=(0.06, 0.18), ich=(0.0, 0.01),
                               wir=(0.0, 0.04), vocab=(400, 1500), length_bias=(0.0, 0.4), doc_len=(400, 800)),
}


@dataclass(frozen=True)
class AuthorStyle:
    name: str
    genre: str
    sent_mean: float
    sent_sd: float
    hypo: float
    mix: tuple
    ich: float
    wir: float
    zipf: float
    doc_len: int
    vocab: dict


def _pools(lexica):
    by_class = {"noun": [], "verb": [], "adjective": []}
    for tok, cls in sorted(lexica.pos.entries.items()):
        if cls in by_class:
            by_class[cls].append(tok)
    # extra noun-like material from the reference frequency list
    known = set(lexica.pos.entries) | set(lexica.stopwords.words)
    extra = [t for t in sorted(lexica.frequencies.freq) if t not in known and t.isalpha() and len(t) > 3]
    by_class["noun"] += extra
    by_class["function"] = sorted(
        w for w in lexica.stopwords.words
        if w not in {"ich", "wir"} and lexica.pos.entries.get(w) not in ("conjunction_sub",)
    )
    return by_class


def _pick_vocab(rng, pool, size, length_bias):
    lengths = np.array([len(w) for w in pool], dtype=float)
    p = np.exp(length_bias * (lengths - lengths.mean()))
    p /= p.sum()
    size = min(size, len(pool))
    idx = rng.choice(len(pool), size=size, replace=False, p=p)
    return [pool[i] for i in sorted(idx)]


def make_author(rng, name, genre, pools):
    r = GENRE_RANGES[genre]
    u = lambda key: rng.uniform(*r[key])
    adj = u("adj")
    verb = rng.uniform(0.12, 0.25)
    func = rng.uniform(0.25, 0.5)
    noun = max(0.05, 1.0 - adj - verb - func)
    mix = np.array([noun, verb, adj, func])
    vocab_size = int(u("vocab"))
    bias = u("length_bias")
    vocab = {
        "noun": _pick_vocab(rng, pools["noun"], vocab_size, bias),
        "verb": _pick_vocab(rng, pools["verb"], max(20, vocab_size // 3), bias),
        "adjective": _pick_vocab(rng, pools["adjective"], max(15, vocab_size // 4), bias),
        "function": _pick_vocab(rng, pools["function"], int(rng.uniform(30, len(pools["function"]))), 0.0),
    }
    sent_mean = u("sent_mean")
    return AuthorStyle(
        name=name,
        genre=genre,
        sent_mean=sent_mean,
        sent_sd=rng.uniform(0.15, 0.5) * sent_mean,
        hypo=u("hypo"),
        mix=tuple(mix / mix.sum()),
        ich=u("ich"),
        wir=u("wir"),
        zipf=rng.uniform(0.7, 1.4),
        doc_len=int(u("doc_len")),
        vocab=vocab,
    )


def _zipf_draw(rng, words, s):
    ranks = np.arange(1, len(words) + 1, dtype=float)
    p = ranks ** -s
    return words[rng.choice(len(words), p=p / p.sum())]


def _word(rng, style):
    roll = rng.random()
    if roll < style.ich:
        return "ich", "pronoun"
    if roll < style.ich + style.wir:
        return "wir", "pronoun"
    cat = CATEGORIES[rng.choice(4, p=style.mix)]
    return _zipf_draw(rng, style.vocab[cat], style.zipf), cat


def _sentence(rng, style):
    length = max(3, int(round(rng.normal(style.sent_mean, style.sent_sd))))
    words = []
    for _ in range(length):
        w, cat = _word(rng, style)
        words.append(w.capitalize() if cat == "noun" else w)
    if rng.random() < style.hypo and length >= 4:
        at = int(rng.integers(2, length - 1))
        link = rng.choice(SUBORDINATORS) if rng.random() < 0.6 else rng.choice(RELATIVES)
        words[at] = f", {link}"
    words[0] = words[0][:1].upper() + words[0][1:]
    end = rng.choice([".", ".", ".", ".", "!", "?"])
    return " ".join(words).replace(" ,", ",") + end


def make_document(rng, style, doc_id):
    target = max(50, int(rng.normal(style.doc_len, 0.1 * style.doc_len)))
    sentences = []
    n = 0
    if style.genre == "fairy_tale":
        sentences.append("Es war einmal ein König.")
        n += 5
    while n < target:
        s = _sentence(rng, style)
        sentences.append(s)
        n += s.count(" ") + 1
    paragraphs = [" ".join(sentences[i:i + 6]) for i in range(0, len(sentences), 6)]
    return Document(doc_id, style.name, style.genre, f"{style.name} #{doc_id}", "\n\n".join(paragraphs) + "\n")


def synthetic_corpus(authors_per_genre=5, docs_per_author=4, seed=42, genres=GENRES, lexica=None):
    """Documents for ``len(genres) * authors_per_genre`` authors, deterministic in ``seed``."""
    rng = np.random.default_rng(seed)
    pools = _pools(lexica or default_lexica())
    docs = []
    for g in genres:
        for a in range(authors_per_genre):
            style = make_author(rng, f"{g}_author{a + 1}", g, pools)
            for d in range(docs_per_author):
                docs.append(make_document(rng, style, f"{g[:2]}{a + 1:02d}d{d + 1}"))
    return sorted(docs, key=lambda d: d.id)


def main(argv=None):
    ap = argparse.ArgumentParser(prog="python -m styloprint.synthetic", description="Write a synthetic corpus.")
    ap.add_argument("out", help="target corpus directory")
    ap.add_argument("--authors-per-genre", type=int, default=5)
    ap.add_argument("--docs", type=int, default=4, help="documents per author")
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args(argv)
    docs = synthetic_corpus(args.authors_per_genre, args.docs, args.seed)
    write_corpus(args.out, docs)
    print(f"wrote {len(docs)} documents to {args.out}")


if __name__ == "__main__":
    main()
