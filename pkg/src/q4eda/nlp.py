"""Word vectors, tokenization and term expansion.

A deliberately small substrate: a text-format vector file, a rule-based
lemmatizer-lite, an antonym lexicon for negative terms, and cosine
arithmetic. No training, no subwords, one language.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from importlib import resources

import numpy as np

_TOKEN = re.compile(r"[a-z0-9]+")


def _load_wordlist(name: str) -> frozenset[str]:
    text = resources.files("q4eda.resources").joinpath(name).read_text("utf-8")
    return frozenset(w.strip() for w in text.splitlines() if w.strip())


STOPWORDS = _load_wordlist("stopwords.txt")
# words whose trailing s/ies is part of the word, never a plural suffix
LEMMA_EXCEPTIONS = _load_wordlist("lemma_exceptions.txt")


def _lemma(token: str) -> str:
    if token in LEMMA_EXCEPTIONS:
        return token
    if len(token) >= 5 and token.endswith("ies"):
        return token[:-3] + "y"
    # double-s words (glass, press) keep their suffix, and stripping
    # must leave a stem of at least 3 characters
    if token.endswith("s") and not token.endswith("ss") and len(token) >= 4:
        return token[:-1]
    return token


def tokenize(text: str) -> list[str]:
    """Lowercase alphanumeric tokens, stopwords removed, plural-ish
    suffixes stripped. Idempotent: tokenize(" ".join(out)) == out."""
    out = []
    for raw in _TOKEN.findall(text.lower()):
        if raw in STOPWORDS:
            continue
        token = _lemma(raw)
        # a stripped suffix can expose a stopword ("ins" -> "in")
        if token in STOPWORDS:
            continue
        out.append(token)
    return out


@dataclass(frozen=True)
class WeightedTerm:
    term: str
    weight: float  # in (0, 1]
    negative: bool = False


class EmbeddingModel:
    """Immutable word -> vector map with a fixed dimension."""

    def __init__(self, vectors: dict[str, np.ndarray], dimension: int):
        if not vectors:
            raise ValueError("empty vocabulary")
        self.vectors = vectors
        self.dimension = dimension
        self._words = list(vectors)
        self._matrix = np.stack([vectors[w] for w in self._words])
        norms = np.linalg.norm(self._matrix, axis=1)
        norms[norms == 0.0] = 1.0
        self._norms = norms

    def __contains__(self, word: str) -> bool:
        return word in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)

    def neighbors(self, vector: np.ndarray, k: int, exclude: set[str]) -> list[tuple[str, float]]:
        """Top-k vocabulary words by cosine around vector, positive
        cosine only, ties broken alphabetically."""
        if k <= 0:
            return []
        norm = float(np.linalg.norm(vector))
        if norm == 0.0:
            return []
        sims = self._matrix @ vector / (self._norms * norm)
        scored = [(w, float(s)) for w, s in zip(self._words, sims)
                  if w not in exclude and s > 0.0]
        scored.sort(key=lambda ws: (-ws[1], ws[0]))
        return [(w, min(1.0, s)) for w, s in scored[:k]]


def load_model(path) -> EmbeddingModel:
    """Read a text vector file: word SP v1 .. vD per line. Duplicate
    words keep their first occurrence."""
    vectors: dict[str, np.ndarray] = {}
    dimension = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            parts = line.split()
            if not parts:
                continue
            word, *raw = parts
            try:
                values = [float(x) for x in raw]
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed vector line ({exc})") from None
            if dimension is None:
                if not values:
                    raise ValueError(f"{path}:{lineno}: no vector components")
                dimension = len(values)
            elif len(values) != dimension:
                raise ValueError(
                    f"{path}:{lineno}: expected {dimension} components, got {len(values)}")
            if word not in vectors:
                vectors[word] = np.asarray(values, dtype=float)
    if not vectors:
        raise ValueError(f"{path}: empty vector file")
    return EmbeddingModel(vectors, dimension)


def load_lexicon(path) -> dict[str, tuple[str, ...]]:
    """Antonym lexicon: `keyword: term1, term2` per line, lowercase."""
    entries: dict[str, tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if ":" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'keyword: terms'")
            key, _, rest = line.partition(":")
            terms = tuple(t.strip().lower() for t in rest.split(",") if t.strip())
            entries[key.strip().lower()] = terms
    return entries


def bundled_lexicon_path():
    return resources.files("q4eda.resources").joinpath("antonyms.txt")


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine of zero vector")
    return float(np.dot(a, b) / (na * nb))


def expand(keyword: str, model: EmbeddingModel, lexicon: dict[str, tuple[str, ...]],
           k: int) -> list[WeightedTerm]:
    """Literal tokens, then k cosine-weighted neighbours of the token
    centroid, then lexicon antonyms as negative terms. A keyword fully
    outside the vocabulary expands to its literal tokens only."""
    tokens = tokenize(keyword)
    if not tokens:
        normalized = " ".join(_TOKEN.findall(keyword.lower()))
        tokens = [normalized] if normalized else []
    out = [WeightedTerm(t, 1.0) for t in tokens]
    present = [model.vectors[t] for t in tokens if t in model]
    if not present:
        return out
    center = np.mean(present, axis=0)
    for word, sim in model.neighbors(center, k, exclude=set(tokens)):
        out.append(WeightedTerm(word, sim))
    for negative in lexicon.get(keyword.strip().lower(), ()):
        out.append(WeightedTerm(negative, 1.0, negative=True))
    return out


def embed_terms(terms: list[WeightedTerm], model: EmbeddingModel) -> np.ndarray:
    """Weighted mean vector of the non-negative in-vocabulary terms.
    Negative terms would drag the centroid toward the opposite concept,
    so they are excluded."""
    total = np.zeros(model.dimension)
    mass = 0.0
    for t in terms:
        if t.negative or t.term not in model:
            continue
        total += t.weight * model.vectors[t.term]
        mass += t.weight
    if mass == 0.0:
        raise ValueError("no usable term to embed")
    return total / mass


def extract_keywords(text: str, stats, k: int) -> list[tuple[str, float]]:
    """Top-k document tokens by tf-idf against the corpus behind
    stats (needs .doc_count and .doc_frequency()). Tokens absent from
    the corpus carry no usable idf and are skipped."""
    if k <= 0:
        return []
    counts: dict[str, int] = {}
    for token in tokenize(text):
        counts[token] = counts.get(token, 0) + 1
    scored = []
    for token, tf in counts.items():
        df = stats.doc_frequency(token)
        if df == 0:
            continue
        scored.append((token, tf * math.log(1.0 + stats.doc_count / df)))
    scored.sort(key=lambda ts: (-ts[1], ts[0]))
    return scored[:k]
