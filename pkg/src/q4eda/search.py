"""Retrieval backends: a built-in positional inverted index and a thin
Elasticsearch client.

The local backend scores tf-idf per term, sums within groups, and
gates & groups on every child matching, mirroring how the ES simple
query dialect treats +. It exists so the whole pipeline runs
deterministic and offline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import httpx

from .data import Document
from .ir import And, Or, QueryExpr, Required, Scaled, Term, scale
from .nlp import tokenize

SNIPPET_RADIUS = 15  # tokens kept on each side of the best match


class BackendError(RuntimeError):
    """A retrieval backend failed (network, HTTP, malformed reply)."""


@dataclass(frozen=True)
class DocHit:
    doc_id: str
    score: float
    snippet: str


class Index:
    """Positional inverted index over tokenize(title + body)."""

    def __init__(self, corpus: list[Document]):
        self.doc_count = len(corpus)
        self.postings: dict[str, dict[str, list[int]]] = {}
        self.doc_tokens: dict[str, list[str]] = {}
        for doc in corpus:
            tokens = tokenize(doc.text)
            self.doc_tokens[doc.id] = tokens
            for pos, token in enumerate(tokens):
                self.postings.setdefault(token, {}).setdefault(doc.id, []).append(pos)

    @property
    def term_count(self) -> int:
        return len(self.postings)

    def doc_frequency(self, token: str) -> int:
        return len(self.postings.get(token, ()))


def build_index(corpus: list[Document]) -> Index:
    return Index(corpus)


def _phrase_occurrences(index: Index, seq: list[str]) -> dict[str, list[int]]:
    """doc -> start positions where seq appears contiguously."""
    first = index.postings.get(seq[0], {})
    rest = [index.postings.get(t, {}) for t in seq[1:]]
    out: dict[str, list[int]] = {}
    for doc_id, starts in first.items():
        followers = []
        for positions in rest:
            if doc_id not in positions:
                followers = None
                break
            followers.append(set(positions[doc_id]))
        if followers is None:
            continue
        matched = [p for p in starts
                   if all(p + i + 1 in s for i, s in enumerate(followers))]
        if matched:
            out[doc_id] = matched
    return out


# evaluation carries (score, best term score, best term position) per doc
_Entry = tuple[float, float, int]


def _eval_term(term: Term, index: Index) -> dict[str, _Entry]:
    seq = tokenize(term.text)
    if not seq:
        return {}
    if len(seq) == 1:
        occurrences = index.postings.get(seq[0], {})
    else:
        occurrences = _phrase_occurrences(index, seq)
    if not occurrences:
        return {}
    # document frequency of a phrase is counted against actual
    # positional matches, not its individual words
    idf = math.log(1.0 + index.doc_count / len(occurrences))
    out = {}
    for doc_id, positions in occurrences.items():
        score = len(positions) * idf * term.weight
        out[doc_id] = (score, score, positions[0])
    return out


def _eval(node: QueryExpr, index: Index) -> dict[str, _Entry]:
    if isinstance(node, Term):
        return _eval_term(node, index)
    if isinstance(node, Scaled):
        return _eval(scale(node.child, node.factor), index)
    if isinstance(node, Required):
        return _eval(node.child, index)
    if isinstance(node, Or):
        merged: dict[str, _Entry] = {}
        for child in node.children:
            for doc_id, (score, best, pos) in _eval(child, index).items():
                if doc_id in merged:
                    total, best0, pos0 = merged[doc_id]
                    if best > best0:
                        best0, pos0 = best, pos
                    merged[doc_id] = (total + score, best0, pos0)
                else:
                    merged[doc_id] = (score, best, pos)
        return merged
    parts = [_eval(child, index) for child in node.children]
    shared = set(parts[0])
    for part in parts[1:]:
        shared &= set(part)
    out = {}
    for doc_id in shared:
        total, best, pos = 0.0, -1.0, 0
        for part in parts:
            score, child_best, child_pos = part[doc_id]
            total += score
            if child_best > best:
                best, pos = child_best, child_pos
        out[doc_id] = (total, best, pos)
    return out


def _snippet(tokens: list[str], pos: int) -> str:
    lo = max(0, pos - SNIPPET_RADIUS)
    return " ".join(tokens[lo:pos + SNIPPET_RADIUS + 1])


def execute(index: Index, query: QueryExpr, top_k: int = 10) -> list[DocHit]:
    """Run a (negation-free) query against the local index. Hits come
    back sorted by score descending, doc id ascending."""
    if top_k < 1:
        raise ValueError("top_k must be >= 1")
    scored = _eval(query, index)
    ranked = sorted(scored.items(), key=lambda kv: (-kv[1][0], kv[0]))
    return [DocHit(doc_id, score, _snippet(index.doc_tokens[doc_id], pos))
            for doc_id, (score, _, pos) in ranked[:top_k]]


@dataclass(frozen=True)
class EsSettings:
    url: str
    index: str = "documents"
    timeout_ms: int = 5000


def execute_es(settings: EsSettings, query_text: str, top_k: int = 10) -> list[DocHit]:
    """simple_query_string search over title/body on an ES-compatible
    endpoint."""
    body = {
        "size": top_k,
        "query": {"simple_query_string": {"query": query_text,
                                          "fields": ["title", "body"]}},
    }
    url = f"{settings.url.rstrip('/')}/{settings.index}/_search"
    try:
        response = httpx.post(url, json=body, timeout=settings.timeout_ms / 1000)
        response.raise_for_status()
        payload = response.json()
        hits = payload["hits"]["hits"]
    except httpx.HTTPStatusError as exc:
        raise BackendError(
            f"search backend returned {exc.response.status_code}: "
            f"{exc.response.text[:200]}") from exc
    except httpx.HTTPError as exc:
        raise BackendError(f"search backend unreachable: {exc}") from exc
    except (KeyError, ValueError) as exc:
        raise BackendError(f"malformed backend reply: {exc}") from exc
    out = []
    for hit in hits:
        source = hit.get("_source", {})
        body_text = str(source.get("body", ""))
        words = body_text.split()
        snippet = " ".join(words[:2 * SNIPPET_RADIUS + 1])
        out.append(DocHit(str(hit.get("_id")), float(hit.get("_score") or 0.0), snippet))
    return out
