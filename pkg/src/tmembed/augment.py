"""Embedding-driven data augmentation and the propositional sentiment classifier.

Positive documents have tokens substituted with highly similar words, negative
documents with dissimilar ones; the label never changes. Classification uses a
single-output machine over negation-closed presence vectors, so every decision
is traceable to conjunctive clauses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .corpus import Vocabulary
from .cotm import ClauseBank, init_bank, negation_closed_vector, predict, update
from .phase2 import EmbeddingMatrix

# Kept deliberately small: only blocks the most frequent function words from
# entering the dissimilar-substitution pools.
STOPWORDS = frozenset(
    "the a an and or but of to in on at for with as by is are was were be been "
    "it this that these those i you he she we they not no".split())

POSITIVE = 1
NEGATIVE = 0


@dataclass(frozen=True)
class LabeledDocument:
    tokens: tuple[str, ...]
    word_set: frozenset[int]
    label: int


def make_document(tokens, vocab: Vocabulary, label: int) -> LabeledDocument:
    if label not in (0, 1):
        raise ValueError(f"label must be 0 or 1, got {label!r}")
    tokens = tuple(tokens)
    word_set = frozenset(vocab.index_of[t] for t in tokens if t in vocab.index_of)
    return LabeledDocument(tokens=tokens, word_set=word_set, label=label)


@dataclass(frozen=True)
class AugmentConfig:
    replace_fraction: float = 0.15
    pool_size: int = 10
    similar_for_positive: bool = True
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.replace_fraction <= 1.0:
            raise ValueError("replace_fraction must be in (0, 1]")
        if self.pool_size < 1:
            raise ValueError("pool_size must be >= 1")


def nearest_words(word: int, emb: EmbeddingMatrix, n: int, order: str = "most",
                  exclude: frozenset[int] = frozenset()) -> list[int]:
    """Top-n (or bottom-n) embedded words by cosine to the given word's row.

    The word itself, zero-vector rows, and excluded indices never appear.
    Ties break on word index for determinism.
    """
    if order not in ("most", "least"):
        raise ValueError(f"order must be 'most' or 'least', got {order!r}")
    try:
        i = emb.words.index(word)
    except ValueError:
        raise ValueError(f"word {word} has no embedding") from None
    v = emb.rows[i]
    nv = np.linalg.norm(v)
    if nv == 0.0:
        raise ValueError("zero vector")
    norms = np.linalg.norm(emb.rows, axis=1)
    scored = []
    for j, w in enumerate(emb.words):
        if j == i or w in exclude or norms[j] == 0.0:
            continue
        sim = float(np.dot(v, emb.rows[j]) / (nv * norms[j]))
        scored.append((sim, w))
    if order == "most":
        scored.sort(key=lambda t: (-t[0], t[1]))
    else:
        scored.sort(key=lambda t: (t[0], t[1]))
    return [w for _, w in scored[:n]]


def _substitution_pools(emb: EmbeddingMatrix, vocab: Vocabulary,
                        cfg: AugmentConfig, label: int,
                        needed) -> dict[int, list[int]]:
    # Dissimilar pools exclude stopwords; random junk words would still be
    # dissimilar, but frequent function words would wreck the document.
    if label == POSITIVE:
        order, exclude = "most", frozenset()
    else:
        order = "least"
        exclude = frozenset(vocab.index_of[t] for t in STOPWORDS
                            if t in vocab.index_of)
    pools = {}
    for w in needed:
        try:
            pool = nearest_words(w, emb, cfg.pool_size, order, exclude)
        except ValueError:
            pool = []
        pools[w] = pool
    return pools


def augment_document(doc: LabeledDocument, emb: EmbeddingMatrix,
                     vocab: Vocabulary, cfg: AugmentConfig,
                     rng: np.random.Generator,
                     pools: dict[int, list[int]] | None = None
                     ) -> LabeledDocument:
    """Replace ceil(replace_fraction * replaceable) token positions from the
    label's similarity pools; tokens without a usable pool are never selected."""
    embedded = set(emb.words)
    present = [(p, vocab.index_of[t]) for p, t in enumerate(doc.tokens)
               if t in vocab.index_of and vocab.index_of[t] in embedded]
    if pools is None:
        pools = _substitution_pools(emb, vocab, cfg, doc.label,
                                    {w for _, w in present})
    replaceable = [(p, w) for p, w in present if pools.get(w)]
    if not replaceable:
        return doc
    n_replace = math.ceil(cfg.replace_fraction * len(replaceable))
    chosen = rng.choice(len(replaceable), size=n_replace, replace=False)
    tokens = list(doc.tokens)
    for ci in chosen:
        p, w = replaceable[ci]
        pool = pools[w]
        tokens[p] = vocab.words[pool[int(rng.integers(len(pool)))]]
    return make_document(tokens, vocab, doc.label)


def augment_corpus(docs, emb: EmbeddingMatrix, vocab: Vocabulary,
                   cfg: AugmentConfig) -> list[LabeledDocument]:
    """One augmented copy per document, same order, deterministic for a seed."""
    rng = np.random.default_rng(cfg.seed)
    needed = set()
    for doc in docs:
        needed.update(doc.word_set & set(emb.words))
    pools_by_label = {
        label: _substitution_pools(emb, vocab, cfg, label, needed)
        for label in (POSITIVE, NEGATIVE)
    }
    return [augment_document(doc, emb, vocab, cfg, rng, pools_by_label[doc.label])
            for doc in docs]


@dataclass(frozen=True)
class ClassifierConfig:
    """Defaults follow the reference sentiment setup
    (1000 clauses, T=8000, s=2.0, 10 epochs)."""

    num_clauses: int = 1000
    T: int = 8000
    s: float = 2.0
    N: int = 128
    epochs: int = 10
    seed: int = 0


def document_vector(doc: LabeledDocument, V: int) -> np.ndarray:
    return negation_closed_vector(doc.word_set, V)


def train_classifier(docs, V: int, cfg: ClassifierConfig) -> ClauseBank:
    """Single-output machine; each example updates with q = its label."""
    docs = list(docs)
    labels = {d.label for d in docs}
    if len(labels) < 2:
        raise ValueError("single-class training set")
    rng = np.random.default_rng(cfg.seed)
    bank = init_bank(cfg.num_clauses, 1, V, cfg.N, cfg.T, cfg.s)
    vectors = [document_vector(d, V) for d in docs]
    for _ in range(cfg.epochs):
        for e in rng.permutation(len(docs)):
            update(bank, vectors[e], 0, docs[e].label, rng)
    return bank


def classify(bank: ClauseBank, doc: LabeledDocument) -> int:
    V = bank.num_literals // 2
    return int(predict(bank, document_vector(doc, V))[0])


def accuracy(bank: ClauseBank, docs) -> tuple[float, dict[str, int]]:
    """(accuracy, per-class correct/total counts) over the given documents."""
    counts = {"positive_correct": 0, "positive_total": 0,
              "negative_correct": 0, "negative_total": 0}
    for doc in docs:
        side = "positive" if doc.label == POSITIVE else "negative"
        counts[side + "_total"] += 1
        if classify(bank, doc) == doc.label:
            counts[side + "_correct"] += 1
    total = counts["positive_total"] + counts["negative_total"]
    correct = counts["positive_correct"] + counts["negative_correct"]
    return (correct / total if total else 0.0), counts
