"""Phase 1: per-word knowledge extraction from documents.

Each vocabulary word gets its own single-output machine. Every training
example draws a target bit q, samples up to `a` documents that contain the
word (q=1) or do not (q=0), unions their word sets into a negation-closed
literal vector, and applies one update. The trained bank is distilled into
the word's clause knowledge.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .corpus import DocumentSet, Vocabulary
from .cotm import init_bank, negation_closed_vector, update
from .knowledge import KnowledgeStore, WordKnowledge, from_bank


@dataclass(frozen=True)
class Phase1Config:
    """Training regime; defaults follow the reference configuration
    (2000 examples/epoch, window 25, 1600 clauses, T=3200, s=5.0, 25 epochs)."""

    r: int = 2000
    a: int = 25
    epochs: int = 25
    num_clauses: int = 1600
    T: int = 3200
    s: float = 5.0
    N: int = 128
    seed: int = 0

    def __post_init__(self):
        if self.r < 1 or self.a < 1 or self.epochs < 1:
            raise ValueError("r, a and epochs must be >= 1")


def pick_documents(ds: DocumentSet, word: int, q: int, a: int,
                   rng: np.random.Generator) -> np.ndarray:
    """min(a, eligible) distinct documents, uniform without replacement."""
    if not 0 <= word < ds.V:
        raise ValueError(f"word index {word} out of range")
    if q == 1:
        eligible = ds.containing(word)
        if eligible.size == 0:
            raise ValueError(f"no supporting documents for word {word}")
    else:
        eligible = ds.not_containing(word)
        if eligible.size == 0:
            raise ValueError(f"no non-supporting documents for word {word}")
    n = min(a, eligible.size)
    return rng.choice(eligible, size=n, replace=False)


def build_x_from_documents(ds: DocumentSet, word: int, q: int, a: int,
                           rng: np.random.Generator) -> np.ndarray:
    """Union the picked documents' word sets into a negation-closed vector."""
    picked = pick_documents(ds, word, q, a, rng)
    if picked.size:
        features = np.unique(np.concatenate([ds.docs[d] for d in picked]))
    else:
        features = ()
    return negation_closed_vector(features, ds.V)


def _word_rng(cfg: Phase1Config, word: int) -> np.random.Generator:
    # Per-word stream: retraining one word reproduces its batch result exactly.
    return np.random.default_rng([cfg.seed, word])


def train_word(ds: DocumentSet, word: int, cfg: Phase1Config) -> WordKnowledge:
    """Train one word's machine and extract its nonzero-weight clauses."""
    if not 0 <= word < ds.V:
        raise ValueError(f"word index {word} out of range")
    if ds.containing(word).size == 0:
        raise ValueError(f"no supporting documents for word {word}")
    rng = _word_rng(cfg, word)
    bank = init_bank(cfg.num_clauses, 1, ds.V, cfg.N, cfg.T, cfg.s)
    for _ in range(cfg.epochs):
        for _ in range(cfg.r):
            q = int(rng.integers(2))
            x = build_x_from_documents(ds, word, q, cfg.a, rng)
            update(bank, x, 0, q, rng)
    return from_bank(bank, word)


def train_all(ds: DocumentSet, vocab: Vocabulary, cfg: Phase1Config,
              parallelism: int = 1) -> KnowledgeStore:
    """Train every vocabulary word independently.

    Per-word failures are recorded in the store (empty entry + message); they
    never abort the batch. Results are identical for any parallelism level.
    """
    store = KnowledgeStore(vocab_hash=vocab.digest(), V=vocab.size)
    words = range(vocab.size)
    if parallelism > 1:
        with ProcessPoolExecutor(max_workers=parallelism) as pool:
            futures = {w: pool.submit(train_word, ds, w, cfg) for w in words}
            for w, fut in futures.items():
                try:
                    store.entries[w] = fut.result()
                except ValueError as err:
                    store.entries[w] = WordKnowledge(word=w, clauses=())
                    store.failures[w] = str(err)
    else:
        for w in words:
            try:
                store.entries[w] = train_word(ds, w, cfg)
            except ValueError as err:
                store.entries[w] = WordKnowledge(word=w, clauses=())
                store.failures[w] = str(err)
    return store
