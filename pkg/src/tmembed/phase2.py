"""Phase 2: embeddings for a vector of target words, built from Phase-1 clauses.

Input vectors are assembled by a two-level clause expansion instead of from
documents: sample clauses of the target word's polarity, collect their
literals, then expand each original-feature literal through its own word's
clauses of the same polarity. The collected literal set is activated directly;
no negation closure is applied, because the clauses already carry negated
literals.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .corpus import Vocabulary
from .cotm import ClauseBank, init_bank, literal_vector, update
from .knowledge import KnowledgeStore, filter_by_polarity
from .phase1 import Phase1Config


@dataclass(frozen=True)
class EmbeddingMatrix:
    """Row i is the embedding of target word words[i] over the 2V literal space."""

    words: tuple[int, ...]
    rows: np.ndarray
    source: str = "signed clause-weight accumulation over included literals"


@dataclass
class Phase2Stats:
    """Optional training telemetry: shuffle positions and per-word skip counts."""

    attempts: int = 0
    skips: int = 0
    position_counts: np.ndarray | None = None
    skipped_words: Counter = field(default_factory=Counter)


def build_x_phase2(store: KnowledgeStore, word: int, q: int, a: int,
                   rng: np.random.Generator) -> np.ndarray:
    """Two-level clause expansion into a literal vector (no negation closure).

    Level 1 samples min(a, available) clauses of the word's q polarity and
    collects their literals. Level 2 expands each collected literal that is an
    original feature with a knowledge entry: sample min(a, available) of that
    word's q-polarity clauses and collect their literals too. Negated literals
    (index >= V) are activated but never expanded.
    """
    entry = store.entries.get(word)
    if entry is None:
        raise ValueError(f"word {word} has no knowledge entry")
    filtered = filter_by_polarity(entry, q)
    if not filtered:
        raise ValueError(f"no q-polarity knowledge for word {word} (q={q})")
    V = store.V
    active: set[int] = set()
    n = min(a, len(filtered))
    for j in rng.choice(len(filtered), size=n, replace=False):
        for lit in filtered[j].literals:
            active.add(lit)
            if lit >= V:
                continue
            sub_entry = store.entries.get(lit)
            if sub_entry is None:
                continue
            sub = filter_by_polarity(sub_entry, q)
            if not sub:
                continue
            m = min(a, len(sub))
            for sj in rng.choice(len(sub), size=m, replace=False):
                active.update(sub[sj].literals)
    return literal_vector(active, V)


def extract_embedding(bank: ClauseBank, o: int) -> np.ndarray:
    """Signed accumulation of clause weights over each clause's included literals."""
    if not 0 <= o < bank.num_outputs:
        raise ValueError(f"output id {o} out of range")
    return bank.included().T.astype(np.float64) @ bank.weights[:, o].astype(np.float64)


def train_embedding(store: KnowledgeStore, targets, cfg: Phase1Config,
                    stats: Phase2Stats | None = None
                    ) -> tuple[ClauseBank, EmbeddingMatrix]:
    """Train a k-output machine on expanded clause inputs; return bank and embeddings.

    Per example the targets are shuffled and a single q is drawn; each word's
    expanded vector updates only that word's output. Words whose expansion
    fails (missing polarity knowledge) are skipped and counted; a skip rate
    above 50% aborts.
    """
    targets = tuple(int(w) for w in targets)
    if len(set(targets)) != len(targets):
        raise ValueError("duplicate target words")
    for w in targets:
        if w not in store.entries:
            raise ValueError(f"target word {w} missing from knowledge store")
    k = len(targets)
    rng = np.random.default_rng(cfg.seed)
    bank = init_bank(cfg.num_clauses, k, store.V, cfg.N, cfg.T, cfg.s)
    if stats is not None and stats.position_counts is None:
        stats.position_counts = np.zeros((k, k), dtype=np.int64)
    attempts = 0
    skips = 0
    skipped: Counter = Counter()
    for _ in range(cfg.epochs):
        for _ in range(cfg.r):
            order = rng.permutation(k)
            q = int(rng.integers(2))
            for pos, oi in enumerate(order):
                if stats is not None:
                    stats.position_counts[oi, pos] += 1
                attempts += 1
                try:
                    x = build_x_phase2(store, targets[oi], q, cfg.a, rng)
                except ValueError:
                    skips += 1
                    skipped[targets[oi]] += 1
                    continue
                update(bank, x, int(oi), q, rng)
        if skips * 2 > attempts:
            raise RuntimeError(
                f"phase 2 aborted: {skips}/{attempts} word examples skipped "
                f"(worst offenders: {skipped.most_common(5)})")
    if stats is not None:
        stats.attempts = attempts
        stats.skips = skips
        stats.skipped_words = skipped
    rows = np.stack([extract_embedding(bank, o) for o in range(k)])
    return bank, EmbeddingMatrix(words=targets, rows=rows)


def token_vectors(emb: EmbeddingMatrix, vocab: Vocabulary) -> dict[str, np.ndarray]:
    """Map each target word's token to its embedding row."""
    return {vocab.words[w]: emb.rows[i] for i, w in enumerate(emb.words)}


def save_embeddings(emb: EmbeddingMatrix, vocab: Vocabulary, path,
                    sparse: bool = False) -> None:
    """Dense: token then 2V space-separated values per line.
    Sparse: token then literal:value pairs for nonzero coordinates."""
    with open(path, "w", encoding="utf-8") as fh:
        for i, w in enumerate(emb.words):
            row = emb.rows[i]
            if sparse:
                nz = row.nonzero()[0]
                cells = " ".join(f"{l}:{row[l]:.17g}" for l in nz)
            else:
                cells = " ".join(f"{v:.17g}" for v in row)
            fh.write(f"{vocab.words[w]} {cells}".rstrip() + "\n")


def load_embeddings(path, num_literals: int | None = None
                    ) -> tuple[list[str], np.ndarray]:
    """Read either embedding format back into (tokens, rows).

    Sparse files need num_literals (2V) unless at least one row's last
    coordinate is nonzero; dense files carry their width implicitly.
    """
    tokens: list[str] = []
    parsed: list[tuple[bool, list]] = []
    width = num_literals or 0
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            tokens.append(parts[0])
            cells = parts[1:]
            is_sparse = any(":" in c for c in cells)
            if is_sparse:
                pairs = []
                for c in cells:
                    l, v = c.split(":")
                    pairs.append((int(l), float(v)))
                    width = max(width, int(l) + 1)
                parsed.append((True, pairs))
            else:
                parsed.append((False, [float(v) for v in cells]))
                width = max(width, len(cells))
    rows = np.zeros((len(tokens), width), dtype=np.float64)
    for i, (is_sparse, cells) in enumerate(parsed):
        if is_sparse:
            for l, v in cells:
                rows[i, l] = v
        else:
            rows[i, :len(cells)] = cells
    return tokens, rows
