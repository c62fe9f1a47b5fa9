import numpy as np
import pytest

from tmembed import cotm, knowledge
from tmembed.corpus import Vocabulary
from conftest import make_store


def test_from_bank_extracts_nonzero_weight_clauses():
    bank = cotm.init_bank(3, 1, 4, N=8, T=10, s=3.0)
    bank.states[0, [1, 6]] = 9
    bank.weights[0, 0] = 2
    bank.states[1, 3] = 9
    bank.weights[1, 0] = 0   # zero weight: dropped
    bank.weights[2, 0] = -1  # empty clause, nonzero weight: kept
    k = knowledge.from_bank(bank, word=5)
    assert k.word == 5
    assert k.clauses == (knowledge.Clause((1, 6), 2), knowledge.Clause((), -1))


def test_filter_by_polarity():
    k = knowledge.WordKnowledge(0, (
        knowledge.Clause((0,), 3),
        knowledge.Clause((1,), -2),
        knowledge.Clause((2,), 1),
    ))
    assert knowledge.filter_by_polarity(k, 1) == [k.clauses[0], k.clauses[2]]
    assert knowledge.filter_by_polarity(k, 0) == [k.clauses[1]]
    all_pos = knowledge.WordKnowledge(0, (knowledge.Clause((0,), 5),))
    assert knowledge.filter_by_polarity(all_pos, 0) == []
    with pytest.raises(ValueError, match="target bit"):
        knowledge.filter_by_polarity(k, 2)


def test_polarity_filters_partition_clauses():
    rng = np.random.default_rng(12)
    for _ in range(30):
        n = int(rng.integers(0, 10))
        weights = rng.choice([-3, -1, 1, 2, 7], size=n)
        clauses = tuple(knowledge.Clause((int(i),), int(w))
                        for i, w in enumerate(weights))
        k = knowledge.WordKnowledge(0, clauses)
        pos = knowledge.filter_by_polarity(k, 1)
        neg = knowledge.filter_by_polarity(k, 0)
        assert len(pos) + len(neg) == len(clauses)
        assert set(pos).isdisjoint(neg)
        assert set(pos) | set(neg) == set(clauses)


def three_word_store():
    _, store = make_store({
        0: [((0, 3, 5), 2), ((1,), -1)],
        1: [((2, 4), 1)],
        2: [],
    }, V=3)
    store.failures[2] = "no supporting documents for word 2"
    return store


def test_save_load_round_trip(tmp_path):
    vocab = Vocabulary.from_words(["w0", "w1", "w2"])
    store = three_word_store()
    path = tmp_path / "store.tmk"
    knowledge.save(store, path)
    loaded = knowledge.load(path, vocab)
    assert loaded.vocab_hash == store.vocab_hash
    assert loaded.V == store.V
    assert loaded.entries == store.entries
    assert loaded.failures == store.failures


def test_save_is_idempotent(tmp_path):
    vocab = Vocabulary.from_words(["w0", "w1", "w2"])
    store = three_word_store()
    p1, p2 = tmp_path / "a.tmk", tmp_path / "b.tmk"
    knowledge.save(store, p1)
    knowledge.save(knowledge.load(p1, vocab), p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_load_with_wrong_vocabulary(tmp_path):
    store = three_word_store()
    path = tmp_path / "store.tmk"
    knowledge.save(store, path)
    other = Vocabulary.from_words(["x0", "x1", "x2"])
    with pytest.raises(ValueError, match="knowledge/vocabulary mismatch"):
        knowledge.load(path, other)


def test_load_truncated_file_names_last_good_word(tmp_path):
    vocab = Vocabulary.from_words(["w0", "w1", "w2"])
    store = three_word_store()
    path = tmp_path / "store.tmk"
    knowledge.save(store, path)
    data = path.read_bytes()
    # cut inside the final record
    (tmp_path / "cut.tmk").write_bytes(data[:-3])
    with pytest.raises(ValueError, match="last good word index: 1"):
        knowledge.load(tmp_path / "cut.tmk", vocab)


def test_load_bad_magic(tmp_path):
    path = tmp_path / "bogus.tmk"
    path.write_bytes(b"NOPE" + b"\x00" * 50)
    with pytest.raises(ValueError, match="bad magic"):
        knowledge.load(path, Vocabulary.from_words(["a"]))


def test_export_text(tmp_path):
    vocab = Vocabulary.from_words(["car", "road", "driver"])
    _, store = make_store({0: [((1, 2), 3), ((1, 4), -2)]}, V=3)
    store.vocab_hash = vocab.digest()
    path = tmp_path / "dump.txt"
    knowledge.export_text(store, vocab, path)
    text = path.read_text()
    assert "= car" in text
    assert "road AND driver @+3" in text
    assert "road AND ¬road @-2" in text


def test_save_rejects_invalid_knowledge(tmp_path):
    _, store = make_store({0: [((2, 1), 1)]}, V=3)  # not increasing
    with pytest.raises(ValueError, match="strictly increasing"):
        knowledge.save(store, tmp_path / "bad.tmk")
    _, store = make_store({0: [((1,), 0)]}, V=3)  # zero weight
    with pytest.raises(ValueError, match="zero weight"):
        knowledge.save(store, tmp_path / "bad.tmk")
