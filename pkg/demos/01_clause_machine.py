"""A first look at the coalesced clause machine.

We teach a tiny two-output machine that output 0 means "fruit context"
(apple or pear present) and output 1 means "metal context", then read the
learned conjunctive clauses back out.
"""

import numpy as np

from tmembed.corpus import Vocabulary
from tmembed.cotm import init_bank, negation_closed_vector, predict, update, vote_sum
from tmembed.knowledge import from_bank

vocab = Vocabulary.from_words(["apple", "pear", "iron", "copper"])
V = vocab.size

rng = np.random.default_rng(0)
bank = init_bank(num_clauses=10, num_outputs=2, V=V, N=32, T=12, s=3.0)

fruit_docs = [["apple"], ["pear"], ["apple", "pear"]]
metal_docs = [["iron"], ["copper"], ["iron", "copper"]]

for _ in range(300):
    for docs, output in ((fruit_docs, 0), (metal_docs, 1)):
        doc = docs[rng.integers(len(docs))]
        x = negation_closed_vector([vocab.index_of[t] for t in doc], V)
        update(bank, x, output, 1, rng)   # this context supports the output
        update(bank, x, 1 - output, 0, rng)  # and contradicts the other one

probe = negation_closed_vector([vocab.index_of["apple"]], V)
print("input: apple")
print("  votes:", [vote_sum(bank, probe, o) for o in range(2)])
print("  prediction (fruit, metal):", predict(bank, probe))

probe = negation_closed_vector([vocab.index_of["copper"]], V)
print("input: copper")
print("  votes:", [vote_sum(bank, probe, o) for o in range(2)])
print("  prediction (fruit, metal):", predict(bank, probe))


def literal_name(l):
    return vocab.words[l] if l < V else "¬" + vocab.words[l - V]


print("\nclauses voting for 'fruit':")
for clause in from_bank(bank, word=0, output=0).clauses:
    if clause.weight > 0:
        body = " AND ".join(literal_name(l) for l in clause.literals) or "(empty)"
        print(f"  {body}  @{clause.weight:+d}")
