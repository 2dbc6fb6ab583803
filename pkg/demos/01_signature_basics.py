#!/usr/bin/env python3
"""Walk through the signature pipeline on a handful of tiny documents.

A document is reduced to a short vector (its signature) by scoring it
against the partitions of a shared reference gram sequence. Similar
documents get similar signatures, so comparing signatures stands in for
comparing the full texts.
"""

from refsig import (
    Document,
    ReferenceText,
    classify,
    ClassifierConfig,
    cosine,
    extract_3grams,
    normalize,
    partition,
    sign,
    signature_similarity,
)

# --- normalization and 3-grams ---------------------------------------------

raw = "The  QUICK   Brown Fox!\n"
text = normalize(raw)
print("raw:       ", repr(raw))
print("normalized:", repr(text))

vec = extract_3grams(text)
print(f"\n{len(vec)} distinct 3-grams, total mass {sum(vec.counts.values())}")
print("a few of them:", dict(list(vec.counts.items())[:6]))

# exact cosine is the ground truth the signatures approximate
a = Document.from_raw("a", "the quick brown fox jumps over the lazy dog")
b = Document.from_raw("b", "the quick brown fox jumped over a lazy dog")
c = Document.from_raw("c", "completely unrelated sentence about databases")
print("\nexact cosine a~b:", round(cosine(a.vector, b.vector), 4))
print("exact cosine a~c:", round(cosine(a.vector, c.vector), 4))

# --- a reference text and its partitions ------------------------------------

# Normally the reference comes from the trainer; here we build a tiny one by
# hand from grams that occur in our documents.
ref = ReferenceText(
    ["the", "he ", "qui", "uic", "ick", "bro", "row", "own",
     "fox", "ox ", "laz", "azy", "dog", "og ", "jum", "ump"],
    partitions=4,
)
print(f"\nreference: {len(ref)} grams in {ref.partitions} partitions")
for k, part in enumerate(partition(ref)):
    print(f"  partition {k}: {sorted(part.counts)}")

# --- signatures --------------------------------------------------------------

sig_a, sig_b, sig_c = (sign(doc, ref) for doc in (a, b, c))
print("\nsignature of a:", sig_a.scores.round(3).tolist())
print("signature of b:", sig_b.scores.round(3).tolist())
print("signature of c:", sig_c.scores.round(3).tolist())

print("\nsignature similarity a~b:", round(signature_similarity(sig_a, sig_b), 4))
print("signature similarity a~c:", round(signature_similarity(sig_a, sig_c), 4))

# --- classification -----------------------------------------------------------

cfg = ClassifierConfig(t1=0.99, t2=0.90)
for name, other in [("b", sig_b), ("c", sig_c)]:
    verdict = classify(signature_similarity(sig_a, other), cfg)
    print(f"a vs {name}: {verdict.label.value} (similarity {verdict.similarity:.4f})")
