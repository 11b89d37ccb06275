#!/usr/bin/env python3
"""Second implementation of BLEU@4 and ROUGE-L, written from the metric
definitions only. Regenerates tests/fixtures/text_metrics_oracle.json."""
import json
import math
import os
import random
import re
from collections import Counter

WORDS = ["the", "lesion", "shows", "a", "marked", "contrast", "enhancement", "in", "left",
         "lobe", "MRI", "CT", "axial", "T2", "signal", "of", "tumor", "and", "edema"]
PUNCT = [",", ".", ";", ":", "(", ")", "-", "/"]


def tokens(s):
    return re.findall(r"[a-z0-9]+", s.lower())


def ngrams(t, n):
    return Counter(tuple(t[i:i + n]) for i in range(len(t) - n + 1))


def bleu4(cand, ref):
    c, r = tokens(cand), tokens(ref)
    if not c:
        return 0.0
    precisions = []
    for n in range(1, 5):
        cn, rn = ngrams(c, n), ngrams(r, n)
        match = sum(min(k, rn[g]) for g, k in cn.items())
        total = max(len(c) - n + 1, 0)
        if match == 0:
            precisions.append((match + 1) / (total + 1))
        else:
            precisions.append(match / total)
    geo = math.prod(precisions) ** 0.25
    bp = 1.0 if len(c) >= len(r) else math.exp(1 - len(r) / len(c))
    return bp * geo


def lcs(a, b):
    table = [[0] * (len(b) + 1) for _ in range(len(a) + 1)]
    for i, x in enumerate(a, 1):
        for j, y in enumerate(b, 1):
            table[i][j] = table[i - 1][j - 1] + 1 if x == y else max(table[i - 1][j], table[i][j - 1])
    return table[-1][-1]


def rouge_l(cand, ref):
    c, r = tokens(cand), tokens(ref)
    if not c or not r:
        return 0.0, 0.0, 0.0
    l = lcs(c, r)
    p, rec = l / len(c), l / len(r)
    f = 0.0 if p + rec == 0 else 2 * p * rec / (p + rec)
    return p, rec, f


def sentence(rng, n):
    out = []
    for _ in range(n):
        w = rng.choice(WORDS)
        if rng.random() < 0.2:
            w = w.upper()
        out.append(w)
        if rng.random() < 0.15:
            out.append(rng.choice(PUNCT))
    return " ".join(out)


def main():
    rng = random.Random(20260401)
    cases = []
    for i in range(30):
        ref = sentence(rng, rng.randint(3, 25))
        if i == 0:
            cand = ""
        elif i < 4:
            cand = ref
        elif i < 12:
            words = ref.split()
            keep = [w for w in words if rng.random() < 0.8]
            cand = " ".join(keep) + " " + sentence(rng, rng.randint(0, 4))
        else:
            cand = sentence(rng, rng.randint(1, 25))
        p, r, f = rouge_l(cand, ref)
        cases.append({"candidate": cand, "reference": ref, "bleu4": bleu4(cand, ref),
                      "rouge_precision": p, "rouge_recall": r, "rouge_f": f})
    out = os.path.join(os.path.dirname(__file__), "..", "fixtures", "text_metrics_oracle.json")
    with open(out, "w") as fh:
        json.dump(cases, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
