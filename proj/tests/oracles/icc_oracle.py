#!/usr/bin/env python3
"""ANOVA mean squares and ICC variants computed with numpy, independent of
the C++ code. Regenerates tests/fixtures/icc_oracle.json."""
import json
import os

import numpy as np


def icc(m):
    n, k = m.shape
    grand = m.mean()
    ss_rows = k * ((m.mean(axis=1) - grand) ** 2).sum()
    ss_cols = n * ((m.mean(axis=0) - grand) ** 2).sum()
    ss_total = ((m - grand) ** 2).sum()
    ss_err = ss_total - ss_rows - ss_cols
    msr = ss_rows / (n - 1)
    msc = ss_cols / (k - 1)
    mse = ss_err / ((n - 1) * (k - 1))
    msw = (ss_cols + ss_err) / (n * (k - 1))
    return {
        "msr": msr, "msc": msc, "mse": mse, "msw": msw,
        "icc2_1": (msr - mse) / (msr + (k - 1) * mse + k * (msc - mse) / n),
        "icc3_1": (msr - mse) / (msr + (k - 1) * mse),
        "icc1_1": (msr - msw) / (msr + (k - 1) * msw),
    }


def main():
    rng = np.random.default_rng(7)
    cases = []
    for i in range(20):
        if i % 2 == 0:
            m = rng.choice([1.0, 3.0, 5.0], size=(6, 3))
        else:
            base = rng.normal(3.0, 1.0, size=(6, 1))
            m = base + rng.normal(0.0, 0.4, size=(6, 3)) + rng.normal(0.0, 0.3, size=(1, 3))
        if np.all(m == m.flat[0]):
            m[0, 0] = 1.0 if m.flat[0] != 1.0 else 3.0
        entry = {"matrix": m.tolist()}
        entry.update({k: float(v) for k, v in icc(m).items()})
        cases.append(entry)
    out = os.path.join(os.path.dirname(__file__), "..", "fixtures", "icc_oracle.json")
    with open(out, "w") as fh:
        json.dump(cases, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
