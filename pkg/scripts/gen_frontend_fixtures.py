#!/usr/bin/env python3
"""Regenerate the frontend's golden dataset (50 samples) plus the expected
per-sample N/E/F summaries. Run from the repository root."""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "tests"))

from netgen import bench  # noqa: E402

from aigkit.augment import batch_generate  # noqa: E402
from aigkit.edgelist import parse_edgelist  # noqa: E402


def main():
    g = bench("bench_b")
    out = os.path.join("frontend", "testdata", "dataset")
    manifest = batch_generate(g, n=50, base_seed=0, out_dir=out, k=4)
    expected = []
    for meta in manifest["samples"]:
        with open(os.path.join(out, meta["file"])) as f:
            doc = parse_edgelist(f.read())
        expected.append({"id": meta["id"], "file": meta["file"],
                         "N": doc.node_count, "E": doc.edge_count, "F": 2})
    with open(os.path.join("frontend", "testdata", "expected.json"), "w") as f:
        json.dump(expected, f, indent=1)
    print(f"wrote {manifest['n']} samples and expected.json")


if __name__ == "__main__":
    main()
