#!/usr/bin/env python3
"""Point-biserial correlation between a template feature and empathy.

Reads a generated corpus directory (manifest.json plus CoNLL-U files with
gold_features comments) using plain string handling only.

usage: point_biserial.py CORPUS_DIR FEATURE [LIMIT]
"""

import json
import math
import sys
from pathlib import Path

COLUMNS = ["active", "passive", "material", "mental", "ha_p", "bp_p", "ie_p",
           "g_p", "energetic", "static"]


def rows(corpus_dir, feature):
    manifest = json.loads((corpus_dir / "manifest.json").read_text())
    empathic = {(a["essay_id"], a["sentence_id"]) for a in manifest["annotations"]
                if a.get("empathic")}
    col = COLUMNS.index(feature)
    for essay in manifest["essays"]:
        sent_id = None
        for line in (corpus_dir / essay["conllu_path"]).read_text().splitlines():
            if line.startswith("# sent_id ="):
                sent_id = line.split("=", 1)[1].strip()
            elif line.startswith("# gold_features ="):
                bits = line.split("=", 1)[1].strip()
                yield int(bits[col]), int((essay["essay_id"], sent_id) in empathic)


def correlation(pairs):
    n = len(pairs)
    mx = sum(x for x, _ in pairs) / n
    my = sum(y for _, y in pairs) / n
    sxy = sum((x - mx) * (y - my) for x, y in pairs)
    sxx = sum((x - mx) ** 2 for x, _ in pairs)
    syy = sum((y - my) ** 2 for _, y in pairs)
    return sxy / math.sqrt(sxx * syy)


def point_biserial(corpus_dir, feature, limit=None):
    pairs = list(rows(Path(corpus_dir), feature))
    if limit:
        pairs = pairs[:limit]
    return correlation(pairs), len(pairs)


if __name__ == "__main__":
    r, n = point_biserial(sys.argv[1], sys.argv[2],
                          int(sys.argv[3]) if len(sys.argv) > 3 else None)
    print(f"{r:.4f} over {n} sentences")
