#!/usr/bin/env python3
"""Recounts the shipped fixtures straight from the files.

Reads CoNLL-U comment lines and the manifest with plain string handling, so
it shares no code with the library it checks. Exit status 1 on any mismatch.
"""

import json
import sys
from pathlib import Path

DATA = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"

EXPECTED = {
    "essays": 12,
    "sentences": 120,
    "empathic": 59,
    "medical": 38,
    "empathetic": 41,
    "both": 18,
    "neither": 23,
    "gold_sentences": 40,
}


def blocks(path):
    current = {}
    for line in path.read_text(encoding="utf-8").splitlines() + [""]:
        if not line.strip():
            if current:
                yield current
            current = {}
        elif line.startswith("#"):
            key, _, value = line[1:].partition("=")
            current.setdefault("meta", {})[key.strip()] = value.strip()
        else:
            current.setdefault("tokens", []).append(line.split("\t"))


def main():
    manifest = json.loads((DATA / "corpus" / "manifest.json").read_text())
    empathic = {(a["essay_id"], a["sentence_id"]) for a in manifest["annotations"]
                if a.get("empathic")}
    got = {k: 0 for k in EXPECTED}
    got["essays"] = len(manifest["essays"])
    ha_by_essay = {}
    for essay in manifest["essays"]:
        eid = essay["essay_id"]
        ha = total = 0
        for b in blocks(DATA / "corpus" / essay["conllu_path"]):
            meta = b["meta"]
            total += 1
            medical = meta["gold_medical"] == "1"
            emp = (eid, meta["sent_id"]) in empathic
            got["empathic"] += emp
            theme = {(True, False): "medical", (False, True): "empathetic",
                     (True, True): "both", (False, False): "neither"}[(medical, emp)]
            if theme != meta["gold_theme"]:
                print(f"{eid}/{meta['sent_id']}: theme column says {meta['gold_theme']}, truth table gives {theme}")
                return 1
            got[theme] += 1
            ha += meta["gold_features"][4] == "1"
        got["sentences"] += total
        ha_by_essay[eid] = ha / total
    got["gold_sentences"] = sum(1 for _ in blocks(DATA / "gold" / "detectors.conllu"))

    failures = 0
    for key, want in EXPECTED.items():
        status = "ok" if got[key] == want else "MISMATCH"
        failures += got[key] != want
        print(f"{key:15s} {got[key]:4d} (want {want}) {status}")
    e07 = ha_by_essay.get("E07")
    print(f"E07 ha_p        {e07:.2f} (want 0.60)")
    failures += e07 is None or abs(e07 - 0.6) > 1e-12
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
