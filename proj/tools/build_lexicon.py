#!/usr/bin/env python3
# Copyright 2026 The fractext Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the bundled frequency lexicon and the held-out tagging gold fixture.

Inputs (data/third_party/):
  tagged-en-oanc.txt     word/TAG sentences, one per line
  brill-en-lexicon.txt   word TAG1 [TAG2 ...], most likely tag first

Outputs:
  data/lexicon/en-frequency-lexicon.tsv   word<TAB>TAG count[ TAG count ...]
  tests/fixtures/pos_gold.tsv             surface<TAB>tag, blank line between sentences

The last sentences of the OANC sample (at least 1,000 tokens) are held out as
the gold fixture and never contribute counts to the lexicon.
"""

import collections
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent
THIRD = ROOT / "data" / "third_party"
GOLD_TOKENS = 1000
BRILL_FIRST_WEIGHT = 2
BRILL_OTHER_WEIGHT = 1


def read_oanc():
    sentences = []
    for line in (THIRD / "tagged-en-oanc.txt").read_text(encoding="utf-8").splitlines():
        toks = []
        for item in line.split():
            word, _, tag = item.rpartition("/")
            if not word:
                continue
            # Ambiguous annotations such as VBG|NN keep their first reading.
            toks.append((word, tag.split("|")[0]))
        if toks:
            sentences.append(toks)
    return sentences


def main():
    sentences = read_oanc()
    held, count = [], 0
    while count < GOLD_TOKENS:
        s = sentences.pop()
        held.insert(0, s)
        count += len(s)

    counts = collections.defaultdict(collections.Counter)
    for s in sentences:
        for word, tag in s:
            counts[word][tag] += 1

    for line in (THIRD / "brill-en-lexicon.txt").read_text(encoding="utf-8").splitlines():
        if not line or line.startswith(";;;"):
            continue
        parts = line.split()
        word, tags = parts[0], parts[1:]
        for i, tag in enumerate(tags):
            counts[word][tag] += BRILL_FIRST_WEIGHT if i == 0 else BRILL_OTHER_WEIGHT

    out = ROOT / "data" / "lexicon" / "en-frequency-lexicon.tsv"
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8") as f:
        f.write("# fractext frequency lexicon v1: word<TAB>TAG count ...\n")
        for word in sorted(counts):
            tags = sorted(counts[word].items(), key=lambda kv: (-kv[1], kv[0]))
            f.write(word + "\t" + " ".join(f"{t} {c}" for t, c in tags) + "\n")

    gold = ROOT / "tests" / "fixtures" / "pos_gold.tsv"
    with gold.open("w", encoding="utf-8") as f:
        for s in held:
            for word, tag in s:
                f.write(f"{word}\t{tag}\n")
            f.write("\n")
    print(f"lexicon: {len(counts)} entries; gold: {count} tokens in {len(held)} sentences")


if __name__ == "__main__":
    main()
