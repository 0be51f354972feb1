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
"""Regenerates the sentence-splitting and tokenization reference fixtures.

Uses NLTK's Punkt sentence tokenizer (trained unsupervised on the source text,
so no downloaded model is needed) and NLTK's Treebank word tokenizer.

  tests/fixtures/sentences_ref.txt  one reference sentence per line
  tests/fixtures/tokens_ref.tsv     sentence<TAB>space-joined reference tokens

Requires: pip install nltk
"""

import pathlib
import re

from nltk.tokenize.punkt import PunktSentenceTokenizer, PunktTrainer
from nltk.tokenize import TreebankWordTokenizer

ROOT = pathlib.Path(__file__).resolve().parent.parent
FIX = ROOT / "tests" / "fixtures"


def paragraphs(text):
    for block in re.split(r"\n\s*\n", text):
        block = " ".join(block.split())
        if block:
            yield block


def main():
    sources = [
        ROOT / "data" / "samples" / "moby_dick.txt",
        ROOT / "data" / "samples" / "sotu_william_h_taft.txt",
    ]
    picked = []
    for path, start, want in ((sources[0], 2000, 60), (sources[1], 3, 40)):
        text = path.read_text(encoding="utf-8")
        trainer = PunktTrainer()
        trainer.INCLUDE_ALL_COLLOCS = True
        trainer.train(text, finalize=True)
        punkt = PunktSentenceTokenizer(trainer.get_params())
        got = []
        for para in list(paragraphs(text))[start:]:
            sents = punkt.tokenize(para)
            if len(sents) < 2:
                continue
            got.extend(sents)
            if len(got) >= want:
                break
        picked.extend(got[:want])

    FIX.mkdir(parents=True, exist_ok=True)
    (FIX / "sentences_ref.txt").write_text("\n".join(picked) + "\n", encoding="utf-8")

    tb = TreebankWordTokenizer()
    with (FIX / "tokens_ref.tsv").open("w", encoding="utf-8") as f:
        for s in picked:
            f.write(s + "\t" + " ".join(tb.tokenize(s)) + "\n")
    print(f"{len(picked)} sentences")


if __name__ == "__main__":
    main()
