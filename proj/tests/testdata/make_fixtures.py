#!/usr/bin/env python3
# Copyright 2026 The diacres Authors
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
"""Regenerates the reference fixtures in this directory.

Uses only the Python standard library, independently of the C++ code:

  nfc_table.tsv          random strings with their NFC and stripped forms
  fixture_marked.txt     a small marked corpus
  fixture_dataset.jsonl  brute-force dataset of the corpus at default gates
"""

import json
import os
import random
import unicodedata

HERE = os.path.dirname(os.path.abspath(__file__))


def strip(text):
    nfd = unicodedata.normalize("NFD", text)
    kept = "".join(c for c in nfd if unicodedata.category(c) != "Mn")
    return unicodedata.normalize("NFC", kept)


def hexes(text):
    return " ".join("%04X" % ord(c) for c in text)


def nfc_table(rng, rows=3000):
    pool = []
    pool += [chr(c) for c in range(0x41, 0x5B)] + [chr(c) for c in range(0x61, 0x7B)]
    pool += [chr(c) for c in range(0xC0, 0x100) if c not in (0xD7, 0xF7)]
    pool += [chr(c) for c in range(0x100, 0x180)]
    pool += [chr(c) for c in range(0x1E00, 0x1F00)]
    pool += [chr(c) for c in range(0x391, 0x3AA) if c != 0x3A2]
    pool += [chr(c) for c in range(0x410, 0x450)]
    pool += [chr(c) for c in range(0x1100, 0x1113)] + [chr(c) for c in range(0x1161, 0x1176)]
    pool += list("0123456789.,;:?!'-")
    marks = [chr(c) for c in range(0x300, 0x370)] + ["̣", "̱", "͘"]
    out = []
    for _ in range(rows):
        s = []
        for _ in range(rng.randint(1, 8)):
            if rng.random() < 0.4:
                s.append(rng.choice(marks))
            else:
                s.append(rng.choice(pool))
        s = "".join(s)
        out.append("%s\t%s\t%s" % (hexes(s), hexes(unicodedata.normalize("NFC", s)),
                                    hexes(strip(unicodedata.normalize("NFC", s)))))
    return out


# wordkey -> [(variant, weight)]
AMBIGUOUS = {
    "akwa": [("ákwà", 30), ("àkwà", 25), ("àkwá", 20), ("ákwá", 2)],
    "o": [("ọ", 60), ("o", 30)],
    "bu": [("bụ", 45), ("bụ́", 25)],
    "na": [("na", 50), ("nà", 30)],
    "ya": [("ya", 40), ("yà", 12)],
    "si": [("sị", 25), ("sì", 20), ("sị̀", 10)],
    "ike": [("ike", 20), ("íké", 15)],
    "oke": [("oke", 12), ("ọkè", 10), ("òké", 8)],
    "mmadu": [("mmadụ", 80), ("mmadu", 1)],
    "ebe": [("ebe", 90), ("ébé", 5)],
}
PLAIN = ["Chineke", "nwoke", "nwaanyị", "ụlọ", "ihe", "ahụ", "ọma", "ndị",
         "anyị", "ha", "ka", "ga", "nwa", "eze", "obi", "ego", "mma", "ọrụ",
         "na-eme", "n'elu", "ga-abịa"]
NONWORDS = [".", ",", "?", "!", ":", "3", "12:4", "—", "%"]


def marked_corpus(rng, lines=400):
    keys = sorted(AMBIGUOUS)
    out = []
    for _ in range(lines):
        words = []
        for _ in range(rng.randint(3, 12)):
            r = rng.random()
            if r < 0.45:
                key = rng.choice(keys)
                variants = AMBIGUOUS[key]
                total = sum(w for _, w in variants)
                pick = rng.uniform(0, total)
                for v, w in variants:
                    pick -= w
                    if pick <= 0:
                        break
                words.append(v)
            elif r < 0.9:
                words.append(rng.choice(PLAIN))
            else:
                words.append(rng.choice(NONWORDS))
        if rng.random() < 0.3 and unicodedata.category(words[0][0]).startswith("L"):
            words[0] = words[0][0].upper() + words[0][1:]
        words.append(rng.choice([".", "?", "!"]))
        out.append(" ".join(words))
    return out


def is_word(token):
    return any(unicodedata.category(c).startswith("L") for c in token)


def tokenize(line):
    out = []
    for piece in line.split():
        while True:
            cut = 0
            for n in (1, 2):
                if n >= len(piece) or not piece[n - 1].isalpha():
                    break
                if piece[n] in "-'\u2019\u02bc":
                    if any(ch.isalpha() for ch in piece[n + 1:]):
                        cut = n + 1
                    break
            if not cut:
                break
            out.append(piece[:cut])
            piece = piece[cut:]
        out.append(piece)
    return out


def brute_force_dataset(lines, varnt_rep=0.05, wdkey_rep=0.0001, varnt_distrib=0.75):
    corpus = [tokenize(unicodedata.normalize("NFC", l)) for l in lines]
    word_tokens = 0
    counts = {}
    for toks in corpus:
        for t in toks:
            if not is_word(t):
                continue
            word_tokens += 1
            low = t.lower()
            key = strip(low)
            counts.setdefault(key, {}).setdefault(low, 0)
            counts[key][low] += 1
    kept = {}
    for key, variants in counts.items():
        if len(variants) < 2:
            continue
        total = sum(variants.values())
        survivors = {v: c for v, c in variants.items() if c / total >= varnt_rep}
        remaining = sum(survivors.values())
        if remaining / word_tokens < wdkey_rep:
            continue
        if len(survivors) < 2:
            continue
        if max(survivors.values()) / remaining > varnt_distrib:
            continue
        kept[key] = survivors
    records = []
    order = sorted(kept, key=lambda k: (-sum(kept[k].values()), k.encode("utf-8")))
    for key in order:
        variants = sorted(kept[key].items(), key=lambda p: p[0].encode("utf-8"))
        records.append({"wordkey": key, "variants": [[v, c] for v, c in variants]})
        for li, toks in enumerate(corpus):
            stripped = [strip(t.lower()) for t in toks]
            for ti, t in enumerate(toks):
                if not is_word(t):
                    continue
                low = t.lower()
                if stripped[ti] == key and low in kept[key]:
                    records.append({"wordkey": key, "tokens": stripped, "target": ti,
                                    "label": low, "line": li})
    return records


def main():
    rng = random.Random(20261016)
    with open(os.path.join(HERE, "nfc_table.tsv"), "w", encoding="utf-8") as f:
        f.write("\n".join(nfc_table(rng)) + "\n")
    lines = marked_corpus(rng)
    with open(os.path.join(HERE, "fixture_marked.txt"), "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    with open(os.path.join(HERE, "fixture_dataset.jsonl"), "w", encoding="utf-8") as f:
        for r in brute_force_dataset(lines):
            f.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
