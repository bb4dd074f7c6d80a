"""Regenerate the bundled lexicon, pinyin and glyph tables.

Maintainer tool, not used at runtime. Inputs are the upstream files
listed in README.md (jieba_dict.txt, pinyin_dict.json, cjk-decomp.txt,
strokeCount.json, junda.tsv).

    python scripts/build_data.py UPSTREAM_DIR src/cgeckit/data
"""

import json
import os
import random
import re
import sys
import unicodedata

# jieba (ICTCLAS style) tag prefix -> Universal POS
POS_MAP = [
    ("nr", "PROPN"), ("ns", "PROPN"), ("nt", "PROPN"), ("nz", "NOUN"),
    ("ng", "NOUN"), ("n", "NOUN"), ("vn", "VERB"), ("v", "VERB"),
    ("ad", "ADJ"), ("an", "ADJ"), ("ag", "ADJ"), ("a", "ADJ"),
    ("b", "ADJ"), ("z", "ADJ"), ("df", "ADV"), ("dg", "ADV"), ("d", "ADV"),
    ("r", "PRON"), ("p", "ADP"), ("c", "CCONJ"), ("u", "PART"),
    ("y", "PART"), ("k", "PART"), ("h", "PART"), ("e", "INTJ"),
    ("o", "X"), ("mq", "NUM"), ("m", "NUM"), ("q", "NOUN"), ("f", "NOUN"),
    ("t", "NOUN"), ("s", "NOUN"), ("j", "NOUN"), ("i", "X"), ("l", "X"),
    ("g", "X"), ("x", "X"),
]

PUNCT = "，。、；：？！“”‘’（）《》〈〉【】—…·,.;:?!\"'()[]-~"

MIN_FREQ = 30

TONES = {}
for base, marked in {
    "a": "āáǎà", "e": "ēéěè", "i": "īíǐì", "o": "ōóǒò", "u": "ūúǔù",
    "ü": "ǖǘǚǜ",
}.items():
    for n, ch in enumerate(marked, 1):
        TONES[ch] = (base, n)


def upos(tag):
    for prefix, u in POS_MAP:
        if tag.startswith(prefix):
            return u
    return "X"


def tone3(syl):
    out, tone = [], 0
    for ch in unicodedata.normalize("NFC", syl):
        if ch in TONES:
            base, tone = TONES[ch]
            out.append(base)
        elif ch in ("ḿ", "ń", "ň", "ǹ"):
            out.append(ch == "ḿ" and "m" or "n")
            tone = {"ḿ": 2, "ń": 2, "ň": 3, "ǹ": 4}[ch]
        else:
            out.append(ch)
    s = "".join(out).replace("ü", "v")
    if not re.fullmatch(r"[a-z]+", s):
        return None
    return s + str(tone)


def build_lexicon(up):
    words = []
    with open(os.path.join(up, "jieba_dict.txt"), encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if len(parts) != 3:
                continue
            w, freq, tag = parts[0], int(parts[1]), parts[2]
            if freq < MIN_FREQ and len(w) > 1:
                continue
            # numeral+classifier compounds would swallow neighbouring
            # classifiers during edit merging (西个 -> 四个)
            if tag in ("m", "mq") and len(w) > 1:
                continue
            if not all(unicodedata.category(c).startswith("Lo") for c in w):
                continue
            words.append((-freq, w, upos(tag)))
    words.sort()
    seen = {}
    for _, w, u in words:
        seen.setdefault(w, u)
    for p in PUNCT:
        seen.setdefault(p, "PUNCT")
    return seen


def load_decomp(up):
    raw = {}
    with open(os.path.join(up, "cjk-decomp.txt"), encoding="utf-8") as f:
        for line in f:
            m = re.match(r"^([^:]+):([^(]*)\((.*)\)$", line.strip())
            if not m:
                continue
            key, typ, args = m.groups()
            kids = [a for a in args.split(",") if a and a != key]
            if key in raw and raw[key][1]:
                continue
            raw[key] = (typ, kids)
    return raw


def multiplicity(typ):
    if typ.startswith(("ref", "rref", "rrot")):
        return 1
    m = re.match(r"^r(\d)?", typ)
    if m:
        return int(m.group(1) or 2)
    return 1


def flat_kids(key, raw, depth=0):
    typ, kids = raw.get(key, ("c", []))
    out = []
    for k in kids:
        if k.isdigit() and depth < 8:
            out.extend(flat_kids(k, raw, depth + 1))
        elif not k.isdigit():
            out.append(k)
    return out * multiplicity(typ)


def main(up, dest):
    lex = build_lexicon(up)
    with open(os.path.join(dest, "lexicon.tsv"), "w", encoding="utf-8") as f:
        f.write("# word\tUPOS; derived from the jieba dictionary\n")
        for w, u in lex.items():
            f.write(f"{w}\t{u}\n")

    common = []
    with open(os.path.join(up, "junda.tsv"), encoding="utf-8") as f:
        for line in f:
            common.append(line.split("\t")[1])
    charset = set(common)
    for w in lex:
        charset.update(w)
    charset = {c for c in charset if unicodedata.category(c) == "Lo"}

    pin = json.load(open(os.path.join(up, "pinyin_dict.json"), encoding="utf-8"))
    with open(os.path.join(dest, "pinyin.tsv"), "w", encoding="utf-8") as f:
        f.write("# char\treadings (tone digits); derived from pypinyin\n")
        for c in sorted(charset):
            rs = pin.get(str(ord(c)))
            if not rs:
                continue
            syls = []
            for r in rs.split(","):
                t = tone3(r)
                if t and t not in syls:
                    syls.append(t)
            if syls:
                f.write(f"{c}\t{','.join(syls)}\n")

    raw = load_decomp(up)
    strokes = json.load(open(os.path.join(up, "strokeCount.json"), encoding="utf-8"))
    rows = {}
    todo = sorted(charset)
    while todo:
        c = todo.pop()
        if c in rows:
            continue
        kids = flat_kids(c, raw)
        if kids == [c]:
            kids = []
        rows[c] = kids
        todo.extend(k for k in kids if k not in rows)

    weight = {}

    def count(c, stack=()):
        if c in weight:
            return weight[c]
        if c in strokes and strokes[c] > 0:
            n = strokes[c]
        elif rows.get(c) and c not in stack:
            n = sum(count(k, stack + (c,)) for k in rows[c])
        else:
            n = 1
        weight[c] = max(1, n)
        return weight[c]

    with open(os.path.join(dest, "glyphs.tsv"), "w", encoding="utf-8") as f:
        f.write("# char\tcomponents\tstrokes; derived from cjk-decomp and strokeCount\n")
        for c in sorted(rows):
            f.write(f"{c}\t{' '.join(rows[c])}\t{count(c)}\n")

    # fixed pool for drawing unrelated pairs in the calibration harness
    with open(os.path.join(dest, "common_chars.txt"), "w", encoding="utf-8") as f:
        f.write("".join(c for c in common[:3000] if c in rows) + "\n")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    random.seed(0)
    main(sys.argv[1], sys.argv[2])
