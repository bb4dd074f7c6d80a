"""Pinyin and glyph-shape similarity between Chinese strings.

Both scores live in [0, 1] and are symmetric. The shape score compares
ideographic decompositions; the weights and the final squashing curve
were fitted once with :mod:`cgeckit.calibration` and are frozen here.
"""

import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .core import DataError

# frozen shape constants, see calibration.fit()
SHAPE_DEPTH = 1
SHAPE_STRUCT_WEIGHT = 0.94
SHAPE_CURVE_MID = 0.38
SHAPE_CURVE_SLOPE = 60.0


@dataclass(frozen=True)
class PinyinLexicon:
    # char -> tuple of (syllable, tone) pairs
    readings: dict = field(default_factory=dict)

    def syllables(self, ch):
        rs = self.readings.get(ch)
        if not rs:
            return frozenset(["\0" + ch])  # opaque, matches only itself
        return frozenset(s for s, _ in rs)


@dataclass(frozen=True)
class GlyphModel:
    decomposition: dict = field(default_factory=dict)
    strokes: dict = field(default_factory=dict)

    def kids(self, ch):
        return self.decomposition.get(ch, ())

    def weight(self, ch):
        return self.strokes.get(ch, 1)


def parse_pinyin_table(lines):
    readings = {}
    for n, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        try:
            ch, rs = line.split("\t")
        except ValueError:
            raise DataError(f"pinyin table line {n}: expected 2 fields") from None
        out = []
        for r in rs.split(","):
            r = r.strip()
            if not r:
                continue
            if r[-1].isdigit():
                out.append((r[:-1], int(r[-1])))
            else:
                out.append((r, 0))
        if out:
            readings[ch] = tuple(out)
    return PinyinLexicon(readings)


def parse_glyph_table(lines):
    decomp, strokes = {}, {}
    for n, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise DataError(f"glyph table line {n}: expected 3 fields")
        ch, comps, count = parts
        kids = tuple(comps.split())
        if kids:
            decomp[ch] = kids
        try:
            c = int(count)
        except ValueError:
            raise DataError(f"glyph table line {n}: bad stroke count {count!r}") from None
        if c >= 1:
            strokes[ch] = c
    return GlyphModel(decomp, strokes)


def _data_lines(name):
    with resources.files("cgeckit.data").joinpath(name).open(encoding="utf-8") as f:
        return f.readlines()


def load_pinyin(path=None):
    if path is None:
        return parse_pinyin_table(_data_lines("pinyin.tsv"))
    with open(path, encoding="utf-8") as f:
        return parse_pinyin_table(f)


def load_glyphs(path=None):
    if path is None:
        return parse_glyph_table(_data_lines("glyphs.tsv"))
    with open(path, encoding="utf-8") as f:
        return parse_glyph_table(f)


@lru_cache(maxsize=1)
def default_pinyin():
    return load_pinyin()


@lru_cache(maxsize=1)
def default_glyphs():
    return load_glyphs()


def pinyin_similarity(a, b, lex=None):
    """1 - syllable edit distance / longer length, tones ignored.

    A heteronym matches whenever any of its readings does, which is the
    same as picking the best reading per character.
    """
    if not a or not b:
        raise ValueError("pinyin_similarity needs non-empty strings")
    if a == b:
        return 1.0
    lex = lex or default_pinyin()
    if len(a) == 1 and len(b) == 1:
        return 1.0 if lex.syllables(a) & lex.syllables(b) else 0.0
    sa = [lex.syllables(c) for c in a]
    sb = [lex.syllables(c) for c in b]
    prev = list(range(len(sb) + 1))
    for i, x in enumerate(sa, 1):
        cur = [i] + [0] * len(sb)
        for j, y in enumerate(sb, 1):
            cost = 0 if x & y else 1
            cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
        prev = cur
    return 1.0 - prev[-1] / max(len(sa), len(sb))


def _parts(a, b, model):
    ka, kb = model.kids(a), model.kids(b)
    if b in ka:
        kb = (b,)
    elif a in kb:
        ka = (a,)
    return ka or (a,), kb or (b,)


def _structure(a, b, model, depth):
    # stroke-weighted soft Dice over components, recursing into parts
    if a == b:
        return 1.0
    if depth <= 0:
        return 0.0
    if a > b:
        a, b = b, a
    if not model.kids(a) and not model.kids(b):
        return 0.0
    ka, kb = _parts(a, b, model)
    if depth == 1:
        # one level down only identical parts score, so greedy matching
        # reduces to a multiset intersection
        ca, cb = Counter(ka), Counter(kb)
        got = sum(2 * model.weight(x) * min(n, cb[x]) for x, n in ca.items() if x in cb)
        return got / (sum(model.weight(x) for x in ka) + sum(model.weight(y) for y in kb))
    wa = [model.weight(x) for x in ka]
    wb = [model.weight(y) for y in kb]
    cands = []
    for i, x in enumerate(ka):
        for j, y in enumerate(kb):
            s = _structure(x, y, model, depth - 1)
            if s > 0:
                cands.append((-s, i, j))
    cands.sort()
    used_a, used_b, got = set(), set(), 0.0
    for neg, i, j in cands:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        got += -neg * (wa[i] + wb[j])
    return got / (sum(wa) + sum(wb))


def char_shape_raw(a, b, model, weight=None, depth=None):
    """Uncalibrated score: weighted structure overlap plus stroke ratio."""
    if a == b:
        return 1.0
    w = SHAPE_STRUCT_WEIGHT if weight is None else weight
    depth = SHAPE_DEPTH if depth is None else depth
    if a > b:
        a, b = b, a
    sa, sb = model.weight(a), model.weight(b)
    stroke = 1.0 - abs(sa - sb) / max(sa, sb)
    if a not in model.decomposition and b not in model.decomposition:
        # no glyph data: stroke term only
        if a not in model.strokes or b not in model.strokes:
            return 0.0
        return stroke * (1.0 - w)
    return w * _structure(a, b, model, depth) + (1 - w) * stroke


def squash(raw, mid=SHAPE_CURVE_MID, slope=SHAPE_CURVE_SLOPE):
    # logistic curve rescaled so that 0 -> 0 and 1 -> 1
    lo = 1 / (1 + math.exp(slope * mid))
    hi = 1 / (1 + math.exp(-slope * (1 - mid)))
    v = 1 / (1 + math.exp(-slope * (raw - mid)))
    return min(1.0, max(0.0, (v - lo) / (hi - lo)))


def shape_similarity(a, b, model=None):
    """Position-wise mean of calibrated per-character shape scores."""
    if not a or not b:
        raise ValueError("shape_similarity needs non-empty strings")
    if len(a) != len(b):
        return 0.0
    model = model or default_glyphs()
    total = 0.0
    for x, y in zip(a, b):
        total += 1.0 if x == y else squash(char_shape_raw(x, y, model))
    return total / len(a)


class SimilarityProviders:
    """Bundles the two scorers with a per-pair cache.

    Any object exposing pinyin(a, b) and shape(a, b) can stand in, for
    example an image-based shape scorer.
    """

    def __init__(self, pinyin_lex=None, glyphs=None):
        self.pinyin_lex = pinyin_lex or default_pinyin()
        self.glyphs = glyphs or default_glyphs()
        self._p = {}
        self._s = {}

    def pinyin(self, a, b):
        key = (a, b) if a <= b else (b, a)
        v = self._p.get(key)
        if v is None:
            v = self._p[key] = pinyin_similarity(key[0], key[1], self.pinyin_lex)
        return v

    def shape(self, a, b):
        key = (a, b) if a <= b else (b, a)
        v = self._s.get(key)
        if v is None:
            v = self._s[key] = shape_similarity(key[0], key[1], self.glyphs)
        return v
