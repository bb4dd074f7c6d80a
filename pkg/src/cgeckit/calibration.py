"""Harness that fits and checks the shape-similarity constants.

Confusion pairs must clear the shape threshold while pairs of common
characters that share no component must stay well below it. A few
extra anchors keep classification sane (桌/椅 share only 木 and must
not be called a shape confusion).
"""

import itertools
import random
from importlib import resources

from . import phonosim

CONFUSION_PAIRS = [("西", "四"), ("日", "目"), ("州", "洲"), ("己", "已"), ("进", "近")]
# (pair, upper bound on the calibrated score)
CEILINGS = [(("桌", "椅"), 0.8), (("得", "的"), 0.9), (("一", "以"), 0.5)]
UNRELATED_SEED = 20240601
UNRELATED_COUNT = 100


def common_chars():
    text = resources.files("cgeckit.data").joinpath("common_chars.txt").read_text("utf-8")
    return text.strip()


def parts(ch, model, seen=None):
    """Every node of the decomposition tree below ``ch``."""
    seen = set() if seen is None else seen
    for k in model.kids(ch):
        if k not in seen:
            seen.add(k)
            parts(k, model, seen)
    return seen


def related(a, b, model):
    pa, pb = parts(a, model), parts(b, model)
    if a in pb or b in pa:
        return True
    return any(model.weight(x) >= 2 for x in pa & pb)


def unrelated_pairs(model=None, n=UNRELATED_COUNT, seed=UNRELATED_SEED):
    model = model or phonosim.default_glyphs()
    pool = common_chars()
    rng = random.Random(seed)
    confusable = {frozenset(p) for p in CONFUSION_PAIRS}
    out = []
    while len(out) < n:
        a, b = rng.sample(pool, 2)
        if frozenset((a, b)) in confusable:
            continue
        if not model.kids(a) or not model.kids(b):
            continue
        if related(a, b, model):
            continue
        out.append((a, b))
    return out


def check(model=None, pairs=None):
    """Score everything with the frozen constants.

    Returns (ok, rows) where rows are (group, a, b, score, bound, passed).
    """
    model = model or phonosim.default_glyphs()
    pairs = pairs or unrelated_pairs(model)
    rows = []
    for a, b in CONFUSION_PAIRS:
        s = phonosim.shape_similarity(a, b, model)
        rows.append(("confusion", a, b, s, 0.9, s > 0.9))
    for (a, b), hi in CEILINGS:
        s = phonosim.shape_similarity(a, b, model)
        rows.append(("ceiling", a, b, s, hi, s <= hi))
    for a, b in pairs:
        s = phonosim.shape_similarity(a, b, model)
        rows.append(("unrelated", a, b, s, 0.5, s < 0.5))
    return all(r[-1] for r in rows), rows


def fit(model=None, weights=None, depths=(1, 2, 3), mids=None, slopes=None):
    """Grid search for (weight, depth, mid, slope).

    Keeps the candidate with the widest worst-case margin over all
    constraints. Used once to pick the constants frozen in phonosim.
    """
    model = model or phonosim.default_glyphs()
    pairs = unrelated_pairs(model)
    weights = weights or [x / 20 for x in range(8, 20)]
    mids = mids or [x / 100 for x in range(30, 70, 2)]
    slopes = slopes or [10.0, 15.0, 20.0, 25.0, 30.0, 40.0]
    best = None
    for w, d in itertools.product(weights, depths):
        raw = lambda a, b: phonosim.char_shape_raw(a, b, model, w, d)
        conf = [raw(a, b) for a, b in CONFUSION_PAIRS]
        ceil = [(raw(a, b), hi) for (a, b), hi in CEILINGS]
        unrel = [raw(a, b) for a, b in pairs]
        for m, k in itertools.product(mids, slopes):
            sq = lambda r: phonosim.squash(r, m, k)
            margin = min(
                min(sq(r) - 0.9 for r in conf),
                min(hi - sq(r) for r, hi in ceil),
                min(0.5 - sq(r) for r in unrel),
            )
            if best is None or margin > best[0]:
                best = (margin, w, d, m, k)
    return best
