"""Agreement between two annotations of the same sources.

Edits that do not match exactly are grouped into regions of
overlapping or touching spans, and each region is put in one class:

- boundary: both sides yield the same text but cut the spans differently
- order: as boundary, but one side frames it as a reordering
- other: the two sides produce different text, or only one side edits
"""

from collections import Counter, namedtuple

from .score import GranularityMismatchError, SourceMismatchError, edit_key

MATCHED = "matched"
TYPE_ONLY = "type_only"
BOUNDARY = "boundary_only"
ORDER = "order_representation"
OTHER = "other"
CATEGORIES = (MATCHED, TYPE_ONLY, BOUNDARY, ORDER, OTHER)

# labels used for reordering across the supported formats
ORDER_LABELS = {"WO", "W", "Switch", "SWITCH", "Permutation", "Disorder"}

Region = namedtuple("Region", "category start end a b")


def is_order(edit):
    lab = edit.label
    if lab is None:
        return False
    if lab.raw is not None:
        return lab.raw.split(":")[0] in ORDER_LABELS
    return lab.op == "WO"


def _output(seg, start, end, edits):
    # region text after applying ``edits``, whitespace ignored
    out, pos = [], start
    for e in sorted(edits, key=lambda e: (e.start, e.end)):
        out.extend(seg.surfaces[pos:e.start])
        out.append(e.norm_replacement.replace(" ", ""))
        pos = max(pos, e.end)
    out.extend(seg.surfaces[pos:end])
    return "".join(out)


def _regions(a_left, b_left):
    items = sorted([(e.start, e.end, 0, e) for e in a_left] + [(e.start, e.end, 1, e) for e in b_left],
                   key=lambda x: (x[0], x[1], x[2]))
    groups = []
    for s, e, side, edit in items:
        if groups and s <= groups[-1][1]:
            g = groups[-1]
            g[1] = max(g[1], e)
            g[2 + side].append(edit)
        else:
            groups.append([s, e, [], []])
            groups[-1][2 + side].append(edit)
    return groups


def diff_edits(seg, a, b):
    """Regions for two edit sets over the same segmentation."""
    out = []
    b_left = list(b)
    a_left = []
    for e in a:
        hit = next((g for g in b_left if edit_key(g) == edit_key(e)), None)
        if hit is None:
            a_left.append(e)
            continue
        b_left.remove(hit)
        cat = MATCHED if str(hit.label) == str(e.label) else TYPE_ONLY
        out.append(Region(cat, e.start, e.end, (e,), (hit,)))
    for s, t, ea, eb in _regions(a_left, b_left):
        if ea and eb and _output(seg, s, t, ea) == _output(seg, s, t, eb):
            cat = ORDER if any(is_order(x) for x in ea + eb) else BOUNDARY
        else:
            cat = OTHER
        out.append(Region(cat, s, t, tuple(ea), tuple(eb)))
    out.sort(key=lambda r: (r.start, r.end))
    return out


def _first(rec):
    return rec.edit_sets[min(rec.edit_sets)] if rec.edit_sets else ()


def diff_records(recs_a, recs_b):
    """Per-sentence regions comparing the first annotator of each side."""
    recs_a, recs_b = list(recs_a), list(recs_b)
    if len(recs_a) != len(recs_b):
        raise SourceMismatchError(f"record count differs: {len(recs_a)} vs {len(recs_b)}")
    out = []
    for n, (ra, rb) in enumerate(zip(recs_a, recs_b), 1):
        if ra.source_seg.surfaces != rb.source_seg.surfaces:
            if ra.source_seg.text == rb.source_seg.text:
                raise GranularityMismatchError(f"record {n}: same source, different tokenization")
            raise SourceMismatchError(f"record {n}: different source sentences")
        out.append(diff_edits(ra.source_seg, _first(ra), _first(rb)))
    return out


def summarize(per_sentence):
    """Counts per category plus sentence agreement.

    A sentence agrees when every region is matched or type-only, so the
    two sides make the same corrections over the same spans.
    """
    counts = Counter()
    agree = 0
    for regions in per_sentence:
        for r in regions:
            counts[r.category] += 1
        if all(r.category in (MATCHED, TYPE_ONLY) for r in regions):
            agree += 1
    n = len(per_sentence)
    return {
        "sentences": n,
        "sentences_agree": agree,
        "agreement": agree / n if n else 1.0,
        **{c: counts[c] for c in CATEGORIES},
    }


def sentence_category(regions):
    """Dominant mismatch class for one sentence, for listings."""
    cats = {r.category for r in regions}
    for c in (OTHER, ORDER, BOUNDARY, TYPE_ONLY):
        if c in cats:
            return c
    return MATCHED


def summary_lines(summary):
    lines = [f"sentences\t{summary['sentences']}",
             f"sentences_agree\t{summary['sentences_agree']}",
             f"agreement\t{100 * summary['agreement']:.2f}%"]
    lines += [f"{c}\t{summary[c]}" for c in CATEGORIES]
    return lines
