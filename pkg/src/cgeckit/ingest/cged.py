"""CGED shared-task XML (2014, 2015, 2016 to 2018, 2020 to 2021).

Offsets in the 2015+ files are 1-based and inclusive, counted over
non-whitespace characters; a missing-word error at position p means
"insert before character p". They are converted to 0-based,
end-exclusive spans at the boundary and the originals kept on the span.

Files only give whole corrected sentences, so per-span replacement
text is recovered by cutting the correction at the untouched stretches
between spans.
"""

import re
import xml.etree.ElementTree as ET

from ..core import SentencePair
from ..segment import segment_chars
from .base import GoldSpan, IngestError, Parsed, char_edit

TYPES_2014 = {"Selection", "Missing", "Disorder", "Redundant"}
TYPES_2015 = {"Missing", "Permutation", "Addition", "Deletion", "Substitution"}
TYPES_2016 = {"R", "M", "S", "W"}
INSERT_TYPES = {"M", "Missing"}

VARIANTS = ("cged2014", "cged2015", "cged2016plus", "cged2020")


def _root(text):
    text = re.sub(r"^\s*<\?xml[^>]*\?>", "", text)
    try:
        return ET.fromstring("<ROOT>" + text + "</ROOT>")
    except ET.ParseError as e:
        raise IngestError(f"malformed XML: {e}") from None


def _text(el):
    return (el.text or "").strip() if el is not None else ""


def parse_cged(text, variant="cged2016plus"):
    if variant not in VARIANTS:
        raise IngestError(f"unknown CGED variant {variant!r}")
    root = _root(text)
    if variant == "cged2014":
        return _parse_2014(root)
    if variant == "cged2015":
        return _parse_2015(root)
    return _parse_2016(root, variant)


def _check_type(t, allowed):
    if t not in allowed:
        raise IngestError(f"unknown error TYPE {t!r}")


def _parse_2014(root):
    out = []
    for essay in root.iter("ESSAY"):
        title = essay.get("title", "")
        sents = {}
        for s in essay.iter("SENTENCE"):
            sents[s.get("id")] = _text(s)
        refs, types = {}, {}
        for m in essay.iter("MISTAKE"):
            sid = m.get("id")
            if sid not in sents:
                raise IngestError(f"MISTAKE refers to unknown sentence {sid!r}")
            t = _text(m.find("TYPE"))
            _check_type(t, TYPES_2014)
            types.setdefault(sid, []).append(t)
            corr = m.find("CORRECTION")
            if corr is not None:
                refs.setdefault(sid, []).append(_text(corr))
        for sid, src in sents.items():
            meta = {"title": title}
            if sid in types:
                meta["types"] = ",".join(types[sid])
            pair = SentencePair(sid, src, refs.get(sid, ()), "cged2014", meta)
            out.append(Parsed(pair))
    return out


def _offsets(el, n, etype, who):
    try:
        s = int(el.get("start_off"))
        e = int(el.get("end_off"))
    except (TypeError, ValueError):
        raise IngestError(f"{who}: missing or non-integer offsets") from None
    if etype in INSERT_TYPES:
        start = end = s - 1
    else:
        start, end = s - 1, e
    if not (0 <= start <= end <= n):
        raise IngestError(f"{who}: offsets {s}-{e} outside sentence of {n} characters")
    return start, end, s, e


def _parse_2015(root):
    out = []
    for doc in root.iter("DOC"):
        sent = doc.find("SENTENCE")
        if sent is None:
            continue
        sid, src = sent.get("id", ""), _text(sent)
        seg = segment_chars(src)
        spans, corrs = [], []
        for m in doc.iter("MISTAKE"):
            t = _text(m.find("TYPE"))
            _check_type(t, TYPES_2015)
            start, end, s, e = _offsets(m, len(seg), t, sid)
            corr = _text(m.find("CORRECTION"))
            spans.append(GoldSpan(start, end, t, (), None, s, e))
            corrs.append(corr)
        refs = []
        for c in corrs:
            if c and c not in refs:
                refs.append(c)
        pair = SentencePair(sid, src, refs, "cged2015", {})
        out.append(_attach(Parsed(pair), seg, spans, refs[0] if len(refs) == 1 else None))
    return out


def _parse_2016(root, variant):
    out = []
    for doc in root.iter("DOC"):
        tel = doc.find("TEXT")
        if tel is None:
            continue
        sid, src = tel.get("id", ""), _text(tel)
        seg = segment_chars(src)
        corr = _text(doc.find("CORRECTION"))
        spans = []
        for err in doc.iter("ERROR"):
            t = err.get("type", "")
            _check_type(t, TYPES_2016)
            start, end, s, e = _offsets(err, len(seg), t, sid)
            ans = err.get("answer")
            answers = tuple(a.strip() for a in re.split(r"[，,]", ans) if a.strip()) if ans else ()
            spans.append(GoldSpan(start, end, t, answers, None, s, e))
        meta = {}
        if spans:
            meta["offsets"] = ";".join(f"{sp.raw_start}-{sp.raw_end}:{sp.type}" for sp in spans)
        pair = SentencePair(sid, src, (corr,) if corr else (), variant, meta)
        out.append(_attach(Parsed(pair), seg, spans, corr or None))
    return out


def _raw_bounds(seg, sp):
    toks, text = seg.tokens, seg.text
    pos = lambda k: toks[k].char_start if k < len(toks) else len(text)
    if sp.start == sp.end:
        p = pos(sp.start)
        return p, p
    return toks[sp.start].char_start, toks[sp.end - 1].char_end


def _attach(parsed, seg, spans, correction):
    """Fill span replacements from ``correction`` and build gold edits."""
    order = sorted(range(len(spans)), key=lambda i: (spans[i].start, spans[i].end))
    spans = [spans[i] for i in order]
    parsed.spans = spans
    if correction is None or not spans:
        if correction is None and spans:
            parsed.warn("no single correction; span replacements unknown")
        if spans and correction is None:
            return parsed
        parsed.edit_sets = {0: ()} if correction is not None else {}
        return parsed
    for a, b in zip(spans, spans[1:]):
        if b.start < a.end or (a.start == a.end == b.start == b.end):
            parsed.warn("overlapping spans; replacements unknown")
            return parsed
    pieces = split_correction(seg, spans, correction)
    if pieces is None:
        parsed.warn("correction does not preserve the text between error spans")
        return parsed
    filled, edits = [], []
    for sp, piece in zip(spans, pieces):
        filled.append(GoldSpan(sp.start, sp.end, sp.type, sp.answers, piece, sp.raw_start, sp.raw_end))
        src_text = seg.span_text(sp.start, sp.end)
        if piece == src_text or (sp.start == sp.end and not piece.strip()):
            continue
        edits.append(char_edit(sp.start, sp.end, piece, sp.type))
    parsed.spans = filled
    parsed.edit_sets = {0: tuple(edits)}
    return parsed


def split_correction(seg, spans, correction):
    """Replacement text per span, or None if the correction cannot be cut.

    Text between spans must appear verbatim and in order. Runs of
    touching spans share one piece, divided by preferring listed
    answers and then character overlap with the source span.
    """
    text = seg.text
    bounds = [_raw_bounds(seg, sp) for sp in spans]
    groups = []  # lists of span indices that touch
    for i, (s, e) in enumerate(bounds):
        if groups and bounds[groups[-1][-1]][1] == s and spans[groups[-1][-1]].end == spans[i].start:
            groups[-1].append(i)
        else:
            groups.append([i])
    anchors, prev = [], 0
    for g in groups:
        anchors.append(text[prev:bounds[g[0]][0]])
        prev = bounds[g[-1]][1]
    anchors.append(text[prev:])
    pat = "(.*?)".join(re.escape(a) for a in anchors)
    m = re.fullmatch(pat, correction, re.S)
    if m is None:
        return None
    pieces = [None] * len(spans)
    for g, chunk in zip(groups, m.groups()):
        for i, piece in zip(g, _divide(chunk, [spans[i] for i in g], seg)):
            pieces[i] = piece
    return pieces


def _divide(chunk, group, seg):
    if len(group) == 1:
        return [chunk]
    # best[k][p]: best score placing the first k spans over chunk[:p]
    n = len(chunk)
    NEG = float("-inf")
    best = [[NEG] * (n + 1) for _ in range(len(group) + 1)]
    back = [[0] * (n + 1) for _ in range(len(group) + 1)]
    best[0][0] = 0.0
    for k, sp in enumerate(group, 1):
        src = seg.span_text(sp.start, sp.end)
        for p in range(n + 1):
            for q in range(p + 1):
                if best[k - 1][q] == NEG:
                    continue
                piece = chunk[q:p]
                if piece in sp.answers:
                    sc = 3.0
                else:
                    sc = sum(min(src.count(c), piece.count(c)) for c in set(piece)) * 0.5
                v = best[k - 1][q] + sc
                if v > best[k][p]:
                    best[k][p] = v
                    back[k][p] = q
    out, p = [], n
    for k in range(len(group), 0, -1):
        q = back[k][p]
        out.append(chunk[q:p])
        p = q
    return out[::-1]
