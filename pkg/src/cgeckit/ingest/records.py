"""Parsers for the JSON-based corpora: FCGEC, FlaCGEC, YACLC, CCTC,
NaCGEC and CEFE.

Each ``parse_*`` function takes one decoded record and returns a list
of Parsed results (CCTC documents expand to one per sentence).
"""

import ast
import json
import re

from ..core import ErrorLabel, SentencePair, ValidationError
from ..segment import segment_chars
from .base import GoldSpan, IngestError, Parsed, raw_edit, reconstruct


def _need(rec, *keys, who="record"):
    if not isinstance(rec, dict):
        raise IngestError(f"{who}: expected an object, got {type(rec).__name__}")
    missing = [k for k in keys if k not in rec]
    if missing:
        raise IngestError(f"{who}: missing field(s) {', '.join(missing)}")


# ---------------------------------------------------------------- FCGEC

def _fcgec_ops(raw):
    if isinstance(raw, str):
        raw = raw.strip()
        if not raw:
            return []
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as e:
            raise IngestError(f"operation is not valid JSON: {e.msg}") from None
    if isinstance(raw, dict):
        raw = [raw]
    if not isinstance(raw, list):
        raise IngestError("operation must be a list of objects")
    return raw


def _mod_width(tag, label):
    m = re.fullmatch(r"MOD_(\d+)", tag or "")
    return int(m.group(1)) if m else len(label)


def fcgec_edits(src, op, annotator=0):
    """Translate one FCGEC operation object into character Edits.

    Every position refers to the untouched source, so the operations
    can be applied in any order.
    """
    n = len(src)

    def check(p, what):
        if not isinstance(p, int) or not (0 <= p < n):
            raise IngestError(f"{what} position {p!r} outside sentence of {n} characters")

    spans = []           # (start, end, replacement) over the source
    after = {}           # text inserted after position p (p = -1 means at the start)
    dels = set()
    for p in op.get("Delete", ()) or ():
        check(p, "Delete")
        dels.add(p)
    for ins in op.get("Insert", ()) or ():
        p = ins.get("pos")
        if p != -1:
            check(p, "Insert")
        after[p] = after.get(p, "") + ins.get("label", "")
    for mod in op.get("Modify", ()) or ():
        p, label = mod.get("pos"), mod.get("label", "")
        check(p, "Modify")
        w = _mod_width(mod.get("tag"), label)
        if p + w > n:
            raise IngestError(f"Modify at {p} replaces {w} characters past the end")
        spans.append((p, p + w, label))
        dels -= set(range(p, p + w))
    run = sorted(dels)
    while run:
        i = j = run.pop(0)
        while run and run[0] == j + 1:
            j = run.pop(0)
        spans.append((i, j + 1, ""))
    sw = op.get("Switch")
    region = None
    if sw:
        for p in sw:
            check(p, "Switch")
        lo, hi = min(sw), max(sw) + 1
        if sorted(sw) != list(range(lo, hi)):
            raise IngestError("Switch is not a permutation of a contiguous range")
        moved = [src[p] for p in sw]
        while lo < hi and moved[0] == src[lo]:
            moved.pop(0)
            lo += 1
        while lo < hi and moved[-1] == src[hi - 1]:
            moved.pop()
            hi -= 1
        if lo < hi:
            region = (lo, hi)
            if any(sp[0] < hi and sp[1] > lo for sp in spans):
                raise IngestError("an operation overlaps a Switch block")
            spans.append((lo, hi, "".join(moved)))

    spans.sort()
    for a, b in zip(spans, spans[1:]):
        if b[0] < a[1]:
            raise IngestError(f"operations overlap at positions {b[0]}-{a[1]}")
    seg = segment_chars(src)
    edits = []
    for s, e, repl in spans:
        label = ErrorLabel("WO") if (s, e) == region else None
        if repl != src[s:e]:
            edits.append(raw_edit(seg, s, e, repl, label, annotator))
    for p, text in after.items():
        at = p + 1
        if region and region[0] < at < region[1]:
            raise IngestError(f"Insert after {p} falls inside a Switch block")
        if text:
            edits.append(raw_edit(seg, at, at, text, None, annotator))
    edits.sort(key=lambda e: (e.start, e.end))
    return tuple(edits)


def parse_fcgec(key, rec):
    _need(rec, "sentence", "error_flag", "operation", who=f"FCGEC {key}")
    src = rec["sentence"]
    meta = {"error_type": rec.get("error_type", "")}
    if "version" in rec:
        meta["version"] = rec["version"]
    if not int(rec["error_flag"]):
        return [Parsed(SentencePair(key, src, (src,), "fcgec", meta), {0: ()})]
    sets, refs = {}, []
    for k, op in enumerate(_fcgec_ops(rec["operation"])):
        if not isinstance(op, dict):
            raise IngestError(f"FCGEC {key}: operation entry is not an object")
        try:
            sets[k] = fcgec_edits(src, op, k)
        except IngestError as e:
            raise IngestError(f"FCGEC {key}: {e}") from None
    parsed = Parsed(SentencePair(key, src, (), "fcgec", meta), sets)
    for k in sorted(sets):
        refs.append(reconstruct(parsed, k))
    parsed.pair = SentencePair(key, src, refs, "fcgec", meta)
    return [parsed]


# -------------------------------------------------------------- FlaCGEC

def _flacgec_annotation(text, src):
    spans = []
    for part in (text or "").split(";"):
        part = part.strip()
        if not part:
            continue
        fields = part.split("|||")
        if len(fields) != 3:
            raise IngestError(f"annotation entry {part!r} needs 3 '|||' fields")
        pos, typ, repl = fields
        try:
            s, e = (int(x) for x in pos.split())
        except ValueError:
            raise IngestError(f"bad annotation offsets {pos!r}") from None
        if repl in ("null", "-NONE-"):
            repl = ""
        # inclusive ends; a missing-word entry inserts before s
        start, end = (s, s) if typ.startswith("M") else (s, e + 1)
        if not (0 <= start <= end <= len(src)):
            raise IngestError(f"annotation offsets {s} {e} outside sentence")
        spans.append(GoldSpan(start, end, typ, (), repl, s, e))
    return spans


def _flacgec_operations(text):
    if not text:
        return []
    if isinstance(text, list):
        return text
    try:
        ops = ast.literal_eval(text.strip())
    except (ValueError, SyntaxError):
        return None
    return ops if isinstance(ops, list) else None


def parse_flacgec(key, rec):
    _need(rec, "source", "target", who=f"FlaCGEC {key}")
    src, tgt = rec["source"], rec["target"]
    spans = _flacgec_annotation(rec.get("annotation", ""), src)
    seg = segment_chars(src)
    edits = []
    for sp in sorted(spans, key=lambda s: (s.start, s.end)):
        try:
            edits.append(raw_edit(seg, sp.start, sp.end, sp.replacement, sp.type))
        except ValidationError as e:
            raise IngestError(f"FlaCGEC {key}: {e}") from None
    meta = {}
    parsed = Parsed(SentencePair(key, src, (tgt,), "flacgec", meta), {0: tuple(edits)}, spans)
    ops = _flacgec_operations(rec.get("operation"))
    if ops is None:
        parsed.warn("operation field could not be read")
    else:
        got = set()
        for op in ops:
            try:
                (s, e, old), _sub, _typ, (_a, _b, new) = op
            except (TypeError, ValueError):
                parsed.warn(f"unreadable operation entry {op!r}")
                continue
            if old and src[s:e + 1] != old:
                parsed.warn(f"operation {s}-{e} names {old!r} but source has {src[s:e + 1]!r}")
            got.add((s, e, "" if new in (None, "null") else new))
        want = {(sp.raw_start, sp.raw_end, sp.replacement) for sp in spans}
        if ops and got != want:
            parsed.warn("operation list disagrees with annotation")
    if edits and reconstruct(parsed) != tgt:
        parsed.warn("annotation does not reproduce the target")
    return [parsed]


# ---------------------------------------------------------------- YACLC

def parse_yaclc(key, rec):
    _need(rec, "sentence_text", who=f"YACLC {key}")
    sid = str(rec.get("sentence_id", key))
    gram, flu = [], []
    for a in rec.get("sentence_annos", ()) or ():
        entry = {"correction": a.get("correction", ""),
                 "annotator_count": a.get("annotator_count", 1),
                 "edits_count": a.get("edits_count")}
        (gram if int(a.get("is_grammatical", 1)) else flu).append(entry)
    meta = {
        "grammatical_counts": json.dumps([g["annotator_count"] for g in gram]),
        "fluency": json.dumps(flu, ensure_ascii=False),
    }
    for k in ("article_id", "article_name", "total_annotators"):
        if k in rec:
            meta[k] = str(rec[k])
    pair = SentencePair(sid, rec["sentence_text"], [g["correction"] for g in gram], "yaclc", meta)
    return [Parsed(pair)]


# ----------------------------------------------------------------- CCTC

def _is_corr(x):
    return len(x) == 4 and isinstance(x[0], int)


def _sentence_corrections(doc):
    """Flat (sentence, corrections) lists; paragraphs may nest one level."""
    sents = doc["sentences"]
    corrs = doc.get("corrections") or [[] for _ in sents]
    if sents and all(isinstance(x, list) for x in sents):
        if len(corrs) != len(sents) or not all(isinstance(c, list) for c in corrs):
            raise IngestError("corrections do not follow the paragraph structure")
        for g, c in zip(sents, corrs):
            if len(g) != len(c):
                raise IngestError(f"{len(c)} correction lists for {len(g)} sentences")
        sents = [x for g in sents for x in g]
        corrs = [x for g in corrs for x in g]
    if len(corrs) != len(sents):
        raise IngestError(f"{len(corrs)} correction lists for {len(sents)} sentences")
    return sents, corrs


def cctc_edits(src, corrs):
    """Positions are 1-based character offsets into the sentence."""
    seg = segment_chars(src)
    edits = []
    for c in corrs:
        if not _is_corr(c):
            raise IngestError(f"bad correction entry {c!r}")
        pos, op, old, new = c
        start = pos - 1
        if src[start:start + len(old)] != old or start < 0:
            raise IngestError(f"correction {c!r} does not match source text at {pos}")
        edits.append(raw_edit(seg, start, start + len(old), new))
    edits.sort(key=lambda e: (e.start, e.end))
    return tuple(edits)


def parse_cctc(key, doc):
    _need(doc, "sentences", who=f"CCTC {key}")
    doc_id = str(doc.get("doc_id", key))
    try:
        sents, corrs = _sentence_corrections(doc)
    except IngestError as e:
        raise IngestError(f"CCTC {doc_id}: {e}") from None
    out = []
    for i, (src, cs) in enumerate(zip(sents, corrs)):
        try:
            edits = cctc_edits(src, cs or [])
        except IngestError as e:
            raise IngestError(f"CCTC {doc_id} sentence {i}: {e}") from None
        meta = {"doc_id": doc_id, "sentence_index": str(i)}
        parsed = Parsed(SentencePair(f"{doc_id}-{i}", src, (), "cctc", meta), {0: edits})
        ref = reconstruct(parsed)
        parsed.pair = SentencePair(f"{doc_id}-{i}", src, (ref,), "cctc", meta)
        out.append(parsed)
    return out


# --------------------------------------------------------------- NaCGEC

CORRECT = "正确"


def parse_nacgec(key, rec):
    _need(rec, "source", who=f"NaCGEC {key}")
    src = rec["source"]
    etype = rec.get("error_type", "")
    tgt = rec.get("target", [])
    if isinstance(tgt, str):
        tgt = [tgt]
    refs = [src] if etype == CORRECT else list(tgt)
    sid = str(rec.get("id", key))
    return [Parsed(SentencePair(sid, src, refs, "nacgec", {"error_type": etype}))]


# ----------------------------------------------------------------- CEFE

def parse_cefe(key, rec):
    _need(rec, "sent", "revisedSent", who=f"CEFE {key}")
    sid = str(rec.get("sent_id", key))
    return [Parsed(SentencePair(sid, rec["sent"], (rec["revisedSent"],), "cefe", {}))]
