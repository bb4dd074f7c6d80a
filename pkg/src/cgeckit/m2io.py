"""Reading and writing m2 files in the cherrant and refined dialects.

The two dialects differ in operation names (S/M/R/W against R/M/U/WO),
in the presence of T lines and in how an empty replacement is spelled
(``-NONE-`` against an empty field). Labels that fit neither scheme
are carried through verbatim.
"""

import re

from .core import (
    CHERRANT, CHARACTER, REFINED, WORD, AnnotationRecord, CgecError, Edit,
    ErrorLabel, Segmentation, Token, ValidationError, geometry_op,
)

NONE = "-NONE-"
NOOP = "noop"

CHERRANT_TO_OP = {"S": "R", "M": "M", "R": "U", "W": "WO"}
OP_TO_CHERRANT = {v: k for k, v in CHERRANT_TO_OP.items()}


class M2ParseError(CgecError):
    kind = "parse"

    def __init__(self, lineno, msg):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


class UnclassifiedEditError(CgecError):
    kind = "unclassified"


def format_label(label, dialect):
    if label.raw is not None:
        return label.raw
    op = label.op
    if dialect == CHERRANT:
        op = OP_TO_CHERRANT[op]
    return op if label.subtype is None else f"{op}:{label.subtype}"


def parse_label(text, start, end, replacement, dialect):
    """Structured label when ``text`` fits the dialect, else opaque."""
    op, _, sub = text.partition(":")
    if dialect == CHERRANT:
        op = CHERRANT_TO_OP.get(op)
    if op is not None and (not _ or sub):
        try:
            lab = ErrorLabel(op, sub or None)
            Edit(start, end, replacement, lab)
            if format_label(lab, dialect) == text:
                return lab
        except ValidationError:
            pass
    return ErrorLabel(geometry_op(start, end, replacement), raw=text)


def _tokens_line(seg):
    return " ".join(seg.surfaces)


def source_segmentation(line):
    """Segmentation for an S line (tokens separated by single spaces)."""
    words = line.split(" ") if line else []
    toks, pos = [], 0
    for w in words:
        if not w:
            continue
        toks.append(Token(w, pos, pos + len(w)))
        pos += len(w)
    gran = CHARACTER if toks and all(len(t.surface) == 1 for t in toks) else WORD
    return Segmentation(toks, gran, "".join(t.surface for t in toks))


def write_m2(records, dialect=None):
    out = []
    for rec in records:
        d = dialect or rec.dialect
        lines = ["S " + _tokens_line(rec.source_seg) if len(rec.source_seg) else "S"]
        if d == CHERRANT:
            keys = sorted(set(rec.targets) | set(rec.edit_sets)) or [0]
            for k in keys:
                tgt = rec.targets.get(k)
                if tgt is None:
                    tgt = " ".join(_target_tokens(rec, k))
                lines.append(f"T0-A{k} {tgt}" if tgt else f"T0-A{k}")
        for k in sorted(rec.edit_sets):
            edits = rec.edit_sets[k]
            if not edits:
                lines.append(f"A -1 -1|||{NOOP}|||{NONE}|||REQUIRED|||{NONE}|||{k}")
            for e in edits:
                if e.label is None:
                    raise UnclassifiedEditError(f"edit {e} has no label")
                repl = e.replacement
                if not repl.strip():
                    repl = NONE if d == CHERRANT else ""
                fields = [f"A {e.start} {e.end}", format_label(e.label, d), repl, *e.extra, str(k)]
                lines.append("|||".join(fields))
        out.append("\n".join(lines) + "\n")
    return "\n".join(out)


def _target_tokens(rec, k):
    toks = []
    pos = 0
    src = rec.source_seg.surfaces
    for e in sorted(rec.edit_sets.get(k, ()), key=lambda e: (e.start, e.end)):
        toks.extend(src[pos:e.start])
        toks.extend(e.replacement.split())
        pos = max(pos, e.end)
    toks.extend(src[pos:])
    return toks


def parse_m2(text, dialect=None):
    """Parse m2 text into AnnotationRecords.

    The dialect is taken from the argument or, if None, guessed per
    file: any T line means cherrant. Offsets are not checked against
    the S line here; call ``record.validate()`` for that.
    """
    if text.startswith("﻿"):
        text = text[1:]
    lines = text.split("\n")
    if dialect is None:
        dialect = CHERRANT if any(re.match(r"T\d", l) for l in lines) else REFINED
    records = []
    cur = None

    def close():
        if cur is not None:
            seg, sets, targets = cur
            records.append(AnnotationRecord(seg, sets, dialect, targets))

    for n, raw in enumerate(lines, 1):
        line = raw.rstrip("\r")
        if not line.strip():
            close()
            cur = None
            continue
        tag = line[0]
        if tag == "S" and (len(line) == 1 or line[1] == " "):
            close()
            try:
                seg = source_segmentation(line[2:])
            except ValidationError as e:
                raise M2ParseError(n, str(e)) from None
            cur = (seg, {}, {})
        elif tag == "T":
            if cur is None:
                raise M2ParseError(n, "T line before S line")
            head, _, rest = line.partition(" ")
            k = 0
            if "-A" in head:
                try:
                    k = int(head.split("-A", 1)[1])
                except ValueError:
                    raise M2ParseError(n, f"bad T line tag {head!r}") from None
            cur[2][k] = rest
        elif tag == "A":
            if cur is None:
                raise M2ParseError(n, "A line before S line")
            _parse_a(line, n, cur[1], dialect)
        else:
            raise M2ParseError(n, f"unexpected line {line[:20]!r}")
    close()
    return records


def _parse_a(line, n, sets, dialect):
    fields = line[2:].split("|||")
    if len(fields) < 6:
        raise M2ParseError(n, f"expected 6 '|||' fields, got {len(fields)}")
    span = fields[0].split()
    if len(span) != 2:
        raise M2ParseError(n, "A line needs start and end offsets")
    try:
        start, end = int(span[0]), int(span[1])
        ann = int(fields[-1])
    except ValueError:
        raise M2ParseError(n, "non-integer offset or annotator id") from None
    typ, repl = fields[1], fields[2]
    sets.setdefault(ann, [])
    if start == -1 and end == -1:
        # noop marker: annotator saw nothing to correct
        if typ != NOOP:
            raise M2ParseError(n, f"negative offsets with type {typ!r}")
        return
    if repl == NONE:
        repl = ""
    try:
        label = parse_label(typ, start, end, repl, dialect)
        sets[ann].append(Edit(start, end, repl, label, ann, tuple(fields[3:-1])))
    except ValidationError as e:
        raise M2ParseError(n, str(e)) from None
