"""Shared result type and helpers for the corpus parsers."""

import bisect
import logging
from dataclasses import dataclass, field
from typing import Optional

from ..core import CgecError, Edit, ErrorLabel, SentencePair, apply_edits, geometry_op
from ..segment import segment_chars

log = logging.getLogger("cgeckit.ingest")


class IngestError(CgecError):
    kind = "ingest"


@dataclass(frozen=True)
class GoldSpan:
    """A corpus-provided error span in 0-based, end-exclusive characters."""

    start: int
    end: int
    type: str
    answers: tuple = ()
    replacement: Optional[str] = None
    # offsets exactly as written in the file
    raw_start: Optional[int] = None
    raw_end: Optional[int] = None


@dataclass
class Parsed:
    pair: SentencePair
    # annotator id -> gold edits over the character segmentation
    edit_sets: dict = field(default_factory=dict)
    spans: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def edits(self):
        return self.edit_sets.get(0, ())

    @property
    def source_seg(self):
        return segment_chars(self.pair.source)

    def warn(self, msg):
        log.warning("%s: %s", self.pair.id, msg)
        self.warnings.append(msg)


def char_edit(start, end, replacement, label=None, annotator=0):
    """Character-level Edit; the replacement is stored one char per token."""
    repl = " ".join(c for c in replacement if not c.isspace())
    if label is None:
        label = ErrorLabel(geometry_op(start, end, repl))
    elif isinstance(label, str):
        label = ErrorLabel(geometry_op(start, end, repl), raw=label)
    return Edit(start, end, repl, label, annotator)


def token_index(seg, p):
    """Index of the first token starting at or after raw offset ``p``."""
    return bisect.bisect_left([t.char_start for t in seg.tokens], p)


def raw_edit(seg, start, end, replacement, label=None, annotator=0):
    """char_edit for offsets counted over the raw string, whitespace included."""
    return char_edit(token_index(seg, start), token_index(seg, end), replacement, label, annotator)


def reconstruct(parsed, annotator=0):
    return apply_edits(parsed.source_seg, parsed.edit_sets.get(annotator, ()))


def load_json(text):
    import json

    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise IngestError(f"invalid JSON at line {e.lineno}: {e.msg}") from None


def iter_json_records(text):
    """Yield (key, record) from a JSON object, JSON list or JSON lines."""
    import json

    stripped = text.strip()
    if not stripped:
        return
    try:
        data = json.loads(stripped)
    except json.JSONDecodeError:
        data = None
        for n, line in enumerate(stripped.splitlines(), 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as e:
                raise IngestError(f"invalid JSON on line {n}: {e.msg}") from None
            yield str(n), obj
    if data is None:
        return
    if isinstance(data, dict) and data and all(isinstance(v, dict) for v in data.values()):
        for k, v in data.items():
            yield str(k), v
    elif isinstance(data, list):
        for n, v in enumerate(data, 1):
            yield str(n), v
    else:
        yield "1", data
