"""Domain types shared by every module.

Everything here is immutable once built. Constructors validate their
invariants and raise :class:`ValidationError` on violation.
"""

from dataclasses import dataclass, field
from typing import Optional

CHARACTER = "character"
WORD = "word"
GRANULARITIES = (CHARACTER, WORD)

CHERRANT = "cherrant"
REFINED = "refined"
DIALECTS = (CHERRANT, REFINED)

OPS = ("R", "M", "U", "WO")
UPOS = frozenset(
    "ADJ ADP ADV AUX CCONJ DET INTJ NOUN NUM PART PRON PROPN PUNCT SCONJ SYM VERB X".split()
)
SPECIAL_SUBTYPES = frozenset(["PINYIN", "SHAPE", "MULTI", "DE", "CO", "SPELL", "OTHER"])
R_ONLY = frozenset(["PINYIN", "SHAPE", "MULTI", "CO"])
DE_CHARS = frozenset("的地得")


class CgecError(Exception):
    """Base class for all toolkit errors."""

    kind = "error"


class ValidationError(CgecError, ValueError):
    kind = "validation"


class DataError(CgecError):
    kind = "data"


class OverlapError(ValidationError):
    kind = "overlap"

    def __init__(self, first, second):
        super().__init__(f"overlapping edits: {first} and {second}")
        self.first = first
        self.second = second


@dataclass(frozen=True)
class ErrorLabel:
    """Operation plus optional subtype, e.g. R:PINYIN or U:PART.

    A label read from a file that does not fit the scheme is kept as an
    opaque string in ``raw`` (op then reflects the edit geometry only).
    """

    op: str
    subtype: Optional[str] = None
    raw: Optional[str] = None

    def __post_init__(self):
        if self.op not in OPS:
            raise ValidationError(f"unknown operation {self.op!r}")
        if self.raw is not None:
            return
        st = self.subtype
        if st is None:
            return
        if st not in SPECIAL_SUBTYPES and st not in UPOS:
            raise ValidationError(f"unknown subtype {st!r}")
        if self.op == "WO":
            raise ValidationError("WO carries no subtype")
        if st in R_ONLY and self.op != "R":
            raise ValidationError(f"subtype {st} only allowed with R")
        if st == "DE" and self.op not in ("R", "M"):
            raise ValidationError("subtype DE only allowed with R or M")

    @property
    def opaque(self):
        return self.raw is not None

    def __str__(self):
        if self.raw is not None:
            return self.raw
        return self.op if self.subtype is None else f"{self.op}:{self.subtype}"


def geometry_op(start, end, replacement):
    """Operation implied by span shape alone."""
    if start == end:
        return "M"
    if not replacement.strip():
        return "U"
    return "R"


@dataclass(frozen=True)
class Edit:
    start: int
    end: int
    replacement: str
    label: Optional[ErrorLabel] = None
    annotator: int = 0
    extra: tuple = ("REQUIRED", "-NONE-")

    def __post_init__(self):
        if not (0 <= self.start <= self.end):
            raise ValidationError(f"bad span {self.start}..{self.end}")
        empty = not self.replacement.strip()
        if self.start == self.end and empty:
            raise ValidationError(f"empty edit at {self.start}")
        lab = self.label
        if lab is None or lab.opaque:
            return
        if (lab.op == "M") != (self.start == self.end):
            raise ValidationError(f"{lab} does not fit span {self.start}..{self.end}")
        if (lab.op == "U") != (empty and self.end > self.start):
            raise ValidationError(f"{lab} does not fit replacement {self.replacement!r}")

    @property
    def span(self):
        return (self.start, self.end)

    @property
    def norm_replacement(self):
        return "".join(self.replacement.split())

    def with_label(self, label):
        return Edit(self.start, self.end, self.replacement, label, self.annotator, self.extra)

    def __str__(self):
        return f"{self.start}..{self.end}->{self.replacement!r}"


@dataclass(frozen=True)
class Token:
    surface: str
    char_start: int
    char_end: int
    pos: Optional[str] = None

    def __post_init__(self):
        if not self.surface:
            raise ValidationError("empty token")
        if self.char_start >= self.char_end:
            raise ValidationError(f"bad token offsets {self.char_start}..{self.char_end}")


@dataclass(frozen=True)
class Segmentation:
    tokens: tuple
    granularity: str
    text: str = ""

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.granularity not in GRANULARITIES:
            raise ValidationError(f"unknown granularity {self.granularity!r}")
        if self.granularity == CHARACTER:
            for t in self.tokens:
                if len(t.surface) != 1:
                    raise ValidationError(f"multi-character token {t.surface!r}")
        if not self.text:
            object.__setattr__(self, "text", "".join(t.surface for t in self.tokens))
        prev = 0
        for t in self.tokens:
            if t.char_start < prev or self.text[t.char_start:t.char_end] != t.surface:
                raise ValidationError(f"token {t.surface!r} does not match text")
            if self.text[prev:t.char_start].strip():
                raise ValidationError("tokens skip non-whitespace text")
            prev = t.char_end
        if self.text[prev:].strip():
            raise ValidationError("tokens skip non-whitespace text")

    def __len__(self):
        return len(self.tokens)

    @property
    def surfaces(self):
        return [t.surface for t in self.tokens]

    def joined(self, sep=" "):
        return sep.join(t.surface for t in self.tokens)

    def span_text(self, start, end):
        return "".join(t.surface for t in self.tokens[start:end])


@dataclass(frozen=True)
class SentencePair:
    id: str
    source: str
    references: tuple = ()
    origin: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.source.strip():
            raise ValidationError(f"sentence {self.id!r}: empty source")
        object.__setattr__(self, "references", tuple(self.references))
        object.__setattr__(self, "meta", dict(self.meta))


@dataclass(frozen=True)
class Thresholds:
    alpha1: float = 0.9
    alpha2: float = 0.9

    def __post_init__(self):
        for name in ("alpha1", "alpha2"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValidationError(f"{name} must be in [0,1], got {v}")


@dataclass(frozen=True)
class AnnotationRecord:
    source_seg: Segmentation
    edit_sets: dict
    dialect: str = REFINED
    # cherrant T lines per annotator, token strings as written
    targets: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.dialect not in DIALECTS:
            raise ValidationError(f"unknown dialect {self.dialect!r}")
        sets = {int(k): tuple(v) for k, v in self.edit_sets.items()}
        object.__setattr__(self, "edit_sets", sets)
        object.__setattr__(self, "targets", dict(self.targets))

    def validate(self):
        """Check spans against the source and overlap within each set."""
        n = len(self.source_seg)
        for k, edits in self.edit_sets.items():
            for e in edits:
                if e.end > n:
                    raise ValidationError(f"annotator {k}: edit {e} beyond {n} tokens")
            check_overlap(edits)
        return self


@dataclass(frozen=True)
class ScoreReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f_beta: float
    beta: float
    per_type: dict
    granularity: str = CHARACTER


def check_overlap(edits):
    """Raise OverlapError if two edits share a source token.

    Insertions at the boundary of a span do not overlap it; two
    insertions at the same point are fine and keep their order.
    """
    ordered = sorted(edits, key=lambda e: (e.start, e.end))
    for a, b in zip(ordered, ordered[1:]):
        if b.start < a.end:
            raise OverlapError(a, b)
    return ordered


def apply_edits(seg, edits):
    """Return the corrected text for ``edits`` applied to ``seg``.

    Whitespace between untouched tokens is kept; whitespace inside a
    replacement is a token separator and dropped.
    """
    edits = list(edits)
    for a, b in zip(edits, edits[1:]):
        if b.start < a.start:
            raise ValidationError("edits must be sorted by start")
    check_overlap(edits)
    toks = seg.tokens
    text = seg.text
    n = len(toks)
    out = []
    pos = ei = prev_end = 0
    while True:
        jumped = False
        while ei < len(edits) and edits[ei].start == pos:
            e = edits[ei]
            ei += 1
            if e.end > n:
                raise ValidationError(f"edit {e} beyond {n} tokens")
            out.append(e.norm_replacement)
            if e.end > e.start:
                pos = e.end
                prev_end = toks[pos - 1].char_end
                jumped = True
                break
        if jumped:
            continue
        if pos >= n:
            break
        t = toks[pos]
        if pos:
            out.append(text[prev_end:t.char_start])
        out.append(t.surface)
        prev_end = t.char_end
        pos += 1
    if ei < len(edits):
        raise ValidationError(f"edit {edits[ei]} beyond {n} tokens")
    return "".join(out)
