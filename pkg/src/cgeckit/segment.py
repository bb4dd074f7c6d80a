"""Character, dictionary-word and pre-segmented tokenization."""

from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .core import CHARACTER, WORD, DataError, Segmentation, Token, ValidationError


class EmptyInputError(ValidationError):
    kind = "empty-input"


@dataclass(frozen=True)
class Lexicon:
    entries: dict = field(default_factory=dict)
    max_word_len: int = 0

    def __post_init__(self):
        for k in self.entries:
            if not k:
                raise ValidationError("empty lexicon key")
        longest = max((len(k) for k in self.entries), default=0)
        object.__setattr__(self, "max_word_len", longest)

    def __contains__(self, word):
        return word in self.entries

    def pos(self, word):
        return self.entries.get(word)


def parse_lexicon(lines):
    entries = {}
    for n, line in enumerate(lines, 1):
        line = line.rstrip("\n")
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0]:
            raise DataError(f"lexicon line {n}: expected word<TAB>UPOS")
        entries.setdefault(parts[0], parts[1].strip() or "X")
    return Lexicon(entries)


def load_lexicon(path=None):
    if path is None:
        with resources.files("cgeckit.data").joinpath("lexicon.tsv").open(encoding="utf-8") as f:
            return parse_lexicon(f)
    try:
        with open(path, encoding="utf-8") as f:
            return parse_lexicon(f)
    except OSError as e:
        raise DataError(f"cannot read lexicon {path}: {e.strerror}") from None


@lru_cache(maxsize=1)
def default_lexicon():
    return load_lexicon()


def segment_chars(text):
    if not text or not text.strip():
        raise EmptyInputError("empty input")
    toks = [Token(c, i, i + 1) for i, c in enumerate(text) if not c.isspace()]
    return Segmentation(toks, CHARACTER, text)


def segment_words(text, lex=None):
    """Greedy forward maximum matching against ``lex``.

    Whitespace is a hard boundary. Characters not starting any lexicon
    word become single tokens tagged X.
    """
    if not text or not text.strip():
        raise EmptyInputError("empty input")
    lex = lex if lex is not None else default_lexicon()
    entries = lex.entries
    maxlen = max(lex.max_word_len, 1)
    toks = []
    i, n = 0, len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        j = i + 1
        stop = i
        while stop < n and stop - i < maxlen and not text[stop].isspace():
            stop += 1
        for k in range(stop, i + 1, -1):
            if text[i:k] in entries:
                j = k
                break
        w = text[i:j]
        toks.append(Token(w, i, j, entries.get(w, "X")))
        i = j
    return Segmentation(toks, WORD, text)


def parse_presegmented(line):
    """Split on whitespace; offsets refer to the text with spaces removed."""
    words = line.split()
    if not words:
        raise EmptyInputError("empty input")
    toks, pos = [], 0
    for w in words:
        toks.append(Token(w, pos, pos + len(w)))
        pos += len(w)
    return Segmentation(toks, WORD, "".join(words))


def segment(text, granularity=CHARACTER, lex=None, presegmented=False):
    """Dispatch helper used by the pipeline and the CLI."""
    if presegmented:
        seg = parse_presegmented(text)
        if granularity == CHARACTER:
            return segment_chars(seg.text)
        return seg
    if granularity == CHARACTER:
        return segment_chars(text)
    return segment_words(text, lex)


def tag(seg, lex=None):
    """Return ``seg`` with missing POS tags filled from the lexicon."""
    lex = lex if lex is not None else default_lexicon()
    toks = [t if t.pos else Token(t.surface, t.char_start, t.char_end, lex.pos(t.surface) or "X")
            for t in seg.tokens]
    return Segmentation(toks, seg.granularity, seg.text)
