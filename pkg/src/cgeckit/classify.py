"""Error-type classification of extracted edits.

The decision ladder checks, in order: sound and shape both similar,
sound similar (with a special case for the 的/地/得 particles), shape
similar, same characters reordered, inserted particle, and finally a
POS-based fallback.
"""

from collections import Counter

from .core import DE_CHARS, AnnotationRecord, ErrorLabel, Thresholds, geometry_op
from .segment import default_lexicon, segment_words


def _op(edit):
    # geometry decides; an incoming WO is a replacement for the ladder
    return geometry_op(edit.start, edit.end, edit.replacement)


def _pos_of(words, lex):
    if len(words) != 1:
        return "OTHER"
    tag = words[0].pos or lex.pos(words[0].surface)
    if not tag or tag == "X":
        return "OTHER"
    return tag


def classify_branch(edit, src, th=None, providers=None, lex=None):
    """Return (branch number 1-6, ErrorLabel) for one edit."""
    from .align import default_providers

    th = th or Thresholds()
    providers = providers or default_providers()
    lex = lex if lex is not None else default_lexicon()
    op = _op(edit)
    S = src.span_text(edit.start, edit.end)
    T = edit.norm_replacement

    if op == "R":
        if len(S) == len(T):
            p_sim = providers.pinyin(S, T)
            s_sim = providers.shape(S, T)
            if p_sim > th.alpha1 and s_sim > th.alpha2:
                return 1, ErrorLabel("R", "MULTI")
            if p_sim > th.alpha1:
                return 2, ErrorLabel("R", "DE" if T in DE_CHARS else "PINYIN")
            if s_sim > th.alpha2:
                return 3, ErrorLabel("R", "SHAPE")
        if Counter(S) == Counter(T):
            if len(segment_words(T, lex)) == 1:
                return 4, ErrorLabel("R", "CO")
            return 4, ErrorLabel("WO")
    if op == "M" and T in DE_CHARS:
        return 5, ErrorLabel("M", "DE")

    if op == "U":
        toks = src.tokens[edit.start:edit.end]
        if len(toks) == 1:
            return 6, ErrorLabel("U", _pos_of(toks, lex))
        return 6, ErrorLabel("U", "OTHER")
    words = segment_words(T, lex).tokens
    return 6, ErrorLabel(op, _pos_of(words, lex))


def classify_edit(edit, src, tgt_text=None, th=None, providers=None, lex=None):
    """Label one edit. ``tgt_text`` is accepted for interface symmetry."""
    return classify_branch(edit, src, th, providers, lex)[1]


def classify_all(record, th=None, providers=None, lex=None):
    sets = {}
    for k, edits in record.edit_sets.items():
        sets[k] = tuple(e.with_label(classify_edit(e, record.source_seg, None, th, providers, lex))
                        for e in edits)
    return AnnotationRecord(record.source_seg, sets, record.dialect, record.targets)
