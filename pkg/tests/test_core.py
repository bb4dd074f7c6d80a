import pytest
from hypothesis import given, strategies as st

from cgeckit.core import (
    CHARACTER, WORD, AnnotationRecord, Edit, ErrorLabel, OverlapError, Segmentation,
    SentencePair, Thresholds, Token, ValidationError, apply_edits, check_overlap, geometry_op,
)
from cgeckit.segment import segment_chars


def seg_of(words):
    toks, pos = [], 0
    for w in words:
        toks.append(Token(w, pos, pos + len(w)))
        pos += len(w)
    return Segmentation(toks, WORD, "".join(words))


class TestErrorLabel:
    def test_structured(self):
        assert str(ErrorLabel("R", "PINYIN")) == "R:PINYIN"
        assert str(ErrorLabel("WO")) == "WO"

    def test_opaque_keeps_text(self):
        lab = ErrorLabel("R", raw="S-频率、重复副词")
        assert lab.opaque and str(lab) == "S-频率、重复副词"

    @pytest.mark.parametrize("op,sub", [("X", None), ("M", "PINYIN"), ("U", "CO"), ("R", "BOGUS")])
    def test_rejects(self, op, sub):
        with pytest.raises(ValidationError):
            ErrorLabel(op, sub)


class TestEdit:
    def test_geometry(self):
        assert geometry_op(2, 2, "的") == "M"
        assert geometry_op(2, 3, "") == "U"
        assert geometry_op(2, 3, "四") == "R"

    def test_empty_insertion_rejected(self):
        with pytest.raises(ValidationError):
            Edit(1, 1, "")

    def test_negative_rejected(self):
        with pytest.raises(ValidationError):
            Edit(-1, 0, "a")
        with pytest.raises(ValidationError):
            Edit(3, 2, "a")

    def test_label_must_fit_geometry(self):
        with pytest.raises(ValidationError):
            Edit(1, 2, "x", ErrorLabel("M", "DE"))
        with pytest.raises(ValidationError):
            Edit(1, 1, "的", ErrorLabel("U"))

    def test_norm_replacement(self):
        assert Edit(0, 1, " 以 前 ").norm_replacement == "以前"


class TestSegmentation:
    def test_whitespace_gaps_only(self):
        with pytest.raises(ValidationError):
            Segmentation([Token("a", 0, 1), Token("c", 2, 3)], WORD, "abc")
        Segmentation([Token("a", 0, 1), Token("c", 2, 3)], WORD, "a c")

    def test_span_text(self):
        seg = seg_of(["我", "一前", "没"])
        assert seg.span_text(1, 3) == "一前没"


def test_sentence_pair_rejects_empty_source():
    with pytest.raises(ValidationError):
        SentencePair("1", "   ")


def test_thresholds_range():
    with pytest.raises(ValidationError):
        Thresholds(1.5, 0.9)


def test_overlap():
    check_overlap([Edit(0, 1, "a"), Edit(1, 1, "b"), Edit(1, 2, "")])
    with pytest.raises(OverlapError):
        check_overlap([Edit(0, 2, "a"), Edit(1, 3, "b")])


def test_record_validate_bounds():
    seg = seg_of(["a", "b"])
    with pytest.raises(ValidationError):
        AnnotationRecord(seg, {0: [Edit(1, 3, "x")]}).validate()


class TestApplyEdits:
    def test_worked_example(self):
        seg = seg_of("我 一前 没 住 过 五星级 旅馆 ， 所以 我 很 惊奇 了 。".split())
        out = apply_edits(seg, [Edit(1, 2, "以前"), Edit(12, 13, "")])
        assert out == "我以前没住过五星级旅馆，所以我很惊奇。"

    def test_insert_at_end_after_span(self):
        seg = seg_of(list("abc"))
        assert apply_edits(seg, [Edit(1, 3, "x"), Edit(3, 3, "y")]) == "axy"

    def test_keeps_inner_whitespace(self):
        seg = segment_chars("ab cd")
        assert apply_edits(seg, [Edit(0, 1, "x")]) == "xb cd"

    def test_unsorted_rejected(self):
        seg = seg_of(list("abc"))
        with pytest.raises(ValidationError):
            apply_edits(seg, [Edit(2, 3, "x"), Edit(0, 1, "y")])

    def test_beyond_end_rejected(self):
        with pytest.raises(ValidationError):
            apply_edits(seg_of(list("ab")), [Edit(2, 3, "x")])

    @given(st.text(alphabet="甲乙丙丁戊 ", min_size=1, max_size=20))
    def test_no_edits_is_identity(self, text):
        if not text.strip():
            return
        seg = segment_chars(text)
        assert apply_edits(seg, []) == text.strip()

    @given(st.lists(st.sampled_from("甲乙丙丁"), min_size=1, max_size=10), st.data())
    def test_concatenation(self, toks, data):
        # edits on the left half and right half apply independently
        k = data.draw(st.integers(0, len(toks)))
        left, right = toks[:k], toks[k:]
        el = _random_edits(data, len(left), 0)
        er = _random_edits(data, len(right), 0)
        whole = apply_edits(seg_of(toks), el + [Edit(e.start + k, e.end + k, e.replacement) for e in er])
        a = apply_edits(seg_of(left), el) if left else "".join(e.replacement for e in el)
        b = apply_edits(seg_of(right), er) if right else "".join(e.replacement for e in er)
        assert whole == a + b


def _random_edits(data, n, _):
    edits, pos = [], 0
    while pos < n:
        if data.draw(st.booleans()):
            end = data.draw(st.integers(pos, min(n, pos + 2)))
            repl = data.draw(st.sampled_from(["", "子", "丑 寅"]))
            if end == pos and not repl:
                repl = "子"
            edits.append(Edit(pos, end, repl))
            pos = max(end, pos + 1) if end == pos else end
        else:
            pos += 1
    return edits
