import pytest

from cgeckit.core import AnnotationRecord, Edit, ErrorLabel
from cgeckit.diff import (
    BOUNDARY, MATCHED, ORDER, OTHER, TYPE_ONLY, diff_edits, diff_records, sentence_category,
    summarize, summary_lines,
)
from cgeckit.m2io import parse_m2
from cgeckit.score import GranularityMismatchError, SourceMismatchError
from cgeckit.segment import parse_presegmented, segment_chars


def recs(fixtures, name):
    return parse_m2((fixtures / name).read_text(encoding="utf-8"))


def cats(regions):
    return [r.category for r in regions]


def test_switch_sample_is_order(fixtures):
    [regions] = diff_records(recs(fixtures, "switch_manual.m2"), recs(fixtures, "switch_auto.m2"))
    assert cats(regions) == [ORDER]
    assert (regions[0].start, regions[0].end) == (21, 37)
    assert len(regions[0].b) == 4


def test_boundary_sample(fixtures):
    [regions] = diff_records(recs(fixtures, "boundary_word.m2"), recs(fixtures, "boundary_insert.m2"))
    assert cats(regions) == [BOUNDARY]


def test_self_diff_all_matched(fixtures):
    a = recs(fixtures, "differences_refined.m2")
    s = summarize(diff_records(a, a))
    assert s["agreement"] == 1.0 and s[MATCHED] == 5 and s[OTHER] == 0


def test_type_only_and_other():
    seg = segment_chars("甲乙丙丁戊")
    a = [Edit(0, 1, "子", ErrorLabel("R", "NOUN")), Edit(3, 4, "", ErrorLabel("U", "PART"))]
    b = [Edit(0, 1, "子", ErrorLabel("R", "PINYIN")), Edit(3, 4, "己", ErrorLabel("R", "NOUN"))]
    assert cats(diff_edits(seg, a, b)) == [TYPE_ONLY, OTHER]


def test_one_sided_edit_is_other():
    seg = segment_chars("甲乙")
    assert cats(diff_edits(seg, [Edit(0, 1, "", ErrorLabel("U", "OTHER"))], [])) == [OTHER]


def test_no_edits_agree():
    s = summarize([diff_edits(segment_chars("甲"), [], [])])
    assert s["sentences_agree"] == 1


def test_sentence_category_priority():
    seg = segment_chars("甲乙丙丁")
    a = [Edit(0, 1, "子", ErrorLabel("R", "NOUN")), Edit(2, 3, "", ErrorLabel("U", "PART"))]
    b = [Edit(0, 1, "子", ErrorLabel("R", "VERB"))]
    assert sentence_category(diff_edits(seg, a, b)) == OTHER


def test_summary_lines():
    seg = segment_chars("甲乙")
    e = [Edit(0, 1, "丙", ErrorLabel("R", "NOUN"))]
    lines = summary_lines(summarize([diff_edits(seg, e, e), diff_edits(seg, e, [])]))
    assert lines[:3] == ["sentences\t2", "sentences_agree\t1", "agreement\t50.00%"]


def test_mismatched_sources():
    a = [AnnotationRecord(segment_chars("甲乙"), {})]
    with pytest.raises(SourceMismatchError):
        diff_records(a, [AnnotationRecord(segment_chars("丙丁"), {})])
    with pytest.raises(GranularityMismatchError):
        diff_records(a, [AnnotationRecord(parse_presegmented("甲乙"), {})])
    with pytest.raises(SourceMismatchError):
        diff_records(a, [])
