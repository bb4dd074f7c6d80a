from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from cgeckit.core import CHERRANT, REFINED, AnnotationRecord, Edit, ErrorLabel
from cgeckit.m2io import M2ParseError, format_label, UnclassifiedEditError, parse_m2, write_m2
from cgeckit.segment import parse_presegmented

ROUND_TRIP = ["differences_cherrant.m2", "differences_refined.m2", "chinese_m2_example.m2",
              "switch_manual.m2", "switch_auto.m2", "boundary_word.m2", "boundary_insert.m2",
              "worked_gold.m2", "worked_hyp.m2"]


@pytest.mark.parametrize("name", ROUND_TRIP)
def test_byte_identical_round_trip(name, fixtures):
    text = (fixtures / name).read_text(encoding="utf-8")
    assert write_m2(parse_m2(text)) == text


def test_cherrant_sample_contents(fixtures):
    recs = parse_m2((fixtures / "differences_cherrant.m2").read_text(encoding="utf-8"))
    assert len(recs) == 4
    types = Counter(format_label(e.label, CHERRANT) for r in recs for e in r.edit_sets[0])
    assert types == Counter({"S:SPELL": 3, "R:AUX": 1, "M:AUX": 1})
    assert recs[0].dialect == CHERRANT
    # S:SPELL maps to a replacement, R:AUX to an unnecessary-token edit
    first = recs[0].edit_sets[0]
    assert first[0].label == ErrorLabel("R", "SPELL")
    assert first[1].label == ErrorLabel("U", "AUX") and first[1].replacement == ""


def test_refined_sample_contents(fixtures):
    recs = parse_m2((fixtures / "differences_refined.m2").read_text(encoding="utf-8"))
    assert recs[0].dialect == REFINED
    labels = [str(e.label) for r in recs for e in r.edit_sets[0]]
    assert labels == ["R:PINYIN", "U:PART", "R:SHAPE", "R:MULTI", "M:DE"]


def test_write_refined_a_lines():
    seg = parse_presegmented("我 一 前 没住 过 五 星 级 旅 馆 ， 所以 我 很 惊讶 了 。")
    rec = AnnotationRecord(seg, {0: (Edit(1, 3, "以前", ErrorLabel("R", "PINYIN")),
                                     Edit(15, 16, "", ErrorLabel("U", "PART")))})
    lines = write_m2([rec], REFINED).splitlines()
    assert lines[1:] == ["A 1 3|||R:PINYIN|||以前|||REQUIRED|||-NONE-|||0",
                         "A 15 16|||U:PART||||||REQUIRED|||-NONE-|||0"]
    cher = write_m2([rec], CHERRANT).splitlines()
    assert cher[1].startswith("T0-A0 ")
    assert cher[3] == "A 15 16|||R:PART|||-NONE-|||REQUIRED|||-NONE-|||0"


def test_word_order_block(fixtures):
    text = (fixtures / "chinese_m2_example.m2").read_text(encoding="utf-8")
    recs = parse_m2(text)
    assert "A 5 5|||M:VERB|||是|||REQUIRED|||-NONE-|||0" in text
    assert recs[0].edit_sets[0][0].label == ErrorLabel("WO")
    assert recs[1].edit_sets[0][1].label == ErrorLabel("M", "VERB")


def test_opaque_labels_preserved(fixtures):
    recs = parse_m2((fixtures / "switch_manual.m2").read_text(encoding="utf-8"))
    lab = recs[0].edit_sets[0][0].label
    assert lab.opaque and str(lab) == "Switch" and lab.op == "R"
    text = "S 他 总 是 来\nA 1 3|||S-频率、重复副词|||总是|||REQUIRED|||-NONE-|||0\n"
    assert write_m2(parse_m2(text)) == text
    assert str(parse_m2(text)[0].edit_sets[0][0].label) == "S-频率、重复副词"


def test_label_not_fitting_span_is_opaque():
    # M on a non-empty span cannot be a structured label
    text = "S 甲 乙\nA 0 1|||M:NOUN|||丙|||REQUIRED|||-NONE-|||0\n"
    lab = parse_m2(text)[0].edit_sets[0][0].label
    assert lab.opaque and lab.op == "R"


def test_zero_edit_records():
    seg = parse_presegmented("你 好")
    assert write_m2([AnnotationRecord(seg, {})], REFINED) == "S 你 好\n"
    assert write_m2([AnnotationRecord(seg, {})], CHERRANT) == "S 你 好\nT0-A0 你 好\n"


def test_noop_for_empty_annotator():
    seg = parse_presegmented("你 好")
    rec = AnnotationRecord(seg, {0: (Edit(0, 1, "我", ErrorLabel("R", "PRON")),), 1: ()})
    text = write_m2([rec], REFINED)
    assert text.splitlines()[-1] == "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||1"
    back = parse_m2(text)[0]
    assert back.edit_sets[1] == () and len(back.edit_sets[0]) == 1
    assert write_m2([back]) == text


def test_multiple_annotators_cherrant():
    text = ("S 甲 乙\nT0-A0 丙 乙\nT0-A1 甲\n"
            "A 0 1|||S:NOUN|||丙|||REQUIRED|||-NONE-|||0\n"
            "A 1 2|||R:NOUN|||-NONE-|||REQUIRED|||-NONE-|||1\n")
    rec = parse_m2(text)[0]
    assert sorted(rec.edit_sets) == [0, 1]
    assert write_m2([rec]) == text


def test_empty_file():
    assert parse_m2("") == []
    assert write_m2([]) == ""


@pytest.mark.parametrize("text,msg", [
    ("A 0 1|||R|||x|||REQUIRED|||-NONE-|||0\n", "line 1"),
    ("S 甲\nA x 1|||R|||乙|||REQUIRED|||-NONE-|||0\n", "line 2"),
    ("S 甲\nA 0 1|||R|||乙\n", "line 2"),
    ("S 甲\n\nS 乙\nQ what\n", "line 4"),
    ("S 甲\nA 0 0|||M|||-NONE-|||REQUIRED|||-NONE-|||0\n", "line 2"),
])
def test_parse_errors_carry_line(text, msg):
    with pytest.raises(M2ParseError, match=msg):
        parse_m2(text)


def test_unclassified_edit_refused():
    rec = AnnotationRecord(parse_presegmented("甲"), {0: (Edit(0, 1, "乙"),)})
    with pytest.raises(UnclassifiedEditError):
        write_m2([rec])


def test_crlf_and_bom_accepted():
    text = "﻿S 甲 乙\r\nA 0 1|||R:NOUN|||丙|||REQUIRED|||-NONE-|||0\r\n"
    recs = parse_m2(text)
    assert recs[0].source_seg.surfaces == ["甲", "乙"]


TOKENS = st.sampled_from(list("甲乙丙丁的了") + ["学校", "老师", "以前"])
LABELS = {"R": ["R:NOUN", "R:PINYIN", "R:OTHER", "WO", "Switch"], "M": ["M:DE", "M:VERB"],
          "U": ["U:PART", "U:OTHER"]}


@st.composite
def records(draw, dialect):
    toks = draw(st.lists(TOKENS, min_size=1, max_size=8))
    seg = parse_presegmented(" ".join(toks))
    sets = {}
    for k in range(draw(st.integers(0, 3))):
        cuts = sorted(draw(st.lists(st.integers(0, len(toks)), max_size=6)))
        edits, last = [], -1
        for a, b in zip(cuts[::2], cuts[1::2]):
            if a <= last:
                continue
            kind = "M" if a == b else draw(st.sampled_from("RU"))
            repl = "" if kind == "U" else " ".join(draw(st.lists(TOKENS, min_size=1, max_size=2)))
            text = draw(st.sampled_from(LABELS[kind]))
            op, _, sub = text.partition(":")
            lab = ErrorLabel(op, sub or None) if op in ("R", "M", "U", "WO") else ErrorLabel(kind, raw=text)
            edits.append(Edit(a, b, repl, lab, k))
            last = b
        sets[k] = tuple(edits)
    return AnnotationRecord(seg, sets, dialect)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([CHERRANT, REFINED]).flatmap(lambda d: st.lists(records(d), max_size=4)))
def test_round_trip_property(recs):
    text = write_m2(recs)
    back = parse_m2(text, recs[0].dialect if recs else None)
    assert write_m2(back) == text
    for a, b in zip(recs, back):
        assert a.source_seg.surfaces == b.source_seg.surfaces
        assert {k: [(e.start, e.end, e.norm_replacement, str(e.label)) for e in v]
                for k, v in a.edit_sets.items()} == \
               {k: [(e.start, e.end, e.norm_replacement, str(e.label)) for e in v]
                for k, v in b.edit_sets.items()}
