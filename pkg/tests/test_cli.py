import subprocess
import sys

import pytest

from cgeckit.cli import main
from cgeckit.config import ConfigError, parse_config


@pytest.fixture(autouse=True)
def no_user_config(monkeypatch, tmp_path):
    monkeypatch.setenv("CGECKIT_CONFIG_DIR", str(tmp_path / "noconf"))


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_annotate_sample_golden(capsys, fixtures):
    code, out, _ = run(capsys, "annotate", "--parallel", fixtures / "differences_parallel.tsv",
                       "--presegmented", "--granularity", "word")
    assert code == 0
    assert out == (fixtures / "differences_refined.m2").read_text(encoding="utf-8")


def test_annotate_threads_identical(capsys, fixtures):
    args = ["annotate", "--parallel", fixtures / "differences_parallel.tsv", "--presegmented",
            "--granularity", "word"]
    one = run(capsys, *args, "--threads", "1")[1]
    many = run(capsys, *args, "--threads", "3")[1]
    assert one == many


def test_annotate_line_files(capsys, tmp_path):
    src, hyp = tmp_path / "src.txt", tmp_path / "hyp.txt"
    src.write_text("我一前没住过。\n你好。\n", encoding="utf-8")
    hyp.write_text("我以前没住过。\n你好。\n", encoding="utf-8")
    code, out, _ = run(capsys, "annotate", src, hyp)
    assert code == 0
    assert out == ("S 我 一 前 没 住 过 。\nA 1 3|||R:PINYIN|||以 前|||REQUIRED|||-NONE-|||0\n\n"
                   "S 你 好 。\n")


def test_annotate_identical_gives_s_lines(capsys, tmp_path):
    f = tmp_path / "a.txt"
    f.write_text("今天天气很好。\n", encoding="utf-8")
    assert run(capsys, "annotate", f, f)[1] == "S 今 天 天 气 很 好 。\n"


def test_annotate_cherrant_dialect(capsys, tmp_path):
    src, hyp = tmp_path / "s", tmp_path / "h"
    src.write_text("我很惊讶了。\n", encoding="utf-8")
    hyp.write_text("我很惊讶。\n", encoding="utf-8")
    out = run(capsys, "annotate", src, hyp, "--dialect", "cherrant")[1]
    assert out.splitlines()[1:] == ["T0-A0 我 很 惊 讶 。", "A 4 5|||R:PART|||-NONE-|||REQUIRED|||-NONE-|||0"]


def test_line_count_mismatch(capsys, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    a.write_text("甲\n乙\n", encoding="utf-8")
    b.write_text("甲\n", encoding="utf-8")
    code, _, err = run(capsys, "annotate", a, b)
    assert code == 2 and err.startswith("error\tline-count\t")


def test_usage_errors(capsys, tmp_path):
    code, _, err = run(capsys, "annotate", tmp_path / "only")
    assert code == 1 and "error\tusage\t" in err
    with pytest.raises(SystemExit) as e:
        main(["score"])
    assert e.value.code == 1
    with pytest.raises(SystemExit) as e:
        main(["annotate", "--granularity", "sentence"])
    assert e.value.code == 1


def test_missing_file_is_data_error(capsys, tmp_path):
    code, _, err = run(capsys, "score", tmp_path / "nope.m2", tmp_path / "nope.m2")
    assert code == 2 and err.startswith("error\tio\t")


def test_bad_m2_names_file_and_line(capsys, tmp_path):
    bad = tmp_path / "bad.m2"
    bad.write_text("S 甲\nA x 1|||R|||乙|||REQUIRED|||-NONE-|||0\n", encoding="utf-8")
    code, _, err = run(capsys, "score", bad, bad)
    assert code == 2
    kind, msg = err.rstrip("\n").split("\t")[1:]
    assert kind == "parse" and "bad.m2" in msg and "line 2" in msg


def test_not_utf8(capsys, tmp_path):
    f = tmp_path / "x.m2"
    f.write_bytes("S 甲\n".encode("gbk"))
    code, _, err = run(capsys, "stats", f)
    assert code == 2 and err.startswith("error\tencoding")


def test_score_worked_example(capsys, fixtures):
    code, out, _ = run(capsys, "score", fixtures / "worked_hyp.m2", fixtures / "worked_gold.m2")
    assert code == 0
    assert "F0.5\t0.8333" in out.splitlines()
    out = run(capsys, "score", fixtures / "worked_hyp.m2", fixtures / "worked_gold.m2", "--beta", "1")[1]
    assert "F1\t0.6667" in out.splitlines()


def test_score_self_and_table(capsys, fixtures):
    g = fixtures / "worked_gold.m2"
    out = run(capsys, "score", g, g)[1].splitlines()
    assert out[3:6] == ["Prec\t1.0000", "Rec\t1.0000", "F0.5\t1.0000"]
    table = run(capsys, "score", g, g, "--table")[1]
    assert table.splitlines()[-1].startswith("Total")


def test_score_multi_reference(capsys, tmp_path):
    gold = tmp_path / "g.m2"
    hyp = tmp_path / "h.m2"
    gold.write_text("S 甲 乙 丙\nA 0 1|||R:NOUN|||丁|||REQUIRED|||-NONE-|||0\n"
                    "A 1 2|||R:NOUN|||戊|||REQUIRED|||-NONE-|||1\nA 2 3|||U:NOUN||||||REQUIRED|||-NONE-|||1\n",
                    encoding="utf-8")
    hyp.write_text("S 甲 乙 丙\nA 1 2|||R:NOUN|||戊|||REQUIRED|||-NONE-|||0\n", encoding="utf-8")
    out = run(capsys, "score", hyp, gold)[1].splitlines()
    # second reference: tp1 fp0 fn1 -> F0.5 = 0.8333
    assert out[:3] == ["TP\t1", "FP\t0", "FN\t1"] and out[5] == "F0.5\t0.8333"


def test_score_levels(capsys, fixtures):
    out = run(capsys, "score", fixtures / "worked_hyp.m2", fixtures / "worked_gold.m2", "--levels")[1]
    assert "identification\t1.0000\t0.5000\t0.6667" in out


def test_score_plot(capsys, fixtures, tmp_path):
    g = fixtures / "worked_gold.m2"
    assert run(capsys, "score", g, g, "--plot-dir", tmp_path / "plots")[0] == 0
    png = (tmp_path / "plots" / "score.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_convert_fcgec(capsys, corpora):
    out = run(capsys, "convert", corpora / "fcgec.json", "--format", "fcgec")[1]
    _, src, ref = out.rstrip("\n").split("\t")
    assert ref == "中央政法委书记罗干同志对因公殉职的公安干警表示崇高的敬意并对他们的家属致以亲切的慰问。"


def test_convert_nlpcc_no_refs(capsys, corpora):
    out = run(capsys, "convert", corpora / "nlpcc_train.txt", "--format", "nlpcc-train")[1]
    assert out.splitlines()[1].count("\t") == 1


def test_convert_cged_m2(capsys, corpora):
    out = run(capsys, "convert", corpora / "cged2016.xml", "--format", "cged2016plus", "--emit", "m2")[1]
    assert sum(l.startswith("A ") for l in out.splitlines()) == 4


def test_convert_pipeline_for_spanless(capsys, corpora):
    out = run(capsys, "convert", corpora / "nacgec.json", "--format", "nacgec", "--emit", "m2")[1]
    assert sum(l.startswith("A ") for l in out.splitlines()) >= 1


def test_convert_warnings_on_stderr(capsys, tmp_path):
    f = tmp_path / "fla.json"
    f.write_text('{"1": {"source": "甲乙丙", "target": "甲丁丙", "annotation": "1 1|||S|||丁", '
                 '"operation": "[[(0, 0, \'甲\'), \'x\', \'S\', (\'null\', \'null\', \'戊\')]]"}}',
                 encoding="utf-8")
    code, _, err = run(capsys, "convert", f, "--format", "flacgec")
    assert code == 0 and err.startswith("warning\t1\t")


def test_diff_categories(capsys, fixtures):
    out = run(capsys, "diff", fixtures / "switch_manual.m2", fixtures / "switch_auto.m2", "--verbose")[1]
    assert "order_representation\t1" in out.splitlines()
    assert "0\tsentence\torder_representation" in out
    out = run(capsys, "diff", fixtures / "boundary_word.m2", fixtures / "boundary_insert.m2")[1]
    assert "boundary_only\t1" in out.splitlines()
    out = run(capsys, "diff", fixtures / "differences_refined.m2", fixtures / "differences_refined.m2")[1]
    assert "agreement\t100.00%" in out.splitlines()


def test_diff_plot(capsys, fixtures, tmp_path):
    f = fixtures / "worked_gold.m2"
    run(capsys, "diff", f, f, "--plot-dir", tmp_path)
    assert (tmp_path / "diff.png").stat().st_size > 0


def test_stats(capsys, fixtures, corpora, tmp_path):
    out = run(capsys, "stats", fixtures / "mucgec.tsv", "--format", "parallel")[1]
    assert "refs_per_sentence\t1.667" in out.splitlines()
    out = run(capsys, "stats", corpora / "nlpcc_train.txt", "--format", "nlpcc-train")[1]
    assert "refs_per_sentence\t0.500" in out.splitlines()
    empty = tmp_path / "e.m2"
    empty.write_text("", encoding="utf-8")
    assert run(capsys, "stats", empty) == (0, "", "")


def test_stats_plot(capsys, fixtures, tmp_path):
    run(capsys, "stats", fixtures / "differences_refined.m2", "--plot-dir", tmp_path)
    assert (tmp_path / "stats.png").exists()


def test_config_file_and_override(capsys, monkeypatch, tmp_path):
    conf = tmp_path / "conf"
    conf.mkdir()
    (conf / "cgeckit.conf").write_text("dialect = cherrant\nbeta = 1.0\n", encoding="utf-8")
    monkeypatch.setenv("CGECKIT_CONFIG_DIR", str(conf))
    src = tmp_path / "s"
    src.write_text("甲\n", encoding="utf-8")
    assert run(capsys, "annotate", src, src)[1] == "S 甲\nT0-A0 甲\n"
    assert run(capsys, "annotate", src, src, "--dialect", "refined")[1] == "S 甲\n"


def test_config_errors(capsys, monkeypatch, tmp_path):
    with pytest.raises(ConfigError):
        parse_config("colour = red\n")
    with pytest.raises(ConfigError):
        parse_config("alpha1 = high\n")
    assert parse_config("# thresholds\nalpha1 = 0.8\n") == {"alpha1": 0.8}
    (tmp_path / "cgeckit.conf").write_text("colour = red\n", encoding="utf-8")
    monkeypatch.setenv("CGECKIT_CONFIG_DIR", str(tmp_path))
    code, _, err = run(capsys, "stats", tmp_path / "cgeckit.conf")
    assert code == 2 and err.startswith("error\tconfig\t")


def test_stdin_and_console_script(fixtures, tmp_path):
    gold = (fixtures / "worked_gold.m2").read_bytes()
    env = {"CGECKIT_CONFIG_DIR": str(tmp_path), "PATH": "/usr/bin:/bin"}
    r = subprocess.run([sys.executable, "-m", "cgeckit.cli", "score", "-", str(fixtures / "worked_gold.m2")],
                       input=gold, capture_output=True, env=env)
    assert r.returncode == 0 and b"F0.5\t1.0000" in r.stdout
    r = subprocess.run([sys.executable, "-m", "cgeckit.cli", "frobnicate"], capture_output=True, env=env)
    assert r.returncode == 1 and b"error\tusage\t" in r.stderr
