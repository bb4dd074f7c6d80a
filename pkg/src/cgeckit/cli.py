"""cgeckit command line: annotate, score, convert, diff, stats.

Exit codes: 0 success, 1 usage error, 2 data error. Data errors are
reported on stderr as ``error<TAB>kind<TAB>message``.
"""

import argparse
import logging
import sys

from . import __version__
from .annotate import Settings, annotate_pairs
from .config import load_config
from .core import CHARACTER, CHERRANT, REFINED, WORD, AnnotationRecord, CgecError
from .segment import segment_chars

GRANULARITY = {"char": CHARACTER, "word": WORD}

log = logging.getLogger("cgeckit")


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error\tusage\t{message}\n")
        sys.exit(1)


def read_text(path):
    if path == "-":
        return sys.stdin.buffer.read().decode("utf-8")
    with open(path, encoding="utf-8") as f:
        return f.read()


def write_text(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


def _lines(text):
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [l.rstrip("\r") for l in lines]


def _pick(args, cfg, name, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return cfg.get(name, default)


def _settings(args, cfg):
    gran = _pick(args, cfg, "granularity", "char")
    if gran not in GRANULARITY:
        raise UsageError(f"granularity must be char or word, got {gran!r}")
    dialect = _pick(args, cfg, "dialect", REFINED)
    if dialect not in (CHERRANT, REFINED):
        raise UsageError(f"dialect must be cherrant or refined, got {dialect!r}")
    return Settings(
        granularity=GRANULARITY[gran],
        dialect=dialect,
        alpha1=_pick(args, cfg, "alpha1", 0.9),
        alpha2=_pick(args, cfg, "alpha2", 0.9),
        lexicon=_pick(args, cfg, "lexicon", None),
        presegmented=getattr(args, "presegmented", False),
    )


# ---------------------------------------------------------------- annotate

def cmd_annotate(args, cfg):
    from .ingest import read_parallel
    from .m2io import write_m2

    if args.parallel:
        if args.src:
            raise UsageError("give either --parallel or source/hypothesis files, not both")
        items = [(p.source, p.references) for p in read_parallel(read_text(args.parallel))]
    else:
        if not args.src or len(args.src) < 2:
            raise UsageError("annotate needs a source file and at least one hypothesis file")
        cols = [_lines(read_text(p)) for p in args.src]
        n = len(cols[0])
        for p, c in zip(args.src[1:], cols[1:]):
            if len(c) != n:
                raise LineCountError(f"{args.src[0]} has {n} lines but {p} has {len(c)}")
        items = [(row[0], list(row[1:])) for row in zip(*cols)]
    settings = _settings(args, cfg)
    threads = _pick(args, cfg, "threads", 1)
    records = annotate_pairs(items, settings, threads)
    write_text(args.out, write_m2(records, settings.dialect))
    return 0


class LineCountError(CgecError):
    kind = "line-count"


# ------------------------------------------------------------------- score

def _read_m2(path):
    from .m2io import parse_m2

    try:
        return [r.validate() for r in parse_m2(read_text(path))]
    except CgecError as e:
        err = CgecError(f"{path}: {e}")
        err.kind = e.kind
        raise err from None


def cmd_score(args, cfg):
    from .score import detection_levels, report_lines, report_table, score_corpus

    hyp, gold = _read_m2(args.hyp), _read_m2(args.gold)
    beta = _pick(args, cfg, "beta", 0.5)
    rep = score_corpus(hyp, gold, beta)
    lines = report_table(rep) if args.table else report_lines(rep)
    if args.levels:
        levels = detection_levels(_spans(hyp), _spans(gold))
        for name, (p, r, f) in levels.items():
            lines.append(f"{name}\t{p:.4f}\t{r:.4f}\t{f:.4f}")
    write_text(args.out, "\n".join(lines) + "\n")
    if args.plot_dir:
        from .plotting import plot_score

        for p in plot_score(rep, args.plot_dir):
            log.info("wrote %s", p)
    return 0


def _spans(records):
    out = {}
    for n, rec in enumerate(records):
        edits = rec.edit_sets[min(rec.edit_sets)] if rec.edit_sets else ()
        out[n] = [(e.start, e.end, str(e.label) if e.label is not None else "?") for e in edits]
    return out


# ----------------------------------------------------------------- convert

def parsed_records(parsed, settings, threads=1):
    """m2 records for ingested pairs.

    Gold spans are used as-is at character granularity; everything else
    goes through the annotation pipeline against the references.
    """
    out = [None] * len(parsed)
    todo = []
    for i, p in enumerate(parsed):
        if p.edit_sets and settings.granularity == CHARACTER and not settings.presegmented:
            out[i] = AnnotationRecord(segment_chars(p.pair.source), p.edit_sets, settings.dialect)
        else:
            todo.append(i)
    done = annotate_pairs([(parsed[i].pair.source, parsed[i].pair.references) for i in todo],
                          settings, threads)
    for i, rec in zip(todo, done):
        out[i] = rec
    return out


def _ingest(path, fmt):
    from .ingest import Parsed, read_corpus, read_parallel

    text = read_text(path)
    if fmt == "parallel":
        return [Parsed(p) for p in read_parallel(text)]
    return read_corpus(text, fmt)


def cmd_convert(args, cfg):
    from .ingest import write_parallel
    from .m2io import write_m2

    parsed = _ingest(args.input, args.format)
    for p in parsed:
        for w in p.warnings:
            sys.stderr.write(f"warning\t{p.pair.id}\t{w}\n")
    if args.emit == "parallel":
        write_text(args.out, write_parallel(p.pair for p in parsed))
        return 0
    settings = _settings(args, cfg)
    records = parsed_records(parsed, settings, _pick(args, cfg, "threads", 1))
    write_text(args.out, write_m2(records, settings.dialect))
    return 0


# -------------------------------------------------------------------- diff

def cmd_diff(args, cfg):
    from .diff import CATEGORIES, diff_records, sentence_category, summarize, summary_lines

    regions = diff_records(_read_m2(args.a), _read_m2(args.b))
    summary = summarize(regions)
    lines = summary_lines(summary)
    if args.verbose:
        for n, rs in enumerate(regions):
            for r in rs:
                if r.category != "matched":
                    lines.append(f"{n}\t{r.category}\t{r.start}\t{r.end}")
            lines.append(f"{n}\tsentence\t{sentence_category(rs)}")
    write_text(args.out, "\n".join(lines) + "\n")
    if args.plot_dir:
        from .plotting import plot_diff

        plot_diff(summary, CATEGORIES, args.plot_dir)
    return 0


# ------------------------------------------------------------------- stats

def cmd_stats(args, cfg):
    from .stats import corpus_stats, m2_stats, stats_lines

    if args.format == "m2":
        st = m2_stats(_read_m2(args.input))
    else:
        st = corpus_stats(_ingest(args.input, args.format))
    lines = stats_lines(st)
    write_text(args.out, "".join(l + "\n" for l in lines))
    if args.plot_dir and st["sentences"]:
        from .plotting import plot_stats

        plot_stats(st, args.plot_dir)
    return 0


# -------------------------------------------------------------------- main

def build_parser():
    from .ingest import FORMATS

    ap = Parser(prog="cgeckit", description="Chinese GEC annotation and evaluation toolkit")
    ap.add_argument("--version", action="version", version=f"cgeckit {__version__}")
    ap.add_argument("--config", help="config file (default: $CGECKIT_CONFIG_DIR/cgeckit.conf)")
    ap.add_argument("-v", "--verbose-log", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="cmd", parser_class=Parser)
    sub.required = True

    def pipeline_opts(p):
        p.add_argument("--granularity", choices=sorted(GRANULARITY))
        p.add_argument("--dialect", choices=[CHERRANT, REFINED])
        p.add_argument("--alpha1", type=float, help="pinyin similarity threshold")
        p.add_argument("--alpha2", type=float, help="shape similarity threshold")
        p.add_argument("--lexicon", help="word<TAB>UPOS lexicon file")
        p.add_argument("--threads", type=int)
        p.add_argument("--presegmented", action="store_true",
                       help="input is already split into words by spaces")
        p.add_argument("-o", "--out", help="output file (default stdout)")

    p = sub.add_parser("annotate", help="extract and classify edits into m2")
    p.add_argument("src", nargs="*", help="source file, then one or more hypothesis files")
    p.add_argument("--parallel", help="id<TAB>source<TAB>ref... file instead of line files")
    pipeline_opts(p)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("score", help="MaxMatch precision/recall/F against gold m2")
    p.add_argument("hyp")
    p.add_argument("gold")
    p.add_argument("--beta", type=float)
    p.add_argument("--table", action="store_true", help="human-readable table")
    p.add_argument("--levels", action="store_true",
                   help="also print detection, identification and position scores")
    p.add_argument("--plot-dir", help="write score.png here")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("convert", help="corpus file to parallel text or m2")
    p.add_argument("input")
    p.add_argument("--format", required=True, choices=list(FORMATS) + ["parallel"])
    p.add_argument("--emit", choices=["parallel", "m2"], default="parallel")
    pipeline_opts(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("diff", help="compare two m2 annotations of the same sources")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--verbose", action="store_true", help="list mismatched regions")
    p.add_argument("--plot-dir", help="write diff.png here")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("stats", help="references, edits and types per sentence")
    p.add_argument("input")
    p.add_argument("--format", default="m2", choices=["m2", "parallel"] + list(FORMATS))
    p.add_argument("--plot-dir", help="write stats.png here")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_stats)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose_log else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except UsageError as e:
        sys.stderr.write(f"error\tusage\t{e}\n")
        return 1
    except CgecError as e:
        sys.stderr.write(f"error\t{e.kind}\t{e}\n")
        return 2
    except OSError as e:
        sys.stderr.write(f"error\tio\t{e.filename or ''}: {e.strerror}\n")
        return 2
    except UnicodeDecodeError as e:
        sys.stderr.write(f"error\tencoding\tinput is not UTF-8: {e.reason}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
