"""Line-oriented formats: NLPCC 2018 training and segmented test files,
and the unified parallel format ``id<TAB>source<TAB>ref...``."""

from ..core import SentencePair
from .base import IngestError, Parsed


def parse_nlpcc_train(line, lineno=None):
    """``id<TAB>k<TAB>source<TAB>ref_1 ... ref_k``; empty trailing fields are dropped."""
    where = f"line {lineno}: " if lineno is not None else ""
    fields = line.rstrip("\r\n").split("\t")
    while len(fields) > 3 and not fields[-1].strip():
        fields.pop()
    if len(fields) < 3:
        raise IngestError(f"{where}expected at least 3 tab-separated fields, got {len(fields)}")
    sid, k, src = fields[0], fields[1], fields[2]
    try:
        k = int(k)
    except ValueError:
        raise IngestError(f"{where}correction count {k!r} is not an integer") from None
    refs = fields[3:]
    if len(refs) != k:
        raise IngestError(f"{where}correction count {k} but {len(refs)} corrections")
    return SentencePair(sid, src, refs, "nlpcc-train", {})


def parse_nlpcc_seg(line, lineno):
    """One word-segmented test sentence per line, no references."""
    return SentencePair(str(lineno), line.strip(), (), "nlpcc-seg", {"segmented": "1"})


def iter_lines(text):
    for n, line in enumerate(text.splitlines(), 1):
        if line.strip():
            yield n, line


def read_nlpcc(text, variant="nlpcc-train"):
    out = []
    for n, line in iter_lines(text):
        if variant == "nlpcc-seg":
            out.append(Parsed(parse_nlpcc_seg(line, n)))
        else:
            out.append(Parsed(parse_nlpcc_train(line, n)))
    return out


def read_parallel(text):
    """Pairs from ``id<TAB>source<TAB>ref...`` lines."""
    pairs = []
    for n, line in iter_lines(text):
        fields = line.rstrip("\r").split("\t")
        if len(fields) < 2:
            raise IngestError(f"line {n}: expected id and source")
        pairs.append(SentencePair(fields[0], fields[1], [f for f in fields[2:] if f], "parallel", {}))
    return pairs


def format_parallel(pair):
    for s in (pair.id, pair.source, *pair.references):
        if "\t" in s or "\n" in s:
            raise IngestError(f"{pair.id}: field contains a tab or newline")
    return "\t".join([pair.id, pair.source, *pair.references])


def write_parallel(pairs):
    return "".join(format_parallel(p) + "\n" for p in pairs)
