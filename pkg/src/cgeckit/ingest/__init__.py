"""Corpus readers producing SentencePairs, plus gold edits where the
format carries span information."""

from .base import GoldSpan, IngestError, Parsed, reconstruct
from .cged import parse_cged
from .records import (
    parse_cctc, parse_cefe, parse_fcgec, parse_flacgec, parse_nacgec, parse_yaclc,
)
from .text import parse_nlpcc_train, read_nlpcc, read_parallel, write_parallel
from .base import iter_json_records

FORMATS = (
    "cged2014", "cged2015", "cged2016plus", "cged2020",
    "nlpcc-train", "nlpcc-seg",
    "fcgec", "flacgec", "yaclc", "cctc", "nacgec", "cefe",
)
# formats whose files carry gold spans
SPAN_FORMATS = {"cged2015", "cged2016plus", "cged2020", "fcgec", "flacgec", "cctc"}

_RECORD_PARSERS = {
    "fcgec": parse_fcgec,
    "flacgec": parse_flacgec,
    "yaclc": parse_yaclc,
    "cctc": parse_cctc,
    "nacgec": parse_nacgec,
    "cefe": parse_cefe,
}


def read_corpus(text, fmt):
    """Parse a whole file of format ``fmt`` into a list of Parsed."""
    if fmt not in FORMATS:
        raise IngestError(f"unknown format {fmt!r}")
    if text.startswith("﻿"):
        text = text[1:]
    if fmt.startswith("cged"):
        return parse_cged(text, fmt)
    if fmt.startswith("nlpcc"):
        return read_nlpcc(text, fmt)
    parse = _RECORD_PARSERS[fmt]
    out = []
    for key, rec in iter_json_records(text):
        out.extend(parse(key, rec))
    return out


__all__ = [
    "FORMATS", "SPAN_FORMATS", "GoldSpan", "IngestError", "Parsed", "read_corpus",
    "reconstruct", "parse_cged", "parse_nlpcc_train", "parse_fcgec", "parse_flacgec",
    "parse_yaclc", "parse_cctc", "parse_nacgec", "parse_cefe", "read_parallel",
    "write_parallel", "read_nlpcc",
]
