"""Batch annotation: sentence pairs in, classified m2 records out."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .align import CostConfig, default_providers, extract_edits
from .classify import classify_edit
from .core import CHARACTER, REFINED, AnnotationRecord, Thresholds
from .segment import default_lexicon, load_lexicon, segment


@dataclass(frozen=True)
class Settings:
    granularity: str = CHARACTER
    dialect: str = REFINED
    alpha1: float = 0.9
    alpha2: float = 0.9
    lexicon: Optional[str] = None
    presegmented: bool = False
    window: int = 20


class Annotator:
    def __init__(self, settings=None):
        self.settings = settings or Settings()
        s = self.settings
        self.th = Thresholds(s.alpha1, s.alpha2)
        self.lex = load_lexicon(s.lexicon) if s.lexicon else default_lexicon()
        self.providers = default_providers()
        self.cfg = CostConfig()

    def _seg(self, text):
        s = self.settings
        return segment(text, s.granularity, self.lex, s.presegmented)

    def record(self, source, references):
        """AnnotationRecord with one edit set per reference.

        When no reference changes anything the record has no edit sets,
        so the m2 block is just the S line.
        """
        src = self._seg(source)
        sets, targets = {}, {}
        for k, ref in enumerate(references):
            tgt = self._seg(ref)
            edits = extract_edits(src, tgt, self.lex, self.providers, self.cfg,
                                  self.settings.window, annotator=k)
            sets[k] = tuple(e.with_label(classify_edit(e, src, None, self.th, self.providers, self.lex))
                            for e in edits)
            targets[k] = " ".join(tgt.surfaces)
        if not any(sets.values()):
            sets, targets = {}, {k: v for k, v in targets.items() if k == 0}
        return AnnotationRecord(src, sets, self.settings.dialect, targets)


_worker = None


def _init(settings):
    global _worker
    _worker = Annotator(settings)


def _run(item):
    return _worker.record(*item)


def annotate_pairs(items, settings=None, threads=1, chunksize=64):
    """Annotate (source, references) items; output order follows input."""
    items = list(items)
    settings = settings or Settings()
    if threads <= 1 or len(items) < 2:
        ann = Annotator(settings)
        return [ann.record(s, refs) for s, refs in items]
    with ProcessPoolExecutor(threads, initializer=_init, initargs=(settings,)) as ex:
        return list(ex.map(_run, items, chunksize=max(1, min(chunksize, len(items) // threads or 1))))
