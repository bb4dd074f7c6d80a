"""MaxMatch scoring against multiple references, and CGED span levels.

System and gold edits are compared as exact (start, end, replacement)
triples after both went through the same aligner, instead of searching
an edit lattice.
"""

from collections import Counter

from .core import CgecError, ScoreReport, ValidationError


class SourceMismatchError(CgecError):
    kind = "source-mismatch"


class GranularityMismatchError(ValidationError):
    kind = "granularity"


def f_beta(p, r, beta=0.5):
    b2 = beta * beta
    den = b2 * p + r
    if den == 0:
        return 0.0
    return (1 + b2) * p * r / den


def prf(tp, fp, fn, beta=0.5):
    p = tp / (tp + fp) if tp + fp else 1.0
    r = tp / (tp + fn) if tp + fn else 1.0
    return p, r, f_beta(p, r, beta)


def edit_key(e):
    return (e.start, e.end, e.norm_replacement)


def _counts(sys_keys, gold_keys):
    tp = sum((sys_keys & gold_keys).values())
    return tp, sum(sys_keys.values()) - tp, sum(gold_keys.values()) - tp


def max_match_counts(system, gold_sets, beta=0.5, system_seg=None, gold_seg=None):
    """(tp, fp, fn, chosen index) against the best-scoring gold set.

    With no gold sets the system is compared with an empty reference.
    """
    if system_seg is not None and gold_seg is not None:
        if system_seg.surfaces != gold_seg.surfaces:
            if system_seg.text == gold_seg.text:
                raise GranularityMismatchError("same source, different tokenization")
            raise SourceMismatchError("different source sentences")
    sys_keys = Counter(edit_key(e) for e in system)
    gold_sets = list(gold_sets) or [()]
    best = None
    for k, gold in enumerate(gold_sets):
        tp, fp, fn = _counts(sys_keys, Counter(edit_key(e) for e in gold))
        f = prf(tp, fp, fn, beta)[2]
        if best is None or f > best[0]:
            best = (f, tp, fp, fn, k)
    _, tp, fp, fn, k = best
    return tp, fp, fn, k


def _type_name(edit):
    return str(edit.label) if edit.label is not None else "?"


def sentence_type_counts(system, gold):
    """Per-type (tp, fp, fn): matches count under the gold edit's type."""
    out = {}
    gold_left = list(gold)
    for e in system:
        key = edit_key(e)
        hit = next((g for g in gold_left if edit_key(g) == key), None)
        if hit is not None:
            gold_left.remove(hit)
            out.setdefault(_type_name(hit), [0, 0, 0])[0] += 1
        else:
            out.setdefault(_type_name(e), [0, 0, 0])[1] += 1
    for g in gold_left:
        out.setdefault(_type_name(g), [0, 0, 0])[2] += 1
    return out


def _system_set(rec):
    if not rec.edit_sets:
        return ()
    return rec.edit_sets[min(rec.edit_sets)]


def score_corpus(system_records, gold_records, beta=0.5, granularity=None):
    """Sum per-sentence best-reference counts into a ScoreReport."""
    system_records, gold_records = list(system_records), list(gold_records)
    if len(system_records) != len(gold_records):
        raise SourceMismatchError(
            f"record count differs: {len(system_records)} system vs {len(gold_records)} gold")
    tp = fp = fn = 0
    per_type = {}
    for n, (srec, grec) in enumerate(zip(system_records, gold_records), 1):
        try:
            system = _system_set(srec)
            golds = [grec.edit_sets[k] for k in sorted(grec.edit_sets)]
            a, b, c, k = max_match_counts(system, golds, beta, srec.source_seg, grec.source_seg)
        except (SourceMismatchError, GranularityMismatchError) as e:
            raise type(e)(f"record {n}: {e}") from None
        tp, fp, fn = tp + a, fp + b, fn + c
        chosen = golds[k] if golds else ()
        for name, cnt in sentence_type_counts(system, chosen).items():
            acc = per_type.setdefault(name, [0, 0, 0])
            for i in range(3):
                acc[i] += cnt[i]
    if granularity is None:
        grans = {r.source_seg.granularity for r in gold_records}
        granularity = grans.pop() if len(grans) == 1 else "word"
    p, r, f = prf(tp, fp, fn, beta)
    per_type = {k: tuple(v) for k, v in per_type.items()}
    return ScoreReport(tp, fp, fn, p, r, f, beta, per_type, granularity)


def f_label(beta):
    return f"F{beta:g}"


def report_lines(rep):
    """Machine-readable ``metric<TAB>value`` lines."""
    lines = [
        f"TP\t{rep.tp}", f"FP\t{rep.fp}", f"FN\t{rep.fn}",
        f"Prec\t{rep.precision:.4f}", f"Rec\t{rep.recall:.4f}",
        f"{f_label(rep.beta)}\t{rep.f_beta:.4f}",
        f"granularity\t{rep.granularity}",
    ]
    for name, (a, b, c) in sorted_types(rep):
        p, r, f = prf(a, b, c, rep.beta)
        lines.append(f"type:{name}\t{a}\t{b}\t{c}\t{p:.4f}\t{r:.4f}\t{f:.4f}")
    return lines


def sorted_types(rep):
    return sorted(rep.per_type.items(), key=lambda kv: (-kv[1][2], kv[0]))


def report_table(rep):
    """Human-readable table, per-type rows sorted by descending FN."""
    head = f"{'Type':<12}{'TP':>6}{'FP':>6}{'FN':>6}{'P':>8}{'R':>8}{f_label(rep.beta):>8}"
    rows = [head, "-" * len(head)]
    for name, (a, b, c) in sorted_types(rep):
        p, r, f = prf(a, b, c, rep.beta)
        rows.append(f"{name:<12}{a:>6}{b:>6}{c:>6}{p:>8.4f}{r:>8.4f}{f:>8.4f}")
    rows.append("-" * len(head))
    rows.append(f"{'Total':<12}{rep.tp:>6}{rep.fp:>6}{rep.fn:>6}"
                f"{rep.precision:>8.4f}{rep.recall:>8.4f}{rep.f_beta:>8.4f}")
    return rows


def _f1(tp, fp, fn):
    return prf(tp, fp, fn, 1.0)


def detection_levels(system, gold):
    """CGED detection, identification and position scores.

    Both arguments map sentence id -> iterable of (start, end, type).
    Sentences missing from one side count as error-free there. Returns
    a dict level -> (precision, recall, F1).
    """
    ids = sorted(set(system) | set(gold))
    det = [0, 0, 0]
    ide = [0, 0, 0]
    pos = [0, 0, 0]
    for i in ids:
        s = list(system.get(i, ()))
        g = list(gold.get(i, ()))
        if s and g:
            det[0] += 1
        elif s:
            det[1] += 1
        elif g:
            det[2] += 1
        for acc, sk, gk in (
            (ide, Counter(t[2] for t in s), Counter(t[2] for t in g)),
            (pos, Counter(tuple(t[:3]) for t in s), Counter(tuple(t[:3]) for t in g)),
        ):
            tp = sum((sk & gk).values())
            acc[0] += tp
            acc[1] += sum(sk.values()) - tp
            acc[2] += sum(gk.values()) - tp
    return {
        "detection": _f1(*det),
        "identification": _f1(*ide),
        "position": _f1(*pos),
    }
