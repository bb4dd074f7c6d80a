"""Corpus statistics: references and edits per sentence, type counts."""

from collections import Counter


def _mean(xs):
    return sum(xs) / len(xs) if xs else 0.0


def m2_stats(records):
    refs, edits, types = [], [], Counter()
    for rec in records:
        sets = rec.edit_sets
        refs.append(len(sets))
        edits.append(_mean([len(v) for v in sets.values()]) if sets else 0.0)
        for v in sets.values():
            for e in v:
                types[str(e.label) if e.label is not None else "?"] += 1
    return _pack(refs, edits, types)


def corpus_stats(parsed):
    """Stats for ingested pairs; edit counts only where gold edits exist."""
    refs, edits, types = [], [], Counter()
    have_edits = False
    for p in parsed:
        refs.append(len(p.pair.references))
        if p.edit_sets:
            have_edits = True
            edits.append(_mean([len(v) for v in p.edit_sets.values()]))
            for v in p.edit_sets.values():
                for e in v:
                    types[str(e.label)] += 1
        else:
            edits.append(0.0)
    return _pack(refs, edits if have_edits else None, types)


def _pack(refs, edits, types):
    return {
        "sentences": len(refs),
        "refs_per_sentence": _mean(refs),
        "max_refs": max(refs, default=0),
        "edits_per_sentence": None if edits is None else _mean(edits),
        "types": types,
    }


def stats_lines(st):
    if not st["sentences"]:
        return []
    lines = [f"sentences\t{st['sentences']}",
             f"refs_per_sentence\t{st['refs_per_sentence']:.3f}",
             f"max_refs\t{st['max_refs']}"]
    if st["edits_per_sentence"] is not None:
        lines.append(f"edits_per_sentence\t{st['edits_per_sentence']:.3f}")
    for name, n in sorted(st["types"].items(), key=lambda kv: (-kv[1], kv[0])):
        lines.append(f"type:{name}\t{n}")
    return lines
