"""Bar charts written next to the tabular reports."""

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .score import f_label, prf, sorted_types  # noqa: E402


def _save(fig, out_dir, name):
    os.makedirs(out_dir, exist_ok=True)
    path = os.path.join(out_dir, name)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_score(rep, out_dir):
    """Per-type P/R/F bars plus the overall scores."""
    rows = sorted_types(rep)
    names = ["Total"] + [n for n, _ in rows]
    vals = [(rep.precision, rep.recall, rep.f_beta)] + [prf(*c, rep.beta) for _, c in rows]
    fig, ax = plt.subplots(figsize=(max(5, 0.6 * len(names) + 2), 3.5))
    width = 0.27
    xs = range(len(names))
    for k, lab in enumerate(("P", "R", f_label(rep.beta))):
        ax.bar([x + (k - 1) * width for x in xs], [v[k] for v in vals], width, label=lab)
    ax.set_xticks(list(xs))
    ax.set_xticklabels(names, rotation=45, ha="right", fontsize=8)
    ax.set_ylim(0, 1.05)
    ax.legend(fontsize=8)
    return [_save(fig, out_dir, "score.png")]


def plot_stats(st, out_dir):
    items = sorted(st["types"].items(), key=lambda kv: (-kv[1], kv[0]))
    fig, ax = plt.subplots(figsize=(max(5, 0.5 * len(items) + 2), 3.5))
    ax.bar([n for n, _ in items], [c for _, c in items])
    ax.set_ylabel("edits")
    ax.tick_params(axis="x", labelrotation=45, labelsize=8)
    ax.set_title(f"{st['sentences']} sentences, {st['refs_per_sentence']:.3f} refs/sentence", fontsize=9)
    return [_save(fig, out_dir, "stats.png")]


def plot_diff(summary, categories, out_dir):
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(list(categories), [summary[c] for c in categories])
    ax.set_ylabel("regions")
    ax.tick_params(axis="x", labelrotation=30, labelsize=8)
    ax.set_title(f"sentence agreement {100 * summary['agreement']:.1f}%", fontsize=9)
    return [_save(fig, out_dir, "diff.png")]
