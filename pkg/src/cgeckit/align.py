"""Token alignment, edit merging and word-order detection.

The aligner is a Damerau-Levenshtein DP in which a transposition may
swap any block whose two sides hold the same tokens in a different
order (not only two adjacent tokens). Substitutions between similar
sounding or looking tokens are discounted so that homophone swaps win
over unrelated pairings.
"""

from collections import Counter, namedtuple
from dataclasses import dataclass

from .core import Edit, ErrorLabel, ValidationError, geometry_op
from .phonosim import SimilarityProviders

MATCH, TRANSPOSE, SUB, DELETE, INSERT = "match", "transpose", "substitute", "delete", "insert"

# one aligned step; src[i0:i1] corresponds to tgt[j0:j1]
Op = namedtuple("Op", "kind i0 i1 j0 j1")

EPS = 1e-9


class GranularityError(ValidationError):
    kind = "granularity"


@dataclass(frozen=True)
class CostConfig:
    sub_base: float = 1.0
    sub_similar_discount: float = 0.5
    similar_above: float = 0.7
    insert_cost: float = 1.0
    delete_cost: float = 1.0
    transpose_cost: float = 1.0

    def __post_init__(self):
        for k in ("sub_base", "sub_similar_discount", "insert_cost", "delete_cost", "transpose_cost"):
            if getattr(self, k) <= 0:
                raise ValidationError(f"{k} must be positive")


_providers = None


def default_providers():
    global _providers
    if _providers is None:
        _providers = SimilarityProviders()
    return _providers


def sub_cost(a, b, cfg, providers):
    if providers is not None and (
        providers.pinyin(a, b) > cfg.similar_above or providers.shape(a, b) > cfg.similar_above
    ):
        return cfg.sub_base * cfg.sub_similar_discount
    return cfg.sub_base


def script_cost(ops, src, tgt, cfg=None, providers=None):
    cfg = cfg or CostConfig()
    total = 0.0
    for op in ops:
        if op.kind == SUB:
            total += sub_cost(src[op.i0], tgt[op.j0], cfg, providers)
        elif op.kind == DELETE:
            total += cfg.delete_cost
        elif op.kind == INSERT:
            total += cfg.insert_cost
        elif op.kind == TRANSPOSE:
            total += cfg.transpose_cost
    return total


def _sequences(x):
    return x.surfaces if hasattr(x, "surfaces") else list(x)


def align(src, tgt, cfg=None, providers=None):
    """Minimal-cost edit script from ``src`` tokens to ``tgt`` tokens.

    Accepts Segmentations or plain token lists. Ties prefer match, then
    transpose (shortest block), substitute, delete, insert.
    """
    if hasattr(src, "granularity") and hasattr(tgt, "granularity"):
        if src.granularity != tgt.granularity:
            raise GranularityError(f"{src.granularity} source vs {tgt.granularity} target")
    cfg = cfg or CostConfig()
    if providers is None:
        providers = default_providers()
    s, t = _sequences(src), _sequences(tgt)
    # Only inserts and deletes move off the diagonal, so a script of cost
    # <= bound stays inside a band around it. Widen until the best
    # in-band script fits the bound; it is then globally optimal and the
    # same script the unrestricted table would give.
    bound = _indel_floor(0, len(s), len(t), cfg) + 2 * max(cfg.transpose_cost, 1.0)
    while True:
        ops, c = _align_core(s, t, cfg, providers, bound)
        if c <= bound + EPS:
            return ops
        bound *= 2


def _indel_floor(d, n, m, cfg):
    # least insert/delete cost of any path through diagonal j - i == d
    D = m - n
    ins = max(d, 0) + max(D - d, 0)
    dels = max(-d, 0) + max(d - D, 0)
    return ins * cfg.insert_cost + dels * cfg.delete_cost


def _align_core(s, t, cfg, providers, bound=None):
    """Table alignment restricted to diagonals whose indel floor is
    within ``bound``; returns (ops, cost)."""
    n, m = len(s), len(t)
    if n == 0 or m == 0:
        ops = [Op(DELETE, i, i + 1, 0, 0) for i in range(n)] + [Op(INSERT, 0, 0, j, j + 1) for j in range(m)]
        return ops, n * cfg.delete_cost + m * cfg.insert_cost
    if bound is None:
        dlo, dhi = -n, m
    else:
        ok = [d for d in range(-n, m + 1) if _indel_floor(d, n, m, cfg) <= bound + EPS]
        dlo, dhi = ok[0], ok[-1]
    INF = float("inf")
    cost = [[INF] * (m + 1) for _ in range(n + 1)]
    back = [[None] * (m + 1) for _ in range(n + 1)]
    cost[0][0] = 0.0

    # prefix sums of token hashes; equal sums flag candidate blocks with
    # the same token multiset (verified exactly before use)
    ids = {}
    hs = lambda tok: ids.setdefault(tok, hash(("blk", tok)) & 0xFFFFFFFFFFFF)
    ps = [0]
    for x in s:
        ps.append(ps[-1] + hs(x))
    pt = [0]
    for y in t:
        pt.append(pt[-1] + hs(y))
    # diagonal -> key -> block starts i0 with s[i0] != t[j0]
    starts = {}

    sub_cache = {}
    dc, ic, tc = cfg.delete_cost, cfg.insert_cost, cfg.transpose_cost
    for i in range(0, n + 1):
        row, prow = cost[i], cost[i - 1] if i else None
        for j in range(max(0, i + dlo), min(m, i + dhi) + 1):
            if not (i and j):
                if i:
                    row[j], back[i][j] = prow[j] + dc, (DELETE, 1)
                elif j:
                    row[j], back[i][j] = row[j - 1] + ic, (INSERT, 1)
            else:
                a, b = s[i - 1], t[j - 1]
                if a == b:
                    best, ptr = prow[j - 1], (MATCH, 1)
                else:
                    best, ptr = float("inf"), None
                    reg = starts.get(i - j)
                    if reg:
                        for i0 in reversed(reg.get(ps[i] - pt[j], ())):
                            if i - i0 < 2:
                                continue
                            j0 = i0 - (i - j)
                            c = cost[i0][j0] + tc
                            if c < best - EPS and Counter(s[i0:i]) == Counter(t[j0:j]):
                                best, ptr = c, (TRANSPOSE, i - i0)
                    key = (a, b)
                    sc = sub_cache.get(key)
                    if sc is None:
                        sc = sub_cache[key] = sub_cost(a, b, cfg, providers)
                    c = prow[j - 1] + sc
                    if c < best - EPS:
                        best, ptr = c, (SUB, 1)
                # checked even after a match: a moved block can make an
                # indel beside equal tokens the cheaper route
                c = prow[j] + dc
                if c < best - EPS:
                    best, ptr = c, (DELETE, 1)
                c = row[j - 1] + ic
                if c < best - EPS:
                    best, ptr = c, (INSERT, 1)
                row[j] = best
                back[i][j] = ptr
            # register (i, j) as a possible block start
            if i < n and j < m and s[i] != t[j]:
                starts.setdefault(i - j, {}).setdefault(ps[i] - pt[j], []).append(i)

    ops = []
    i, j = n, m
    while i or j:
        kind, k = back[i][j]
        if kind == MATCH or kind == SUB:
            ops.append(Op(kind, i - 1, i, j - 1, j))
            i, j = i - 1, j - 1
        elif kind == TRANSPOSE:
            ops.append(Op(kind, i - k, i, j - k, j))
            i, j = i - k, j - k
        elif kind == DELETE:
            ops.append(Op(kind, i - 1, i, j, j))
            i -= 1
        else:
            ops.append(Op(kind, i, i, j - 1, j))
            j -= 1
    ops.reverse()
    return ops, cost[n][m]


def _make_edit(ops, s, t, annotator=0):
    i0, i1 = ops[0].i0, ops[-1].i1
    j0, j1 = ops[0].j0, ops[-1].j1
    repl = " ".join(t[j0:j1])
    if len(ops) == 1 and ops[0].kind == TRANSPOSE:
        op = "WO"
    else:
        op = geometry_op(i0, i1, repl)
    return Edit(i0, i1, repl, ErrorLabel(op), annotator)


def merge_edits(ops, src, tgt, lex=None, annotator=0):
    """Group raw ops into Edits.

    Contiguous non-match ops of mixed kinds form one edit; runs of only
    inserts or only deletes form one edit; substitutions stay separate
    unless they can grow into a single lexicon word on the target side,
    possibly absorbing neighbouring matched tokens (一->以 next to 前
    becomes 一前 -> 以前). Transpositions are always their own edit.
    """
    s, t = _sequences(src), _sequences(tgt)
    items = []  # (kind, [ops]) where kind is "match" or "edit"
    run = []

    def flush():
        if not run:
            return
        kinds = {o.kind for o in run}
        if kinds == {SUB}:
            items.extend(("edit", [o]) for o in run)
        else:
            items.append(("edit", list(run)))
        run.clear()

    for op in ops:
        if op.kind == MATCH:
            flush()
            items.append(("match", [op]))
        elif op.kind == TRANSPOSE:
            flush()
            items.append(("fixed", [op]))
        else:
            run.append(op)
    flush()

    if lex is not None:
        items = _grow_words(items, t, lex)

    return [_make_edit(ops_, s, t, annotator) for kind, ops_ in items if kind != "match"]


def _is_sub_edit(item):
    return item[0] == "edit" and all(o.kind == SUB for o in item[1])


def _target(items, t):
    j0 = items[0][1][0].j0
    j1 = items[-1][1][-1].j1
    return "".join(t[j0:j1])


def _grow_words(items, t, lex):
    maxlen = lex.max_word_len
    absorbable = lambda it: it[0] == "match" or _is_sub_edit(it)
    k = 0
    while k < len(items):
        item = items[k]
        own = _target([item], t) if item[0] == "edit" else ""
        if not _is_sub_edit(item) or (len(own) > 1 and own in lex):
            k += 1
            continue
        left = k
        while left > 0 and absorbable(items[left - 1]) and k - left < maxlen:
            left -= 1
        right = k
        while right < len(items) - 1 and absorbable(items[right + 1]) and right - k < maxlen:
            right += 1
        best = None
        for lo in range(k, left - 1, -1):
            for hi in range(k, right + 1):
                if lo == hi == k:
                    continue
                word = _target(items[lo:hi + 1], t)
                if len(word) > maxlen or word not in lex:
                    continue
                # fewest absorbed items, then shortest word, then leftmost
                rank = (hi - lo, len(word), lo)
                if best is None or rank < best[0]:
                    best = (rank, lo, hi)
        if best is None:
            k += 1
            continue
        _, lo, hi = best
        merged = [o for it in items[lo:hi + 1] for o in it[1]]
        items[lo:hi + 1] = [("edit", merged)]
        k = lo + 1
    return items


def _char_counter(text):
    return Counter(c for c in text if not c.isspace())


def _span_target_tokens(edits, src_tokens, start, end):
    # target tokens covering src[start:end] under ``edits``
    out = []
    pos = start
    for e in edits:
        out.extend(src_tokens[pos:e.start])
        out.extend(e.replacement.split())
        pos = e.end
    out.extend(src_tokens[pos:end])
    return out


def _block_swap(p, q):
    """Split p = X B Y with q = Y B X; longest B, then shortest X."""
    n = len(p)
    if n != len(q):
        return None
    best = None
    for x in range(1, n):
        for y in range(1, n - x + 1):
            b = n - x - y
            if p[:x] == q[n - x:] and p[n - y:] == q[:y] and p[x:x + b] == q[y:y + b]:
                if best is None or b > best[0] or (b == best[0] and x < best[1]):
                    best = (b, x, y)
    return best


def _shift_left(edit, src_tokens, edited):
    """Pull a WO span left over tokens repeated at the end of the moved block."""
    while edit.start > 0 and (edit.start - 1) not in edited:
        p = src_tokens[edit.start:edit.end]
        q = edit.replacement.split()
        sw = _block_swap(p, q)
        if sw is None or sw[0] == 0:
            break
        b, x, y = sw
        block = p[x:x + b]
        prev = src_tokens[edit.start - 1]
        if block[-1] != prev:
            break
        edit = Edit(edit.start - 1, edit.end, " ".join([prev] + q), edit.label, edit.annotator)
    return edit


def detect_word_order(edits, src, window=20):
    """Collapse groups of edits that only reorder material into WO edits.

    A group is a run of consecutive edits spanning at most ``window``
    source tokens whose source and target character multisets agree.
    Widest group from the leftmost start wins.
    """
    src_tokens = _sequences(src)
    edits = sorted(edits, key=lambda e: (e.start, e.end))
    out = []
    i = 0
    while i < len(edits):
        done = False
        for j in range(len(edits) - 1, i, -1):
            start = edits[i].start
            end = max(e.end for e in edits[i:j + 1])
            if end - start > window:
                continue
            tgt_toks = _span_target_tokens(edits[i:j + 1], src_tokens, start, end)
            src_text = "".join(src_tokens[start:end])
            tgt_text = "".join(tgt_toks)
            if src_text != tgt_text and _char_counter(src_text) == _char_counter(tgt_text) and end > start:
                out.append(Edit(start, end, " ".join(tgt_toks), ErrorLabel("WO"), edits[i].annotator))
                i = j + 1
                done = True
                break
        if not done:
            e = edits[i]
            if e.end > e.start and e.replacement.strip():
                st = "".join(src_tokens[e.start:e.end])
                if st != e.norm_replacement and _char_counter(st) == _char_counter(e.replacement):
                    e = e.with_label(ErrorLabel("WO"))
            out.append(e)
            i += 1
    edited = set()
    for e in out:
        edited.update(range(e.start, e.end))
    res = []
    for e in out:
        if e.label is not None and e.label.op == "WO":
            others = edited - set(range(e.start, e.end))
            e = _shift_left(e, src_tokens, others)
        res.append(e)
    return res


def extract_edits(src, tgt, lex=None, providers=None, cfg=None, window=20, annotator=0):
    """align -> merge -> word order, with provisional labels."""
    ops = align(src, tgt, cfg, providers)
    edits = merge_edits(ops, src, tgt, lex, annotator)
    return detect_word_order(edits, src, window)
