"""Edit-aware and text-overlap evaluation.

Edit-aware checks:

* length accuracy: adds must lengthen by at least delta tokens, dels
  must shorten by at least delta (delta defaults to 1; a target-length
  mode with relative tolerance is available through EvalConfig);
* attribute accuracy: every commanded attribute phrase present (adds)
  or absent (dels) as a contiguous normalized token subsequence;
* positional accuracy: judged only for add commands with explicit
  gaps; every mask span found by the aligner must be non-empty.

Text-overlap scores: SARI (keep/delete/add n-gram F over n=1..4
against source and ground truth, multiset semantics), corpus-level
BLEU-4 (uniform weights, clipped counts, brevity penalty, no
smoothing), and ROUGE-L (LCS F-measure with beta = 1.2).  Perplexity
and EMScore are ingested from sample records, never computed.

All aggregations use exact or order-independent arithmetic, so
shuffling the corpus never changes a reported number.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from capedit import kernels
from capedit.alignment import dsa_align, mask_span_lengths
from capedit.commands import (
    ATTR_KINDS,
    KIND_LABELS,
    KIND_ORDER,
    POS_ACC_KINDS,
    CommandKind,
    Operation,
    kind,
    make_positioned_reference,
)
from capedit.construction import EditSample
from capedit.text import TokenSeq, normalized_tokens

ROUGE_BETA = 1.2


@dataclass(frozen=True)
class EvalUnit:
    """One sample paired with a hypothesis caption."""

    sample: EditSample
    hypothesis: TokenSeq

    def __post_init__(self) -> None:
        if self.hypothesis.mode is not self.sample.mode:
            raise ValueError("hypothesis language mode differs from the sample")


@dataclass(frozen=True)
class EvalConfig:
    delta: int = 1
    # optional target-length rule: |len(hyp) - ratio*len(ref)| <= tol*ratio*len(ref)
    length_target_ratio: float | None = None
    length_target_tolerance: float = 0.2


def len_acc(unit: EvalUnit, config: EvalConfig | None = None) -> bool:
    config = config or EvalConfig()
    ref_len = len(unit.sample.reference)
    hyp_len = len(unit.hypothesis)
    if config.length_target_ratio is not None:
        target = config.length_target_ratio * ref_len
        return abs(hyp_len - target) <= config.length_target_tolerance * target
    if unit.sample.command.op is Operation.ADD:
        return hyp_len >= ref_len + config.delta
    return hyp_len <= ref_len - config.delta


def _contains(hay: tuple[str, ...], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    return any(hay[i : i + n] == phrase for i in range(len(hay) - n + 1))


def attr_acc(unit: EvalUnit) -> bool | None:
    """True/False for attribute kinds, None (not applicable) otherwise."""
    k = kind(unit.sample.command)
    if k not in ATTR_KINDS:
        return None
    hay = normalized_tokens(unit.hypothesis)
    mode = unit.hypothesis.mode
    phrases = [
        tuple(t.lower() for t in p) if mode.value == "en-word" else tuple(p)
        for p in unit.sample.command.attributes
    ]
    if unit.sample.command.op is Operation.ADD:
        return all(_contains(hay, p) for p in phrases)
    return not any(_contains(hay, p) for p in phrases)


def pos_acc(unit: EvalUnit) -> bool | None:
    """True/False for add commands with gaps, None otherwise."""
    k = kind(unit.sample.command)
    if k not in POS_ACC_KINDS:
        return None
    posref = make_positioned_reference(unit.sample.reference, unit.sample.command)
    result = dsa_align(posref, unit.hypothesis)
    return all(n > 0 for n in mask_span_lengths(result))


def _grams(tokens: tuple[str, ...], n: int) -> Counter:
    return Counter(tokens[i : i + n] for i in range(len(tokens) - n + 1))


def _f1(produced: Counter, expected: Counter) -> float:
    p_total = sum(produced.values())
    e_total = sum(expected.values())
    if p_total == 0 and e_total == 0:
        return 1.0
    g_total = sum((produced & expected).values())
    precision = g_total / p_total if p_total else 0.0
    recall = g_total / e_total if e_total else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _precision(produced: Counter, expected: Counter) -> float:
    p_total = sum(produced.values())
    e_total = sum(expected.values())
    if p_total == 0 and e_total == 0:
        return 1.0
    if p_total == 0:
        return 0.0
    return sum((produced & expected).values()) / p_total


def sari_score(
    source: tuple[str, ...], hypothesis: tuple[str, ...], truth: tuple[str, ...]
) -> float:
    """SARI over normalized token tuples, multiset semantics.

    Per n in 1..4 with n-gram multisets S (source), C (hypothesis) and
    G (truth): keep is F1 over S&C vs S&G, delete is precision over
    S-C vs S-G, add is F1 over C-S vs G-S.  A component with nothing
    produced and nothing expected scores 1, so a hypothesis equal to
    the truth always scores exactly 1.
    """
    keep = delete = add = 0.0
    for n in range(1, 5):
        s = _grams(source, n)
        c = _grams(hypothesis, n)
        g = _grams(truth, n)
        keep += _f1(s & c, s & g)
        delete += _precision(s - c, s - g)
        add += _f1(c - s, g - s)
    return (keep + delete + add) / 12.0


def sari(unit: EvalUnit) -> float:
    return sari_score(
        normalized_tokens(unit.sample.reference),
        normalized_tokens(unit.hypothesis),
        normalized_tokens(unit.sample.ground_truth),
    )


def rouge_l_score(hypothesis: tuple[str, ...], truth: tuple[str, ...]) -> float:
    """ROUGE-L F-measure with beta = 1.2; 0 when either side is empty."""
    if not hypothesis or not truth:
        return 0.0
    lcs = kernels.lcs_length(list(hypothesis), list(truth))
    precision = lcs / len(hypothesis)
    recall = lcs / len(truth)
    denom = recall + ROUGE_BETA**2 * precision
    if denom == 0.0:
        return 0.0
    return (1 + ROUGE_BETA**2) * precision * recall / denom


def rouge_l(unit: EvalUnit) -> float:
    return rouge_l_score(
        normalized_tokens(unit.hypothesis), normalized_tokens(unit.sample.ground_truth)
    )


def bleu4(units: list[EvalUnit]) -> float:
    """Corpus-level BLEU-4, single reference, no smoothing.

    Orders with no hypothesis n-grams anywhere in the corpus contribute
    precision 1 (nothing to get wrong); an order with n-grams but zero
    clipped matches makes the score 0.
    """
    if not units:
        raise ValueError("empty corpus")
    hyp_len = ref_len = 0
    matched = [0, 0, 0, 0]
    total = [0, 0, 0, 0]
    for unit in units:
        hyp = normalized_tokens(unit.hypothesis)
        ref = normalized_tokens(unit.sample.ground_truth)
        hyp_len += len(hyp)
        ref_len += len(ref)
        for n in range(1, 5):
            h = _grams(hyp, n)
            r = _grams(ref, n)
            total[n - 1] += sum(h.values())
            matched[n - 1] += sum((h & r).values())
    if hyp_len == 0:
        return 0.0
    log_sum = 0.0
    for n in range(4):
        if total[n] == 0:
            continue
        if matched[n] == 0:
            return 0.0
        log_sum += math.log(matched[n] / total[n])
    bp = 1.0 if hyp_len >= ref_len else math.exp(1.0 - ref_len / hyp_len)
    return bp * math.exp(log_sum / 4.0)


@dataclass(frozen=True)
class MetricRow:
    """One report row; None marks a not-applicable cell.  Accuracies
    are percentages in [0, 100], overlap scores are in [0, 1]."""

    kind: str
    label: str
    count: int
    len_acc: float
    attr_acc: float | None
    pos_acc: float | None
    sari: float
    bleu4: float
    rouge_l: float
    mean_ppl: float | None
    mean_emscore: float | None

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "count": self.count,
            "len_acc": self.len_acc,
            "attr_acc": self.attr_acc,
            "pos_acc": self.pos_acc,
            "sari": self.sari,
            "bleu4": self.bleu4,
            "rouge_l": self.rouge_l,
            "mean_ppl": self.mean_ppl,
            "mean_emscore": self.mean_emscore,
        }


@dataclass(frozen=True)
class MetricReport:
    rows: tuple[MetricRow, ...]
    overall: MetricRow

    def to_dict(self) -> dict:
        return {
            "per_kind": [r.to_dict() for r in self.rows],
            "overall": self.overall.to_dict(),
        }


def _percent(hits: int, total: int) -> float:
    return 100.0 * hits / total


def _mean(values: list[float]) -> float | None:
    if not values:
        return None
    return math.fsum(values) / len(values)


def _build_row(
    kind_name: str, label: str, units: list[EvalUnit], config: EvalConfig
) -> MetricRow:
    len_hits = sum(1 for u in units if len_acc(u, config))
    attr_values = [v for u in units if (v := attr_acc(u)) is not None]
    pos_values = [v for u in units if (v := pos_acc(u)) is not None]
    sari_mean = math.fsum(sari(u) for u in units) / len(units)
    rouge_mean = math.fsum(rouge_l(u) for u in units) / len(units)
    return MetricRow(
        kind=kind_name,
        label=label,
        count=len(units),
        len_acc=_percent(len_hits, len(units)),
        attr_acc=_percent(sum(attr_values), len(attr_values)) if attr_values else None,
        pos_acc=_percent(sum(pos_values), len(pos_values)) if pos_values else None,
        sari=sari_mean,
        bleu4=bleu4(units),
        rouge_l=rouge_mean,
        mean_ppl=_mean([u.sample.ppl for u in units if u.sample.ppl is not None]),
        mean_emscore=_mean(
            [u.sample.emscore for u in units if u.sample.emscore is not None]
        ),
    )


def evaluate_corpus(units: list[EvalUnit], config: EvalConfig | None = None) -> MetricReport:
    """Per-kind rows (in fixed kind order, present kinds only) plus an
    overall row with micro-averaged accuracies."""
    if not units:
        raise ValueError("empty corpus")
    modes = {u.sample.mode for u in units}
    if len(modes) != 1:
        raise ValueError("mixed language modes in one evaluation corpus")
    config = config or EvalConfig()
    by_kind: dict[CommandKind, list[EvalUnit]] = {}
    for u in units:
        by_kind.setdefault(kind(u.sample.command), []).append(u)
    rows = tuple(
        _build_row(k.value, KIND_LABELS[k], by_kind[k], config)
        for k in KIND_ORDER
        if k in by_kind
    )
    overall = _build_row("overall", "Overall", units, config)
    return MetricReport(rows, overall)


def _fmt(value, kind: str) -> str:
    if value is None:
        return "-"
    if kind == "pct":
        return f"{value:.2f}"
    if kind == "score":
        return f"{value:.4f}"
    return str(value)


def format_report_table(report: MetricReport) -> str:
    """Aligned plain-text table, one row per command kind plus overall."""
    header = (
        "Command", "N", "Len-Acc", "Attr-Acc", "Pos-Acc",
        "SARI", "BLEU4", "ROUGE-L", "PPL", "EMScore",
    )
    body = []
    for row in list(report.rows) + [report.overall]:
        body.append(
            (
                row.label,
                str(row.count),
                _fmt(row.len_acc, "pct"),
                _fmt(row.attr_acc, "pct"),
                _fmt(row.pos_acc, "pct"),
                _fmt(row.sari, "score"),
                _fmt(row.bleu4, "score"),
                _fmt(row.rouge_l, "score"),
                _fmt(row.mean_ppl, "pct"),
                _fmt(row.mean_emscore, "score"),
            )
        )
    widths = [
        max(len(header[c]), *(len(r[c]) for r in body)) for c in range(len(header))
    ]
    lines = []
    for cells in [header] + body:
        lines.append(
            "  ".join(cell.ljust(w) for cell, w in zip(cells, widths)).rstrip()
        )
    return "\n".join(lines) + "\n"
