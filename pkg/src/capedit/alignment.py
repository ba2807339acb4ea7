"""Aligning a positioned reference against an edited caption.

The aligner runs a Levenshtein-style dynamic program in which every
[MASK] slot is a zero-cost wildcard absorbing a contiguous, possibly
empty run of hypothesis tokens.  Costs: match 0, substitution 1,
reference-token deletion 1, hypothesis-token insertion 1, mask
absorption 0.

Among minimum-cost alignments, ties are broken greedily from the left
by preferring, in order: absorbing a longer run into the current mask,
matching, substitution, deletion, insertion.  The tie-break is total,
so identical inputs always yield identical alignments; positional
accuracy depends on it and it is treated as part of the contract.

Word-mode tokens are compared lowercased; character-mode tokens are
compared as-is.
"""

from __future__ import annotations

from dataclasses import dataclass

from capedit import kernels
from capedit.commands import MASK_TOKEN, PositionedReference
from capedit.text import TokenSeq, normalized_tokens


@dataclass(frozen=True)
class AlignmentResult:
    """pairs: matched (ref_index, hyp_index) pairs over the positioned
    reference, strictly increasing in both coordinates; mask_spans: one
    half-open hypothesis span per [MASK], in reference order; cost: the
    minimum edit cost."""

    pairs: tuple[tuple[int, int], ...]
    mask_spans: tuple[tuple[int, int], ...]
    cost: int


def dsa_align(posref: PositionedReference, hyp: TokenSeq) -> AlignmentResult:
    if posref.mode is not hyp.mode:
        raise ValueError(
            f"language mode mismatch: {posref.mode.value} vs {hyp.mode.value}"
        )
    lower = posref.mode.value == "en-word"
    ref: list[str | None] = [
        None if t == MASK_TOKEN else (t.lower() if lower else t)
        for t in posref.tokens
    ]
    cost, ops = kernels.dsa_ops(ref, normalized_tokens(hyp))
    pairs = []
    spans = []
    for op in ops:
        if op[0] == kernels.OP_MATCH:
            pairs.append((op[1], op[2]))
        elif op[0] == kernels.OP_MASK:
            spans.append((op[2], op[3]))
    return AlignmentResult(tuple(pairs), tuple(spans), cost)


def mask_span_lengths(result: AlignmentResult) -> list[int]:
    return [e - s for s, e in result.mask_spans]


def mask_span_tokens(result: AlignmentResult, hyp: TokenSeq) -> list[tuple[str, ...]]:
    return [hyp.tokens[s:e] for s, e in result.mask_spans]
