"""Language-aware tokenization and sequence primitives.

Two language modes: word-level (whitespace split with punctuation
detachment, for English-style captions) and character-level (one token
per non-space character, for Chinese-style captions).  Tokenization
preserves case; the metrics lowercase word-level tokens themselves via
normalized_tokens().
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass

from capedit import kernels

# characters detached from chunk edges as single-char tokens
PUNCT_CHARS = frozenset('.,!?;:"()\'')


class LanguageMode(enum.Enum):
    WORD = "en-word"
    CHAR = "zh-char"

    @classmethod
    def from_wire(cls, value: str) -> "LanguageMode":
        for mode in cls:
            if mode.value == value:
                return mode
        raise ValueError(f"unknown language mode {value!r}")


@dataclass(frozen=True)
class TokenSeq:
    """An immutable token sequence tagged with its language mode."""

    tokens: tuple[str, ...]
    mode: LanguageMode

    def __post_init__(self) -> None:
        for tok in self.tokens:
            if not tok:
                raise ValueError("empty token")
            if any(ch.isspace() for ch in tok):
                raise ValueError(f"token contains whitespace: {tok!r}")

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)


def _split_punct(chunk: str) -> list[str]:
    # Leading/trailing punctuation becomes separate single-char tokens;
    # internal hyphens/apostrophes stay attached ("girl's" is one token).
    lead: list[str] = []
    while chunk and chunk[0] in PUNCT_CHARS:
        lead.append(chunk[0])
        chunk = chunk[1:]
    trail: list[str] = []
    while chunk and chunk[-1] in PUNCT_CHARS:
        trail.append(chunk[-1])
        chunk = chunk[:-1]
    return lead + ([chunk] if chunk else []) + trail[::-1]


def tokenize(text: str, mode: LanguageMode) -> TokenSeq:
    if mode is LanguageMode.WORD:
        toks: list[str] = []
        for chunk in text.split():
            toks.extend(_split_punct(chunk))
        return TokenSeq(tuple(toks), mode)
    return TokenSeq(tuple(ch for ch in text if not ch.isspace()), mode)


def detokenize(seq: TokenSeq) -> str:
    joiner = " " if seq.mode is LanguageMode.WORD else ""
    return joiner.join(seq.tokens)


def normalized_tokens(seq: TokenSeq) -> tuple[str, ...]:
    """Tokens as compared by the metrics: lowercased in word mode."""
    if seq.mode is LanguageMode.WORD:
        return tuple(t.lower() for t in seq.tokens)
    return seq.tokens


def ngrams(seq: TokenSeq, n: int) -> Counter:
    """Multiset of token n-grams; n is restricted to 1..4."""
    if not 1 <= n <= 4:
        raise ValueError(f"n must be in [1, 4], got {n}")
    toks = seq.tokens
    return Counter(toks[i : i + n] for i in range(len(toks) - n + 1))


def _check_modes(a: TokenSeq, b: TokenSeq) -> None:
    if a.mode is not b.mode:
        raise ValueError(
            f"language mode mismatch: {a.mode.value} vs {b.mode.value}"
        )


def edit_distance(a: TokenSeq, b: TokenSeq) -> int:
    """Token-level Levenshtein distance with unit costs, raw tokens."""
    _check_modes(a, b)
    return kernels.edit_distance(a.tokens, b.tokens)


def lcs_length(a: TokenSeq, b: TokenSeq) -> int:
    """Length of the longest common token subsequence, raw tokens."""
    _check_modes(a, b)
    return kernels.lcs_length(a.tokens, b.tokens)
