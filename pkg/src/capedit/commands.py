"""Triplet edit commands, positioned references, and the control codec.

A command is an (operation, positions, attributes) triplet.  Positions
and attributes are each optional, giving seven command kinds; the
(del, positions, attributes) combination is rejected.  Add positions
are gap indexes g in [0, L] (g tokens precede the insertion point);
del positions are half-open token spans [start, end), pairwise
disjoint.

Commands render to flat control strings with exactly one space between
tokens:

    [o] [ADD] [/o] [a] field , hockey [/a] [r] A group of girls is [MASK] playing a game . [/r]

Attribute phrases are separated by a standalone "," token; an empty
attribute block renders as "[a] [/a]".  Inside [r]..[/r] each [MASK]
marks an insertion gap (add) or a removed span (del).  The codec is
bit-exact: parse(serialize(c, r)) reproduces the command kind, the
operation, the attributes, and the mask indexes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from capedit.errors import CommandError, ControlFormatError
from capedit.text import LanguageMode, TokenSeq

MASK_TOKEN = "[MASK]"
_OP_TOKENS = {"add": "[ADD]", "del": "[DEL]"}
_BRACKETS = frozenset({"[o]", "[/o]", "[a]", "[/a]", "[r]", "[/r]"})
RESERVED_TOKENS = frozenset(_BRACKETS | {"[ADD]", "[DEL]", MASK_TOKEN})


class Operation(enum.Enum):
    ADD = "add"
    DEL = "del"


class CommandKind(enum.Enum):
    ADD_LEN = "add_len"
    ADD_POS = "add_pos"
    ADD_ATTR = "add_attr"
    ADD_POS_ATTR = "add_pos_attr"
    DEL_LEN = "del_len"
    DEL_POS = "del_pos"
    DEL_ATTR = "del_attr"


KIND_ORDER = (
    CommandKind.ADD_LEN,
    CommandKind.ADD_POS,
    CommandKind.ADD_ATTR,
    CommandKind.ADD_POS_ATTR,
    CommandKind.DEL_LEN,
    CommandKind.DEL_POS,
    CommandKind.DEL_ATTR,
)

KIND_LABELS = {
    CommandKind.ADD_LEN: "<add, -, ->",
    CommandKind.ADD_POS: "<add, pos, ->",
    CommandKind.ADD_ATTR: "<add, -, attr>",
    CommandKind.ADD_POS_ATTR: "<add, pos, attr>",
    CommandKind.DEL_LEN: "<del, -, ->",
    CommandKind.DEL_POS: "<del, pos, ->",
    CommandKind.DEL_ATTR: "<del, -, attr>",
}

ATTR_KINDS = frozenset(
    {CommandKind.ADD_ATTR, CommandKind.ADD_POS_ATTR, CommandKind.DEL_ATTR}
)
# positional accuracy is judged only for add commands with explicit gaps
POS_ACC_KINDS = frozenset({CommandKind.ADD_POS, CommandKind.ADD_POS_ATTR})


def _check_attr_token(tok: str) -> None:
    if not tok or any(ch.isspace() for ch in tok):
        raise CommandError(f"bad attribute token {tok!r}")
    if tok in RESERVED_TOKENS or tok == ",":
        raise CommandError(f"attribute token {tok!r} collides with the control grammar")


@dataclass(frozen=True)
class Command:
    """Edit command triplet; positions/attributes None when unspecified."""

    op: Operation
    positions: tuple | None = None
    attributes: tuple[tuple[str, ...], ...] | None = None

    def __post_init__(self) -> None:
        pos = self.positions
        if pos is not None:
            if self.op is Operation.ADD:
                pos = tuple(int(p) for p in pos)
            else:
                pos = tuple((int(s), int(e)) for s, e in pos)
            object.__setattr__(self, "positions", pos)
            if not pos:
                raise CommandError("positions, when given, must be non-empty")
            if self.op is Operation.ADD:
                if any(p < 0 for p in pos):
                    raise CommandError("add positions are non-negative gap indexes")
                if list(pos) != sorted(set(pos)):
                    raise CommandError("add positions must be strictly increasing")
            else:
                for s, e in pos:
                    if not 0 <= s < e:
                        raise CommandError(f"bad span ({s}, {e})")
                for (_, e1), (s2, _) in zip(pos, pos[1:]):
                    if e1 > s2:
                        raise CommandError("del spans must be sorted and disjoint")
        attrs = self.attributes
        if attrs is not None:
            attrs = tuple(
                tuple(a.split()) if isinstance(a, str) else tuple(a) for a in attrs
            )
            object.__setattr__(self, "attributes", attrs)
            if not attrs:
                raise CommandError("attributes, when given, must be non-empty")
            for phrase in attrs:
                if not phrase:
                    raise CommandError("empty attribute phrase")
                for tok in phrase:
                    _check_attr_token(tok)
        if self.op is Operation.DEL and pos is not None and attrs is not None:
            raise CommandError("the (del, positions, attributes) combination is not supported")


def kind(cmd: Command) -> CommandKind:
    has_pos = cmd.positions is not None
    has_attr = cmd.attributes is not None
    if cmd.op is Operation.ADD:
        if has_pos and has_attr:
            return CommandKind.ADD_POS_ATTR
        if has_pos:
            return CommandKind.ADD_POS
        if has_attr:
            return CommandKind.ADD_ATTR
        return CommandKind.ADD_LEN
    if has_pos:
        return CommandKind.DEL_POS
    if has_attr:
        return CommandKind.DEL_ATTR
    return CommandKind.DEL_LEN


@dataclass(frozen=True)
class PositionedReference:
    """Reference token stream with [MASK] slots marking edit locations.

    original is the mask-free reference when known; parsing a del
    control without the original caption leaves it None because the
    removed span contents are not recoverable from the control string.
    """

    tokens: tuple[str, ...]
    mode: LanguageMode
    original: TokenSeq | None
    mask_count: int

    def mask_indexes(self) -> tuple[int, ...]:
        return tuple(i for i, t in enumerate(self.tokens) if t == MASK_TOKEN)


def _check_reference_tokens(ref: TokenSeq) -> None:
    for tok in ref.tokens:
        if tok in RESERVED_TOKENS:
            raise CommandError(f"reference token {tok!r} collides with the control grammar")


def make_positioned_reference(ref: TokenSeq, cmd: Command) -> PositionedReference:
    """Weave [MASK] slots into ref according to the command positions."""
    _check_reference_tokens(ref)
    L = len(ref)
    if cmd.positions is None:
        return PositionedReference(ref.tokens, ref.mode, ref, 0)
    if cmd.op is Operation.ADD:
        gaps = set(cmd.positions)
        if cmd.positions[-1] > L:
            raise CommandError(f"gap {cmd.positions[-1]} out of range for length {L}")
        out: list[str] = []
        for i in range(L + 1):
            if i in gaps:
                out.append(MASK_TOKEN)
            if i < L:
                out.append(ref.tokens[i])
        return PositionedReference(tuple(out), ref.mode, ref, len(gaps))
    if cmd.positions[-1][1] > L:
        raise CommandError(f"span {cmd.positions[-1]} out of range for length {L}")
    out = []
    prev = 0
    for s, e in cmd.positions:
        out.extend(ref.tokens[prev:s])
        out.append(MASK_TOKEN)
        prev = e
    out.extend(ref.tokens[prev:])
    return PositionedReference(tuple(out), ref.mode, ref, len(cmd.positions))


def serialize(cmd: Command, ref: TokenSeq) -> str:
    """Render the command and reference as a flat control string."""
    posref = make_positioned_reference(ref, cmd)
    parts = ["[o]", _OP_TOKENS[cmd.op.value], "[/o]", "[a]"]
    if cmd.attributes:
        for idx, phrase in enumerate(cmd.attributes):
            if idx:
                parts.append(",")
            parts.extend(phrase)
    parts.extend(("[/a]", "[r]"))
    parts.extend(posref.tokens)
    parts.append("[/r]")
    return " ".join(parts)


def _split_attr_phrases(toks: list[str]) -> tuple[tuple[str, ...], ...] | None:
    if not toks:
        return None
    phrases: list[tuple[str, ...]] = []
    cur: list[str] = []
    for t in toks:
        if t == ",":
            if not cur:
                raise ControlFormatError("empty attribute phrase in control string")
            phrases.append(tuple(cur))
            cur = []
        else:
            cur.append(t)
    if not cur:
        raise ControlFormatError("empty attribute phrase in control string")
    phrases.append(tuple(cur))
    return tuple(phrases)


def _recover_del_spans(
    original: tuple[str, ...], posref: tuple[str, ...]
) -> list[tuple[int, int]]:
    """Map each [MASK] in posref to a removed span of the original.

    Backtracking search preferring the shortest (leftmost) span at each
    mask; raises when the positioned reference is inconsistent with the
    original caption.
    """

    def rec(oi: int, pi: int, acc: list[tuple[int, int]]):
        if pi == len(posref):
            return list(acc) if oi == len(original) else None
        tok = posref[pi]
        if tok == MASK_TOKEN:
            for ln in range(1, len(original) - oi + 1):
                acc.append((oi, oi + ln))
                hit = rec(oi + ln, pi + 1, acc)
                acc.pop()
                if hit is not None:
                    return hit
            return None
        if oi < len(original) and original[oi] == tok:
            return rec(oi + 1, pi + 1, acc)
        return None

    spans = rec(0, 0, [])
    if spans is None:
        raise ControlFormatError("positioned reference is inconsistent with the original caption")
    return spans


def parse(
    ctrl: str,
    original_ref: TokenSeq | None = None,
    mode: LanguageMode = LanguageMode.WORD,
) -> tuple[Command, PositionedReference]:
    """Parse a control string back into a command and positioned reference.

    For del controls the span contents are recoverable only when
    original_ref is supplied; without it each mask is assumed to cover
    exactly one original token and PositionedReference.original is None.
    """
    toks = ctrl.split()
    pos = 0

    def expect(tok: str) -> None:
        nonlocal pos
        if pos >= len(toks) or toks[pos] != tok:
            got = toks[pos] if pos < len(toks) else "<end of string>"
            raise ControlFormatError(f"expected {tok} at token {pos}, got {got}")
        pos += 1

    expect("[o]")
    if pos >= len(toks):
        raise ControlFormatError("missing operation token")
    op_tok = toks[pos]
    pos += 1
    if op_tok == "[ADD]":
        op = Operation.ADD
    elif op_tok == "[DEL]":
        op = Operation.DEL
    else:
        raise ControlFormatError(f"unknown operation token {op_tok}")
    expect("[/o]")
    expect("[a]")
    attr_toks: list[str] = []
    while pos < len(toks) and toks[pos] != "[/a]":
        if toks[pos] in _BRACKETS:
            raise ControlFormatError(f"unexpected {toks[pos]} inside attribute block")
        if toks[pos] == MASK_TOKEN:
            raise ControlFormatError("stray [MASK] outside the reference block")
        attr_toks.append(toks[pos])
        pos += 1
    expect("[/a]")
    expect("[r]")
    ref_toks: list[str] = []
    while pos < len(toks) and toks[pos] != "[/r]":
        if toks[pos] in _BRACKETS:
            raise ControlFormatError(f"unexpected {toks[pos]} inside reference block")
        ref_toks.append(toks[pos])
        pos += 1
    expect("[/r]")
    if pos != len(toks):
        raise ControlFormatError("trailing tokens after [/r]")

    attributes = _split_attr_phrases(attr_toks)
    mask_idx = [i for i, t in enumerate(ref_toks) if t == MASK_TOKEN]
    plain = tuple(t for t in ref_toks if t != MASK_TOKEN)

    if op is Operation.ADD:
        original = TokenSeq(plain, mode)
        if original_ref is not None and original_ref.tokens != plain:
            raise ControlFormatError("reference block does not match the supplied original")
        positions = tuple(idx - rank for rank, idx in enumerate(mask_idx)) or None
        cmd = Command(op, positions, attributes)
        posref = PositionedReference(
            tuple(ref_toks), mode, original_ref if original_ref is not None else original, len(mask_idx)
        )
        return cmd, posref

    if not mask_idx:
        original = TokenSeq(plain, mode)
        if original_ref is not None and original_ref.tokens != plain:
            raise ControlFormatError("reference block does not match the supplied original")
        cmd = Command(op, None, attributes)
        return cmd, PositionedReference(tuple(ref_toks), mode, original, 0)

    if original_ref is not None:
        spans = _recover_del_spans(original_ref.tokens, tuple(ref_toks))
        cmd = Command(op, tuple(spans), attributes)
        return cmd, PositionedReference(tuple(ref_toks), mode, original_ref, len(mask_idx))

    # original unknown: assume single-token spans so mask arithmetic stays valid
    spans = []
    oi = 0
    for t in ref_toks:
        if t == MASK_TOKEN:
            spans.append((oi, oi + 1))
        oi += 1
    cmd = Command(op, tuple(spans), attributes)
    return cmd, PositionedReference(tuple(ref_toks), mode, None, len(mask_idx))
