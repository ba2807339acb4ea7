"""Corpus construction: pairing, retrieval, degradation, and balancing.

Edit samples are built from per-video caption pools and (optionally)
dependency / semantic-role annotations:

* length-only adds pair a short and a long caption of the same video;
* length-only dels retrieve the reference from a similar other video
  (negative retrieval), so the ground truth is a caption of the
  current video and the reference is the misaligned longer one;
* attribute / positional samples come from degradation: removable
  dependency branches are cut out of a caption, recording the removed
  spans so the original can be reconstructed exactly, and reversing
  the pair yields the add-side samples;
* position-free attribute samples may be re-targeted (relaxed) to a
  different caption of the same video that satisfies the attribute and
  length constraints, falling back to the degraded/original pair.

Everything is deterministic under a fixed seed.
"""

from __future__ import annotations

import enum
import math
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, replace

from capedit import kernels
from capedit import text as text_mod
from capedit.commands import (
    KIND_ORDER,
    Command,
    CommandKind,
    Operation,
    kind,
    make_positioned_reference,
)
from capedit.errors import DatasetError
from capedit.text import LanguageMode, TokenSeq, normalized_tokens

# function words ignored by the caption-pool similarity measure
STOPWORDS = frozenset(
    """a an the is are was were be been being am do does did on in at of to
    and or but with for from by as it its this that these those there their
    they he she his her him we you your i not no yes then than so very up
    down out into over under after before while during""".split()
)


class Provenance(enum.Enum):
    LENGTH_PAIR = "length_pair"
    NEGATIVE_RETRIEVAL = "negative_retrieval"
    DEGRADATION = "degradation"
    REVERSAL = "reversal"
    RELAXATION = "relaxation"


@dataclass(frozen=True)
class CaptionGroup:
    """All captions of one video, in a single language mode."""

    video_id: str
    captions: tuple[TokenSeq, ...]

    def __post_init__(self) -> None:
        if not self.captions:
            raise ValueError(f"video {self.video_id}: empty caption pool")
        modes = {c.mode for c in self.captions}
        if len(modes) != 1:
            raise ValueError(f"video {self.video_id}: mixed language modes")

    @property
    def mode(self) -> LanguageMode:
        return self.captions[0].mode


@dataclass(frozen=True)
class DepToken:
    """One parsed token: surface form, universal POS, head index
    (-1 for the root), and dependency relation."""

    form: str
    upos: str
    head: int
    deprel: str


@dataclass(frozen=True)
class SrlFrame:
    """Semantic-role frame: predicate token index plus labeled
    argument spans (label, start, end)."""

    predicate: int
    arguments: tuple[tuple[str, int, int], ...]


@dataclass(frozen=True)
class ParseAnnotation:
    """Dependency parse (and optional SRL frames) for one caption."""

    caption_index: int
    tokens: tuple[DepToken, ...]
    frames: tuple[SrlFrame, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.tokens)
        roots = [i for i, t in enumerate(self.tokens) if t.head == -1]
        if len(roots) != 1:
            raise ValueError(f"parse must have exactly one root, found {len(roots)}")
        for i, t in enumerate(self.tokens):
            if t.head != -1 and not 0 <= t.head < n:
                raise ValueError(f"token {i}: head {t.head} out of range")
        # cycle check: walking up from any node must reach the root
        for i in range(n):
            seen = set()
            j = i
            while j != -1:
                if j in seen:
                    raise ValueError("dependency arcs contain a cycle")
                seen.add(j)
                j = self.tokens[j].head

    @property
    def root(self) -> int:
        return next(i for i, t in enumerate(self.tokens) if t.head == -1)


@dataclass(frozen=True)
class EditSample:
    """One editing quadruple plus construction metadata.

    payload, when present, records one token span per command position
    (removed content for del, insertable content for add) and exists
    only for positional degradation/reversal samples.
    """

    id: str
    video_id: str
    mode: LanguageMode
    command: Command
    reference: TokenSeq
    ground_truth: TokenSeq
    provenance: Provenance
    payload: tuple[tuple[str, ...], ...] | None = None
    ppl: float | None = None
    emscore: float | None = None

    def __post_init__(self) -> None:
        if self.reference.mode is not self.mode or self.ground_truth.mode is not self.mode:
            raise ValueError("sample language mode disagrees with its sequences")
        make_positioned_reference(self.reference, self.command)
        if self.payload is not None:
            if self.command.positions is None:
                raise ValueError("payload requires a positional command")
            if len(self.payload) != len(self.command.positions):
                raise ValueError("payload span count differs from position count")
            if self.provenance not in (Provenance.DEGRADATION, Provenance.REVERSAL):
                raise ValueError("payload is only recorded for degradation/reversal samples")


@dataclass(frozen=True)
class Degradation:
    """One removable-branch cut: attributes are the branch head words,
    removed_spans the cut token ranges of the original caption, edited
    the remaining caption."""

    attributes: tuple[tuple[str, ...], ...]
    removed_spans: tuple[tuple[int, int], ...]
    edited: TokenSeq


@dataclass(frozen=True)
class ConstructionConfig:
    min_length_diff: int = 5
    similarity_threshold: float = 0.3
    removable_relations: frozenset = frozenset(
        {"prep", "obl", "nmod", "amod", "advmod", "appos", "acl", "advcl", "conj"}
    )
    # relations only removable when the branch reaches the sentence end
    trailing_only_relations: frozenset = frozenset({"conj"})
    core_arg_labels: frozenset = frozenset({"ARG0", "ARG1", "A0", "A1"})
    # noun-headed branches overlapping a core argument are protected
    core_veto_pos: frozenset = frozenset({"NOUN", "PROPN", "PRON"})
    attribute_pos: frozenset = frozenset({"NOUN", "PROPN", "VERB", "ADJ", "ADV"})
    merge_max_tokens: int = 2
    min_remaining_tokens: int = 3
    ppl_threshold: float | None = None
    max_edit_distance: int | None = None
    balance_tolerance: int = 1
    max_per_kind: int | None = None

    @classmethod
    def from_dict(cls, data: dict) -> "ConstructionConfig":
        kwargs = {}
        for fname, f in cls.__dataclass_fields__.items():
            if fname in data:
                value = data[fname]
                if isinstance(f.default, frozenset):
                    value = frozenset(value)
                kwargs[fname] = value
        unknown = set(data) - set(cls.__dataclass_fields__) - {"split"}
        if unknown:
            raise DatasetError(f"unknown construction config keys: {sorted(unknown)}")
        return cls(**kwargs)


def build_add_length(group: CaptionGroup, min_diff: int = 5) -> list[EditSample]:
    """Length-only adds: every ordered caption pair of the video whose
    lengths differ by more than min_diff tokens."""
    out = []
    for i, ref in enumerate(group.captions):
        for j, gt in enumerate(group.captions):
            if i == j or len(gt) - len(ref) <= min_diff:
                continue
            out.append(
                EditSample(
                    id="",
                    video_id=group.video_id,
                    mode=group.mode,
                    command=Command(Operation.ADD),
                    reference=ref,
                    ground_truth=gt,
                    provenance=Provenance.LENGTH_PAIR,
                )
            )
    return out


def _content_tokens(group: CaptionGroup) -> frozenset:
    toks = set()
    for cap in group.captions:
        for t in normalized_tokens(cap):
            if t.isalpha() and t not in STOPWORDS:
                toks.add(t)
    return frozenset(toks)


def _jaccard(a: frozenset, b: frozenset) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def build_del_length(
    groups: list[CaptionGroup],
    min_diff: int = 5,
    similarity_threshold: float = 0.3,
    neighbors: dict[str, list[str]] | None = None,
) -> list[EditSample]:
    """Length-only dels via negative retrieval: the reference comes from
    a similar other video, the ground truth from the current video.

    Similarity is Jaccard overlap of content tokens between caption
    pools unless an explicit neighbor list is supplied.
    """
    by_id = {g.video_id: g for g in groups}
    if neighbors is None:
        pools = {g.video_id: _content_tokens(g) for g in groups}
        neighbors = {}
        for g in groups:
            scored = []
            for other in groups:
                if other.video_id == g.video_id:
                    continue
                sim = _jaccard(pools[g.video_id], pools[other.video_id])
                if sim >= similarity_threshold:
                    scored.append((-sim, other.video_id))
            neighbors[g.video_id] = [vid for _, vid in sorted(scored)]
    out = []
    for g in sorted(groups, key=lambda x: x.video_id):
        for vid in neighbors.get(g.video_id, []):
            other = by_id.get(vid)
            if other is None:
                raise DatasetError(f"neighbor list names unknown video {vid!r}")
            for ref in other.captions:
                for gt in g.captions:
                    if len(ref) - len(gt) <= min_diff:
                        continue
                    out.append(
                        EditSample(
                            id="",
                            video_id=g.video_id,
                            mode=g.mode,
                            command=Command(Operation.DEL),
                            reference=ref,
                            ground_truth=gt,
                            provenance=Provenance.NEGATIVE_RETRIEVAL,
                        )
                    )
    return out


def _subtree_spans(parse: ParseAnnotation) -> list[tuple[int, int, int]]:
    """Per token: (size, min_index, max_index) of its subtree."""
    n = len(parse.tokens)
    children: list[list[int]] = [[] for _ in range(n)]
    for i, t in enumerate(parse.tokens):
        if t.head != -1:
            children[t.head].append(i)
    size = [1] * n
    lo = list(range(n))
    hi = list(range(n))
    # process nodes bottom-up (children before parents)
    order = []
    stack = [parse.root]
    while stack:
        node = stack.pop()
        order.append(node)
        stack.extend(children[node])
    for node in reversed(order):
        for ch in children[node]:
            size[node] += size[ch]
            lo[node] = min(lo[node], lo[ch])
            hi[node] = max(hi[node], hi[ch])
    return [(size[i], lo[i], hi[i]) for i in range(n)]


def degrade(
    caption: TokenSeq, parse: ParseAnnotation, config: ConstructionConfig | None = None
) -> list[Degradation]:
    """Cut removable dependency branches out of the caption.

    A branch is removable when its relation is configured as removable,
    its subtree is contiguous, it does not contain the root, its head's
    POS can serve as an attribute, and (for noun-headed branches) it
    does not overlap a core argument of the main predicate.  Branches
    spanning at most merge_max_tokens tokens are merged with sibling
    branches of the same head into multi-attribute results.
    """
    config = config or ConstructionConfig()
    n = len(caption)
    if len(parse.tokens) != n:
        raise DatasetError(
            f"parse has {len(parse.tokens)} tokens for a {n}-token caption"
        )
    for i, (tok, ptok) in enumerate(zip(caption.tokens, parse.tokens)):
        if tok != ptok.form:
            raise DatasetError(f"parse token {i} is {ptok.form!r}, caption has {tok!r}")

    spans = _subtree_spans(parse)
    root = parse.root
    core_spans = [
        (s, e)
        for frame in parse.frames
        if frame.predicate == root
        for label, s, e in frame.arguments
        if label in config.core_arg_labels
    ]

    candidates = []  # (span, head_index)
    for i, ptok in enumerate(parse.tokens):
        if i == root or ptok.deprel not in config.removable_relations:
            continue
        size, lo, hi = spans[i]
        if hi - lo + 1 != size:  # discontiguous branch
            continue
        if ptok.upos not in config.attribute_pos:
            continue
        if ptok.deprel in config.trailing_only_relations:
            last = caption.tokens[-1]
            tail_ok = hi == n - 1 or (
                hi == n - 2 and len(last) == 1 and last in text_mod.PUNCT_CHARS
            )
            if not tail_ok:
                continue
        if ptok.upos in config.core_veto_pos and any(
            lo < ce and cs < hi + 1 for cs, ce in core_spans
        ):
            continue
        if n - size < config.min_remaining_tokens:
            continue
        candidates.append(((lo, hi + 1), i))

    # keep maximal branches only
    maximal = []
    for span, head in candidates:
        if any(
            other[0] <= span[0] and span[1] <= other[1] and other != span
            for other, _ in candidates
        ):
            continue
        maximal.append((span, head))
    maximal.sort()

    small = [(span, head) for span, head in maximal if span[1] - span[0] <= config.merge_max_tokens]
    large = [(span, head) for span, head in maximal if span[1] - span[0] > config.merge_max_tokens]

    def make_result(members: list[tuple[tuple[int, int], int]]) -> Degradation | None:
        members = sorted(members)
        spans_ = [span for span, _ in members]
        for (s1, e1), (s2, e2) in zip(spans_, spans_[1:]):
            if e1 > s2:
                return None
        removed = sum(e - s for s, e in spans_)
        if n - removed < config.min_remaining_tokens:
            return None
        attrs = tuple((parse.tokens[h].form.lower(),) for _, h in members)
        toks: list[str] = []
        prev = 0
        for s, e in spans_:
            toks.extend(caption.tokens[prev:s])
            prev = e
        toks.extend(caption.tokens[prev:])
        return Degradation(attrs, tuple(spans_), TokenSeq(tuple(toks), caption.mode))

    results: list[Degradation] = []
    for span, head in large:
        r = make_result([(span, head)])
        if r is not None:
            results.append(r)

    by_parent: dict[int, list[tuple[tuple[int, int], int]]] = defaultdict(list)
    for span, head in small:
        by_parent[parse.tokens[head].head].append((span, head))
    for parent in sorted(by_parent):
        members = by_parent[parent]
        if len(members) >= 2:
            r = make_result(members)
            if r is not None:
                results.append(r)
            continue
        # a lone small branch joins the first large sibling, if any
        sibling = next(
            (
                (span, head)
                for span, head in large
                if parse.tokens[head].head == parent
            ),
            None,
        )
        r = make_result(members + ([sibling] if sibling else []))
        if r is not None:
            results.append(r)

    results.sort(key=lambda d: d.removed_spans)
    return results


def _contains_phrase(hay: tuple[str, ...], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    return any(hay[i : i + n] == phrase for i in range(len(hay) - n + 1))


def _contains_all_attrs(cap: TokenSeq, attrs) -> bool:
    hay = normalized_tokens(cap)
    return all(_contains_phrase(hay, tuple(p)) for p in attrs)


def _contains_any_attr(cap: TokenSeq, attrs) -> bool:
    hay = normalized_tokens(cap)
    return any(_contains_phrase(hay, tuple(p)) for p in attrs)


def make_attribute_samples(
    degradations: list[Degradation],
    group: CaptionGroup,
    caption_index: int,
    config: ConstructionConfig | None = None,
) -> list[EditSample]:
    """Turn degradations of one caption into edit samples.

    Direct: del-with-positions (spans recorded, payload = removed
    content) and del-with-attributes.  Reversed: add-with-positions+
    attributes (gap indexes into the edited caption, payload = removed
    content) and add-with-attributes.  Position-free variants are
    re-targeted to another caption of the same video when one satisfies
    the attribute and length constraints; otherwise they fall back to
    the degraded/original pair.
    """
    config = config or ConstructionConfig()
    original = group.captions[caption_index]
    others = [
        cap for i, cap in enumerate(group.captions) if i != caption_index
    ]
    out: list[EditSample] = []
    common = dict(id="", video_id=group.video_id, mode=group.mode)

    for deg in degradations:
        payload = tuple(original.tokens[s:e] for s, e in deg.removed_spans)
        out.append(
            EditSample(
                command=Command(Operation.DEL, deg.removed_spans),
                reference=original,
                ground_truth=deg.edited,
                provenance=Provenance.DEGRADATION,
                payload=payload,
                **common,
            )
        )

        # del by attribute: the ground truth must not contain the attributes
        del_target = next(
            (
                cap
                for cap in sorted(others, key=lambda c: (abs(len(c) - len(deg.edited)),))
                if len(cap) < len(original) and not _contains_any_attr(cap, deg.attributes)
            ),
            None,
        )
        if del_target is not None:
            out.append(
                EditSample(
                    command=Command(Operation.DEL, None, deg.attributes),
                    reference=original,
                    ground_truth=del_target,
                    provenance=Provenance.RELAXATION,
                    **common,
                )
            )
        elif not _contains_any_attr(deg.edited, deg.attributes):
            out.append(
                EditSample(
                    command=Command(Operation.DEL, None, deg.attributes),
                    reference=original,
                    ground_truth=deg.edited,
                    provenance=Provenance.DEGRADATION,
                    **common,
                )
            )

        # reversal: add the removed content back at recorded gaps
        gaps = []
        removed_before = 0
        for s, e in deg.removed_spans:
            gaps.append(s - removed_before)
            removed_before += e - s
        out.append(
            EditSample(
                command=Command(Operation.ADD, tuple(gaps), deg.attributes),
                reference=deg.edited,
                ground_truth=original,
                provenance=Provenance.REVERSAL,
                payload=payload,
                **common,
            )
        )

        # add by attribute: the ground truth must contain the attributes
        add_target = next(
            (
                cap
                for cap in sorted(others, key=lambda c: (abs(len(c) - len(original)),))
                if len(cap) > len(deg.edited) and _contains_all_attrs(cap, deg.attributes)
            ),
            None,
        )
        if add_target is not None:
            out.append(
                EditSample(
                    command=Command(Operation.ADD, None, deg.attributes),
                    reference=deg.edited,
                    ground_truth=add_target,
                    provenance=Provenance.RELAXATION,
                    **common,
                )
            )
        else:
            out.append(
                EditSample(
                    command=Command(Operation.ADD, None, deg.attributes),
                    reference=deg.edited,
                    ground_truth=original,
                    provenance=Provenance.REVERSAL,
                    **common,
                )
            )
    return out


def claim_kinds(sample: EditSample, config: ConstructionConfig) -> set[CommandKind]:
    """Kinds the sample can be re-assigned to (its own plus coarser
    variants whose invariants it satisfies)."""
    k = kind(sample.command)
    out = {k}
    add_diff = len(sample.ground_truth) - len(sample.reference)
    del_diff = -add_diff
    if k is CommandKind.ADD_POS_ATTR:
        out |= {CommandKind.ADD_POS, CommandKind.ADD_ATTR}
        if add_diff > config.min_length_diff:
            out.add(CommandKind.ADD_LEN)
    elif k in (CommandKind.ADD_POS, CommandKind.ADD_ATTR):
        if add_diff > config.min_length_diff:
            out.add(CommandKind.ADD_LEN)
    elif k in (CommandKind.DEL_POS, CommandKind.DEL_ATTR):
        if del_diff > config.min_length_diff:
            out.add(CommandKind.DEL_LEN)
    return out


def _reassign(sample: EditSample, target: CommandKind) -> EditSample:
    cmd = sample.command
    if target is CommandKind.ADD_POS:
        new_cmd = Command(Operation.ADD, cmd.positions, None)
        return replace(sample, command=new_cmd)
    if target is CommandKind.ADD_ATTR:
        new_cmd = Command(Operation.ADD, None, cmd.attributes)
        return replace(sample, command=new_cmd, payload=None)
    if target is CommandKind.ADD_LEN:
        return replace(sample, command=Command(Operation.ADD), payload=None)
    if target is CommandKind.DEL_LEN:
        return replace(sample, command=Command(Operation.DEL), payload=None)
    raise ValueError(f"cannot reassign to {target}")


def filter_and_balance(
    samples: list[EditSample],
    config: ConstructionConfig | None = None,
    seed: int = 0,
) -> list[EditSample]:
    """Quality filters, then per-kind volume balancing.

    Filters drop samples whose ingested perplexity exceeds the
    configured threshold (absent values pass) or whose reference/truth
    edit distance exceeds the bound.  Balancing starts from each
    sample's own (finest) kind and moves samples from over- to
    under-populated kinds along their claimable set; moves are chosen
    with the seeded RNG, so identical inputs and seed give identical
    output.
    """
    config = config or ConstructionConfig()
    rng = random.Random(seed)

    kept = []
    for s in samples:
        if config.ppl_threshold is not None and s.ppl is not None and s.ppl > config.ppl_threshold:
            continue
        if config.max_edit_distance is not None:
            dist = text_mod.edit_distance(s.reference, s.ground_truth)
            if dist > config.max_edit_distance:
                continue
        kept.append(s)

    pools: dict[CommandKind, list[EditSample]] = {k: [] for k in CommandKind}
    for s in kept:
        pools[kind(s.command)].append(s)

    order = {k: i for i, k in enumerate(CommandKind)}
    while True:
        moved = False
        counts = {k: len(v) for k, v in pools.items()}
        for recipient in sorted(CommandKind, key=lambda k: (counts[k], order[k])):
            donors = sorted(
                CommandKind, key=lambda k: (-counts[k], order[k])
            )
            for donor in donors:
                if counts[donor] - counts[recipient] <= config.balance_tolerance:
                    break
                if donor is recipient:
                    continue
                movable = [
                    i
                    for i, s in enumerate(pools[donor])
                    if recipient in claim_kinds(s, config)
                ]
                if not movable:
                    continue
                idx = movable[rng.randrange(len(movable))]
                sample = pools[donor].pop(idx)
                pools[recipient].append(_reassign(sample, recipient))
                moved = True
                break
            if moved:
                break
        if not moved:
            break

    if config.max_per_kind is not None:
        for k in CommandKind:
            if len(pools[k]) > config.max_per_kind:
                keep_idx = sorted(
                    rng.sample(range(len(pools[k])), config.max_per_kind)
                )
                pools[k] = [pools[k][i] for i in keep_idx]

    return [s for k in KIND_ORDER for s in pools[k]]


@dataclass(frozen=True)
class StatRecord:
    count: int
    mean_ref_len: float
    mean_gt_len: float
    mean_edit_distance: float
    vocabulary: int
    per_kind: dict

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "mean_ref_len": self.mean_ref_len,
            "mean_gt_len": self.mean_gt_len,
            "mean_edit_distance": self.mean_edit_distance,
            "vocabulary": self.vocabulary,
            "per_kind": dict(self.per_kind),
        }


def corpus_stats(samples: list[EditSample]) -> StatRecord:
    """Corpus-level descriptive statistics.

    Lengths and edit distances are token-level over normalized tokens;
    vocabulary counts distinct normalized tokens over references and
    ground truths."""
    if not samples:
        raise ValueError("empty corpus")
    vocab = set()
    ref_lens = []
    gt_lens = []
    dists = []
    per_kind: Counter = Counter()
    for s in samples:
        ref_n = normalized_tokens(s.reference)
        gt_n = normalized_tokens(s.ground_truth)
        vocab.update(ref_n)
        vocab.update(gt_n)
        ref_lens.append(len(ref_n))
        gt_lens.append(len(gt_n))
        dists.append(kernels.edit_distance(ref_n, gt_n))
        per_kind[kind(s.command).value] += 1
    n = len(samples)
    return StatRecord(
        count=n,
        mean_ref_len=math.fsum(ref_lens) / n,
        mean_gt_len=math.fsum(gt_lens) / n,
        mean_edit_distance=math.fsum(dists) / n,
        vocabulary=len(vocab),
        per_kind={k: per_kind[k] for k in sorted(per_kind)},
    )


def split_by_video(
    samples: list[EditSample],
    mapping: dict[str, str] | None = None,
    ratios: tuple[float, float, float] = (0.7, 0.1, 0.2),
    seed: int = 0,
) -> dict[str, list[EditSample]]:
    """Partition samples so that no video id crosses partitions.

    Either an explicit video->partition mapping or (train, val, test)
    ratios with a seed; ratio splits allocate whole videos by largest
    remainder after a seeded shuffle."""
    parts = ("train", "val", "test")
    if mapping is not None:
        for s in samples:
            if s.video_id not in mapping:
                raise DatasetError(f"video {s.video_id!r} missing from the split mapping")
            if mapping[s.video_id] not in parts:
                raise DatasetError(
                    f"video {s.video_id!r} mapped to unknown partition {mapping[s.video_id]!r}"
                )
        assign = mapping
    else:
        if len(ratios) != 3 or any(r < 0 for r in ratios) or not math.isclose(sum(ratios), 1.0):
            raise ValueError("ratios must be three non-negative numbers summing to 1")
        videos = sorted({s.video_id for s in samples})
        rng = random.Random(seed)
        rng.shuffle(videos)
        n = len(videos)
        exact = [r * n for r in ratios]
        counts = [int(x) for x in exact]
        while sum(counts) < n:
            rems = [e - c for e, c in zip(exact, counts)]
            counts[rems.index(max(rems))] += 1
        assign = {}
        start = 0
        for part, cnt in zip(parts, counts):
            for vid in videos[start : start + cnt]:
                assign[vid] = part
            start += cnt
    out: dict[str, list[EditSample]] = {p: [] for p in parts}
    for s in samples:
        out[assign[s.video_id]].append(s)
    return out


def assign_ids(samples: list[EditSample]) -> list[EditSample]:
    """Stable unique ids in corpus order."""
    return [replace(s, id=f"s{i:06d}") for i, s in enumerate(samples)]


def construct_corpus(
    groups: list[CaptionGroup],
    parses: dict[tuple[str, int], ParseAnnotation] | None = None,
    config: ConstructionConfig | None = None,
    seed: int = 0,
    neighbors: dict[str, list[str]] | None = None,
    ppl: dict[tuple[str, str], float] | None = None,
) -> list[EditSample]:
    """Full pipeline: build all sample families, attach perplexities,
    filter, balance, and assign ids.

    parses maps (video_id, caption_index) to annotations; ppl maps
    (video_id, detokenized caption) to ingested perplexities.
    """
    config = config or ConstructionConfig()
    parses = parses or {}
    samples: list[EditSample] = []
    for group in sorted(groups, key=lambda g: g.video_id):
        samples.extend(build_add_length(group, config.min_length_diff))
        for ci in range(len(group.captions)):
            ann = parses.get((group.video_id, ci))
            if ann is None:
                continue
            degs = degrade(group.captions[ci], ann, config)
            samples.extend(make_attribute_samples(degs, group, ci, config))
    samples.extend(
        build_del_length(
            groups, config.min_length_diff, config.similarity_threshold, neighbors
        )
    )
    if ppl:
        samples = [
            replace(s, ppl=ppl.get((s.video_id, text_mod.detokenize(s.ground_truth)), s.ppl))
            for s in samples
        ]
    samples = filter_and_balance(samples, config, seed)
    return assign_ids(samples)
