"""Line-delimited JSON dataset/prediction records and annotation readers.

Dataset records carry one editing quadruple each:

    {"id": ..., "video_id": ..., "lang": "en-word"|"zh-char",
     "command": {"op": "add"|"del", "positions": [...], "attributes": [...]},
     "reference": "...", "ground_truth": "...",
     "payload": [...], "aux": {"ppl": ..., "emscore": ...},
     "provenance": "..."}

positions are gap indexes for add and [start, end) pairs for del;
attributes and payload spans are plain strings tokenized by the
record's language mode.  Optional fields are omitted when absent, and
emitted files re-read losslessly (write -> read -> write is
byte-stable).  Errors name the file and line.
"""

from __future__ import annotations

import json
from typing import Iterable, TextIO

from capedit.commands import Command, Operation
from capedit.construction import (
    CaptionGroup,
    DepToken,
    EditSample,
    Provenance,
    SrlFrame,
)
from capedit.errors import CapeditError, DatasetError
from capedit.text import LanguageMode, TokenSeq, detokenize, tokenize


def _iter_json_lines(path: str):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield lineno, json.loads(line)
            except json.JSONDecodeError as exc:
                raise DatasetError(f"{path}:{lineno}: invalid JSON ({exc})") from exc


def _require(record: dict, key: str, path: str, lineno: int):
    if key not in record:
        raise DatasetError(f"{path}:{lineno}: missing field {key!r}")
    return record[key]


def _command_from_wire(data: dict, op_required: bool, path: str, lineno: int, mode: LanguageMode) -> Command:
    try:
        op = Operation(data["op"])
    except (KeyError, ValueError):
        raise DatasetError(f"{path}:{lineno}: bad command operation") from None
    positions = data.get("positions")
    if positions is not None:
        if op is Operation.ADD:
            positions = tuple(int(p) for p in positions)
        else:
            positions = tuple((int(s), int(e)) for s, e in positions)
    attributes = data.get("attributes")
    if attributes is not None:
        attributes = tuple(tuple(tokenize(a, mode).tokens) for a in attributes)
    try:
        return Command(op, positions, attributes)
    except CapeditError as exc:
        raise DatasetError(f"{path}:{lineno}: {exc}") from exc


def _command_to_wire(cmd: Command, mode: LanguageMode) -> dict:
    out: dict = {"op": cmd.op.value}
    if cmd.positions is not None:
        if cmd.op is Operation.ADD:
            out["positions"] = list(cmd.positions)
        else:
            out["positions"] = [[s, e] for s, e in cmd.positions]
    if cmd.attributes is not None:
        out["attributes"] = [
            detokenize(TokenSeq(p, mode)) for p in cmd.attributes
        ]
    return out


def sample_from_wire(record: dict, path: str = "<memory>", lineno: int = 0) -> EditSample:
    rid = str(_require(record, "id", path, lineno))
    video_id = str(_require(record, "video_id", path, lineno))
    try:
        mode = LanguageMode.from_wire(_require(record, "lang", path, lineno))
    except ValueError as exc:
        raise DatasetError(f"{path}:{lineno}: {exc}") from exc
    cmd = _command_from_wire(
        _require(record, "command", path, lineno), True, path, lineno, mode
    )
    reference = tokenize(_require(record, "reference", path, lineno), mode)
    ground_truth = tokenize(_require(record, "ground_truth", path, lineno), mode)
    payload = record.get("payload")
    if payload is not None:
        payload = tuple(tuple(tokenize(span, mode).tokens) for span in payload)
    aux = record.get("aux") or {}
    provenance = Provenance(record["provenance"]) if "provenance" in record else (
        Provenance.DEGRADATION if payload is not None and cmd.op is Operation.DEL
        else Provenance.REVERSAL if payload is not None
        else Provenance.LENGTH_PAIR
    )
    try:
        return EditSample(
            id=rid,
            video_id=video_id,
            mode=mode,
            command=cmd,
            reference=reference,
            ground_truth=ground_truth,
            provenance=provenance,
            payload=payload,
            ppl=float(aux["ppl"]) if "ppl" in aux and aux["ppl"] is not None else None,
            emscore=float(aux["emscore"]) if "emscore" in aux and aux["emscore"] is not None else None,
        )
    except (ValueError, CapeditError) as exc:
        raise DatasetError(f"{path}:{lineno}: {exc}") from exc


def sample_to_wire(sample: EditSample) -> dict:
    out: dict = {
        "id": sample.id,
        "video_id": sample.video_id,
        "lang": sample.mode.value,
        "command": _command_to_wire(sample.command, sample.mode),
        "reference": detokenize(sample.reference),
        "ground_truth": detokenize(sample.ground_truth),
    }
    if sample.payload is not None:
        out["payload"] = [
            detokenize(TokenSeq(span, sample.mode)) for span in sample.payload
        ]
    aux = {}
    if sample.ppl is not None:
        aux["ppl"] = sample.ppl
    if sample.emscore is not None:
        aux["emscore"] = sample.emscore
    if aux:
        out["aux"] = aux
    out["provenance"] = sample.provenance.value
    return out


def read_dataset(path: str) -> list[EditSample]:
    samples = []
    seen = set()
    for lineno, record in _iter_json_lines(path):
        sample = sample_from_wire(record, path, lineno)
        if sample.id in seen:
            raise DatasetError(f"{path}:{lineno}: duplicate sample id {sample.id!r}")
        seen.add(sample.id)
        samples.append(sample)
    return samples


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False)


def write_dataset(path: str, samples: Iterable[EditSample]) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for sample in samples:
            fh.write(_dump(sample_to_wire(sample)) + "\n")


def read_predictions(path: str) -> dict[str, str]:
    """Prediction records: {"id": ..., "hypothesis": "..."}."""
    out: dict[str, str] = {}
    for lineno, record in _iter_json_lines(path):
        rid = str(_require(record, "id", path, lineno))
        hyp = _require(record, "hypothesis", path, lineno)
        if rid in out:
            raise DatasetError(f"{path}:{lineno}: duplicate prediction id {rid!r}")
        out[rid] = str(hyp)
    return out


def write_predictions(path_or_fh, records: Iterable[tuple[str, str]]) -> None:
    def _write(fh: TextIO) -> None:
        for rid, hyp in records:
            fh.write(_dump({"id": rid, "hypothesis": hyp}) + "\n")

    if isinstance(path_or_fh, str):
        with open(path_or_fh, "w", encoding="utf-8") as fh:
            _write(fh)
    else:
        _write(path_or_fh)


def read_captions(path: str) -> list[CaptionGroup]:
    """Caption pools: {"video_id": ..., "lang": ..., "captions": [...]}."""
    groups = []
    seen = set()
    for lineno, record in _iter_json_lines(path):
        vid = str(_require(record, "video_id", path, lineno))
        if vid in seen:
            raise DatasetError(f"{path}:{lineno}: duplicate video id {vid!r}")
        seen.add(vid)
        try:
            mode = LanguageMode.from_wire(_require(record, "lang", path, lineno))
        except ValueError as exc:
            raise DatasetError(f"{path}:{lineno}: {exc}") from exc
        captions = _require(record, "captions", path, lineno)
        if not captions:
            raise DatasetError(f"{path}:{lineno}: empty caption list")
        groups.append(
            CaptionGroup(vid, tuple(tokenize(c, mode) for c in captions))
        )
    return groups


def read_conllu(path: str) -> dict[str, tuple[DepToken, ...]]:
    """CoNLL-U sentences keyed by their sent_id comment.

    Columns used: FORM, UPOS, HEAD (1-based, 0 = root), DEPREL.
    sent_id is expected to be "<video_id>#<caption_index>".
    """
    out: dict[str, tuple[DepToken, ...]] = {}
    sent_id = None
    tokens: list[DepToken] = []

    def flush(lineno: int) -> None:
        nonlocal sent_id, tokens
        if not tokens:
            sent_id = None
            return
        if sent_id is None:
            raise DatasetError(f"{path}:{lineno}: sentence without a sent_id comment")
        if sent_id in out:
            raise DatasetError(f"{path}:{lineno}: duplicate sent_id {sent_id!r}")
        out[sent_id] = tuple(tokens)
        sent_id = None
        tokens = []

    with open(path, encoding="utf-8") as fh:
        lineno = 0
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                flush(lineno)
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("sent_id"):
                    _, _, value = body.partition("=")
                    sent_id = value.strip()
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise DatasetError(f"{path}:{lineno}: expected 10 tab-separated columns")
            tok_id, form, _, upos, _, _, head, deprel = cols[:8]
            if "-" in tok_id or "." in tok_id:
                continue  # multiword/empty nodes are not used
            try:
                head_idx = int(head) - 1
            except ValueError:
                raise DatasetError(f"{path}:{lineno}: bad HEAD value {head!r}") from None
            tokens.append(DepToken(form, upos, head_idx, deprel.lower()))
        flush(lineno + 1)
    return out


def read_srl(path: str) -> dict[str, tuple[SrlFrame, ...]]:
    """SRL frames: {"caption_id": ..., "predicate": int,
    "arguments": [{"label": ..., "start": int, "end": int}]}."""
    out: dict[str, list[SrlFrame]] = {}
    for lineno, record in _iter_json_lines(path):
        cid = str(_require(record, "caption_id", path, lineno))
        predicate = int(_require(record, "predicate", path, lineno))
        args = []
        for arg in _require(record, "arguments", path, lineno):
            args.append((str(arg["label"]), int(arg["start"]), int(arg["end"])))
        out.setdefault(cid, []).append(SrlFrame(predicate, tuple(args)))
    return {k: tuple(v) for k, v in out.items()}


def read_neighbors(path: str) -> dict[str, list[str]]:
    """Precomputed video similarity lists:
    {"video_id": ..., "neighbors": [...]}."""
    out: dict[str, list[str]] = {}
    for lineno, record in _iter_json_lines(path):
        vid = str(_require(record, "video_id", path, lineno))
        out[vid] = [str(v) for v in _require(record, "neighbors", path, lineno)]
    return out


def read_ppl(path: str) -> dict[str, float]:
    """Per-caption perplexities: {"caption_id": ..., "ppl": float}."""
    out: dict[str, float] = {}
    for lineno, record in _iter_json_lines(path):
        cid = str(_require(record, "caption_id", path, lineno))
        out[cid] = float(_require(record, "ppl", path, lineno))
    return out
