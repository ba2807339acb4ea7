"""Caption editing toolkit: triplet commands, control sequences,
mask-aware alignment, rule-based oracle editing, corpus construction,
and edit-aware evaluation."""

from capedit.alignment import AlignmentResult, dsa_align, mask_span_lengths
from capedit.commands import (
    Command,
    CommandKind,
    Operation,
    PositionedReference,
    kind,
    make_positioned_reference,
    parse,
    serialize,
)
from capedit.construction import (
    CaptionGroup,
    ConstructionConfig,
    EditSample,
    ParseAnnotation,
    Provenance,
    build_add_length,
    build_del_length,
    construct_corpus,
    corpus_stats,
    degrade,
    filter_and_balance,
    make_attribute_samples,
    split_by_video,
)
from capedit.editing import Session, oracle_apply, session_step
from capedit.errors import (
    CapeditError,
    CommandError,
    ControlFormatError,
    DatasetError,
    OracleError,
)
from capedit.metrics import (
    EvalConfig,
    EvalUnit,
    MetricReport,
    attr_acc,
    bleu4,
    evaluate_corpus,
    format_report_table,
    len_acc,
    pos_acc,
    rouge_l,
    sari,
)
from capedit.text import LanguageMode, TokenSeq, detokenize, edit_distance, lcs_length, ngrams, tokenize

__version__ = "0.1.0"

__all__ = [
    "AlignmentResult",
    "CaptionGroup",
    "CapeditError",
    "Command",
    "CommandError",
    "CommandKind",
    "ConstructionConfig",
    "ControlFormatError",
    "DatasetError",
    "EditSample",
    "EvalConfig",
    "EvalUnit",
    "LanguageMode",
    "MetricReport",
    "Operation",
    "OracleError",
    "ParseAnnotation",
    "PositionedReference",
    "Provenance",
    "Session",
    "TokenSeq",
    "attr_acc",
    "bleu4",
    "build_add_length",
    "build_del_length",
    "construct_corpus",
    "corpus_stats",
    "degrade",
    "detokenize",
    "dsa_align",
    "edit_distance",
    "evaluate_corpus",
    "filter_and_balance",
    "format_report_table",
    "kind",
    "lcs_length",
    "len_acc",
    "make_attribute_samples",
    "make_positioned_reference",
    "mask_span_lengths",
    "ngrams",
    "oracle_apply",
    "parse",
    "pos_acc",
    "rouge_l",
    "sari",
    "serialize",
    "session_step",
    "split_by_video",
    "tokenize",
]
