"""Backend selection for the dynamic-programming kernels.

The compiled extension is preferred when importable; setting
CAPEDIT_PURE_PYTHON=1 forces the pure-Python fallback.  Callers pass
token sequences; interning to integer ids happens here so both backends
only ever compare ints.
"""

from __future__ import annotations

import os
from collections.abc import Sequence

from capedit import _kernels_py

if os.environ.get("CAPEDIT_PURE_PYTHON") == "1":
    _impl = _kernels_py
else:
    try:
        from capedit import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

OP_MATCH = _kernels_py.OP_MATCH
OP_SUB = _kernels_py.OP_SUB
OP_DEL = _kernels_py.OP_DEL
OP_INS = _kernels_py.OP_INS
OP_MASK = _kernels_py.OP_MASK


def backend() -> str:
    """Name of the active backend: 'compiled' or 'python'."""
    return "python" if _impl is _kernels_py else "compiled"


def _intern(a: Sequence[str], b: Sequence[str]) -> tuple[list[int], list[int]]:
    ids: dict[str, int] = {}
    ia = [ids.setdefault(t, len(ids)) for t in a]
    ib = [ids.setdefault(t, len(ids)) for t in b]
    return ia, ib


def edit_distance(a: Sequence[str], b: Sequence[str]) -> int:
    ia, ib = _intern(a, b)
    return _impl.levenshtein(ia, ib)


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    ia, ib = _intern(a, b)
    return _impl.lcs_length(ia, ib)


def dsa_ops(ref: Sequence[str | None], hyp: Sequence[str]) -> tuple[int, list[tuple]]:
    """Run the aligner; None entries in ref are mask slots.

    Returns (cost, ops); see _kernels_py.dsa for the op encoding.
    """
    ids: dict[str, int] = {}
    x = [_kernels_py.MASK if t is None else ids.setdefault(t, len(ids)) for t in ref]
    y = [ids.setdefault(t, len(ids)) for t in hyp]
    return _impl.dsa(x, y)
