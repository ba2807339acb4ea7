"""Pure-Python dynamic-programming kernels.

Mirror of the compiled extension in _speedups.pyx; the two must stay
behaviourally identical.  All functions take integer-id sequences, with
-1 reserved for mask slots in the aligner.
"""

from __future__ import annotations

MASK = -1

# op codes shared with the compiled backend
OP_MATCH = 0
OP_SUB = 1
OP_DEL = 2
OP_INS = 3
OP_MASK = 4


def levenshtein(a: list[int], b: list[int]) -> int:
    """Unit-cost edit distance between two id sequences."""
    if len(a) < len(b):
        a, b = b, a
    m = len(b)
    prev = list(range(m + 1))
    cur = [0] * (m + 1)
    for i in range(1, len(a) + 1):
        ai = a[i - 1]
        cur[0] = i
        for j in range(1, m + 1):
            best = prev[j - 1] + (ai != b[j - 1])
            if prev[j] + 1 < best:
                best = prev[j] + 1
            if cur[j - 1] + 1 < best:
                best = cur[j - 1] + 1
            cur[j] = best
        prev, cur = cur, prev
    return prev[m]


def lcs_length(a: list[int], b: list[int]) -> int:
    """Length of the longest common subsequence of two id sequences."""
    if len(a) < len(b):
        a, b = b, a
    m = len(b)
    prev = [0] * (m + 1)
    cur = [0] * (m + 1)
    for i in range(1, len(a) + 1):
        ai = a[i - 1]
        for j in range(1, m + 1):
            if ai == b[j - 1]:
                cur[j] = prev[j - 1] + 1
            else:
                cur[j] = prev[j] if prev[j] >= cur[j - 1] else cur[j - 1]
        prev, cur = cur, prev
        cur[0] = 0
    return prev[m]


def dsa(x: list[int], y: list[int]) -> tuple[int, list[tuple]]:
    """Align a mask-bearing reference x against a hypothesis y.

    Masks (id -1) absorb a contiguous, possibly empty run of hypothesis
    tokens at zero cost; match costs 0, substitution / deletion /
    insertion cost 1.  Returns (cost, ops) with ops in forward order:
    (OP_MATCH, i, j), (OP_SUB, i, j), (OP_DEL, i), (OP_INS, j),
    (OP_MASK, i, js, je) meaning the mask at x[i] absorbed y[js:je].

    Tie-break among minimum-cost alignments, applied greedily from the
    left: longest mask absorption first, then match, substitution,
    deletion, insertion.
    """
    n, m = len(x), len(y)
    w = m + 1
    # suffix costs: S[i*w + j] = min cost aligning x[i:] with y[j:]
    S = [0] * ((n + 1) * w)
    base = n * w
    for j in range(m + 1):
        S[base + j] = m - j
    for i in range(n - 1, -1, -1):
        xi = x[i]
        row = i * w
        nxt = row + w
        if xi == MASK:
            S[row + m] = S[nxt + m]
            for j in range(m - 1, -1, -1):
                a = S[nxt + j]
                b = S[row + j + 1]
                S[row + j] = a if a < b else b
        else:
            S[row + m] = S[nxt + m] + 1
            for j in range(m - 1, -1, -1):
                best = S[nxt + j + 1] + (xi != y[j])
                alt = S[nxt + j] + 1
                if alt < best:
                    best = alt
                alt = S[row + j + 1] + 1
                if alt < best:
                    best = alt
                S[row + j] = best

    ops: list[tuple] = []
    i = j = 0
    while i < n or j < m:
        cur = S[i * w + j]
        if i < n and x[i] == MASK:
            nxt = (i + 1) * w
            for k in range(m - j, -1, -1):
                if S[nxt + j + k] == cur:
                    ops.append((OP_MASK, i, j, j + k))
                    i += 1
                    j += k
                    break
            continue
        if i < n and j < m and x[i] == y[j] and S[(i + 1) * w + j + 1] == cur:
            ops.append((OP_MATCH, i, j))
            i += 1
            j += 1
            continue
        if i < n and j < m and S[(i + 1) * w + j + 1] + 1 == cur:
            ops.append((OP_SUB, i, j))
            i += 1
            j += 1
            continue
        if i < n and S[(i + 1) * w + j] + 1 == cur:
            ops.append((OP_DEL, i))
            i += 1
            continue
        ops.append((OP_INS, j))
        j += 1
    return S[0], ops
