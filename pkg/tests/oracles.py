"""Independent reference implementations used only by the tests.

These deliberately avoid the library's code paths: plain recursion for
edit distance, subsequence enumeration for LCS, exhaustive monotone
alignment enumeration (iterative deepening) for the aligner, and a
list-based multiset calculator for SARI.
"""

from __future__ import annotations


def edit_distance_recursive(a, b) -> int:
    """Unit-cost edit distance by plain recursion, no memoization."""

    def rec(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        best = rec(i + 1, j + 1) + (a[i] != b[j])
        d = rec(i + 1, j) + 1
        if d < best:
            best = d
        ins = rec(i, j + 1) + 1
        if ins < best:
            best = ins
        return best

    return rec(0, 0)


def lcs_enumeration(a, b) -> int:
    """LCS length by enumerating every subsequence of the shorter side."""
    if len(a) > len(b):
        a, b = b, a
    best = 0
    for mask in range(1 << len(a)):
        sub = [a[i] for i in range(len(a)) if mask >> i & 1]
        if len(sub) <= best:
            continue
        it = iter(b)
        if all(tok in it for tok in sub):
            best = len(sub)
    return best


def align_oracle(x, y):
    """Best monotone alignment of x (None = mask slot) against y.

    Enumerates every monotone alignment by iterative deepening on the
    total cost, so only minimum-cost alignments survive, then picks the
    tie-break winner: the alignment whose per-step rank sequence is
    lexicographically smallest, with ranks (0, skipped) for a mask
    absorption (longer runs first), then match 1, substitution 2,
    deletion 3, insertion 4, read from the left.

    Returns (cost, mask_spans, matched_pairs).
    """
    n, m = len(x), len(y)

    def search(bound: int):
        found = []
        ranks: list = []
        spans: list = []
        pairs: list = []

        def rec(i: int, j: int, cost: int) -> None:
            if i == n and j == m:
                found.append((tuple(ranks), tuple(spans), tuple(pairs)))
                return
            if i < n and x[i] is None:
                rem = m - j
                for k in range(rem + 1):
                    ranks.append((0, rem - k))
                    spans.append((j, j + k))
                    rec(i + 1, j + k, cost)
                    spans.pop()
                    ranks.pop()
                if j < m and cost + 1 <= bound:
                    ranks.append((4, 0))
                    rec(i, j + 1, cost + 1)
                    ranks.pop()
                return
            if i < n and j < m:
                if x[i] == y[j]:
                    ranks.append((1, 0))
                    pairs.append((i, j))
                    rec(i + 1, j + 1, cost)
                    pairs.pop()
                    ranks.pop()
                elif cost + 1 <= bound:
                    ranks.append((2, 0))
                    rec(i + 1, j + 1, cost + 1)
                    ranks.pop()
            if i < n and cost + 1 <= bound:
                ranks.append((3, 0))
                rec(i + 1, j, cost + 1)
                ranks.pop()
            if j < m and cost + 1 <= bound:
                ranks.append((4, 0))
                rec(i, j + 1, cost + 1)
                ranks.pop()

        rec(0, 0, 0)
        return found

    bound = 0
    while True:
        found = search(bound)
        if found:
            break
        bound += 1
        if bound > n + m + 1:
            raise AssertionError("alignment search failed to terminate")
    _, spans, pairs = min(found)
    return bound, spans, pairs


def _ngram_list(tokens, n: int) -> list:
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def _multiset_and(a: list, b: list) -> list:
    rest = list(b)
    out = []
    for item in a:
        if item in rest:
            out.append(item)
            rest.remove(item)
    return out


def _multiset_sub(a: list, b: list) -> list:
    out = list(a)
    for item in b:
        if item in out:
            out.remove(item)
    return out


def _f1(produced: list, expected: list) -> float:
    if not produced and not expected:
        return 1.0
    good = len(_multiset_and(produced, expected))
    precision = good / len(produced) if produced else 0.0
    recall = good / len(expected) if expected else 0.0
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def _precision(produced: list, expected: list) -> float:
    if not produced and not expected:
        return 1.0
    if not produced:
        return 0.0
    return len(_multiset_and(produced, expected)) / len(produced)


def sari_independent(source, hypothesis, truth) -> float:
    """List-based SARI mirror of the documented multiset semantics."""
    keep = delete = add = 0.0
    for n in range(1, 5):
        s = _ngram_list(source, n)
        c = _ngram_list(hypothesis, n)
        g = _ngram_list(truth, n)
        keep += _f1(_multiset_and(s, c), _multiset_and(s, g))
        delete += _precision(_multiset_sub(s, c), _multiset_sub(s, g))
        add += _f1(_multiset_sub(c, s), _multiset_sub(g, s))
    return (keep / 4.0 + delete / 4.0 + add / 4.0) / 3.0
