# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled dynamic-programming kernels.

Behavioural twin of _kernels_py; see that module for the contract,
including the aligner's tie-break rules.
"""

from libc.stdlib cimport free, malloc

MASK = -1

OP_MATCH = 0
OP_SUB = 1
OP_DEL = 2
OP_INS = 3
OP_MASK = 4


cdef int* _to_c(list seq) except NULL:
    cdef Py_ssize_t n = len(seq)
    cdef int* out = <int*> malloc((n if n else 1) * sizeof(int))
    if out == NULL:
        raise MemoryError()
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = seq[i]
    return out


def levenshtein(list a, list b):
    cdef Py_ssize_t n = len(a), m = len(b)
    if n < m:
        a, b = b, a
        n, m = m, n
    cdef int* bb = _to_c(b)
    cdef int* prev = <int*> malloc((m + 1) * sizeof(int))
    cdef int* cur = <int*> malloc((m + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        free(bb); free(prev); free(cur)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int ai, best, alt
    cdef int* tmp
    try:
        for j in range(m + 1):
            prev[j] = <int> j
        for i in range(1, n + 1):
            ai = a[i - 1]
            cur[0] = <int> i
            for j in range(1, m + 1):
                best = prev[j - 1] + (1 if ai != bb[j - 1] else 0)
                alt = prev[j] + 1
                if alt < best:
                    best = alt
                alt = cur[j - 1] + 1
                if alt < best:
                    best = alt
                cur[j] = best
            tmp = prev; prev = cur; cur = tmp
        return prev[m]
    finally:
        free(bb); free(prev); free(cur)


def lcs_length(list a, list b):
    cdef Py_ssize_t n = len(a), m = len(b)
    if n < m:
        a, b = b, a
        n, m = m, n
    cdef int* bb = _to_c(b)
    cdef int* prev = <int*> malloc((m + 1) * sizeof(int))
    cdef int* cur = <int*> malloc((m + 1) * sizeof(int))
    if prev == NULL or cur == NULL:
        free(bb); free(prev); free(cur)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int ai
    cdef int* tmp
    try:
        for j in range(m + 1):
            prev[j] = 0
            cur[j] = 0
        for i in range(1, n + 1):
            ai = a[i - 1]
            for j in range(1, m + 1):
                if ai == bb[j - 1]:
                    cur[j] = prev[j - 1] + 1
                elif prev[j] >= cur[j - 1]:
                    cur[j] = prev[j]
                else:
                    cur[j] = cur[j - 1]
            tmp = prev; prev = cur; cur = tmp
            cur[0] = 0
        return prev[m]
    finally:
        free(bb); free(prev); free(cur)


def dsa(list x, list y):
    cdef Py_ssize_t n = len(x), m = len(y)
    cdef Py_ssize_t w = m + 1
    cdef int* xx = _to_c(x)
    cdef int* yy = _to_c(y)
    cdef int* S = <int*> malloc((n + 1) * w * sizeof(int))
    if S == NULL:
        free(xx); free(yy)
        raise MemoryError()
    cdef Py_ssize_t i, j, k, row, nxt
    cdef int xi, best, alt, cur
    cdef list ops = []
    try:
        for j in range(m + 1):
            S[n * w + j] = <int> (m - j)
        for i in range(n - 1, -1, -1):
            xi = xx[i]
            row = i * w
            nxt = row + w
            if xi == -1:
                S[row + m] = S[nxt + m]
                for j in range(m - 1, -1, -1):
                    best = S[nxt + j]
                    alt = S[row + j + 1]
                    S[row + j] = alt if alt < best else best
            else:
                S[row + m] = S[nxt + m] + 1
                for j in range(m - 1, -1, -1):
                    best = S[nxt + j + 1] + (1 if xi != yy[j] else 0)
                    alt = S[nxt + j] + 1
                    if alt < best:
                        best = alt
                    alt = S[row + j + 1] + 1
                    if alt < best:
                        best = alt
                    S[row + j] = best
        i = 0
        j = 0
        while i < n or j < m:
            cur = S[i * w + j]
            if i < n and xx[i] == -1:
                nxt = (i + 1) * w
                for k in range(m - j, -1, -1):
                    if S[nxt + j + k] == cur:
                        ops.append((OP_MASK, i, j, j + k))
                        i += 1
                        j += k
                        break
                continue
            if i < n and j < m and xx[i] == yy[j] and S[(i + 1) * w + j + 1] == cur:
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
    finally:
        free(xx); free(yy); free(S)
