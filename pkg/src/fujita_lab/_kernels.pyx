# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference semantics.

Arithmetic is on C ``long long``.  Callers keep all inputs well inside the
64-bit range (box bounds and lattice entries are small integers).
"""

from array import array

from libc.stdlib cimport malloc, free


cdef long long[::1] _as_i64(seq):
    return array("q", seq)


def tuples_with_sum_at_most(weights, int length, long long bound):
    cdef long long[::1] w = _as_i64(weights)
    cdef Py_ssize_t m = w.shape[0]
    cdef Py_ssize_t i
    for i in range(m - 1):
        if w[i] > w[i + 1]:
            raise ValueError("weights must be sorted in non-decreasing order")
    if length <= 0:
        return [()] if bound >= 0 else []
    out = []
    if m == 0:
        return out

    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(length * sizeof(Py_ssize_t))
    cdef long long *partial = <long long *> malloc((length + 1) * sizeof(long long))
    if idx == NULL or partial == NULL:
        free(idx)
        free(partial)
        raise MemoryError()
    cdef int pos = 0
    cdef Py_ssize_t j
    cdef long long remaining
    try:
        partial[0] = 0
        idx[0] = 0
        while pos >= 0:
            j = idx[pos]
            remaining = length - pos
            if j >= m or partial[pos] + remaining * w[j] > bound:
                # exhausted this position: backtrack
                pos -= 1
                if pos >= 0:
                    idx[pos] += 1
                continue
            if remaining == 1:
                out.append(tuple([idx[i] for i in range(length)]))
                idx[pos] += 1
            else:
                partial[pos + 1] = partial[pos] + w[j]
                idx[pos + 1] = j
                pos += 1
    finally:
        free(idx)
        free(partial)
    return out


def first_failing_tuple(values, int length, offset):
    cdef Py_ssize_t m = len(values)
    cdef Py_ssize_t k = len(offset)
    cdef long long[::1] flat = _as_i64([v for row in values for v in row])
    cdef long long[::1] off = _as_i64(offset)
    cdef long long count = 0
    if length <= 0 or m == 0:
        return None, 0

    cdef Py_ssize_t *idx = <Py_ssize_t *> malloc(length * sizeof(Py_ssize_t))
    cdef long long *acc = <long long *> malloc(k * sizeof(long long))
    if idx == NULL or acc == NULL:
        free(idx)
        free(acc)
        raise MemoryError()
    cdef Py_ssize_t i, t, p
    cdef bint failed
    try:
        for i in range(length):
            idx[i] = 0
        while True:
            count += 1
            failed = False
            for t in range(k):
                acc[t] = off[t]
            for p in range(length):
                for t in range(k):
                    acc[t] += flat[idx[p] * k + t]
            for t in range(k):
                if acc[t] < 0:
                    failed = True
                    break
            if failed:
                return tuple([idx[i] for i in range(length)]), count
            # next non-decreasing index tuple
            p = length - 1
            while p >= 0 and idx[p] == m - 1:
                p -= 1
            if p < 0:
                break
            idx[p] += 1
            for i in range(p + 1, length):
                idx[i] = idx[p]
    finally:
        free(idx)
        free(acc)
    return None, count


def min_form_in_box(gram, functionals, long long bound):
    cdef Py_ssize_t r = len(gram)
    cdef Py_ssize_t nf = len(functionals)
    cdef long long[::1] g = _as_i64([v for row in gram for v in row])
    cdef long long[::1] f = _as_i64([v for row in functionals for v in row])
    if r == 0:
        return None

    cdef long long *x = <long long *> malloc(r * sizeof(long long))
    cdef long long *best_x = <long long *> malloc(r * sizeof(long long))
    if x == NULL or best_x == NULL:
        free(x)
        free(best_x)
        raise MemoryError()
    cdef Py_ssize_t i, j, t
    cdef long long q, s, best = 0
    cdef bint found = False, ok
    try:
        for i in range(r):
            x[i] = -bound
        while True:
            ok = True
            for t in range(nf):
                s = 0
                for i in range(r):
                    s += f[t * r + i] * x[i]
                if s <= 0:
                    ok = False
                    break
            if ok:
                q = 0
                for i in range(r):
                    if x[i] != 0:
                        s = 0
                        for j in range(r):
                            s += g[i * r + j] * x[j]
                        q += x[i] * s
                if q > 0 and (not found or q < best):
                    found = True
                    best = q
                    for i in range(r):
                        best_x[i] = x[i]
            # odometer step, last coordinate fastest (matches itertools.product)
            i = r - 1
            while i >= 0 and x[i] == bound:
                x[i] = -bound
                i -= 1
            if i < 0:
                break
            x[i] += 1
        if not found:
            return None
        return best, tuple([best_x[i] for i in range(r)])
    finally:
        free(x)
        free(best_x)
