# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled radix-q character-transform kernel.

Same contract as lfwp._vc_py.vc_transform; see that module for the layout.
"""

import numpy as np

cimport numpy as cnp

IMPL = "cython"


def vc_transform(arr, int q, int L, stage):
    a = np.ascontiguousarray(arr, dtype=np.int64)
    if L == 0:
        return a.copy()
    st = np.ascontiguousarray(stage, dtype=np.int64)

    cdef cnp.int64_t[:, ::1] cur = a.copy()
    cdef cnp.int64_t[:, ::1] nxt = np.empty_like(a)
    cdef cnp.int64_t[:, :, :, ::1] s = st

    cdef Py_ssize_t M = a.shape[0]
    cdef Py_ssize_t W = a.shape[1]
    cdef Py_ssize_t ax, pre, post, ai, bi, base, w, d, i, j
    cdef Py_ssize_t row_in, row_out, m, r, t, n
    cdef cnp.int64_t acc

    pre = 1
    for ax in range(L):
        post = M // (pre * q)
        for ai in range(pre):
            for bi in range(post):
                base = ai * q * post + bi
                for w in range(q):
                    row_out = base + w * post
                    for i in range(W):
                        acc = 0
                        for d in range(q):
                            row_in = base + d * post
                            for j in range(W):
                                acc += s[w, d, i, j] * cur[row_in, j]
                        nxt[row_out, i] = acc
        cur, nxt = nxt, cur
        pre *= q

    out = np.empty_like(a)
    cdef cnp.int64_t[:, ::1] o = out
    for m in range(M):
        r = 0
        t = m
        for n in range(L):
            r = r * q + (t % q)
            t //= q
        for i in range(W):
            o[r, i] = cur[m, i]
    return out
