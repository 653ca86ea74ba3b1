# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops. Must agree bit-for-bit with ``_fallback``."""

import numpy as np


def scan_strategies(int n, const long long[::1] alpha_masks, const long long[::1] beta_masks,
                    long long f_w, long long x_w, long long y_w,
                    long long start, long long stop):
    cdef long long full = (1LL << n) - 1
    cdef long long idx, a, b, s, value
    cdef long long best_value = 0, best_index = -1, counterexample = -1
    cdef long long cnt_a, cnt_b, a_all
    cdef Py_ssize_t k, na = alpha_masks.shape[0], nb = beta_masks.shape[0]
    with nogil:
        for idx in range(start, stop):
            a = idx & full
            b = idx >> n
            cnt_a = 0
            for k in range(na):
                s = alpha_masks[k]
                if (b & s) == s and (a | s) == full:
                    cnt_a += 1
            cnt_b = 0
            for k in range(nb):
                s = beta_masks[k]
                if (b & s) == 0 and (a | s) == full:
                    cnt_b += 1
            a_all = 1 if a == full else 0
            value = f_w * a_all - x_w * cnt_a - y_w * cnt_b
            if best_index < 0 or value > best_value:
                best_value = value
                best_index = idx
            if counterexample < 0 and a_all and cnt_a == 0 and cnt_b == 0:
                counterexample = idx
    return best_value, best_index, counterexample


def grid_argmax(const double[::1] cos_table, double f, double x, double y,
                int alpha, int beta, int row_start, int row_stop):
    cdef Py_ssize_t N = cos_table.shape[0]
    cdef Py_ssize_t shift = (beta * (N // 2)) % N
    cdef Py_ssize_t i, j
    cdef double v, best = 0.0
    cdef Py_ssize_t bi = -1, bj = -1
    with nogil:
        for i in range(row_start, row_stop):
            for j in range(N):
                v = (f * (1.0 + cos_table[i])
                     - x * (1.0 + cos_table[(i + alpha * j) % N])
                     - y * (1.0 + cos_table[(i + beta * j + shift) % N]))
                if bi < 0 or v > best:
                    best = v
                    bi = i
                    bj = j
    return best, bi, bj
