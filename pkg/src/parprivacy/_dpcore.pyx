# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled optimal-cut dynamic programming kernels.

Same contracts, index layouts, and tie-breaking as the pure-Python twins in
``_dppy``; see that module for the full description.
"""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int32_t, int64_t

cnp.import_array()


def dp2_avg(val_arr, rs_arr):
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] val = \
        np.ascontiguousarray(val_arr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] rs = \
        np.ascontiguousarray(rs_arr, dtype=np.int64)
    cdef Py_ssize_t n0 = val.shape[0], n1 = val.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] ph = \
        np.zeros((n0 + 1, n1 + 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] pv = \
        np.zeros((n0 + 1, n1 + 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] cost = \
        np.zeros(n0 * n0 * n1 * n1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1, mode="c"] choice = \
        np.full(n0 * n0 * n1 * n1, -1, dtype=np.int32)
    cdef int64_t[:, ::1] V = val
    cdef int64_t[:, ::1] R = rs
    cdef int64_t[:, ::1] PH = ph
    cdef int64_t[:, ::1] PV = pv
    cdef int64_t[::1] C = cost
    cdef int32_t[::1] CH = choice
    cdef Py_ssize_t i, j, l0, h0, l1, h1, len0, len1, c, idx, a, b, base0
    cdef int64_t hb, vb, best, v
    cdef int32_t pick
    cdef bint is_mono
    with nogil:
        for i in range(n0):
            for j in range(n1):
                hb = 1 if j + 1 < n1 and V[i, j] != V[i, j + 1] else 0
                vb = 1 if i + 1 < n0 and V[i, j] != V[i + 1, j] else 0
                PH[i + 1, j + 1] = PH[i + 1, j] + PH[i, j + 1] - PH[i, j] + hb
                PV[i + 1, j + 1] = PV[i + 1, j] + PV[i, j + 1] - PV[i, j] + vb
        for len0 in range(1, n0 + 1):
            for l0 in range(n0 - len0 + 1):
                h0 = l0 + len0 - 1
                base0 = (l0 * n0 + h0) * n1
                for len1 in range(1, n1 + 1):
                    for l1 in range(n1 - len1 + 1):
                        h1 = l1 + len1 - 1
                        idx = (base0 + l1) * n1 + h1
                        is_mono = True
                        if h1 > l1 and (PH[h0 + 1, h1] - PH[l0, h1]
                                        - PH[h0 + 1, l1] + PH[l0, l1]) != 0:
                            is_mono = False
                        if is_mono and h0 > l0 and (PV[h0, h1 + 1] - PV[l0, h1 + 1]
                                                    - PV[h0, l1] + PV[l0, l1]) != 0:
                            is_mono = False
                        if is_mono:
                            C[idx] = R[l0, l1]
                            continue
                        best = -1
                        pick = -1
                        for c in range(l0, h0):
                            v = (C[((l0 * n0 + c) * n1 + l1) * n1 + h1]
                                 + C[(((c + 1) * n0 + h0) * n1 + l1) * n1 + h1])
                            if best < 0 or v < best:
                                best = v
                                pick = <int32_t> c
                        for c in range(l1, h1):
                            v = C[(base0 + l1) * n1 + c] + C[(base0 + c + 1) * n1 + h1]
                            if best < 0 or v < best:
                                best = v
                                pick = <int32_t> (256 + c)
                        C[idx] = best
                        CH[idx] = pick
    cdef Py_ssize_t full = ((0 * n0 + n0 - 1) * n1 + 0) * n1 + n1 - 1
    return int(cost[full]), int(n0 * n1), choice


def dp2_worst(val_arr, rs_arr):
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] val = \
        np.ascontiguousarray(val_arr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] rs = \
        np.ascontiguousarray(rs_arr, dtype=np.int64)
    cdef Py_ssize_t n0 = val.shape[0], n1 = val.shape[1]
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] ph = \
        np.zeros((n0 + 1, n1 + 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] pv = \
        np.zeros((n0 + 1, n1 + 1), dtype=np.int64)
    cdef Py_ssize_t sz = n0 * n0 * n1 * n1
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] num = np.zeros(sz, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] den = np.ones(sz, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] rmax = np.zeros(sz, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1, mode="c"] choice = np.full(sz, -1, dtype=np.int32)
    cdef int64_t[:, ::1] V = val
    cdef int64_t[:, ::1] R = rs
    cdef int64_t[:, ::1] PH = ph
    cdef int64_t[:, ::1] PV = pv
    cdef int64_t[::1] NUM = num
    cdef int64_t[::1] DEN = den
    cdef int64_t[::1] RM = rmax
    cdef int32_t[::1] CH = choice
    cdef Py_ssize_t i, j, l0, h0, l1, h1, len0, len1, c, idx, a, b, base0
    cdef int64_t hb, vb, m, bn, bd, vn, vd
    cdef int32_t pick
    cdef bint is_mono
    with nogil:
        for i in range(n0):
            for j in range(n1):
                hb = 1 if j + 1 < n1 and V[i, j] != V[i, j + 1] else 0
                vb = 1 if i + 1 < n0 and V[i, j] != V[i + 1, j] else 0
                PH[i + 1, j + 1] = PH[i + 1, j] + PH[i, j + 1] - PH[i, j] + hb
                PV[i + 1, j + 1] = PV[i + 1, j] + PV[i, j + 1] - PV[i, j] + vb
        for len0 in range(1, n0 + 1):
            for l0 in range(n0 - len0 + 1):
                h0 = l0 + len0 - 1
                base0 = (l0 * n0 + h0) * n1
                for len1 in range(1, n1 + 1):
                    for l1 in range(n1 - len1 + 1):
                        h1 = l1 + len1 - 1
                        idx = (base0 + l1) * n1 + h1
                        if len0 == 1 and len1 == 1:
                            m = R[l0, l1]
                        elif len0 > 1:
                            m = RM[((l0 * n0 + h0 - 1) * n1 + l1) * n1 + h1]
                            if RM[((h0 * n0 + h0) * n1 + l1) * n1 + h1] > m:
                                m = RM[((h0 * n0 + h0) * n1 + l1) * n1 + h1]
                        else:
                            m = RM[(base0 + l1) * n1 + h1 - 1]
                            if RM[(base0 + h1) * n1 + h1] > m:
                                m = RM[(base0 + h1) * n1 + h1]
                        RM[idx] = m
                        is_mono = True
                        if h1 > l1 and (PH[h0 + 1, h1] - PH[l0, h1]
                                        - PH[h0 + 1, l1] + PH[l0, l1]) != 0:
                            is_mono = False
                        if is_mono and h0 > l0 and (PV[h0, h1 + 1] - PV[l0, h1 + 1]
                                                    - PV[h0, l1] + PV[l0, l1]) != 0:
                            is_mono = False
                        if is_mono:
                            NUM[idx] = m
                            DEN[idx] = len0 * len1
                            continue
                        bn = -1
                        bd = 1
                        pick = -1
                        for c in range(l0, h0):
                            a = ((l0 * n0 + c) * n1 + l1) * n1 + h1
                            b = (((c + 1) * n0 + h0) * n1 + l1) * n1 + h1
                            if NUM[a] * DEN[b] >= NUM[b] * DEN[a]:
                                vn = NUM[a]
                                vd = DEN[a]
                            else:
                                vn = NUM[b]
                                vd = DEN[b]
                            if bn < 0 or vn * bd < bn * vd:
                                bn = vn
                                bd = vd
                                pick = <int32_t> c
                        for c in range(l1, h1):
                            a = (base0 + l1) * n1 + c
                            b = (base0 + c + 1) * n1 + h1
                            if NUM[a] * DEN[b] >= NUM[b] * DEN[a]:
                                vn = NUM[a]
                                vd = DEN[a]
                            else:
                                vn = NUM[b]
                                vd = DEN[b]
                            if bn < 0 or vn * bd < bn * vd:
                                bn = vn
                                bd = vd
                                pick = <int32_t> (256 + c)
                        NUM[idx] = bn
                        DEN[idx] = bd
                        CH[idx] = pick
    cdef Py_ssize_t full = ((0 * n0 + n0 - 1) * n1 + 0) * n1 + n1 - 1
    return int(num[full]), int(den[full]), choice


def dp3_avg(val_arr, rs_arr):
    return _dp3(val_arr, rs_arr, 0)


def dp3_worst(val_arr, rs_arr):
    return _dp3(val_arr, rs_arr, 1)


def _dp3(val_arr, rs_arr, int worst):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] val = \
        np.ascontiguousarray(val_arr, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] rs = \
        np.ascontiguousarray(rs_arr, dtype=np.int64)
    cdef Py_ssize_t n = val.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] p0 = \
        np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] p1 = \
        np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] p2 = \
        np.zeros((n + 1, n + 1, n + 1), dtype=np.int64)
    cdef Py_ssize_t sz = n ** 6
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] num = np.zeros(sz, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] den = np.ones(sz, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1, mode="c"] rmax = np.zeros(sz, dtype=np.int64)
    cdef cnp.ndarray[cnp.int32_t, ndim=1, mode="c"] choice = np.full(sz, -1, dtype=np.int32)
    cdef int64_t[:, :, ::1] V = val
    cdef int64_t[:, :, ::1] R = rs
    cdef int64_t[:, :, ::1] P0 = p0
    cdef int64_t[:, :, ::1] P1 = p1
    cdef int64_t[:, :, ::1] P2 = p2
    cdef int64_t[::1] NUM = num
    cdef int64_t[::1] DEN = den
    cdef int64_t[::1] RM = rmax
    cdef int32_t[::1] CH = choice
    cdef Py_ssize_t i, j, l, l0, h0, l1, h1, l2, h2, len0, len1, len2, c, I, a, b
    cdef int64_t m, bn, bd, vn, vd, brk
    cdef int32_t pick
    cdef int axis
    cdef bint is_mono
    with nogil:
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    P0[i + 1, j + 1, l + 1] = 1 if i + 1 < n and V[i, j, l] != V[i + 1, j, l] else 0
                    P1[i + 1, j + 1, l + 1] = 1 if j + 1 < n and V[i, j, l] != V[i, j + 1, l] else 0
                    P2[i + 1, j + 1, l + 1] = 1 if l + 1 < n and V[i, j, l] != V[i, j, l + 1] else 0
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    P0[i, j, l] += (P0[i - 1, j, l] + P0[i, j - 1, l] + P0[i, j, l - 1]
                                    - P0[i - 1, j - 1, l] - P0[i - 1, j, l - 1]
                                    - P0[i, j - 1, l - 1] + P0[i - 1, j - 1, l - 1])
                    P1[i, j, l] += (P1[i - 1, j, l] + P1[i, j - 1, l] + P1[i, j, l - 1]
                                    - P1[i - 1, j - 1, l] - P1[i - 1, j, l - 1]
                                    - P1[i, j - 1, l - 1] + P1[i - 1, j - 1, l - 1])
                    P2[i, j, l] += (P2[i - 1, j, l] + P2[i, j - 1, l] + P2[i, j, l - 1]
                                    - P2[i - 1, j - 1, l] - P2[i - 1, j, l - 1]
                                    - P2[i, j - 1, l - 1] + P2[i - 1, j - 1, l - 1])
        for len0 in range(1, n + 1):
         for l0 in range(n - len0 + 1):
          h0 = l0 + len0 - 1
          for len1 in range(1, n + 1):
           for l1 in range(n - len1 + 1):
            h1 = l1 + len1 - 1
            for len2 in range(1, n + 1):
             for l2 in range(n - len2 + 1):
                h2 = l2 + len2 - 1
                I = (((((l0 * n + h0) * n + l1) * n + h1) * n + l2) * n + h2)
                if len0 == 1 and len1 == 1 and len2 == 1:
                    m = R[l0, l1, l2]
                elif len0 > 1:
                    m = RM[(((((l0 * n + h0 - 1) * n + l1) * n + h1) * n + l2) * n + h2)]
                    a = (((((h0 * n + h0) * n + l1) * n + h1) * n + l2) * n + h2)
                    if RM[a] > m:
                        m = RM[a]
                elif len1 > 1:
                    m = RM[(((((l0 * n + h0) * n + l1) * n + h1 - 1) * n + l2) * n + h2)]
                    a = (((((l0 * n + h0) * n + h1) * n + h1) * n + l2) * n + h2)
                    if RM[a] > m:
                        m = RM[a]
                else:
                    m = RM[I - 1]
                    a = (((((l0 * n + h0) * n + l1) * n + h1) * n + h2) * n + h2)
                    if RM[a] > m:
                        m = RM[a]
                RM[I] = m
                # breaks are attributed to the lower cell of each differing pair
                is_mono = True
                if h0 > l0:
                    brk = (P0[h0, h1 + 1, h2 + 1] - P0[l0, h1 + 1, h2 + 1]
                           - P0[h0, l1, h2 + 1] - P0[h0, h1 + 1, l2]
                           + P0[l0, l1, h2 + 1] + P0[l0, h1 + 1, l2]
                           + P0[h0, l1, l2] - P0[l0, l1, l2])
                    if brk != 0:
                        is_mono = False
                if is_mono and h1 > l1:
                    brk = (P1[h0 + 1, h1, h2 + 1] - P1[l0, h1, h2 + 1]
                           - P1[h0 + 1, l1, h2 + 1] - P1[h0 + 1, h1, l2]
                           + P1[l0, l1, h2 + 1] + P1[l0, h1, l2]
                           + P1[h0 + 1, l1, l2] - P1[l0, l1, l2])
                    if brk != 0:
                        is_mono = False
                if is_mono and h2 > l2:
                    brk = (P2[h0 + 1, h1 + 1, h2] - P2[l0, h1 + 1, h2]
                           - P2[h0 + 1, l1, h2] - P2[h0 + 1, h1 + 1, l2]
                           + P2[l0, l1, h2] + P2[l0, h1 + 1, l2]
                           + P2[h0 + 1, l1, l2] - P2[l0, l1, l2])
                    if brk != 0:
                        is_mono = False
                if is_mono:
                    if worst:
                        NUM[I] = m
                        DEN[I] = len0 * len1 * len2
                    else:
                        NUM[I] = R[l0, l1, l2]
                    continue
                bn = -1
                bd = 1
                pick = -1
                for axis in range(3):
                    if axis == 0:
                        for c in range(l0, h0):
                            a = (((((l0 * n + c) * n + l1) * n + h1) * n + l2) * n + h2)
                            b = ((((((c + 1) * n + h0) * n + l1) * n + h1) * n + l2) * n + h2)
                            if worst:
                                if NUM[a] * DEN[b] >= NUM[b] * DEN[a]:
                                    vn = NUM[a]
                                    vd = DEN[a]
                                else:
                                    vn = NUM[b]
                                    vd = DEN[b]
                            else:
                                vn = NUM[a] + NUM[b]
                                vd = 1
                            if bn < 0 or vn * bd < bn * vd:
                                bn = vn
                                bd = vd
                                pick = <int32_t> c
                    elif axis == 1:
                        for c in range(l1, h1):
                            a = (((((l0 * n + h0) * n + l1) * n + c) * n + l2) * n + h2)
                            b = (((((l0 * n + h0) * n + c + 1) * n + h1) * n + l2) * n + h2)
                            if worst:
                                if NUM[a] * DEN[b] >= NUM[b] * DEN[a]:
                                    vn = NUM[a]
                                    vd = DEN[a]
                                else:
                                    vn = NUM[b]
                                    vd = DEN[b]
                            else:
                                vn = NUM[a] + NUM[b]
                                vd = 1
                            if bn < 0 or vn * bd < bn * vd:
                                bn = vn
                                bd = vd
                                pick = <int32_t> (256 + c)
                    else:
                        for c in range(l2, h2):
                            a = (((((l0 * n + h0) * n + l1) * n + h1) * n + l2) * n + c)
                            b = (((((l0 * n + h0) * n + l1) * n + h1) * n + c + 1) * n + h2)
                            if worst:
                                if NUM[a] * DEN[b] >= NUM[b] * DEN[a]:
                                    vn = NUM[a]
                                    vd = DEN[a]
                                else:
                                    vn = NUM[b]
                                    vd = DEN[b]
                            else:
                                vn = NUM[a] + NUM[b]
                                vd = 1
                            if bn < 0 or vn * bd < bn * vd:
                                bn = vn
                                bd = vd
                                pick = <int32_t> (512 + c)
                NUM[I] = bn
                DEN[I] = bd
                CH[I] = pick
    cdef Py_ssize_t full = (((((0 * n + n - 1) * n + 0) * n + n - 1) * n + 0) * n + n - 1)
    if worst:
        return int(num[full]), int(den[full]), choice
    return int(num[full]), int(n ** 3), choice
