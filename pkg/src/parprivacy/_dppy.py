"""Pure-Python optimal-cut dynamic programming kernels.

Twins of the compiled kernels in ``_dpcore``: identical inputs, outputs, and
tie-breaking (axis 0 cuts low-to-high, then axis 1, then axis 2; strict
improvement keeps the earliest candidate; a monochromatic block is always a
leaf, since any further cut can only raise either objective).

Index layouts (shared with the compiled kernels and ``kernels.rect_index``):
  d=2: idx = ((l0*n0 + h0)*n1 + l1)*n1 + h1
  d=3: idx = (((((l0*n0 + h0)*n1 + l1)*n1 + h1)*n2 + l2)*n2 + h2
Choices: -1 for a leaf, else axis*256 + cut coordinate.

Average costs are integer numerators in units of 1/(total cells) and assume
region sizes constant on monochromatic blocks (true for a table's own ideal
partition).  Worst costs are (num, den) ratio pairs and support arbitrary
per-cell region sizes via range maxima.
"""

from __future__ import annotations

import numpy as np


def _prefix2(val):
    n0, n1 = len(val), len(val[0])
    ph = [[0] * (n1 + 1) for _ in range(n0 + 1)]
    pv = [[0] * (n1 + 1) for _ in range(n0 + 1)]
    for i in range(n0):
        rowh = ph[i + 1]
        rowv = pv[i + 1]
        prevh = ph[i]
        prevv = pv[i]
        vi = val[i]
        vnext = val[i + 1] if i + 1 < n0 else None
        for j in range(n1):
            hb = 1 if j + 1 < n1 and vi[j] != vi[j + 1] else 0
            vb = 1 if vnext is not None and vi[j] != vnext[j] else 0
            rowh[j + 1] = rowh[j] + prevh[j + 1] - prevh[j] + hb
            rowv[j + 1] = rowv[j] + prevv[j + 1] - prevv[j] + vb
    return ph, pv


def dp2_avg(val_arr, rs_arr):
    val = np.asarray(val_arr, dtype=np.int64).tolist()
    rs = np.asarray(rs_arr, dtype=np.int64).tolist()
    n0, n1 = len(val), len(val[0])
    ph, pv = _prefix2(val)

    def mono(l0, h0, l1, h1):
        if h1 > l1:
            if ph[h0 + 1][h1] - ph[l0][h1] - ph[h0 + 1][l1] + ph[l0][l1]:
                return False
        if h0 > l0:
            if pv[h0][h1 + 1] - pv[l0][h1 + 1] - pv[h0][l1] + pv[l0][l1]:
                return False
        return True

    size = n0 * n0 * n1 * n1
    cost = [0] * size
    choice = np.full(size, -1, dtype=np.int32)
    for len0 in range(1, n0 + 1):
        for l0 in range(n0 - len0 + 1):
            h0 = l0 + len0 - 1
            base0 = (l0 * n0 + h0) * n1
            for len1 in range(1, n1 + 1):
                for l1 in range(n1 - len1 + 1):
                    h1 = l1 + len1 - 1
                    idx = (base0 + l1) * n1 + h1
                    if mono(l0, h0, l1, h1):
                        cost[idx] = rs[l0][l1]
                        continue
                    best = -1
                    pick = -1
                    for c in range(l0, h0):
                        v = (cost[((l0 * n0 + c) * n1 + l1) * n1 + h1]
                             + cost[(((c + 1) * n0 + h0) * n1 + l1) * n1 + h1])
                        if best < 0 or v < best:
                            best = v
                            pick = c
                    for c in range(l1, h1):
                        v = (cost[(base0 + l1) * n1 + c]
                             + cost[(base0 + c + 1) * n1 + h1])
                        if best < 0 or v < best:
                            best = v
                            pick = 256 + c
                    cost[idx] = best
                    choice[idx] = pick
    full = ((0 * n0 + n0 - 1) * n1 + 0) * n1 + n1 - 1
    return cost[full], n0 * n1, choice


def dp2_worst(val_arr, rs_arr):
    val = np.asarray(val_arr, dtype=np.int64).tolist()
    rs = np.asarray(rs_arr, dtype=np.int64).tolist()
    n0, n1 = len(val), len(val[0])
    ph, pv = _prefix2(val)

    def mono(l0, h0, l1, h1):
        if h1 > l1:
            if ph[h0 + 1][h1] - ph[l0][h1] - ph[h0 + 1][l1] + ph[l0][l1]:
                return False
        if h0 > l0:
            if pv[h0][h1 + 1] - pv[l0][h1 + 1] - pv[h0][l1] + pv[l0][l1]:
                return False
        return True

    size = n0 * n0 * n1 * n1
    num = [0] * size
    den = [1] * size
    rmax = [0] * size
    choice = np.full(size, -1, dtype=np.int32)
    for len0 in range(1, n0 + 1):
        for l0 in range(n0 - len0 + 1):
            h0 = l0 + len0 - 1
            base0 = (l0 * n0 + h0) * n1
            for len1 in range(1, n1 + 1):
                for l1 in range(n1 - len1 + 1):
                    h1 = l1 + len1 - 1
                    idx = (base0 + l1) * n1 + h1
                    if len0 == 1 and len1 == 1:
                        m = rs[l0][l1]
                    elif len0 > 1:
                        m = max(rmax[((l0 * n0 + h0 - 1) * n1 + l1) * n1 + h1],
                                rmax[((h0 * n0 + h0) * n1 + l1) * n1 + h1])
                    else:
                        m = max(rmax[(base0 + l1) * n1 + h1 - 1],
                                rmax[(base0 + h1) * n1 + h1])
                    rmax[idx] = m
                    if mono(l0, h0, l1, h1):
                        num[idx] = m
                        den[idx] = len0 * len1
                        continue
                    bn = -1
                    bd = 1
                    pick = -1
                    for c in range(l0, h0):
                        a = ((l0 * n0 + c) * n1 + l1) * n1 + h1
                        b = (((c + 1) * n0 + h0) * n1 + l1) * n1 + h1
                        if num[a] * den[b] >= num[b] * den[a]:
                            vn, vd = num[a], den[a]
                        else:
                            vn, vd = num[b], den[b]
                        if bn < 0 or vn * bd < bn * vd:
                            bn, bd = vn, vd
                            pick = c
                    for c in range(l1, h1):
                        a = (base0 + l1) * n1 + c
                        b = (base0 + c + 1) * n1 + h1
                        if num[a] * den[b] >= num[b] * den[a]:
                            vn, vd = num[a], den[a]
                        else:
                            vn, vd = num[b], den[b]
                        if bn < 0 or vn * bd < bn * vd:
                            bn, bd = vn, vd
                            pick = 256 + c
                    num[idx], den[idx] = bn, bd
                    choice[idx] = pick
    full = ((0 * n0 + n0 - 1) * n1 + 0) * n1 + n1 - 1
    return num[full], den[full], choice


def _prefix3(val, n):
    # break counts per axis, prefix-summed over (n+1)^3
    pre = []
    for axis in range(3):
        p = [[[0] * (n + 1) for _ in range(n + 1)] for _ in range(n + 1)]
        for i in range(n):
            for j in range(n):
                for l in range(n):
                    if axis == 0:
                        b = 1 if i + 1 < n and val[i][j][l] != val[i + 1][j][l] else 0
                    elif axis == 1:
                        b = 1 if j + 1 < n and val[i][j][l] != val[i][j + 1][l] else 0
                    else:
                        b = 1 if l + 1 < n and val[i][j][l] != val[i][j][l + 1] else 0
                    p[i + 1][j + 1][l + 1] = b
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for l in range(1, n + 1):
                    p[i][j][l] += (p[i - 1][j][l] + p[i][j - 1][l] + p[i][j][l - 1]
                                   - p[i - 1][j - 1][l] - p[i - 1][j][l - 1]
                                   - p[i][j - 1][l - 1] + p[i - 1][j - 1][l - 1])
        pre.append(p)
    return pre


def _box3(p, a0, b0, a1, b1, a2, b2):
    return (p[b0 + 1][b1 + 1][b2 + 1] - p[a0][b1 + 1][b2 + 1]
            - p[b0 + 1][a1][b2 + 1] - p[b0 + 1][b1 + 1][a2]
            + p[a0][a1][b2 + 1] + p[a0][b1 + 1][a2] + p[b0 + 1][a1][a2]
            - p[a0][a1][a2])


def _dp3(val_arr, rs_arr, objective):
    val = np.asarray(val_arr, dtype=np.int64).tolist()
    rs = np.asarray(rs_arr, dtype=np.int64).tolist()
    n = len(val)
    pre = _prefix3(val, n)

    def mono(l0, h0, l1, h1, l2, h2):
        # breaks are attributed to the lower cell of each differing pair
        if h0 > l0 and _box3(pre[0], l0, h0 - 1, l1, h1, l2, h2):
            return False
        if h1 > l1 and _box3(pre[1], l0, h0, l1, h1 - 1, l2, h2):
            return False
        if h2 > l2 and _box3(pre[2], l0, h0, l1, h1, l2, h2 - 1):
            return False
        return True

    def idx(l0, h0, l1, h1, l2, h2):
        return (((((l0 * n + h0) * n + l1) * n + h1) * n + l2) * n + h2)

    size = n ** 6
    num = [0] * size
    den = [1] * size
    rmax = [0] * size
    choice = np.full(size, -1, dtype=np.int32)
    worst = objective == "worst"
    for len0 in range(1, n + 1):
     for l0 in range(n - len0 + 1):
      h0 = l0 + len0 - 1
      for len1 in range(1, n + 1):
       for l1 in range(n - len1 + 1):
        h1 = l1 + len1 - 1
        for len2 in range(1, n + 1):
         for l2 in range(n - len2 + 1):
            h2 = l2 + len2 - 1
            I = idx(l0, h0, l1, h1, l2, h2)
            if len0 == 1 and len1 == 1 and len2 == 1:
                m = rs[l0][l1][l2]
            elif len0 > 1:
                m = max(rmax[idx(l0, h0 - 1, l1, h1, l2, h2)],
                        rmax[idx(h0, h0, l1, h1, l2, h2)])
            elif len1 > 1:
                m = max(rmax[idx(l0, h0, l1, h1 - 1, l2, h2)],
                        rmax[idx(l0, h0, h1, h1, l2, h2)])
            else:
                m = max(rmax[idx(l0, h0, l1, h1, l2, h2 - 1)],
                        rmax[idx(l0, h0, l1, h1, h2, h2)])
            rmax[I] = m
            if mono(l0, h0, l1, h1, l2, h2):
                if worst:
                    num[I], den[I] = m, len0 * len1 * len2
                else:
                    num[I] = rs[l0][l1][l2]
                continue
            bn = -1
            bd = 1
            pick = -1
            for axis in range(3):
                lo = (l0, l1, l2)[axis]
                hi = (h0, h1, h2)[axis]
                for c in range(lo, hi):
                    if axis == 0:
                        a = idx(l0, c, l1, h1, l2, h2)
                        b = idx(c + 1, h0, l1, h1, l2, h2)
                    elif axis == 1:
                        a = idx(l0, h0, l1, c, l2, h2)
                        b = idx(l0, h0, c + 1, h1, l2, h2)
                    else:
                        a = idx(l0, h0, l1, h1, l2, c)
                        b = idx(l0, h0, l1, h1, c + 1, h2)
                    if worst:
                        if num[a] * den[b] >= num[b] * den[a]:
                            vn, vd = num[a], den[a]
                        else:
                            vn, vd = num[b], den[b]
                    else:
                        vn, vd = num[a] + num[b], 1
                    if bn < 0 or vn * bd < bn * vd:
                        bn, bd = vn, vd
                        pick = axis * 256 + c
            num[I], den[I] = bn, bd
            choice[I] = pick
    full = idx(0, n - 1, 0, n - 1, 0, n - 1)
    if worst:
        return num[full], den[full], choice
    return num[full], n ** 3, choice


def dp3_avg(val_arr, rs_arr):
    return _dp3(val_arr, rs_arr, "avg")


def dp3_worst(val_arr, rs_arr):
    return _dp3(val_arr, rs_arr, "worst")
