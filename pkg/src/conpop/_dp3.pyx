# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled suffix-signature DP for length-3 consecutive patterns.

Same algorithm and return shape as ``_dp3_py.dp3``. Counts stay Python ints
(exact, unbounded); the gain comes from C-level loops and indexing.
"""

BACKEND = "cython"


cdef list _prefix(list rows, Py_ssize_t k):
    cdef list out = []
    cdef list row, pref
    cdef Py_ssize_t x
    cdef object acc
    for row in rows:
        acc = 0
        pref = [0] * (k + 1)
        for x in range(1, k + 1):
            acc = acc + <object>row[x]
            pref[x] = acc
        out.append(pref)
    return out


def dp3(Py_ssize_t n_max, int forbidden_mask, targets=(), bint keep_final=False):
    cdef Py_ssize_t k, K, s, r, y, j, nt, x
    cdef list cnt, oc, ncnt, noc, pc, po, P, Q, sizes, occ, totals, row
    cdef object total, v, w, a, b, top, py, pym, qa, qb, r0, r1, r2
    cdef bint ad0, ad1, ad2, aa0, aa1, aa2
    cdef int c
    cdef list tdesc, tasc

    allow = [not (forbidden_mask >> c) & 1 for c in range(6)]
    targets = list(targets)
    nt = len(targets)
    sizes = [1, 1, 2][: n_max + 1]
    occ = [[0] * (n_max + 1) for _ in range(nt)]
    if n_max < 2:
        final = None
        if keep_final:
            final = ({(): 1} if n_max == 0 else {(1,): 1}, [{} for _ in range(nt)])
        return sizes, occ, final

    k = 2
    cnt = [[0] * (k + 1) for _ in range(k + 1)]
    cnt[2][1] = 1
    cnt[1][2] = 1
    oc = [[[0] * (k + 1) for _ in range(k + 1)] for _ in range(nt)]

    desc_codes = (1, 3, 5)
    asc_codes = (0, 2, 4)
    ad0, ad1, ad2 = allow[1], allow[3], allow[5]
    aa0, aa1, aa2 = allow[0], allow[2], allow[4]
    tdesc = [desc_codes.index(t) if t in desc_codes and allow[t] else -1 for t in targets]
    tasc = [asc_codes.index(t) if t in asc_codes and allow[t] else -1 for t in targets]

    for k in range(2, n_max):
        K = k + 1
        pc = _prefix(cnt, k)
        po = [_prefix(<list>o, k) for o in oc]
        ncnt = [[0] * (K + 1) for _ in range(K + 1)]
        noc = [[[0] * (K + 1) for _ in range(K + 1)] for _ in range(nt)]
        total = 0
        totals = [0] * nt
        for s in range(1, K + 1):
            y = s - 1
            if y >= 1:
                P = <list>pc[y]
                top = P[k]
                py = P[y]
                pym = P[y - 1]
                for r in range(1, s):
                    a = P[r - 1]
                    r0 = a
                    r1 = pym - a
                    r2 = top - py
                    v = 0
                    if ad0:
                        v = v + r0
                    if ad1:
                        v = v + r1
                    if ad2:
                        v = v + r2
                    (<list>ncnt[r])[s] = v
                    total = total + v
                    for j in range(nt):
                        Q = <list>(<list>po[j])[y]
                        qa = Q[r - 1]
                        w = 0
                        if ad0:
                            w = w + qa
                        if ad1:
                            w = w + (Q[y - 1] - qa)
                        if ad2:
                            w = w + (Q[k] - Q[y])
                        c = tdesc[j]
                        if c == 0:
                            w = w + r0
                        elif c == 1:
                            w = w + r1
                        elif c == 2:
                            w = w + r2
                        (<list>(<list>noc[j])[r])[s] = w
                        totals[j] = totals[j] + w
            y = s
            if y <= k:
                P = <list>pc[y]
                top = P[k]
                py = P[y]
                pym = P[y - 1]
                for r in range(s + 1, K + 1):
                    b = P[r - 1]
                    r0 = pym
                    r1 = b - py
                    r2 = top - b
                    v = 0
                    if aa0:
                        v = v + r0
                    if aa1:
                        v = v + r1
                    if aa2:
                        v = v + r2
                    (<list>ncnt[r])[s] = v
                    total = total + v
                    for j in range(nt):
                        Q = <list>(<list>po[j])[y]
                        qb = Q[r - 1]
                        w = 0
                        if aa0:
                            w = w + Q[y - 1]
                        if aa1:
                            w = w + (qb - Q[y])
                        if aa2:
                            w = w + (Q[k] - qb)
                        c = tasc[j]
                        if c == 0:
                            w = w + r0
                        elif c == 1:
                            w = w + r1
                        elif c == 2:
                            w = w + r2
                        (<list>(<list>noc[j])[r])[s] = w
                        totals[j] = totals[j] + w
        cnt, oc = ncnt, noc
        sizes.append(total)
        for j in range(nt):
            (<list>occ[j])[K] = totals[j]

    final = None
    if keep_final:
        k = n_max
        fc = {(x, y): cnt[y][x] for y in range(1, k + 1) for x in range(1, k + 1) if x != y}
        fo = [{(x, y): o[y][x] for y in range(1, k + 1) for x in range(1, k + 1) if x != y}
              for o in oc]
        final = (fc, fo)
    return sizes, occ, final
