"""Pure-Python suffix-signature DP for length-3 consecutive patterns.

Mirror of ``_dp3.pyx``; keep the two in step.

A prefix of length k is a permutation of 1..k; its state is ``(prev, last)``,
the ranks of its last two letters. Appending a letter of rank r in 1..k+1
shifts every old rank >= r up by one. With ``y = last`` the window pattern is
fixed by where r falls relative to prev and y, so every new state ``(s, r)``
collects three contiguous ranges of ``prev`` from a single old ``last`` row,
which a prefix sum over ``prev`` answers in O(1):

* r < s (old last y = s-1):  prev < r -> 132, r <= prev < y -> 231, prev > y -> 321
* r > s (old last y = s):    prev < y -> 123, y < prev < r -> 213, prev >= r -> 312

Pattern codes follow lexicographic order: 123=0 132=1 213=2 231=3 312=4 321=5.
"""

BACKEND = "python"


def _prefix(rows, k):
    out = []
    for row in rows:
        acc = 0
        pref = [0] * (k + 1)
        for x in range(1, k + 1):
            acc += row[x]
            pref[x] = acc
        out.append(pref)
    return out


def dp3(n_max, forbidden_mask, targets=(), keep_final=False):
    """Run the DP up to length ``n_max``.

    Returns ``(sizes, occ, final)``: ``sizes[n]`` is the class size,
    ``occ[j][n]`` the total occurrences of ``targets[j]`` at size n, and
    ``final`` (only with ``keep_final``) is ``(count, occ_tables)`` for length
    ``n_max`` as dicts keyed by ``(prev, last)``.
    """
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

    # cnt[last][prev]
    k = 2
    cnt = [[0] * (k + 1) for _ in range(k + 1)]
    cnt[2][1] = 1
    cnt[1][2] = 1
    oc = [[[0] * (k + 1) for _ in range(k + 1)] for _ in range(nt)]

    desc_codes = (1, 3, 5)
    asc_codes = (0, 2, 4)
    ad = [allow[c] for c in desc_codes]
    aa = [allow[c] for c in asc_codes]
    # per target: which region (0, 1, 2) of descent / ascent matches, or -1
    tdesc = [desc_codes.index(t) if t in desc_codes and allow[t] else -1 for t in targets]
    tasc = [asc_codes.index(t) if t in asc_codes and allow[t] else -1 for t in targets]

    for k in range(2, n_max):
        K = k + 1
        pc = _prefix(cnt, k)
        po = [_prefix(o, k) for o in oc]
        ncnt = [[0] * (K + 1) for _ in range(K + 1)]
        noc = [[[0] * (K + 1) for _ in range(K + 1)] for _ in range(nt)]
        total = 0
        totals = [0] * nt
        for s in range(1, K + 1):
            # descents: new last r < s, old last y = s - 1
            y = s - 1
            if y >= 1:
                P = pc[y]
                top = P[k]
                py = P[y]
                pym = P[y - 1]
                for r in range(1, s):
                    a = P[r - 1]
                    regs = (a, pym - a, top - py)
                    v = 0
                    if ad[0]:
                        v += regs[0]
                    if ad[1]:
                        v += regs[1]
                    if ad[2]:
                        v += regs[2]
                    ncnt[r][s] = v
                    total += v
                    for j in range(nt):
                        Q = po[j][y]
                        qa = Q[r - 1]
                        w = 0
                        if ad[0]:
                            w += qa
                        if ad[1]:
                            w += Q[y - 1] - qa
                        if ad[2]:
                            w += Q[k] - Q[y]
                        if tdesc[j] >= 0:
                            w += regs[tdesc[j]]
                        noc[j][r][s] = w
                        totals[j] += w
            # ascents: new last r > s, old last y = s
            y = s
            if y <= k:
                P = pc[y]
                top = P[k]
                py = P[y]
                pym = P[y - 1]
                for r in range(s + 1, K + 1):
                    b = P[r - 1]
                    regs = (pym, b - py, top - b)
                    v = 0
                    if aa[0]:
                        v += regs[0]
                    if aa[1]:
                        v += regs[1]
                    if aa[2]:
                        v += regs[2]
                    ncnt[r][s] = v
                    total += v
                    for j in range(nt):
                        Q = po[j][y]
                        qb = Q[r - 1]
                        w = 0
                        if aa[0]:
                            w += Q[y - 1]
                        if aa[1]:
                            w += qb - Q[y]
                        if aa[2]:
                            w += Q[k] - qb
                        if tasc[j] >= 0:
                            w += regs[tasc[j]]
                        noc[j][r][s] = w
                        totals[j] += w
        cnt, oc = ncnt, noc
        sizes.append(total)
        for j in range(nt):
            occ[j][K] = totals[j]

    final = None
    if keep_final:
        k = n_max
        fc = {(x, y): cnt[y][x] for y in range(1, k + 1) for x in range(1, k + 1) if x != y}
        fo = [{(x, y): o[y][x] for y in range(1, k + 1) for x in range(1, k + 1) if x != y}
              for o in oc]
        final = (fc, fo)
    return sizes, occ, final
