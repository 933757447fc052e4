"""Compiled inner loop of the phi-image branch and bound.

A code is valid (2-bar-separable or B2, depending on the image table) iff the
phi images of all ordered pairs of distinct codewords are pairwise distinct.
The search keeps a boolean ``used`` table over image ids and filters the
candidate list forward after every push.

Node accounting is shared with ``_phi_search_py``; both must return identical
``(status, nodes, code)`` triples for the same inputs.
"""

from __future__ import annotations

import numpy as np
from numba import njit

FOUND = 1
EXHAUSTED = 0
BUDGET = -1


@njit(cache=True)
def phi_search(img, n_images, cbound, prefix, pool, target, budget):
    """Depth-first search for a valid code of size ``target`` extending ``prefix``.

    ``pool`` holds ascending word indices above ``prefix[-1]``, not yet
    filtered against the prefix. ``cbound[w]`` bounds the size of any valid
    code made of words ``>= w``. Returns ``(status, nodes, code)``.
    """
    N = img.shape[0]
    used = np.zeros(n_images, dtype=np.bool_)
    code = np.empty(target + 1, dtype=np.int64)
    M0 = prefix.shape[0]
    for j in range(M0):
        code[j] = prefix[j]
    for j in range(M0):
        for k in range(j + 1, M0):
            used[img[prefix[j], prefix[k]]] = True
            used[img[prefix[k], prefix[j]]] = True

    depth = target - M0 + 2
    cand = np.empty((depth, pool.shape[0] + 1), dtype=np.int64)
    clen = np.zeros(depth, dtype=np.int64)
    pos = np.zeros(depth, dtype=np.int64)
    added = np.empty((depth, 2 * (target + 1)), dtype=np.int64)
    nadd = np.zeros(depth, dtype=np.int64)
    tmp = np.empty(2 * (M0 + 1), dtype=np.int64)

    # filter the pool against the whole prefix
    cnt = 0
    for p in range(pool.shape[0]):
        y = pool[p]
        ok = True
        t = 0
        for j in range(M0):
            a = img[y, code[j]]
            b = img[code[j], y]
            if used[a] or used[b]:
                ok = False
                break
            for s in range(t):
                if tmp[s] == a or tmp[s] == b:
                    ok = False
                    break
            if not ok:
                break
            tmp[t] = a
            tmp[t + 1] = b
            t += 2
        if ok:
            cand[0, cnt] = y
            cnt += 1
    clen[0] = cnt
    pos[0] = 0

    nodes = 0
    level = 0
    M = M0
    while True:
        k = pos[level]
        ln = clen[level]
        if k >= ln or M + (ln - k) < target or M + cbound[cand[level, k]] < target:
            if level == 0:
                return EXHAUSTED, nodes, code[:M]
            level -= 1
            M -= 1
            for j in range(nadd[level]):
                used[added[level, j]] = False
            continue
        cw = cand[level, k]
        pos[level] = k + 1
        na = 0
        for j in range(M):
            x = code[j]
            u = img[cw, x]
            v = img[x, cw]
            used[u] = True
            used[v] = True
            added[level, na] = u
            added[level, na + 1] = v
            na += 2
        nadd[level] = na
        code[M] = cw
        M += 1
        nodes += 1
        if M >= target:
            return FOUND, nodes, code[:M]
        if nodes >= budget:
            return BUDGET, nodes, code[:M]
        nxt = level + 1
        cnt = 0
        for kk in range(k + 1, ln):
            y = cand[level, kk]
            a = img[y, cw]
            b = img[cw, y]
            if used[a] or used[b]:
                continue
            ok = True
            for j in range(M - 1):
                x = code[j]
                u = img[y, x]
                v = img[x, y]
                if used[u] or used[v] or u == b or v == a:
                    ok = False
                    break
            if ok:
                cand[nxt, cnt] = y
                cnt += 1
        clen[nxt] = cnt
        pos[nxt] = 0
        level = nxt


def phi_search_py(img, cbound, prefix, pool, target, budget):
    """Pure-Python twin of :func:`phi_search` (same node accounting).

    ``img`` may be any ``img[x][y]`` indexable, so lazily computed images work
    for word spaces too large for a table.
    """
    code = list(prefix)
    used = set()
    for j in range(len(code)):
        for k in range(j + 1, len(code)):
            used.add(img[code[j]][code[k]])
            used.add(img[code[k]][code[j]])

    cands = []
    for y in pool:
        seen = set()
        ok = True
        for x in code:
            a, b = img[y][x], img[x][y]
            if a in used or b in used or a in seen or b in seen:
                ok = False
                break
            seen.add(a)
            seen.add(b)
        if ok:
            cands.append(y)

    nodes = 0

    def dfs(cands):
        nonlocal nodes
        M = len(code)
        ln = len(cands)
        for k, cw in enumerate(cands):
            if M + (ln - k) < target or M + cbound[cw] < target:
                return EXHAUSTED
            row_c = img[cw]
            added = []
            for x in code:
                added.append(row_c[x])
                added.append(img[x][cw])
            used.update(added)
            code.append(cw)
            nodes += 1
            if len(code) >= target:
                return FOUND
            if nodes >= budget:
                return BUDGET
            nxt = []
            for y in cands[k + 1:]:
                row_y = img[y]
                a = row_y[cw]
                b = row_c[y]
                if a in used or b in used:
                    continue
                for x in code[:-1]:
                    u = row_y[x]
                    v = img[x][y]
                    if u in used or v in used or u == b or v == a:
                        break
                else:
                    nxt.append(y)
            status = dfs(nxt)
            if status != EXHAUSTED:
                return status
            code.pop()
            used.difference_update(added)
        return EXHAUSTED

    status = dfs(cands)
    return status, nodes, list(code)
