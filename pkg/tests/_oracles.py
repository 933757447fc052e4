"""Naive reference implementations used as test oracles.

Written straight from the definitions with plain sets and no shared code from
the package, so a bug in the package's bitmask or phi machinery cannot hide here.
"""

from __future__ import annotations

import random
from itertools import combinations, product


def words_of(q, n):
    return list(product(range(q), repeat=n))


def subsets_upto(words, t):
    for k in range(1, t + 1):
        yield from combinations(words, k)


def coord_sets(subset):
    n = len(subset[0])
    return tuple(frozenset(w[i] for w in subset) for i in range(n))


def naive_frameproof(words, t):
    words = list(words)
    for k in range(1, t + 1):
        for S in combinations(words, k):
            desc = coord_sets(S)
            for c in words:
                if c not in S and all(c[i] in desc[i] for i in range(len(c))):
                    return False
    return True


def naive_separable(words, t, disjoint_only=False):
    subs = list(subsets_upto(list(words), t))
    for A, B in combinations(subs, 2):
        if disjoint_only and set(A) & set(B):
            continue
        if coord_sets(A) == coord_sets(B):
            return False
    return True


def naive_b2(words):
    words = list(words)
    seen = set()
    for i in range(len(words)):
        for j in range(i, len(words)):
            s = tuple(a + b for a, b in zip(words[i], words[j]))
            if s in seen:
                return False
            seen.add(s)
    return True


def naive_holds(prop, words):
    if prop == "b2":
        return naive_b2(words)
    kind, t = prop.split(":")
    return naive_separable(words, int(t)) if kind == "sep" else naive_frameproof(words, int(t))


def brute_max(q, n, prop):
    """Largest size of a code with ``prop``, by trying every subset from the top down."""
    ws = words_of(q, n)
    for size in range(len(ws), 0, -1):
        for S in combinations(ws, size):
            if naive_holds(prop, S):
                return size, S
    return 0, ()


def random_code(rng: random.Random, q, n, size):
    return rng.sample(words_of(q, n), size)
