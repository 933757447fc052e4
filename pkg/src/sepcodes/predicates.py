"""Exact verifiers for frameproof, t-bar-separable and B2 codes.

Readings used throughout:

* frameproof(t): no codeword is covered coordinate-wise by a set of at most
  ``t`` *other* codewords.
* separable(t): any two distinct sets of at most ``t`` codewords differ in
  their symbol union at some coordinate. Overlapping sets are allowed; pass
  ``disjoint_only=True`` to compare disjoint sets only.
* B2: all sums ``c_i + c_j`` (``i <= j``, over the integers) are distinct.

Each ``is_*`` has a ``find_*_violation`` twin returning a witness or ``None``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .core import Code, Word

DEFAULT_PAIR_BUDGET = 10**9


class BudgetExceeded(RuntimeError):
    """The requested exhaustive check would enumerate too many subset pairs."""


class PropertyKind(enum.Enum):
    FRAMEPROOF = "fp"
    SEPARABLE = "sep"
    B2 = "b2"


@dataclass(frozen=True)
class CodeProperty:
    kind: PropertyKind
    t: int | None = None

    def __post_init__(self) -> None:
        if self.kind is PropertyKind.B2:
            if self.t is not None:
                raise ValueError("B2 takes no t parameter")
        elif self.t is None:
            raise ValueError(f"{self.kind.value} requires t")
        elif self.kind is PropertyKind.FRAMEPROOF and self.t < 1:
            raise ValueError(f"frameproof needs t >= 1, got {self.t}")
        elif self.kind is PropertyKind.SEPARABLE and self.t < 2:
            raise ValueError(f"separable needs t >= 2, got {self.t}")

    @classmethod
    def parse(cls, text: str) -> "CodeProperty":
        """Parse ``sep2``, ``sep:<t>``, ``fp:<t>`` or ``b2``."""
        s = text.strip().lower()
        if s == "b2":
            return cls(PropertyKind.B2)
        if s == "sep2":
            return cls(PropertyKind.SEPARABLE, 2)
        m = re.fullmatch(r"(sep|fp):(\d+)", s)
        if not m:
            raise ValueError(f"unknown property {text!r}; use sep2, sep:<t>, fp:<t> or b2")
        return cls(PropertyKind(m.group(1)), int(m.group(2)))

    def __str__(self) -> str:
        if self.kind is PropertyKind.B2:
            return "b2"
        if self.kind is PropertyKind.SEPARABLE and self.t == 2:
            return "sep2"
        return f"{self.kind.value}:{self.t}"

    def violation(self, code: Code, disjoint_only: bool = False):
        if self.kind is PropertyKind.B2:
            return find_b2_violation(code)
        if self.kind is PropertyKind.SEPARABLE:
            return find_separable_violation(code, self.t, disjoint_only=disjoint_only)
        return find_frameproof_violation(code, self.t)

    def holds(self, code: Code, disjoint_only: bool = False) -> bool:
        return self.violation(code, disjoint_only=disjoint_only) is None


def _masks(word: Sequence[int]) -> tuple[int, ...]:
    return tuple(1 << s for s in word)


def _union(words: Iterable[tuple[int, ...]]) -> tuple[int, ...]:
    # words given as per-coordinate bitmasks
    it = iter(words)
    acc = list(next(it))
    for w in it:
        for i, m in enumerate(w):
            acc[i] |= m
    return tuple(acc)


def find_frameproof_violation(code: Code, t: int) -> tuple[tuple[Word, ...], Word] | None:
    """Return ``(S, c)`` with ``c`` not in ``S`` covered by ``S`` (``|S| <= t``), or None."""
    if t < 1:
        raise ValueError(f"frameproof needs t >= 1, got {t}")
    words = code.words
    masks = [_masks(w) for w in words]
    M = len(words)
    for k in range(1, min(t, M - 1) + 1):
        for S in combinations(range(M), k):
            U = _union(masks[i] for i in S)
            for j in range(M):
                if j in S:
                    continue
                if all(u & m for u, m in zip(U, masks[j])):
                    return tuple(words[i] for i in S), words[j]
    return None


def is_frameproof(code: Code, t: int) -> bool:
    return find_frameproof_violation(code, t) is None


def _subset_count(M: int, t: int) -> int:
    return sum(comb(M, k) for k in range(1, t + 1))


def find_separable_violation(
    code: Code,
    t: int,
    disjoint_only: bool = False,
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> tuple[tuple[Word, ...], tuple[Word, ...]] | None:
    """Return two distinct subsets (size <= t) with equal coordinate unions, or None.

    Subsets are bucketed by their union signature, which finds every equal-union
    pair without comparing all pairs. The budget still applies to the number of
    subset pairs the check stands in for.
    """
    if t < 2:
        raise ValueError(f"separable needs t >= 2, got {t}")
    words = code.words
    M = len(words)
    n_sub = _subset_count(M, t)
    pairs = n_sub * (n_sub - 1) // 2
    if pairs > pair_budget:
        raise BudgetExceeded(
            f"separability check over {pairs} subset pairs exceeds budget {pair_budget} (M={M}, t={t})"
        )
    masks = [_masks(w) for w in words]
    buckets: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for k in range(1, t + 1):
        for S in combinations(range(M), k):
            sig = _union(masks[i] for i in S)
            group = buckets.setdefault(sig, [])
            for other in group:
                if not disjoint_only or not set(other) & set(S):
                    return tuple(words[i] for i in other), tuple(words[i] for i in S)
            group.append(S)
    return None


def is_separable(code: Code, t: int, disjoint_only: bool = False, pair_budget: int = DEFAULT_PAIR_BUDGET) -> bool:
    return find_separable_violation(code, t, disjoint_only, pair_budget) is None


def _add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def find_b2_violation(code: Code) -> tuple[tuple[Word, Word], tuple[Word, Word]] | None:
    """Return ``((a, b), (c, d))`` with ``a + b == c + d`` as different pairs, or None."""
    seen: dict[tuple[int, ...], tuple[Word, Word]] = {}
    words = code.words
    for i in range(len(words)):
        for j in range(i, len(words)):
            s = _add(words[i], words[j])
            if s in seen:
                return seen[s], (words[i], words[j])
            seen[s] = (words[i], words[j])
    return None


def is_b2(code: Code) -> bool:
    return find_b2_violation(code) is None


def b2_sums(words: Iterable[Sequence[int]]) -> set[tuple[int, ...]]:
    ws = [tuple(w) for w in words]
    return {_add(ws[i], ws[j]) for i in range(len(ws)) for j in range(i, len(ws))}


def b2_extends(sums: set[tuple[int, ...]], code: Iterable[Sequence[int]], candidate: Sequence[int]) -> bool:
    """Whether adding ``candidate`` to a B2 code with sum-set ``sums`` keeps it B2.

    ``candidate + c`` for distinct ``c`` are automatically distinct, so only
    freshness against ``sums`` needs checking.
    """
    cand = tuple(candidate)
    if _add(cand, cand) in sums:
        return False
    return all(_add(cand, c) not in sums for c in code)


def separable_extends(
    code: Iterable[Sequence[int]], candidate: Sequence[int], t: int = 2, disjoint_only: bool = False
) -> bool:
    """Whether ``code + [candidate]`` stays t-bar-separable, given ``code`` already is.

    Only subsets that contain ``candidate`` are new, so each of them is
    compared against all old subsets and against the new ones seen so far.
    """
    ws = [tuple(w) for w in code]
    cand = tuple(candidate)
    masks = [_masks(w) for w in ws]
    cmask = _masks(cand)
    M = len(ws)
    old: dict[tuple[int, ...], list[frozenset]] = {}
    for k in range(1, t + 1):
        for S in combinations(range(M), k):
            old.setdefault(_union(masks[i] for i in S), []).append(frozenset(S))
    new: dict[tuple[int, ...], list[frozenset]] = {}
    for k in range(0, t):
        for S in combinations(range(M), k):
            sig = _union([cmask, *(masks[i] for i in S)])
            members = frozenset(S) | {M}
            for group in (old.get(sig, ()), new.get(sig, ())):
                for other in group:
                    if not disjoint_only or not other & members:
                        return False
            new.setdefault(sig, []).append(members)
    return True


def sep2_extends(code: Iterable[Sequence[int]], candidate: Sequence[int]) -> bool:
    return separable_extends(code, candidate, 2)


def frameproof_extends(code: Iterable[Sequence[int]], candidate: Sequence[int], t: int) -> bool:
    """Whether ``code + [candidate]`` stays t-frameproof, given ``code`` already is."""
    ws = [tuple(w) for w in code]
    cand = tuple(candidate)
    masks = [_masks(w) for w in ws]
    cmask = _masks(cand)
    M = len(ws)
    # candidate covered by old words
    for k in range(1, min(t, M) + 1):
        for S in combinations(range(M), k):
            U = _union(masks[i] for i in S)
            if all(u & m for u, m in zip(U, cmask)):
                return False
    # an old word covered by a set containing the candidate
    for k in range(0, t):
        for S in combinations(range(M), k):
            U = _union([cmask, *(masks[i] for i in S)])
            for j in range(M):
                if j not in S and all(u & m for u, m in zip(U, masks[j])):
                    return False
    return True
