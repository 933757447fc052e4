"""Pair-difference maps used by the rate-bound argument.

Two variants map an ordered pair of symbols into a small alphabet ``D``:

* ``SEPARABLE``: ``0`` when the symbols agree, else the ordered pair itself.
  ``|D| = q(q-1) + 1``.
* ``B2DIFF``: the integer difference ``x - y``. ``|D| = 2q - 1``.

Applied coordinate-wise to two words this gives a "phi word"; it is all-zero
exactly when the two words are equal.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .core import PrefixPartition, Word

DElement = Union[int, tuple[int, int]]


class PhiVariant(enum.Enum):
    SEPARABLE = "sep"
    B2DIFF = "b2diff"

    def alphabet_size(self, q: int) -> int:
        if self is PhiVariant.SEPARABLE:
            return q * (q - 1) + 1
        return 2 * q - 1


def _check_symbol(s: int, q: int) -> None:
    if not 0 <= s < q:
        raise ValueError(f"symbol {s} out of range for q={q}")


def phi(variant: PhiVariant, x: int, y: int, q: int) -> DElement:
    _check_symbol(x, q)
    _check_symbol(y, q)
    if variant is PhiVariant.SEPARABLE:
        return 0 if x == y else (x, y)
    return x - y


def encode_symbol(variant: PhiVariant, x: int, y: int, q: int) -> int:
    """Integer code of ``phi(x, y)`` in ``[0, |D|)``; the zero element always maps to 0.

    SEPARABLE: pair ``(x, y)`` with ``x != y`` goes to ``1 + x*(q-1) + y'`` where
    ``y'`` skips the diagonal (row-major over off-diagonal pairs).
    B2DIFF: zig-zag order ``0, 1, -1, 2, -2, ...`` -> ``0, 1, 2, 3, 4, ...``.
    """
    if x == y:
        return 0
    if variant is PhiVariant.SEPARABLE:
        return 1 + x * (q - 1) + (y if y < x else y - 1)
    d = x - y
    return 2 * d - 1 if d > 0 else -2 * d


def decode_symbol(variant: PhiVariant, code: int, q: int) -> DElement:
    if code == 0:
        return 0
    if variant is PhiVariant.SEPARABLE:
        x, rem = divmod(code - 1, q - 1)
        return (x, rem if rem < x else rem + 1)
    return (code + 1) // 2 if code % 2 else -(code // 2)


@dataclass(frozen=True)
class PhiWord:
    variant: PhiVariant
    symbols: tuple[DElement, ...]

    def is_zero(self) -> bool:
        return all(s == 0 for s in self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


def phi_word(variant: PhiVariant, w1: Sequence[int], w2: Sequence[int], q: int) -> PhiWord:
    if len(w1) != len(w2):
        raise ValueError(f"length mismatch: {len(w1)} vs {len(w2)}")
    return PhiWord(variant, tuple(phi(variant, x, y, q) for x, y in zip(w1, w2)))


def pack_phi(variant: PhiVariant, w1: Sequence[int], w2: Sequence[int], q: int) -> int:
    """Phi word packed into one int (mixed radix ``|D|``); 0 iff ``w1 == w2``."""
    base = variant.alphabet_size(q)
    v = 0
    for x, y in zip(w1, w2):
        v = v * base + encode_symbol(variant, x, y, q)
    return v


@dataclass(frozen=True)
class InjectivityResult:
    injective: bool
    # two ordered codeword pairs (full words) with the same phi image
    witness: tuple[tuple[Word, Word], tuple[Word, Word]] | None = None
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.injective


def check_injectivity(partition: PrefixPartition, variant: PhiVariant) -> InjectivityResult:
    """Check that phi is injective on ordered pairs of distinct same-class words.

    All classes share one image table, so a collision between two different
    classes also counts. On failure the earliest collision in enumeration order
    (classes by prefix, then pairs by suffix position) is returned.
    """
    q = partition.params.q
    seen: dict[int, tuple[Word, Word]] = {}
    checked = 0
    for prefix, suffixes in partition.classes.items():
        for a in suffixes:
            for b in suffixes:
                if a == b:
                    continue
                checked += 1
                key = pack_phi(variant, a, b, q)
                pair = (prefix + a, prefix + b)
                first = seen.get(key)
                if first is not None:
                    return InjectivityResult(False, (first, pair), checked)
                seen[key] = pair
    return InjectivityResult(True, None, checked)


def witness_violates(witness: tuple[tuple[Word, Word], tuple[Word, Word]], variant: PhiVariant) -> bool:
    """Whether a collision witness really breaks the matching code property.

    For pairs ``(a, b)`` and ``(c, d)`` with equal images:
    SEPARABLE -> ``{a, d}`` and ``{b, c}`` are distinct sets with equal
    coordinate-wise symbol unions; B2DIFF -> ``a + d == b + c`` with
    ``{a, d} != {b, c}`` as multisets.
    """
    (a, b), (c, d) = witness
    if variant is PhiVariant.SEPARABLE:
        s1, s2 = {a, d}, {b, c}
        if s1 == s2:
            return False
        return all({x, w} == {y, z} for x, y, z, w in zip(a, b, c, d))
    if sorted((a, d)) == sorted((b, c)):
        return False
    return all(x + w == y + z for x, y, z, w in zip(a, b, c, d))


def zero_frequency(suffixes: Sequence[Sequence[int]], coordinate: int) -> Fraction:
    """Fraction of zero symbols at ``coordinate`` over all ordered pairs (equal pairs included)."""
    if not suffixes:
        raise ValueError("zero_frequency of an empty class")
    if not 0 <= coordinate < len(suffixes[0]):
        raise ValueError(f"coordinate {coordinate} out of range for suffix length {len(suffixes[0])}")
    m = len(suffixes)
    counts = Counter(s[coordinate] for s in suffixes)
    return Fraction(sum(c * c for c in counts.values()), m * m)
