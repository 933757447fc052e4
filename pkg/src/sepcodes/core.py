"""Code data model, text (de)serialization and prefix partitioning.

A code is an ordered set of distinct words of length ``n`` over the alphabet
``[0, q-1]``. Words are plain tuples of ints so they hash and sort cheaply.

File format::

    q=<int> n=<int>
    # comment
    0 1 1
    1 0 2
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_Q = 1 << 16

Word = tuple[int, ...]


class CodeFormatError(ValueError):
    """Raised when a code file or a code construction is malformed."""


@dataclass(frozen=True)
class CodeParams:
    q: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.q, int) or self.q < 2:
            raise CodeFormatError(f"alphabet size q must be an integer >= 2, got {self.q!r}")
        if self.q > MAX_Q:
            raise CodeFormatError(f"alphabet size q={self.q} exceeds the supported maximum {MAX_Q}")
        if not isinstance(self.n, int) or self.n < 1:
            raise CodeFormatError(f"word length n must be an integer >= 1, got {self.n!r}")

    @property
    def space_size(self) -> int:
        return self.q**self.n


@dataclass(frozen=True)
class Code:
    """An immutable, insertion-ordered set of codewords."""

    params: CodeParams
    words: tuple[Word, ...]
    _index: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        words = tuple(tuple(int(s) for s in w) for w in self.words)
        if not words:
            raise CodeFormatError("a code must contain at least one codeword")
        q, n = self.params.q, self.params.n
        seen = set()
        for w in words:
            check_word(w, self.params)
            if w in seen:
                raise CodeFormatError(f"duplicate codeword {format_word(w)}")
            seen.add(w)
        object.__setattr__(self, "words", words)
        object.__setattr__(self, "_index", frozenset(seen))

    @classmethod
    def from_words(cls, words: Iterable[Sequence[int]], q: int, n: int | None = None) -> "Code":
        words = [tuple(w) for w in words]
        if n is None:
            if not words:
                raise CodeFormatError("cannot infer n from an empty word list")
            n = len(words[0])
        return cls(CodeParams(q, n), tuple(words))

    @classmethod
    def from_strings(cls, words: Iterable[str], q: int = 2) -> "Code":
        """Build from compact strings such as ``"011"`` (single-digit symbols only)."""
        return cls.from_words([tuple(int(ch) for ch in w) for w in words], q)

    @property
    def q(self) -> int:
        return self.params.q

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def size(self) -> int:
        return len(self.words)

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self) -> Iterator[Word]:
        return iter(self.words)

    def __contains__(self, word: object) -> bool:
        return tuple(word) in self._index if isinstance(word, (tuple, list)) else False

    def subcode(self, indices: Iterable[int]) -> "Code":
        return Code(self.params, tuple(self.words[i] for i in indices))

    def with_word(self, word: Sequence[int]) -> "Code":
        return Code(self.params, self.words + (tuple(word),))


def check_word(word: Sequence[int], params: CodeParams) -> None:
    if len(word) != params.n:
        raise CodeFormatError(f"codeword {format_word(word)} has length {len(word)}, expected n={params.n}")
    for s in word:
        if not 0 <= s < params.q:
            raise CodeFormatError(f"symbol {s} out of range for q={params.q}")


def format_word(word: Sequence[int]) -> str:
    return " ".join(str(s) for s in word)


_HEADER = re.compile(r"^\s*q\s*=\s*(\d+)\s+n\s*=\s*(\d+)\s*$")


def parse_code(text: str | bytes) -> Code:
    """Parse the text code format. Accepts ``str`` or UTF-8 ``bytes``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CodeFormatError("empty input: missing 'q=<int> n=<int>' header")
    m = _HEADER.match(lines[0])
    if not m:
        raise CodeFormatError(f"bad header line {lines[0]!r}; expected 'q=<int> n=<int>'")
    params = CodeParams(int(m.group(1)), int(m.group(2)))
    if len(lines) == 1:
        raise CodeFormatError("empty input: no codewords after header")
    words = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            word = tuple(int(tok) for tok in ln.split())
        except ValueError:
            raise CodeFormatError(f"line {lineno}: non-integer symbol in {ln!r}") from None
        if len(word) != params.n:
            raise CodeFormatError(f"line {lineno}: ragged line, {len(word)} symbols but n={params.n}")
        words.append(word)
    return Code(params, tuple(words))


def serialize_code(code: Code) -> str:
    lines = [f"q={code.q} n={code.n}"]
    lines.extend(format_word(w) for w in code.words)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class PrefixPartition:
    """Codewords grouped by their first ``e`` symbols.

    ``classes`` maps each occurring prefix to the tuple of suffixes (length
    ``n - e``) in order of appearance. Prefix keys are ordered lexicographically.
    Empty classes are not stored; ``r`` counts them anyway.
    """

    params: CodeParams
    e: int
    classes: dict[Word, tuple[Word, ...]]

    @property
    def f(self) -> int:
        return self.params.n - self.e

    @property
    def r(self) -> int:
        return self.params.q**self.e

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.classes.values())

    def codewords(self) -> Iterator[Word]:
        for prefix, suffixes in self.classes.items():
            for s in suffixes:
                yield prefix + s


def partition_by_prefix(code: Code, e: int) -> PrefixPartition:
    if not 0 <= e <= code.n:
        raise ValueError(f"prefix length e={e} out of range [0, {code.n}]")
    groups: dict[Word, list[Word]] = {}
    for w in code.words:
        groups.setdefault(w[:e], []).append(w[e:])
    classes = {k: tuple(groups[k]) for k in sorted(groups)}
    return PrefixPartition(code.params, e, classes)


def sum_of_squares(partition: PrefixPartition) -> int:
    return sum(len(s) ** 2 for s in partition.classes.values())
