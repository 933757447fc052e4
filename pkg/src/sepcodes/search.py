"""Exhaustive maximum-code search at small (q, n).

Words of ``[0, q-1]^n`` are indexed in lexicographic order and codes are
grown as increasing index sequences. All supported properties are hereditary
(subcodes of valid codes are valid), which makes a Russian-doll bound sound:
``c[i]``, the largest valid code using only words ``>= i``, is computed for
``i = N-1 .. 0`` and bounds every partial search. ``c[0]`` is the answer.

2-bar-separability and B2 are both equivalent to injectivity of the matching
phi map on ordered pairs of distinct codewords, so those two run on a compiled
image-table kernel. Frameproof and t-bar-separable (t >= 3) use the generic
incremental predicates.

Parallelism splits each Russian-doll stage into its second-level subtrees.
Results are folded in subtree order with the same node accounting as the
sequential run, so output never depends on the worker count.
"""

from __future__ import annotations

import logging
import math
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import _kernels
from .core import Code, CodeParams, serialize_code
from .phimap import PhiVariant, pack_phi
from .predicates import (
    CodeProperty,
    PropertyKind,
    b2_extends,
    b2_sums,
    frameproof_extends,
    separable_extends,
)

log = logging.getLogger(__name__)

FOUND, EXHAUSTED, BUDGET = _kernels.FOUND, _kernels.EXHAUSTED, _kernels.BUDGET

EXHAUSTIVE_MAX_WORDS = 1 << 24
TABLE_MAX_WORDS = 2048
TABLE_MAX_IMAGES = 1 << 26
PROGRESS_EVERY = 10**6


class SearchGuardError(ValueError):
    """Raised when a search configuration violates the exhaustive-mode guard."""


@dataclass(frozen=True)
class SearchConfig:
    params: CodeParams
    property: CodeProperty
    node_limit: int = 10**8
    use_symmetry: bool = True
    workers: int = 1
    disjoint_reading: bool = False
    use_compiled: bool = True

    def __post_init__(self) -> None:
        if self.node_limit < 1:
            raise SearchGuardError(f"node_limit must be >= 1, got {self.node_limit}")
        if self.workers < 1:
            raise SearchGuardError(f"workers must be >= 1, got {self.workers}")
        if self.params.space_size > EXHAUSTIVE_MAX_WORDS:
            raise SearchGuardError(
                f"q^n = {self.params.space_size} exceeds the exhaustive-search guard 2^24"
            )


@dataclass(frozen=True)
class SearchResult:
    params: CodeParams
    property: CodeProperty
    max_size: int
    witness: Code
    nodes_explored: int
    complete: bool
    stage_bounds: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def summary_line(self) -> str:
        return f"max_size={self.max_size} nodes={self.nodes_explored} complete={str(self.complete).lower()}"

    def format(self) -> str:
        return serialize_code(self.witness) + self.summary_line() + "\n"

    @property
    def rate(self) -> float:
        return math.log(self.max_size, self.params.q) / self.params.n


def all_words(q: int, n: int) -> list[tuple[int, ...]]:
    return list(product(range(q), repeat=n))


def phi_variant_for(prop: CodeProperty) -> PhiVariant | None:
    if prop.kind is PropertyKind.B2:
        return PhiVariant.B2DIFF
    if prop.kind is PropertyKind.SEPARABLE and prop.t == 2:
        # any two distinct 2-sets with equal unions are disjoint, so both readings agree
        return PhiVariant.SEPARABLE
    return None


def is_canonical_start(word: tuple[int, ...], prop: CodeProperty, q: int) -> bool:
    """Whether some maximum code can be assumed to have ``word`` as its least element.

    Separable and frameproof codes are invariant under per-coordinate symbol
    permutations, so any code maps to one containing the zero word. B2 is
    invariant under translation, so shifting each coordinate's minimum to 0
    gives a code whose least word starts with 0 (and for q = 2 the per-coordinate
    flip also reaches the zero word).
    """
    if prop.kind is PropertyKind.B2 and q > 2:
        return word[0] == 0
    return not any(word)


class _LazyImages:
    """``img[x][y]`` computed on demand for spaces too large for a table."""

    def __init__(self, words, variant: PhiVariant, q: int) -> None:
        self.words, self.variant, self.q = words, variant, q
        self._rows: dict[int, _LazyRow] = {}

    def __getitem__(self, x: int) -> "_LazyRow":
        row = self._rows.get(x)
        if row is None:
            row = self._rows[x] = _LazyRow(self, x)
        return row


class _LazyRow:
    def __init__(self, owner: _LazyImages, x: int) -> None:
        self.owner, self.x = owner, x

    def __getitem__(self, y: int) -> int:
        o = self.owner
        return pack_phi(o.variant, o.words[self.x], o.words[y], o.q)


class _PhiKernel:
    def __init__(self, words, variant: PhiVariant, q: int, n: int, compiled: bool) -> None:
        N = len(words)
        n_images = variant.alphabet_size(q) ** n
        self.compiled = compiled and N <= TABLE_MAX_WORDS and n_images <= TABLE_MAX_IMAGES
        if N <= TABLE_MAX_WORDS:
            table = np.array([[pack_phi(variant, a, b, q) for b in words] for a in words], dtype=np.int64)
            self.img = table if self.compiled else table.tolist()
        else:
            self.img = _LazyImages(words, variant, q)
        self.n_images = n_images

    def search(self, cbound, prefix, pool, target, budget):
        if self.compiled:
            st, nodes, code = _kernels.phi_search(
                self.img,
                self.n_images,
                np.asarray(cbound, dtype=np.int64),
                np.asarray(prefix, dtype=np.int64),
                np.asarray(pool, dtype=np.int64),
                target,
                budget,
            )
            return int(st), int(nodes), [int(x) for x in code]
        return _kernels.phi_search_py(self.img, cbound, prefix, pool, target, budget)


class _PredicateKernel:
    """Same search shape as the phi kernel, driven by incremental predicates."""

    def __init__(self, words, prop: CodeProperty, disjoint: bool) -> None:
        self.words = words
        self.prop = prop
        self.disjoint = disjoint

    def _extends(self, code: list[int], y: int) -> bool:
        ws = [self.words[i] for i in code]
        if self.prop.kind is PropertyKind.FRAMEPROOF:
            return frameproof_extends(ws, self.words[y], self.prop.t)
        return separable_extends(ws, self.words[y], self.prop.t, disjoint_only=self.disjoint)

    def search(self, cbound, prefix, pool, target, budget):
        code = list(prefix)
        nodes = 0

        def dfs(cands):
            nonlocal nodes
            M = len(code)
            for k, cw in enumerate(cands):
                if M + (len(cands) - k) < target or M + cbound[cw] < target:
                    return EXHAUSTED
                code.append(cw)
                nodes += 1
                if len(code) >= target:
                    return FOUND
                if nodes >= budget:
                    return BUDGET
                status = dfs([y for y in cands[k + 1:] if self._extends(code, y)])
                if status != EXHAUSTED:
                    return status
                code.pop()
            return EXHAUSTED

        status = dfs([y for y in pool if self._extends(code, y)])
        return status, nodes, list(code)


def _build_kernel(config: SearchConfig, words):
    variant = phi_variant_for(config.property)
    if variant is not None:
        return _PhiKernel(words, variant, config.params.q, config.params.n, config.use_compiled)
    return _PredicateKernel(words, config.property, config.disjoint_reading)


# Worker processes receive the kernel once through the pool initializer.
_WORKER_KERNEL = None


def _init_worker(kernel) -> None:
    global _WORKER_KERNEL
    _WORKER_KERNEL = kernel


def _run_task(kernel, cbound, prefix, pool, target, budget):
    """Push the last prefix word (one node) and search below it."""
    if len(prefix) >= target:
        return FOUND, 1, list(prefix)
    if budget <= 1:
        return BUDGET, 1, list(prefix)
    st, nodes, code = kernel.search(cbound, prefix, pool, target, budget - 1)
    return st, nodes + 1, code


def _worker_task(args):
    return _run_task(_WORKER_KERNEL, *args)


class _Searcher:
    def __init__(self, config: SearchConfig) -> None:
        self.config = config
        q, n = config.params.q, config.params.n
        self.words = all_words(q, n)
        self.N = len(self.words)
        self.kernel = _build_kernel(config, self.words)
        self.cbound = np.zeros(self.N + 1, dtype=np.int64)
        self.nodes = 0
        self.pool: ProcessPoolExecutor | None = None

    def _stage(self, i: int, target: int, budget: int):
        """Look for a valid code of size ``target`` whose least word is ``i``."""
        nodes = 1
        if target <= 1:
            return FOUND, nodes, [i]
        if nodes >= budget:
            return BUDGET, nodes, [i]
        level1 = list(range(i + 1, self.N))
        c = self.cbound
        tasks = []
        for k, w in enumerate(level1):
            if 1 + (len(level1) - k) < target or 1 + c[w] < target:
                break
            tasks.append(([i, w], level1[k + 1:]))
        best_code = [i]
        for status, task_nodes, code in self._run_tasks(tasks, target, budget - nodes):
            nodes += task_nodes
            if status == EXHAUSTED:
                continue
            return status, nodes, code if status == FOUND else best_code
        return EXHAUSTED, nodes, best_code

    def _run_tasks(self, tasks, target, budget):
        """Yield task results in order, with sequential budget semantics."""
        cb = self.cbound
        if self.pool is None:
            remaining = budget
            for prefix, pool in tasks:
                res = _run_task(self.kernel, cb, prefix, pool, target, remaining)
                remaining -= res[1]
                yield res
                if res[0] != EXHAUSTED:
                    return
            return
        chunk = 4 * self.config.workers
        remaining = budget
        for start in range(0, len(tasks), chunk):
            batch = tasks[start:start + chunk]
            args = [(cb, prefix, pool, target, remaining) for prefix, pool in batch]
            results = list(self.pool.map(_worker_task, args))
            for (prefix, pool), res in zip(batch, results):
                st, nd, _ = res
                if st == BUDGET or nd > remaining:
                    # a sequential run would have reached the budget inside this task
                    res = _run_task(self.kernel, cb, prefix, pool, target, remaining)
                remaining -= res[1]
                yield res
                if res[0] != EXHAUSTED:
                    return

    def _valid_extension(self, code: list[int], y: int) -> bool:
        ws = [self.words[i] for i in code]
        w = self.words[y]
        prop = self.config.property
        if prop.kind is PropertyKind.B2:
            return b2_extends(b2_sums(ws), ws, w)
        if prop.kind is PropertyKind.FRAMEPROOF:
            return frameproof_extends(ws, w, prop.t)
        return separable_extends(ws, w, prop.t, disjoint_only=self.config.disjoint_reading)

    def _greedy_extend(self, code: list[int]) -> list[int]:
        """Lexicographic greedy closure of a valid code (used for incomplete results)."""
        cur = sorted(code)
        members = set(cur)
        for y in range(self.N):
            if y not in members and self._valid_extension(cur, y):
                cur = sorted(cur + [y])
                members.add(y)
        return cur

    def run(self) -> SearchResult:
        cfg = self.config
        N = self.N
        limit = cfg.node_limit
        c = self.cbound
        found_at: dict[int, list[int]] = {}
        best: list[int] = []
        complete = True
        next_report = PROGRESS_EVERY
        if cfg.workers > 1:
            ctx = multiprocessing.get_context("fork")
            self.pool = ProcessPoolExecutor(cfg.workers, mp_context=ctx, initializer=_init_worker, initargs=(self.kernel,))
        try:
            for i in range(N - 1, -1, -1):
                target = int(c[i + 1]) + 1
                status, nodes, code = self._stage(i, target, limit - self.nodes)
                self.nodes += nodes
                if status == FOUND:
                    c[i] = target
                    found_at[i] = code
                    best = code
                elif status == EXHAUSTED:
                    c[i] = c[i + 1]
                else:
                    complete = False
                    break
                if self.nodes >= next_report:
                    log.info("search q=%d n=%d %s: stage %d/%d, bound %d, %d nodes",
                             cfg.params.q, cfg.params.n, cfg.property, N - i, N, c[i], self.nodes)
                    next_report = (self.nodes // PROGRESS_EVERY + 1) * PROGRESS_EVERY
            if complete:
                best, complete = self._witness_pass(found_at)
        finally:
            if self.pool is not None:
                self.pool.shutdown()
                self.pool = None
        if not complete:
            best = self._greedy_extend(best)
        witness = Code(cfg.params, tuple(self.words[i] for i in best))
        return SearchResult(cfg.params, cfg.property, len(best), witness, self.nodes, complete, tuple(int(x) for x in c))

    def _witness_pass(self, found_at: dict[int, list[int]]) -> tuple[list[int], bool]:
        """Lexicographically smallest maximum code: first start word admitting size ``c[0]``."""
        cfg = self.config
        K = int(self.cbound[0])
        starts = [i for i in range(self.N) if self.cbound[i] == K]
        if cfg.use_symmetry:
            canon = [i for i in starts if is_canonical_start(self.words[i], cfg.property, cfg.params.q)]
            starts = canon + [i for i in starts if i not in set(canon)]
        for i in starts:
            code = found_at.get(i)
            if code is not None and len(code) == K:
                return code, True
            status, nodes, code = self._stage(i, K, cfg.node_limit - self.nodes)
            self.nodes += nodes
            if status == FOUND:
                return code, True
            if status == BUDGET:
                return found_at[max(found_at)] if found_at else [], False
        raise AssertionError("Russian-doll bound reached c[0] without a witness")


def max_code_search(config: SearchConfig) -> SearchResult:
    return _Searcher(config).run()


@dataclass(frozen=True)
class TableRow:
    n: int
    max_size: int
    rate: float
    bound: float
    exceeds_bound: bool
    complete: bool


def property_rate_bound(prop: CodeProperty, q: int) -> float:
    from .bounds import rate_bound_b2, rate_bound_reference, rate_bound_sep2

    if prop.kind is PropertyKind.B2:
        return float(rate_bound_b2(q))
    if prop.kind is PropertyKind.SEPARABLE:
        if prop.t == 2:
            return float(rate_bound_sep2(q))
        return float(rate_bound_reference("separable_general", prop.t))
    return float(rate_bound_reference("frameproof", prop.t))


def search_table(q: int, n_max: int, prop: CodeProperty, **config_kwargs) -> list[TableRow]:
    """Maximum code size and base-q rate for ``n = 1 .. n_max``.

    Small-n rates can exceed the asymptotic bound; such rows are flagged, not rejected.
    """
    rows = []
    bound = property_rate_bound(prop, q)
    for n in range(1, n_max + 1):
        res = max_code_search(SearchConfig(CodeParams(q, n), prop, **config_kwargs))
        rate = res.rate
        rows.append(TableRow(n, res.max_size, rate, bound, rate > bound, res.complete))
    return rows
