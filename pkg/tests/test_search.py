import math

import pytest

from _oracles import brute_max, naive_holds, words_of
from sepcodes.core import CodeParams
from sepcodes.predicates import CodeProperty
from sepcodes.search import (
    SearchConfig,
    SearchGuardError,
    max_code_search,
    search_table,
)


def run(q, n, prop, **kw):
    return max_code_search(SearchConfig(CodeParams(q, n), CodeProperty.parse(prop), **kw))


@pytest.mark.parametrize(
    "q, n, prop",
    [(2, n, p) for n in (1, 2, 3) for p in ("b2", "sep:2", "fp:1", "fp:2", "sep:3")]
    + [(3, 2, p) for p in ("b2", "sep:2", "fp:2")],
)
def test_matches_brute_force(q, n, prop):
    res = run(q, n, prop)
    size, _ = brute_max(q, n, prop)
    assert res.complete
    assert res.max_size == size == res.witness.size
    assert naive_holds(prop, res.witness.words)


def test_small_oracle_values():
    r = run(2, 1, "b2")
    assert (r.max_size, r.witness.words, r.complete) == (2, ((0,), (1,)), True)
    r = run(2, 2, "b2")
    assert r.max_size == 3 and r.complete
    assert r.witness.words == ((0, 0), (0, 1), (1, 0))
    assert run(2, 2, "sep2").max_size == 3


def test_witness_is_lex_smallest():
    # lex-smallest maximum code among all maximum codes, by brute force
    from itertools import combinations

    for q, n, prop in [(2, 2, "b2"), (2, 3, "sep:2"), (3, 2, "b2"), (2, 3, "fp:2")]:
        res = run(q, n, prop, use_symmetry=False)
        best = next(
            S for S in combinations(words_of(q, n), res.max_size) if naive_holds(prop, S)
        )
        assert res.witness.words == best


@pytest.mark.parametrize("prop", ["b2", "sep2", "fp:2"])
def test_symmetry_does_not_change_size(prop):
    for q, n in [(2, 3), (2, 4), (3, 2), (3, 3)]:
        assert run(q, n, prop).max_size == run(q, n, prop, use_symmetry=False).max_size


@pytest.mark.parametrize("prop", ["b2", "sep2"])
def test_python_kernel_agrees_with_compiled(prop):
    for q, n in [(2, 3), (2, 4), (3, 2)]:
        a = run(q, n, prop)
        b = run(q, n, prop, use_compiled=False)
        assert a == b and a.format() == b.format()


def test_workers_deterministic():
    base = run(2, 4, "b2")
    for w in (2, 3):
        assert run(2, 4, "b2", workers=w).format() == base.format()


def test_node_limit_gives_valid_maximal_code():
    res = run(3, 3, "sep2", node_limit=50)
    assert not res.complete and res.nodes_explored <= 50
    prop = CodeProperty.parse("sep2")
    assert prop.holds(res.witness)
    for w in words_of(3, 3):
        if w not in res.witness:
            assert not prop.holds(res.witness.with_word(w))


def test_disjoint_reading_is_never_smaller():
    for prop in ("sep:2", "sep:3"):
        strict = run(2, 3, prop).max_size
        loose = run(2, 3, prop, disjoint_reading=True).max_size
        assert loose >= strict
    assert run(2, 3, "sep:2", disjoint_reading=True).max_size == run(2, 3, "sep:2").max_size


def test_guards():
    with pytest.raises(SearchGuardError):
        SearchConfig(CodeParams(2, 25), CodeProperty.parse("b2"))
    with pytest.raises(SearchGuardError):
        SearchConfig(CodeParams(2, 2), CodeProperty.parse("b2"), node_limit=0)
    with pytest.raises(SearchGuardError):
        SearchConfig(CodeParams(2, 2), CodeProperty.parse("b2"), workers=0)


def test_search_table():
    rows = search_table(2, 2, CodeProperty.parse("b2"))
    assert [(r.n, r.max_size) for r in rows] == [(1, 2), (2, 3)]
    assert rows[0].rate == 1.0 and math.isclose(rows[1].rate, math.log2(3) / 2)
    assert rows[0].exceeds_bound and rows[0].bound == 0.6
    assert search_table(2, 0, CodeProperty.parse("b2")) == []


def test_summary_line():
    res = run(2, 1, "b2")
    assert res.format() == "q=2 n=1\n0\n1\nmax_size=2 nodes=3 complete=true\n"
