import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anticontraction.errors import PosetError
from anticontraction.poset import (FinPoset, Hypergraph, MonotoneMap, hypergraph_to_poset, is_fair,
                                   is_final, jn_hypergraph, nonempty_subsets_op, poset_to_hypergraph,
                                   reduce_to_hypergraph_like, remove_covering_edge, upper_max, upper_set)


def closure(n, pairs):
    """Reflexive-transitive closure by Floyd-Warshall, independent of the kernel."""
    le = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        le[a][b] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                le[i][j] = le[i][j] or (le[i][k] and le[k][j])
    return frozenset((i, j) for i in range(n) for j in range(n) if le[i][j])


def natural_posets(n):
    """Every poset on range(n) whose order extends the numeric order, up to equality."""
    pairs = list(itertools.combinations(range(n), 2))
    seen = set()
    for mask in range(1 << len(pairs)):
        rel = closure(n, [p for k, p in enumerate(pairs) if mask >> k & 1])
        if rel not in seen:
            seen.add(rel)
            yield FinPoset(tuple(range(n)), rel)


@st.composite
def posets(draw, max_size=6):
    n = draw(st.integers(1, max_size))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    perm = draw(st.permutations(range(n)))
    return FinPoset.from_relations(range(n), [(perm[a], perm[b]) for a, b in chosen])


def span():
    return FinPoset.from_relations("abc", [("a", "b"), ("a", "c")])


# ------------------------------------------------------------------ construction

def test_rejects_cycle():
    with pytest.raises(PosetError):
        FinPoset.from_relations("ab", [("a", "b"), ("b", "a")])


def test_rejects_unclosed_relation():
    with pytest.raises(PosetError):
        FinPoset(("a", "b", "c"), frozenset({("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")}))


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 5), st.data())
def test_random_relations_with_a_cycle_are_rejected(n, data):
    # a closed relation with any 2-cycle violates antisymmetry
    pairs = data.draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    rel = closure(n, pairs)
    cyclic = any(a != b and (b, a) in rel for a, b in rel)
    if cyclic:
        with pytest.raises(PosetError):
            FinPoset(tuple(range(n)), rel)
    else:
        assert FinPoset(tuple(range(n)), rel).leq == rel


# ------------------------------------------------------------------ upper sets

def test_upper_sets_on_chain():
    c = FinPoset.chain(3)
    assert upper_set(c, 0) == {0, 1, 2}
    assert upper_max(c, 0) == {2}


def test_upper_max_on_span():
    assert upper_max(span(), "a") == {"b", "c"}


def test_upper_max_of_edge_in_j2():
    j2 = hypergraph_to_poset(jn_hypergraph(2))
    assert upper_max(j2, "e0") == {0, 1}


def test_unknown_element():
    with pytest.raises(PosetError):
        upper_set(span(), "z")


@settings(max_examples=80, deadline=None)
@given(posets())
def test_upper_set_contains_itself_and_max_is_maximal(p):
    for i in p:
        up = upper_set(p, i)
        assert i in up
        assert up == {j for j in p if (i, j) in p.leq}
        assert upper_max(p, i) == {j for j in up if not any(j != k and (j, k) in p.leq for k in up)}


# --------------------------------------------------------------- edge removal

def test_remove_edge_from_diamond():
    d = FinPoset.from_relations("abdt", [("d", "a"), ("d", "b"), ("a", "t"), ("b", "t")])
    r = remove_covering_edge(d, "d", "a")
    assert not r.le("d", "a")
    assert r.le("d", "t") and r.le("d", "b")
    assert r.leq == d.leq - {("d", "a")}


def test_remove_edge_keeps_path_through_middle():
    p = FinPoset.from_relations("abcm", [("a", "b"), ("a", "c"), ("a", "m"), ("m", "b")])
    # a < b is implied by a < m < b, so it is not covering
    with pytest.raises(PosetError):
        remove_covering_edge(p, "a", "b")
    r = remove_covering_edge(p, "a", "m")
    # only the pair itself goes; a <= b survives as its own relation
    assert not r.le("a", "m") and r.le("a", "b") and r.le("a", "c")


def test_remove_edge_from_two_chain():
    assert remove_covering_edge(FinPoset.chain(2), 0, 1) == FinPoset.discrete(range(2))


def test_remove_non_covering_pair():
    with pytest.raises(PosetError):
        remove_covering_edge(FinPoset.chain(3), 0, 2)


@settings(max_examples=60, deadline=None)
@given(posets())
def test_removing_any_cover_gives_a_poset_below(p):
    for a, b in p.covers:
        r = remove_covering_edge(p, a, b)
        assert r.leq == p.leq - {(a, b)}
        MonotoneMap(r, p, {x: x for x in p})


# ----------------------------------------------------------- fair and final

def _brute_final(f):
    src, tgt = f.source, f.target
    for j in tgt:
        pre = [i for i in src if (j, f(i)) in tgt.leq]
        if not pre:
            return False
        edges = [(a, b) for a in pre for b in pre if (a, b) in src.leq]
        reach, stack = {pre[0]}, [pre[0]]
        while stack:
            u = stack.pop()
            for a, b in edges:
                for x, y in ((a, b), (b, a)):
                    if x == u and y not in reach:
                        reach.add(y)
                        stack.append(y)
        if len(reach) != len(pre):
            return False
    return True


def test_identity_is_fair_and_final():
    for p in (span(), FinPoset.chain(3), nonempty_subsets_op(3)):
        assert is_fair(MonotoneMap.identity(p))
        assert is_final(MonotoneMap.identity(p))


def test_span_to_point_is_fair():
    pt = FinPoset.discrete(["*"])
    f = MonotoneMap(span(), pt, {x: "*" for x in "abc"})
    assert is_fair(f)
    assert is_final(f)


def test_discrete_to_point_is_not_final():
    pt = FinPoset.discrete(["*"])
    f = MonotoneMap(FinPoset.discrete("ab"), pt, {"a": "*", "b": "*"})
    assert not is_final(f)


def test_non_sinking_edge_removal_is_fair_and_final():
    p = FinPoset.from_relations("abcm", [("a", "m"), ("m", "b"), ("a", "c")])
    r = remove_covering_edge(p, "a", "m")
    f = MonotoneMap(r, p, {x: x for x in p})
    assert is_fair(f) and is_final(f)


def test_unfair_map_missing_lower_bound():
    # two tops with no common lower bound mapped onto a span
    src = FinPoset.discrete("bc")
    f = MonotoneMap(src, span(), {"b": "b", "c": "c"})
    assert not is_fair(f)


# -------------------------------------------------------------- hypergraphs

def test_hypergraph_with_no_edges():
    h = Hypergraph(("v",), (), {})
    assert hypergraph_to_poset(h) == FinPoset.discrete(["v"])


def test_jn_hypergraph_gives_j2():
    j2 = hypergraph_to_poset(jn_hypergraph(2))
    assert set(j2.elements) == {0, 1, 2, "e0", "e1"}
    assert {(a, b) for a, b in j2.leq if a != b} == {("e0", 0), ("e0", 1), ("e1", 1), ("e1", 2)}


def test_chain_is_not_hypergraph_like():
    with pytest.raises(PosetError):
        poset_to_hypergraph(FinPoset.chain(3))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.data())
def test_hypergraph_round_trip(nv, ne, data):
    verts = tuple(f"v{k}" for k in range(nv))
    edges = tuple(f"e{k}" for k in range(ne))
    inc = {e: data.draw(st.sets(st.sampled_from(verts), min_size=1)) for e in edges}
    h = Hypergraph(verts, edges, inc)
    p = hypergraph_to_poset(h)
    assert p.is_hypergraph_like()
    back = poset_to_hypergraph(p)
    assert set(back.vertices) | set(back.edges) == set(verts) | set(edges)
    assert back == h
    assert hypergraph_to_poset(back) == p


# ------------------------------------------------------------------ reduction

def test_reduce_hypergraph_like_is_identity():
    p = hypergraph_to_poset(jn_hypergraph(2))
    q, f = reduce_to_hypergraph_like(p)
    assert q == p
    assert all(f(x) == x for x in p)


def test_reduce_chain():
    q, f = reduce_to_hypergraph_like(FinPoset.chain(3))
    assert {(a, b) for a, b in q.leq if a != b} == {(0, 2), (1, 2)}
    assert q.is_hypergraph_like()
    assert is_fair(f) and is_final(f)


def test_reduce_span_with_diagonal():
    p = FinPoset.from_relations("abcm", [("a", "m"), ("m", "b"), ("a", "c")])
    q, _ = reduce_to_hypergraph_like(p)
    assert {(a, b) for a, b in q.leq if a != b} == {("a", "b"), ("a", "c"), ("m", "b")}


def _check_reduction(p):
    q, f = reduce_to_hypergraph_like(p)
    assert q.elements == p.elements
    assert q.leq <= p.leq
    assert q.maximal == p.maximal
    assert all(x in q.maximal or x in q.minimal for x in q)
    assert is_fair(f)
    assert is_final(f) and _brute_final(f)
    # idempotent, and removing nothing further changes nothing
    q2, _ = reduce_to_hypergraph_like(q)
    assert q2 == q


def test_reduction_exhaustive_up_to_five():
    count = 0
    for n in range(1, 6):
        for p in natural_posets(n):
            _check_reduction(p)
            count += 1
    assert count > 100


@settings(max_examples=150, deadline=None)
@given(posets(6))
def test_reduction_random_six(p):
    _check_reduction(p)


@settings(max_examples=60, deadline=None)
@given(posets(5))
def test_final_matches_brute_force_on_reductions(p):
    # random monotone maps are hard to draw; collapse maps onto a chain are monotone
    q, f = reduce_to_hypergraph_like(p)
    assert is_final(f) == _brute_final(f)
    rank = {x: len(p.lower_set(x)) for x in p}
    top = max(rank.values())
    c = FinPoset.chain(top)
    g = MonotoneMap(p, c, {x: rank[x] - 1 for x in p})
    assert is_final(g) == _brute_final(g)


def test_nonempty_subsets_op_size():
    p = nonempty_subsets_op(3)
    assert len(p) == 7
    assert p.maximal == {"0", "1", "2"}
    assert p.minimal == {"012"}
