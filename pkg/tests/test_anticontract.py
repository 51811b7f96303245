import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anticontraction.anticolim import antipushout
from anticontraction.anticontract import (anticontract, anticontractions, concat, contract_range, jn_poset,
                                          lift_scheme, recursive_anticontract, round_trip, zigzag_anticolimits)
from anticontraction.errors import MoveError, ValidationError
from anticontraction.fincat import FINSET, carrier
from anticontraction.poset import FinPoset, hypergraph_to_poset, jn_hypergraph
from anticontraction.zigzag import ZigCategory, Zigzag, contraction, restrict
from oracles import fmap, ident, rand_fun, rand_zigzag, sset

ZS = ZigCategory(FINSET)
ZZ = ZigCategory(ZS)


def cell(sing, fwd, bwd, reg=1):
    """A length-1 zigzag of finite sets with the given boundary tables."""
    r, s = sset(reg), sset(sing)
    return Zigzag([r, r], [s], [fmap(r, s, fwd)], [fmap(r, s, bwd)])


# ---------------------------------------------------------------- J_n

def test_jn_sizes_and_maxima():
    for n in range(5):
        j = jn_poset(n)
        assert len(j) == 2 * n + 1
        assert j.maximal == set(range(n + 1))
        assert j.is_hypergraph_like()
        assert j == hypergraph_to_poset(jn_hypergraph(n))


def test_j0_is_a_point_and_j1_a_span():
    assert jn_poset(0) == FinPoset.discrete([0])
    j1 = jn_poset(1)
    assert {(a, b) for a, b in j1.leq if a != b} == {("e0", 0), ("e0", 1)}


def test_jn_negative():
    with pytest.raises(ValidationError):
        jn_poset(-1)


# ---------------------------------------------------------- anticontract

def test_identity_leg_gives_identity_map():
    x = cell(2, (0,), (1,))
    f = anticontract(ZS, x, [ident(x.singulars[0])])
    assert f == ZS.identity(x)
    assert round_trip(ZS, f)


def test_split_two_points():
    # {0} and {1} into {0,1}: the only anticolimit has an empty middle
    x = cell(2, (0,), (1,))
    legs = [fmap(sset(1), sset(2), (0,)), fmap(sset(1), sset(2), (1,))]
    (f,) = list(anticontractions(ZS, x, legs))
    assert len(f.source) == 2
    assert carrier(f.source.regulars[1]) == ()
    assert f.source.regulars[0] == x.regulars[0] and f.source.regulars[2] == x.regulars[1]
    assert tuple(f.sslices) == tuple(legs)
    assert f.target == x
    assert contraction(ZS, f.source) == f


def test_anticontractions_match_antipushouts():
    # with both boundary lifts available, the middle regular objects are the antipushout apexes
    s = sset(3)
    x = cell(3, (0,), (2,))
    legs = [fmap(sset(2), s, (0, 1)), fmap(sset(2), s, (1, 2))]
    got = {(f.source.forward[1].table, f.source.backward[0].table) for f in anticontractions(ZS, x, legs, 5)}
    want = {(a.extension.arrow("e0", 1).table, a.extension.arrow("e0", 0).table)
            for a in antipushout(FINSET, legs[0], legs[1], 5)}
    assert got == want and got


def test_not_jointly_epic_has_no_anticontraction():
    x = cell(3, (0,), (1,))
    legs = [fmap(sset(1), sset(3), (0,)), fmap(sset(1), sset(3), (1,))]
    assert list(anticontractions(ZS, x, legs)) == []
    with pytest.raises(MoveError):
        anticontract(ZS, x, legs)


def test_missing_boundary_lift_gives_nothing():
    x = cell(2, (0,), (1,))
    legs = [fmap(sset(1), sset(2), (1,)), fmap(sset(1), sset(2), (0,))]
    assert list(anticontractions(ZS, x, legs)) == []


def test_pick_out_of_range():
    x = cell(2, (0,), (1,))
    with pytest.raises(MoveError, match="pick"):
        anticontract(ZS, x, [ident(x.singulars[0])], pick=3)


def test_request_validation():
    x = cell(2, (0,), (1,))
    with pytest.raises(ValidationError):
        anticontract(ZS, x, [])
    with pytest.raises(ValidationError):
        anticontract(ZS, x, [ident(sset(3))])
    with pytest.raises(ValidationError):
        anticontract(ZS, concat(ZS, [x, x]), [ident(x.singulars[0])])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_round_trip_property(seed):
    rng = random.Random(seed)
    size = rng.randint(1, 3)
    s = sset(size)
    legs = []
    for _ in range(rng.randint(1, 3)):
        a = sset(rng.randint(1, 2))
        legs.append(rand_fun(rng, a, s))
    x = cell(size, (legs[0](0),), (legs[-1](0),))
    for f in anticontractions(ZS, x, legs, 3):
        assert ZS.is_valid_map(f) and ZS.is_globular(f)
        assert f.target == x and tuple(f.sslices) == tuple(legs)
        assert round_trip(ZS, f)


# -------------------------------------------------------- zigzag anticolimits

def test_singleton_sink_gives_constant_extension():
    y = rand_zigzag(random.Random(2), 2)
    shape = FinPoset.discrete([0])
    (d,) = list(zigzag_anticolimits(ZS, shape, {0: y}, {}, y, {0: ZS.identity(y)}))
    assert d.objects == {0: y}


# ------------------------------------------------------------ lift scheme

def test_step_a_identity_boundaries():
    x = cell(2, (0,), (1,))
    g = ident(x.singulars[0])
    m, step = lift_scheme(ZS, x, g)
    assert step == "a"
    assert m == anticontract(ZS, x, [g])


def test_step_b_relabel_then_anticontract():
    # only the left boundary lifts along g; the right one is factorised and
    # becomes the second leg
    x = cell(2, (0,), (1,))
    g = fmap(sset(1), sset(2), (0,))
    m, step = lift_scheme(ZS, x, g)
    assert step == "b-right"
    assert len(m.source) == 2
    assert m.sslices[0] == g
    assert m.sslices[1].table == (1,)
    assert round_trip(ZS, m)


def test_step_b_on_the_other_side():
    x = cell(2, (0,), (1,))
    g = fmap(sset(1), sset(2), (1,))
    m, step = lift_scheme(ZS, x, g)
    assert step == "b-left"
    assert m.sslices[-1] == g


def test_step_c_bubble():
    x = cell(3, (0,), (1,))
    g = fmap(sset(1), sset(3), (2,))
    m, step = lift_scheme(ZS, x, g)
    assert step == "c"
    assert m.source.singulars == (x.singulars[0], x.singulars[0])
    assert m.source.regulars[1] == g.source
    assert all(s == ident(x.singulars[0]) for s in m.sslices)
    assert ZS.is_globular(m)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_lift_scheme_always_succeeds(seed):
    rng = random.Random(seed)
    x = rand_zigzag(rng, 1)
    s = x.singulars[0]
    a = sset(rng.randint(0, 2))
    g = rand_fun(rng, a, s)
    m, step = lift_scheme(ZS, x, g, 3)
    assert step in {"a", "b-left", "b-right", "c"}
    assert ZS.is_valid_map(m) and ZS.is_globular(m) and m.target == x


# ------------------------------------------------------------ recursion

def _check_recursive(zcat, d, m):
    assert zcat.is_valid_map(m) and zcat.is_globular(m)
    assert m.target == d
    assert m.source.regulars[0] == d.regulars[0]
    assert m.source.regulars[-1] == d.regulars[-1]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_recursive_depth_one(seed):
    rng = random.Random(seed)
    d = rand_zigzag(rng, rng.randint(1, 3))
    h = rng.randrange(len(d))
    m, info = recursive_anticontract(ZS, d, [h], [ident(d.singulars[h])])
    _check_recursive(ZS, d, m)
    assert [i.step for i in info] == ["anticontract"]
    assert len(m.source) == len(d)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_recursive_depth_two(seed):
    rng = random.Random(seed)
    y = rand_zigzag(rng, rng.randint(1, 2))
    d = Zigzag([y, y], [y], [ZS.identity(y)], [ZS.identity(y)])
    h = rng.randrange(len(y))
    s = y.singulars[h]
    # the innermost step has no fallback, so use a leg that anticontracts there
    g = rand_fun(rng, sset(rng.randint(1, 2)), s)
    span = restrict(y, h, h + 1)
    if not any(True for _ in anticontractions(ZS, span, [g], 3)):
        g = ident(s)
    m, info = recursive_anticontract(ZZ, d, [0, h], [g], bound=3)
    _check_recursive(ZZ, d, m)
    assert [i.depth for i in info] == [0, 1]
    assert info[0].step in {"a", "b-left", "b-right", "c"}


def test_recursive_bad_paths():
    d = rand_zigzag(random.Random(4), 2)
    legs = [ident(d.singulars[0])]
    with pytest.raises(MoveError):
        recursive_anticontract(ZS, d, [], legs)
    with pytest.raises(MoveError, match="out of range"):
        recursive_anticontract(ZS, d, [5], legs)
    with pytest.raises(MoveError, match="deeper"):
        recursive_anticontract(ZS, d, [0, 0], legs)


# ------------------------------------------------------------ contract range

@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_contract_range(seed):
    rng = random.Random(seed)
    d = rand_zigzag(rng, rng.randint(1, 4))
    a = rng.randint(0, len(d) - 1)
    b = rng.randint(a + 1, len(d))
    m = contract_range(ZS, d, a, b)
    assert ZS.is_valid_map(m) and ZS.is_globular(m)
    assert len(m.target) == len(d) - (b - a) + 1
    assert restrict(m.target, 0, a) == restrict(d, 0, a)


def test_contract_range_bounds():
    d = rand_zigzag(random.Random(1), 2)
    with pytest.raises(MoveError):
        contract_range(ZS, d, 1, 4)
