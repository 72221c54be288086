import json
import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

import oracles
from liftlab import (
    BettiTable,
    NotMember,
    NumericalSemigroup,
    betti_table,
    divisor_complex,
    lift,
    reduced_homology_ranks,
    strongly_indispensable,
)
from liftlab.betti import DivisorComplex


@st.composite
def semigroups(draw, n_max=4, g_max=20):
    seed = draw(st.integers(0, 2**32 - 1))
    return NumericalSemigroup(oracles.random_semigroup(random.Random(seed), 2, n_max, g_max))


def simplex_faces(vertices):
    from itertools import combinations

    return frozenset(F for p in range(len(vertices) + 1) for F in combinations(vertices, p))


def test_divisor_complex_examples():
    S = NumericalSemigroup([3, 4, 5])
    cx = divisor_complex(S, 13)
    assert cx.faces == simplex_faces((1, 2, 3)) - {(1, 2, 3)}
    assert divisor_complex(S, 0).faces == frozenset({()})
    full = divisor_complex(S, 12)
    assert (1, 2, 3) in full.faces
    assert reduced_homology_ranks(full) == [0, 0, 0]
    with pytest.raises(NotMember):
        divisor_complex(S, 2)


@given(semigroups(), st.integers(0, 60))
def test_divisor_complex_faces(S, b):
    if b not in S:
        return
    cx = divisor_complex(S, b)
    assert () in cx.faces
    for F in cx.faces:
        assert b - sum(S.generators[i - 1] for i in F) in S
        for j in range(len(F)):
            assert F[:j] + F[j + 1:] in cx.faces


def test_homology_examples():
    hollow = DivisorComplex(0, 3, simplex_faces((1, 2, 3)) - {(1, 2, 3)})
    assert reduced_homology_ranks(hollow) == [0, 0, 1]
    assert reduced_homology_ranks(DivisorComplex(0, 3, simplex_faces((1, 2, 3)))) == [0, 0, 0]
    two_points = DivisorComplex(0, 2, frozenset({(), (1,), (2,)}))
    assert reduced_homology_ranks(two_points) == [0, 1]
    assert reduced_homology_ranks(DivisorComplex(0, 2, frozenset())) == [0, 0]
    assert reduced_homology_ranks(DivisorComplex(0, 2, frozenset({()}))) == [1, 0]


def test_betti_table_examples():
    assert betti_table(NumericalSemigroup([3, 4, 5])).entries == {
        1: {8: 1, 9: 1, 10: 1}, 2: {13: 1, 14: 1}
    }
    assert betti_table(NumericalSemigroup([4, 6, 9])).entries == {1: {12: 1, 18: 1}, 2: {30: 1}}
    assert betti_table(NumericalSemigroup([3, 5])).entries == {1: {15: 1}}
    assert betti_table(NumericalSemigroup([4, 11, 29])).entries == {
        1: {33: 1, 40: 1, 58: 1}, 2: {62: 1, 69: 1}
    }
    assert betti_table(NumericalSemigroup([1])).vector() == (1,)


@given(semigroups(n_max=4, g_max=16))
def test_betti_table_matches_sympy_homology(S):
    assert betti_table(S).entries == oracles.brute_betti(S.generators)


@given(semigroups(n_max=3, g_max=16))
def test_no_betti_degrees_beyond_bound(S):
    top = S.degree_bound
    beyond = range(top + 1, top + 3 * max(S.generators))
    assert betti_table(S, degrees=beyond).entries == {}


@given(semigroups(n_max=4, g_max=20), st.integers(1, 9))
def test_betti_degrees_scale(S, k):
    if gcd(k, S.m1) != 1:
        return
    assert betti_table(lift(S, k)) == betti_table(S).scaled(k)
    assert bool(strongly_indispensable(lift(S, k))) == bool(strongly_indispensable(S))


def test_strong_indispensability_examples():
    assert strongly_indispensable(NumericalSemigroup([3, 4, 5])).holds
    rep = strongly_indispensable(NumericalSemigroup([4, 6, 9]))
    assert not rep.holds and rep.violation == (1, 18, 12)
    assert rep.describe() == "false (i=1: 18-12=6 in S)"
    assert strongly_indispensable(NumericalSemigroup([3, 5])).holds


def test_repeated_degrees_are_flagged_not_failed():
    S = NumericalSemigroup([6, 10, 15])
    table = betti_table(S)
    assert table.entries == oracles.brute_betti(S.generators)
    assert table.entries[1] == {30: 2}
    rep = strongly_indispensable(S, table)
    assert rep.holds and rep.repeated == ((1, 30, 2),)
    assert rep.describe() == "true\nwarning: multiplicity 2 >= 2 at i=1, b=30"
    T = NumericalSemigroup([4, 5, 6, 7])
    assert strongly_indispensable(T).repeated == ((1, 12, 2), (2, 17, 2), (2, 18, 2), (2, 19, 2))


def test_table_json_and_csv():
    t = betti_table(NumericalSemigroup([3, 4, 5]))
    data = json.loads(json.dumps(t.to_json()))
    assert data == {"1": {"8": 1, "9": 1, "10": 1}, "2": {"13": 1, "14": 1}}
    assert BettiTable.from_json(data) == t
    assert t.csv_rows() == ["1,8,1", "1,9,1", "1,10,1", "2,13,1", "2,14,1"]
    assert t.vector() == (1, 3, 2)
    assert t.degrees(1) == [8, 9, 10]
    bi = BettiTable({1: {(8, 2): 1}}, length=2, bigraded=True)
    assert BettiTable.from_json(json.loads(json.dumps(bi.to_json()))) == bi
    assert bi.sdegree_table().entries == {1: {8: 1}}
    with pytest.raises(ValueError):
        bi.scaled(2)
