import json
import random
from math import gcd

import pytest
from hypothesis import given, strategies as st

import oracles
from liftlab import (
    CmReport,
    Factorization,
    M1NotMultiplicity,
    NoLiftableFactorization,
    NumericalSemigroup,
    cm_threshold,
    critical_monomials,
    is_tangent_cone_cm,
    lift,
)
from liftlab.cm import all_witnesses, pair_threshold, predicted_cm


@st.composite
def semigroups(draw, n_max=4, g_max=30):
    seed = draw(st.integers(0, 2**32 - 1))
    return NumericalSemigroup(oracles.random_semigroup(random.Random(seed), 2, n_max, g_max))


def test_critical_monomial_examples():
    assert critical_monomials(NumericalSemigroup([3, 5])) == []
    crit = [M.exponents for M in critical_monomials(NumericalSemigroup([4, 11, 29]))]
    assert (0, 3, 0) in crit
    assert len(crit) == 12
    assert (0, 0, 0) not in crit
    S = NumericalSemigroup([4, 11, 29])
    for M in crit:
        assert M[0] == 0 and max(M[1:]) < 4 and M != (0, 0, 0)
        b = 11 * M[1] + 29 * M[2]
        assert b - 4 in S


def test_cm_examples():
    assert is_tangent_cone_cm(NumericalSemigroup([3, 4, 5])).is_cm
    assert is_tangent_cone_cm(NumericalSemigroup([3, 5])).is_cm
    rep = is_tangent_cone_cm(NumericalSemigroup([4, 11, 29]))
    assert not rep.is_cm and rep.k0 == 2
    (w,) = rep.witnesses
    assert w.M.exponents == (0, 3, 0)
    assert w.best_N.exponents == (1, 0, 1)
    assert (w.deficit, w.k_threshold) == (1, 2)


def test_threshold_examples():
    assert cm_threshold(NumericalSemigroup([4, 11, 29])) == 2
    assert cm_threshold(NumericalSemigroup([3, 4, 5])) == 1
    assert cm_threshold(NumericalSemigroup([3, 5])) == 1


def test_m1_must_be_multiplicity():
    S = NumericalSemigroup([5, 3])
    for fn in (critical_monomials, is_tangent_cone_cm, cm_threshold):
        with pytest.raises(M1NotMultiplicity):
            fn(S)


def test_pair_threshold():
    S = NumericalSemigroup([4, 11, 29])
    f = S.factorization
    assert pair_threshold(f((0, 3, 0)), f((1, 0, 1))) == 2
    assert pair_threshold(f((0, 0, 2)), f((9, 2, 0))) == 1
    # only total degrees and the x_1 exponent matter
    g = (5, 21, 22)
    M = Factorization((0, 5, 0), g)
    assert pair_threshold(M, Factorization((3, 1, 0), g)) == 2
    assert pair_threshold(M, Factorization((1, 0, 0), g)) == 5
    assert pair_threshold(M, Factorization((2, 0, 1), g)) == 2
    assert pair_threshold(M, Factorization((4, 1, 0), g)) == 1
    with pytest.raises(NoLiftableFactorization):
        pair_threshold(M, Factorization((0, 0, 1), g))


def test_report_json_roundtrip():
    S = NumericalSemigroup([4, 11, 29])
    rep = is_tangent_cone_cm(S, verbose=True)
    data = json.loads(json.dumps(rep.to_json(verbose=True)))
    assert data["witnesses"][0] == {
        "M": [0, 3, 0], "bestN": [1, 0, 1], "deficit": 1, "kThreshold": 2, "N": [[1, 0, 1]]
    }
    back = CmReport.from_json(data, S.generators)
    assert back == rep
    assert back.witnesses[0].candidates == rep.witnesses[0].candidates


@given(semigroups(n_max=3, g_max=22))
def test_direct_test_matches_brute_herzog(S):
    assert is_tangent_cone_cm(S).is_cm == oracles.herzog_cm(S.generators)


@given(semigroups(n_max=4, g_max=12))
def test_direct_test_matches_brute_herzog_four_generators(S):
    assert is_tangent_cone_cm(S).is_cm == oracles.herzog_cm(S.generators)


@given(semigroups(n_max=3, g_max=30))
def test_witness_invariants(S):
    rep = is_tangent_cone_cm(S, verbose=True)
    assert rep.is_cm == (not any(w.deficit > 0 for w in rep.witnesses))
    for w in rep.witnesses:
        b = w.M.s_degree
        assert w.M[0] == 0 and b - S.m1 in S
        assert all(N.s_degree == b and N[0] > 0 for N in w.candidates)
        assert w.best_N in w.candidates
        assert w.deficit == w.M.total_degree - w.best_N.total_degree
        assert w.k_threshold == pair_threshold(w.M, w.best_N)
        assert w.k_threshold == min(pair_threshold(w.M, N) for N in w.candidates)
    assert rep.k0 == cm_threshold(S)
    assert all(w.k_threshold >= 1 for w in all_witnesses(S))


@given(semigroups(n_max=3, g_max=20))
def test_prediction_matches_direct_test_on_liftings(S):
    for k in range(1, 16):
        if gcd(k, S.m1) != 1:
            continue
        assert is_tangent_cone_cm(lift(S, k)).is_cm == predicted_cm(S, k)


@given(semigroups(n_max=4, g_max=25))
def test_cm_is_preserved_by_lifting(S):
    if not is_tangent_cone_cm(S).is_cm:
        return
    for k in range(2, 16):
        if gcd(k, S.m1) == 1:
            assert is_tangent_cone_cm(lift(S, k)).is_cm


def test_reduced_critical_set_agrees_with_full_criterion():
    rng = random.Random(11)
    checked = 0
    while checked < 25:
        gens = oracles.random_semigroup(rng, 2, 3, 25)
        if gens[0] > 5:
            continue
        S = NumericalSemigroup(gens)
        total = 2 * S.degree_bound // gens[1]
        assert oracles.herzog_cm(gens, max_total=total) == is_tangent_cone_cm(S).is_cm
        checked += 1


def test_threshold_is_exact_on_known_non_cm():
    for gens, k0 in [((4, 11, 29), 2), ((7, 8, 18), 2), ((11, 12, 37), 3), ((18, 19, 35), 6)]:
        S = NumericalSemigroup(gens)
        assert cm_threshold(S) == k0
        brute_k0, _ = oracles.herzog_threshold_exhaustive(gens, 8)
        assert brute_k0 == k0
