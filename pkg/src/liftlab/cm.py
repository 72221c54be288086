"""Cohen-Macaulayness of the tangent cone and the lifting threshold.

Herzog's criterion: the tangent cone is CM iff every x_1-free monomial
``M`` whose S-degree lies in ``m_1 + S`` has a factorization ``N`` of the
same S-degree with ``v_1 > 0`` and ``deg N >= deg M``.  It suffices to
test ``M`` with every exponent below ``m_1``.

Lifting by ``k`` turns ``N`` into ``N_k`` with
``deg N_k - deg M = (k - 1) v_1 + deg N - deg M``, so each ``(M, N)`` pair
has an exact smallest ``k`` from which it satisfies the criterion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import product
from math import gcd
from typing import Optional

from .errors import M1NotMultiplicity, NoLiftableFactorization
from .semigroup import Factorization, NumericalSemigroup


def _require_multiplicity(S: NumericalSemigroup) -> None:
    if S.m1 != S.multiplicity:
        raise M1NotMultiplicity(
            f"m_1 = {S.m1} is not the smallest generator of {S}"
        )


def pair_threshold(M: Factorization, N: Factorization) -> int:
    """Least ``k >= 1`` with ``(k-1) v_1(N) + deg N - deg M >= 0``."""
    deficit = M.total_degree - N.total_degree
    if deficit <= 0:
        return 1
    v1 = N[0]
    if v1 <= 0:
        raise NoLiftableFactorization(f"{N} has no x_1 factor")
    return 1 + -(-deficit // v1)


@dataclass(frozen=True)
class Witness:
    M: Factorization
    best_N: Optional[Factorization]
    deficit: int
    k_threshold: int
    candidates: tuple[Factorization, ...] = field(default=(), compare=False)

    def to_json(self, verbose: bool = False) -> dict:
        out = {
            "M": list(self.M.exponents),
            "bestN": list(self.best_N.exponents) if self.best_N is not None else None,
            "deficit": self.deficit,
            "kThreshold": self.k_threshold,
        }
        if verbose:
            out["N"] = [list(n.exponents) for n in self.candidates]
        return out


@dataclass(frozen=True)
class CmReport:
    is_cm: bool
    k0: int
    witnesses: tuple[Witness, ...]

    def to_json(self, verbose: bool = False) -> dict:
        return {
            "cm": self.is_cm,
            "k0": self.k0,
            "witnesses": [w.to_json(verbose) for w in self.witnesses],
        }

    @classmethod
    def from_json(cls, data: dict, generators) -> "CmReport":
        gens = tuple(generators)

        def fac(v):
            return None if v is None else Factorization(tuple(v), gens)

        ws = tuple(
            Witness(
                M=fac(w["M"]),
                best_N=fac(w["bestN"]),
                deficit=w["deficit"],
                k_threshold=w["kThreshold"],
                candidates=tuple(fac(v) for v in w.get("N", [])),
            )
            for w in data["witnesses"]
        )
        return cls(is_cm=data["cm"], k0=data["k0"], witnesses=ws)


def critical_monomials(S: NumericalSemigroup) -> list[Factorization]:
    """x_1-free monomials with exponents below ``m_1`` and S-degree in ``m_1 + S``."""
    _require_multiplicity(S)
    m1 = S.m1
    gens = S.generators
    out = []
    for u in product(range(m1), repeat=S.n - 1):
        b = sum(x * m for x, m in zip(u, gens[1:]))
        if b - m1 in S:
            out.append(Factorization((0,) + u, gens))
    return out


class _LiftableProfile:
    """For each S-degree b: pairs ``(v_1, longest deg N with that v_1)``, ``v_1 > 0``.

    Only the longest factorization for each ``v_1`` can minimize the
    threshold, so the profile comes from an order table of the x_1-free
    monoid instead of a full fiber enumeration.
    """

    def __init__(self, S: NumericalSemigroup, upto: int):
        self.S = S
        gens = S.generators
        self.m1 = gens[0]
        rest = gens[1:]
        self.g = reduce(gcd, rest, 0)
        table = [-1] * (upto + 1)
        table[0] = 0
        for x in range(1, upto + 1):
            best = -1
            for m in rest:
                if x >= m and table[x - m] >= 0 and table[x - m] >= best:
                    best = table[x - m] + 1
            table[x] = best
        self.tail_ord = table
        self._cache: dict[int, list[tuple[int, int]]] = {}

    def __call__(self, b: int) -> list[tuple[int, int]]:
        out = self._cache.get(b)
        if out is not None:
            return out
        m1, g, t = self.m1, self.g, self.tail_ord
        out = []
        if g == 0:
            if b % m1 == 0 and b > 0:
                out.append((b // m1, b // m1))
        else:
            h = gcd(m1, g)
            if b % h == 0:
                q = g // h
                start = (b // h) * pow(m1 // h, -1, q) % q if q > 1 else 0
                v = start if start > 0 else q
                while v * m1 <= b:
                    o = t[b - v * m1]
                    if o >= 0:
                        out.append((v, v + o))
                    v += q
        self._cache[b] = out
        return out


def _threshold(deg_m: int, v1: int, deg_n: int) -> int:
    deficit = deg_m - deg_n
    return 1 if deficit <= 0 else 1 + -(-deficit // v1)


def _profile_for(S: NumericalSemigroup, critical: list[Factorization]) -> _LiftableProfile:
    upto = max((M.s_degree for M in critical), default=0)
    return _LiftableProfile(S, upto)


def _min_threshold(profile: _LiftableProfile, M: Factorization) -> int:
    pairs = profile(M.s_degree)
    if not pairs:
        raise NoLiftableFactorization(
            f"S-degree {M.s_degree} of {M} has no factorization using x_1"
        )
    d = M.total_degree
    return min(_threshold(d, v1, dn) for v1, dn in pairs)


def _witness(S: NumericalSemigroup, M: Factorization, k: int, verbose: bool) -> Witness:
    best = None
    cands = []
    for v in S.iter_factorizations(M.s_degree):
        if v[0] == 0:
            continue
        if best is None and _threshold(M.total_degree, v[0], sum(v)) == k:
            best = Factorization(v, S.generators)
            if not verbose:
                break
        if verbose:
            cands.append(Factorization(v, S.generators))
    return Witness(
        M=M,
        best_N=best,
        deficit=M.total_degree - best.total_degree,
        k_threshold=k,
        candidates=tuple(cands),
    )


def _thresholds(S: NumericalSemigroup) -> list[tuple[Factorization, int]]:
    critical = critical_monomials(S)
    profile = _profile_for(S, critical)
    seen: dict = {}
    out = []
    for M in critical:
        key = (M.s_degree, M.total_degree)
        if key not in seen:
            seen[key] = _min_threshold(profile, M)
        out.append((M, seen[key]))
    return out


def is_tangent_cone_cm(S: NumericalSemigroup, verbose: bool = False) -> CmReport:
    """Herzog's test.  Witnesses list only the failing monomials.

    With ``verbose`` each witness also carries every x_1-divisible
    factorization of its degree.
    """
    failing = [(M, k) for M, k in _thresholds(S) if k > 1]
    witnesses = tuple(_witness(S, M, k, verbose) for M, k in failing)
    k0 = max((k for _M, k in failing), default=1)
    return CmReport(is_cm=not failing, k0=k0, witnesses=witnesses)


def cm_threshold(S: NumericalSemigroup) -> int:
    """Least ``k`` such that the tangent cone of every lifting by ``k' >= k`` is CM.

    The bound is taken over all integers; whether ``gcd(k, m_1) = 1`` is a
    separate question.
    """
    return max((k for _M, k in _thresholds(S)), default=1)


def all_witnesses(S: NumericalSemigroup, verbose: bool = False) -> list[Witness]:
    """One witness per critical monomial, failing or not."""
    return [_witness(S, M, k, verbose) for M, k in _thresholds(S)]


def predicted_cm(S: NumericalSemigroup, k: int) -> bool:
    """CM-ness of the tangent cone of the k-lifting, predicted from S alone."""
    return k >= cm_threshold(S)
