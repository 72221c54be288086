"""Fibers, degree graphs and minimal binomial generators of toric ideals.

The graph ``G(d)`` on the fiber ``V(d)`` is built from gcd-edges only:
two monomials are adjacent when they share a variable.  Its connected
components decide both the minimal generators in degree ``d`` and the
indispensable binomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotCoprimeMonomials
from .linalg import EchelonBasis
from .semigroup import Factorization, NumericalSemigroup, _check_k, lift, monomial_str


@dataclass(frozen=True, order=True)
class Binomial:
    """``lhs - rhs`` with both monomials of the same S-degree.

    Stored generators keep the lexicographically smaller monomial on the
    left, which for coprime binomials is the side free of ``x_1``
    whenever one side contains it.
    """

    lhs: Factorization
    rhs: Factorization

    def __post_init__(self):
        if self.lhs.generators != self.rhs.generators:
            raise ValueError("monomials belong to different semigroups")
        if self.lhs.s_degree != self.rhs.s_degree:
            raise ValueError(f"S-degrees differ: {self.lhs.s_degree} != {self.rhs.s_degree}")
        if self.lhs == self.rhs:
            raise ValueError("a binomial needs two distinct monomials")

    @classmethod
    def oriented(cls, a: Factorization, b: Factorization) -> "Binomial":
        return cls(a, b) if a < b else cls(b, a)

    @property
    def s_degree(self) -> int:
        return self.lhs.s_degree

    @property
    def generators(self) -> tuple[int, ...]:
        return self.lhs.generators

    def is_coprime(self) -> bool:
        return self.lhs.coprime(self.rhs)

    def involves_x1(self) -> bool:
        return bool(self.lhs[0] or self.rhs[0])

    def __str__(self) -> str:
        return f"{monomial_str(self.lhs.exponents)} - {monomial_str(self.rhs.exponents)}"

    def to_json(self) -> list[list[int]]:
        return [list(self.lhs.exponents), list(self.rhs.exponents)]

    @classmethod
    def from_json(cls, data, generators: Sequence[int]) -> "Binomial":
        gens = tuple(generators)
        lhs, rhs = data
        return cls(Factorization(tuple(lhs), gens), Factorization(tuple(rhs), gens))


@dataclass(frozen=True)
class FiberGraph:
    degree: int
    vertices: tuple[Factorization, ...]
    components: tuple[tuple[Factorization, ...], ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def component_of(self, v: Factorization) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise KeyError(v)


def fiber(S: NumericalSemigroup, d: int) -> list[Factorization]:
    """``V(d)``: all monomials of S-degree ``d``, lexicographically sorted."""
    return S.factorizations(d)


def _components(vectors: Sequence[tuple[int, ...]], n: int) -> list[list[int]]:
    # union-find over vertices; vertices sharing a variable are merged
    parent = list(range(len(vectors)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    owner = [-1] * n
    for idx, v in enumerate(vectors):
        for i in range(n):
            if v[i]:
                if owner[i] < 0:
                    owner[i] = idx
                else:
                    a, b = find(idx), find(owner[i])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for idx in range(len(vectors)):
        groups.setdefault(find(idx), []).append(idx)
    # vertices are lex-sorted, so sorting by first member orders by lex-min
    return sorted(groups.values(), key=lambda g: g[0])


def degree_graph(S: NumericalSemigroup, d: int) -> FiberGraph:
    verts = fiber(S, d)
    comps = _components([v.exponents for v in verts], S.n)
    return FiberGraph(
        degree=d,
        vertices=tuple(verts),
        components=tuple(tuple(verts[i] for i in c) for c in comps),
    )


def _candidate_degrees(S: NumericalSemigroup) -> list[int]:
    # G(d) can only be disconnected if at least two variables occur in V(d)
    gens = S.generators
    out = []
    for d in range(1, S.degree_bound + 1):
        if d in S and sum(1 for m in gens if d - m in S) >= 2:
            out.append(d)
    return out


def betti1_degrees(S: NumericalSemigroup) -> list[int]:
    """Degrees of minimal generators of I_S, with multiplicity, ascending."""
    out = []
    for d in _candidate_degrees(S):
        c = degree_graph(S, d).n_components
        out.extend([d] * (c - 1))
    return out


def minimal_generators(S: NumericalSemigroup) -> list[Binomial]:
    """A minimal binomial generating set of I_S.

    In each degree the lex-smallest monomial of every component but the
    first is joined to the lex-smallest monomial of the whole fiber.
    """
    out = []
    for d in _candidate_degrees(S):
        g = degree_graph(S, d)
        if g.n_components < 2:
            continue
        base = g.components[0][0]
        for comp in g.components[1:]:
            out.append(Binomial(base, comp[0]))
    return out


def indispensable_binomials(S: NumericalSemigroup) -> list[Binomial]:
    out = []
    for d in _candidate_degrees(S):
        verts = fiber(S, d)
        if len(verts) == 2 and verts[0].coprime(verts[1]):
            out.append(Binomial(verts[0], verts[1]))
    return out


def lift_binomial(S: NumericalSemigroup, k: int, B: Binomial) -> Binomial:
    """Image of a coprime binomial of I_S under the lifting map into I_{S_k}."""
    _check_k(S, k)
    if B.generators != S.generators:
        raise ValueError(f"{B} is not a binomial over {S}")
    if not B.is_coprime():
        raise NotCoprimeMonomials(f"{B} has monomials with a common factor")
    Sk = lift(S, k)

    def up(v: Factorization) -> Factorization:
        e = v.exponents
        return Factorization((k * e[0],) + e[1:], Sk.generators)

    return Binomial(up(B.lhs), up(B.rhs))


def lower_degree_membership(
    S: NumericalSemigroup, d: int, M: Factorization, N: Factorization
) -> bool:
    """Whether ``M - N`` is generated by binomials of I_S of smaller S-degree.

    Brute force: span the degree-``d`` part of that ideal by every
    monomial multiple ``w * (P - Q)`` with ``deg_S(P) = d' <_S d`` and test
    membership of ``M - N`` by exact elimination over the basis ``V(d)``.
    """
    verts = [v.exponents for v in fiber(S, d)]
    index = {v: i for i, v in enumerate(verts)}
    if M.exponents not in index or N.exponents not in index:
        raise ValueError(f"{M} and {N} must both have S-degree {d}")
    if M == N:
        return True
    span = EchelonBasis()
    for dp in range(1, d):
        if dp not in S or (d - dp) not in S:
            continue
        lower = list(S.iter_factorizations(dp))
        if len(lower) < 2:
            continue
        p0 = lower[0]
        for w in S.iter_factorizations(d - dp):
            a = index[tuple(x + y for x, y in zip(w, p0))]
            for q in lower[1:]:
                b = index[tuple(x + y for x, y in zip(w, q))]
                span.add({a: 1, b: -1})
    return {index[M.exponents]: 1, index[N.exponents]: -1} in span
