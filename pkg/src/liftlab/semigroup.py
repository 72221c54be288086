"""Numerical semigroups, factorizations and k-liftings.

A numerical semigroup is stored through its minimal generators in the
order the caller supplied them.  The first generator ``m_1`` plays a
special role: membership goes through the Apéry set with respect to it,
and lifting keeps it fixed while scaling the others.
"""

from __future__ import annotations

import heapq
import threading
from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterator, Sequence

from .errors import GcdNotOne, KNotCoprime, NonPositive, NotMember, NotMinimal


def _apery_dijkstra(generators: Sequence[int], modulus: int) -> list[int]:
    # shortest path on residues mod `modulus`; generators must have gcd 1
    dist = [-1] * modulus
    dist[0] = 0
    heap = [(0, 0)]
    seen = [False] * modulus
    while heap:
        w, r = heapq.heappop(heap)
        if seen[r]:
            continue
        seen[r] = True
        for g in generators:
            s = (r + g) % modulus
            nw = w + g
            if not seen[s] and (dist[s] < 0 or nw < dist[s]):
                dist[s] = nw
                heapq.heappush(heap, (nw, s))
    return dist


class _Monoid:
    """Membership in the submonoid of N spanned by arbitrary positive ints.

    The generators need not have gcd 1, so membership reduces to a
    divisibility test plus an Apéry lookup in the scaled-down semigroup.
    """

    __slots__ = ("gens", "g", "mod", "apery")

    def __init__(self, gens: Sequence[int]):
        self.gens = tuple(gens)
        if not self.gens:
            self.g = 0
            return
        self.g = reduce(gcd, self.gens)
        reduced = [x // self.g for x in self.gens]
        self.mod = min(reduced)
        self.apery = _apery_dijkstra(reduced, self.mod)

    def __contains__(self, x: int) -> bool:
        if x < 0:
            return False
        if x == 0:
            return True
        if not self.gens or x % self.g:
            return False
        y = x // self.g
        return y >= self.apery[y % self.mod]


@dataclass(frozen=True, order=True)
class Factorization:
    """Exponent vector ``(v_1, ..., v_n)`` with respect to fixed generators.

    Doubles as the monomial ``x_1^v_1 ... x_n^v_n``.  Ordering is
    lexicographic on the exponents with the first coordinate most
    significant.
    """

    exponents: tuple[int, ...]
    generators: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.generators):
            raise ValueError("exponent vector length does not match generators")
        if any(v < 0 for v in self.exponents):
            raise ValueError("exponents must be nonnegative")

    @property
    def s_degree(self) -> int:
        return sum(v * m for v, m in zip(self.exponents, self.generators))

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.exponents) if v)

    def coprime(self, other: "Factorization") -> bool:
        return not (self.support & other.support)

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.exponents)

    def monomial(self) -> str:
        return monomial_str(self.exponents)

    def __str__(self) -> str:
        return self.monomial()


def monomial_str(exponents: Sequence[int]) -> str:
    parts = []
    for i, v in enumerate(exponents, start=1):
        if v == 1:
            parts.append(f"x{i}")
        elif v > 1:
            parts.append(f"x{i}^{v}")
    return "*".join(parts) if parts else "1"


def minimalize(generators: Sequence[int]) -> list[int]:
    """Drop generators that lie in the monoid of the others, keeping order.

    Of repeated values the first occurrence is kept.
    """
    out: list[int] = []
    for j, m in enumerate(generators):
        if m in out:
            continue
        others = [x for i, x in enumerate(generators) if i != j and x != m]
        if m not in _Monoid(others):
            out.append(m)
    return out


class NumericalSemigroup:
    """The semigroup generated minimally by ``m_1, ..., m_n``.

    Instances are immutable.  The Apéry set is computed eagerly; the
    order table used by :meth:`order` grows on demand under a lock so an
    instance can be shared between threads.
    """

    def __init__(self, generators: Sequence[int]):
        gens = tuple(int(m) for m in generators)
        if not gens:
            raise ValueError("at least one generator is required")
        if any(m <= 0 for m in gens):
            raise NonPositive(f"generators must be positive, got {list(gens)}")
        if reduce(gcd, gens) != 1:
            raise GcdNotOne(f"gcd of {list(gens)} is {reduce(gcd, gens)}")
        for j, m in enumerate(gens):
            if m in _Monoid(gens[:j] + gens[j + 1:]):
                raise NotMinimal(j, gens)
        self._gens = gens
        self._apery = tuple(_apery_dijkstra(gens, gens[0]))
        self._suffix = [_Monoid(gens[i:]) for i in range(len(gens) + 1)]
        self._ord = [0]
        self._lock = threading.Lock()

    # -- basic data ---------------------------------------------------
    @property
    def generators(self) -> tuple[int, ...]:
        return self._gens

    @property
    def n(self) -> int:
        return len(self._gens)

    @property
    def m1(self) -> int:
        return self._gens[0]

    @property
    def multiplicity(self) -> int:
        return min(self._gens)

    def apery_set(self) -> list[int]:
        """Smallest element of each residue class modulo ``m_1``, by residue."""
        return list(self._apery)

    @property
    def frobenius(self) -> int:
        return max(self._apery) - self.m1

    @property
    def degree_bound(self) -> int:
        """``F(S) + sum(m_i)``: no minimal syzygy lives above this S-degree."""
        return self.frobenius + sum(self._gens)

    def __contains__(self, b: int) -> bool:
        return b >= 0 and b >= self._apery[b % self.m1]

    def contains(self, b: int) -> bool:
        return b in self

    def gaps(self) -> list[int]:
        return [b for b in range(self.frobenius + 1) if b not in self]

    def elements(self, upto: int) -> list[int]:
        return [b for b in range(upto + 1) if b in self]

    def __eq__(self, other):
        return isinstance(other, NumericalSemigroup) and self._gens == other._gens

    def __hash__(self):
        return hash(self._gens)

    def __repr__(self):
        return f"NumericalSemigroup({list(self._gens)})"

    def canonical(self) -> str:
        return ",".join(map(str, self._gens))

    def __str__(self):
        return "<" + ",".join(map(str, self._gens)) + ">"

    # -- factorizations ----------------------------------------------
    def factorization(self, exponents: Sequence[int]) -> Factorization:
        return Factorization(tuple(exponents), self._gens)

    def iter_factorizations(self, b: int) -> Iterator[tuple[int, ...]]:
        """Exponent tuples of ``b`` in lexicographic order, last index fastest."""
        if b not in self:
            return
        gens = self._gens
        n = len(gens)
        suffix = self._suffix
        vec = [0] * n

        def rec(i, rest):
            if i == n - 1:
                m = gens[i]
                if rest % m == 0:
                    vec[i] = rest // m
                    yield tuple(vec)
                return
            m = gens[i]
            tail = suffix[i + 1]
            # rest - v*m must be divisible by the gcd of the tail generators
            h = gcd(m, tail.g)
            if rest % h:
                return
            q = tail.g // h
            start = (rest // h) * pow(m // h, -1, q) % q if q > 1 else 0
            for v in range(start, rest // m + 1, q):
                r = rest - v * m
                if r in tail:
                    vec[i] = v
                    yield from rec(i + 1, r)
            vec[i] = 0

        yield from rec(0, b)

    def factorizations(self, b: int) -> list[Factorization]:
        return [Factorization(v, self._gens) for v in self.iter_factorizations(b)]

    def order(self, b: int) -> int:
        """Largest total degree among the factorizations of ``b``."""
        if b not in self:
            raise NotMember(f"{b} is not in {self}")
        return self.order_table(b)[b]

    def order_table(self, upto: int) -> list[int]:
        """``ord`` for every integer ``0..upto`` (``-1`` marks gaps)."""
        table = self._ord
        if len(table) > upto:
            return table
        with self._lock:
            table = self._ord
            if len(table) > upto:
                return table
            size = max(upto + 1, 2 * len(table))
            new = table + [-1] * (size - len(table))
            gens = self._gens
            for x in range(len(table), size):
                best = -1
                for m in gens:
                    if x >= m:
                        o = new[x - m]
                        if o >= 0 and o >= best:
                            best = o + 1
                new[x] = best
            self._ord = new
            return new

    # -- lifting -----------------------------------------------------
    def lift(self, k: int) -> "NumericalSemigroup":
        return lift(self, k)


def _check_k(S: NumericalSemigroup, k: int) -> None:
    if k <= 0:
        raise KNotCoprime(f"k must be a positive integer, got {k}")
    if gcd(k, S.m1) != 1:
        raise KNotCoprime(f"gcd({k}, {S.m1}) = {gcd(k, S.m1)}")


def is_valid_k(S: NumericalSemigroup, k: int) -> bool:
    return k > 0 and gcd(k, S.m1) == 1


def lift(S: NumericalSemigroup, k: int) -> NumericalSemigroup:
    """The k-lifting ``<m_1, k m_2, ..., k m_n>``."""
    _check_k(S, k)
    if k == 1:
        return S
    g = S.generators
    return NumericalSemigroup((g[0],) + tuple(k * m for m in g[1:]))


def lift_element(S: NumericalSemigroup, k: int, b: int) -> int:
    _check_k(S, k)
    if b not in S:
        raise NotMember(f"{b} is not in {S}")
    return k * b


def lift_factorization(S: NumericalSemigroup, k: int, v: Factorization) -> Factorization:
    """Send ``(v_1, v_2, ..., v_n)`` in S to ``(k v_1, v_2, ..., v_n)`` in S_k."""
    _check_k(S, k)
    if v.generators != S.generators:
        raise NotMember(f"{v.exponents} is not a factorization over {S}")
    Sk = lift(S, k)
    e = v.exponents
    return Factorization((k * e[0],) + e[1:], Sk.generators)


def parse_generators(text: str) -> list[int]:
    """Parse ``"m_1,m_2,..."``; raises ValueError on malformed input."""
    parts = [p.strip() for p in text.replace(" ", "").split(",") if p.strip()]
    if not parts:
        raise ValueError(f"no generators in {text!r}")
    return [int(p) for p in parts]
