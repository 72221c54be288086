"""Combinatorial model of the tangent cone gr_m(K[S]).

gr_m(K[S]) has the K-basis ``[b]``, ``b`` in S, sitting in bidegree
``(b, ord(b))``; the variable ``x_i`` sends ``[b]`` to ``[b + m_i]`` when
``ord(b + m_i) = ord(b) + 1`` and to zero otherwise.  Everything below is
linear algebra inside one bidegree at a time.

Initial-form ideal in one S-degree ``b``: the degree-``b`` part of I_S is
the coefficient-sum-zero space on ``V(b)``.  Split ``V(b)`` by total
degree ``d_1 < ... < d_r`` (``d_r = ord(b)``).  Any monomial ``M`` of a
non-top class is the initial form of ``M - N`` with ``N`` of top degree,
so those pieces of I* are full; an element whose lower classes vanish
lives in the top class, so the top piece is the zero-sum subspace there.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Iterable, Optional, Sequence

from .betti import BettiTable, betti_table
from .errors import BoundTooSmall, NotMember
from .linalg import EchelonBasis
from .semigroup import NumericalSemigroup, monomial_str
from .toric import Binomial


# -- polynomials -------------------------------------------------------
@dataclass(frozen=True)
class Polynomial:
    """Sparse integer polynomial; terms sorted lexicographically by exponents.

    The lex-smallest term carries a positive coefficient.
    """

    terms: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_dict(cls, coeffs: dict) -> "Polynomial":
        items = sorted((tuple(e), c) for e, c in coeffs.items() if c)
        if items and items[0][1] < 0:
            items = [(e, -c) for e, c in items]
        return cls(tuple(items))

    @classmethod
    def from_binomial(cls, B: Binomial) -> "Polynomial":
        return cls.from_dict({B.lhs.exponents: 1, B.rhs.exponents: -1})

    def __bool__(self):
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def s_degree(self, generators: Sequence[int]) -> int:
        degs = {sum(v * m for v, m in zip(e, generators)) for e, _ in self.terms}
        if len(degs) != 1:
            raise ValueError(f"{self} is not S-homogeneous")
        return degs.pop()

    def __str__(self):
        if not self.terms:
            return "0"
        out = ""
        for j, (e, c) in enumerate(self.terms):
            mono = monomial_str(e)
            mag = abs(c)
            body = mono if mag == 1 else (str(mag) if mono == "1" else f"{mag}*{mono}")
            if j == 0:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def to_json(self):
        return [[list(e), c] for e, c in self.terms]


# -- order function and Hilbert function --------------------------------
class TangentConeModel:
    """Order function and Hilbert function of gr_m(K[S])."""

    def __init__(self, S: NumericalSemigroup):
        self.S = S
        gens = S.generators
        e = S.multiplicity
        self.e = e
        rest = sum(gens) - e
        # past c >= stable_from, ord(c + e) = ord(c) + 1
        self.stable_from = max((e - 1) * rest - e + 1, S.frobenius + 1, 0)
        top = self.ord_table(self.stable_from + e)
        self.stable_degree = 1 + max(
            (top[c] for c in range(self.stable_from + e) if top[c] >= 0), default=-1
        )

    def ord_table(self, upto: int) -> list[int]:
        return self.S.order_table(upto)

    def ord(self, b: int) -> int:
        return self.S.order(b)

    def multiply(self, i: int, b: int) -> Optional[int]:
        """``x_i [b]``: ``b + m_i`` or None when the product vanishes."""
        c = b + self.S.generators[i]
        t = self.ord_table(c)
        return c if t[c] == t[b] + 1 else None

    def hilbert(self, d: int) -> int:
        if d < 0:
            return 0
        if d >= self.stable_degree:
            return self.e
        upto = self.stable_from + self.e * (d + 1)
        t = self.ord_table(upto)
        return sum(1 for c in range(upto + 1) if t[c] == d)

    def hilbert_function(self, d_max: int) -> list[int]:
        if d_max < self.stable_degree:
            upto = self.stable_from + self.e * (d_max + 1)
            t = self.ord_table(upto)
            counts = [0] * (d_max + 1)
            for c in range(upto + 1):
                if 0 <= t[c] <= d_max:
                    counts[t[c]] += 1
            return counts
        return [self.hilbert(d) for d in range(d_max + 1)]

    def hilbert_numerator(self, d: int) -> int:
        """Coefficient of ``t^d`` in ``(1 - t)^n`` times the Hilbert series."""
        n = self.S.n
        return sum((-1) ** i * comb(n, i) * self.hilbert(d - i) for i in range(n + 1))


def hilbert_function(S: NumericalSemigroup, d_max: int) -> list[int]:
    return TangentConeModel(S).hilbert_function(d_max)


# -- initial-form pieces ----------------------------------------------
class PieceKind(str, enum.Enum):
    FULL = "FULL"
    ZERO_SUM = "ZERO_SUM"
    EMPTY = "EMPTY"


@dataclass(frozen=True)
class InitialFormPiece:
    s_degree: int
    total_degree: int
    kind: PieceKind
    monomials: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        if self.kind is PieceKind.FULL:
            return len(self.monomials)
        if self.kind is PieceKind.ZERO_SUM:
            return len(self.monomials) - 1
        return 0

    @property
    def quotient_dim(self) -> int:
        return len(self.monomials) - self.dim

    def basis(self) -> list[dict[tuple[int, ...], int]]:
        """Lex-ordered basis; zero-sum vectors are ``M - base`` with base lex-smallest."""
        if self.kind is PieceKind.FULL:
            return [{m: 1} for m in self.monomials]
        if self.kind is PieceKind.ZERO_SUM:
            base = self.monomials[0]
            return [{base: 1, m: -1} for m in self.monomials[1:]]
        return []


def _classes(S: NumericalSemigroup, b: int) -> dict[int, list[tuple[int, ...]]]:
    out: dict[int, list[tuple[int, ...]]] = {}
    for v in S.iter_factorizations(b):
        out.setdefault(sum(v), []).append(v)
    return out


def _piece(b: int, d: int, classes: dict) -> InitialFormPiece:
    if d not in classes:
        return InitialFormPiece(b, d, PieceKind.EMPTY, ())
    kind = PieceKind.ZERO_SUM if d == max(classes) else PieceKind.FULL
    return InitialFormPiece(b, d, kind, tuple(classes[d]))


def initial_form_piece(S: NumericalSemigroup, b: int, d: int) -> InitialFormPiece:
    if b not in S:
        raise NotMember(f"{b} is not in {S}")
    return _piece(b, d, _classes(S, b))


# -- minimal generators of I* -----------------------------------------------
@dataclass(frozen=True)
class TcGenerators:
    s_degree: int
    total_degree: int
    count: int
    representatives: tuple[Polynomial, ...]

    @property
    def bidegree(self) -> tuple[int, int]:
        return (self.s_degree, self.total_degree)


def default_sdeg_bound(S: NumericalSemigroup) -> int:
    return 2 * S.degree_bound


def tc_minimal_generators(
    S: NumericalSemigroup, s_bound: Optional[int] = None
) -> list[TcGenerators]:
    """Minimal generators of the initial-form ideal I*, bidegree by bidegree.

    In bidegree ``(b, d)`` the count is ``dim I*_{(b,d)}`` minus the
    dimension of ``sum_i x_i I*_{(b - m_i, d - 1)}``.
    """
    if s_bound is None:
        s_bound = default_sdeg_bound(S)
    if s_bound < S.degree_bound:
        raise BoundTooSmall(f"S-degree bound {s_bound} is below F(S)+sum(m_i) = {S.degree_bound}")
    gens = S.generators
    n = S.n
    cache: dict[int, dict] = {}

    def classes(c):
        if c not in cache:
            cache[c] = _classes(S, c)
        return cache[c]

    out = []
    for b in range(1, s_bound + 1):
        if b not in S:
            continue
        cl = classes(b)
        if sum(len(v) for v in cl.values()) < 2:
            continue
        for d in sorted(cl):
            piece = _piece(b, d, cl)
            if piece.dim == 0:
                continue
            index = {m: j for j, m in enumerate(piece.monomials)}
            span = EchelonBasis()
            for i in range(n):
                c = b - gens[i]
                if c not in S:
                    continue
                lower = _piece(c, d - 1, classes(c))
                for vec in lower.basis():
                    row = {}
                    for mono, coef in vec.items():
                        up = mono[:i] + (mono[i] + 1,) + mono[i + 1:]
                        row[index[up]] = coef
                    span.add(row)
            reps = []
            for vec in piece.basis():
                if span.add({index[m]: c for m, c in vec.items()}):
                    reps.append(Polynomial.from_dict(vec))
            if reps:
                out.append(TcGenerators(b, d, len(reps), tuple(reps)))
        cache.pop(b - max(gens), None)
    return out


# -- Koszul homology -----------------------------------------------------
class KoszulMode(str, enum.Enum):
    SEMIGROUP_RING = "semigroup_ring"
    TANGENT_CONE = "tangent_cone"


@dataclass(frozen=True)
class EulerAudit:
    """Per-degree residuals ``numerator coefficient - sum_i (-1)^i beta_{i,deg}``."""

    mode: KoszulMode
    residuals: dict

    @property
    def ok(self) -> bool:
        return not any(self.residuals.values())

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "ok": self.ok,
            "residuals": {str(d): r for d, r in sorted(self.residuals.items())},
        }


def _subsets_by_size(n: int) -> list[list[tuple[int, ...]]]:
    from itertools import combinations

    return [list(combinations(range(n), p)) for p in range(n + 1)]


def _koszul_piece(cells: dict[int, list], act) -> list[int]:
    """Homology ranks of one graded strand of the Koszul complex.

    ``cells[p]`` lists ``(F, c)`` pairs (basis ``e_F (x) [c]``, ``|F| = p``);
    ``act(j, c)`` returns the module element ``x_j [c]`` or None.
    """
    top = max(cells) if cells else -1
    ranks = {}
    for p in range(1, top + 1):
        upper = cells.get(p, [])
        lower = cells.get(p - 1, [])
        if not upper or not lower:
            ranks[p] = 0
            continue
        pos = {F: j for j, (F, _c) in enumerate(lower)}
        span = EchelonBasis()
        for F, c in upper:
            row = {}
            for q, j in enumerate(F):
                if act(j, c) is None:
                    continue
                row[pos[F[:q] + F[q + 1:]]] = -1 if q % 2 else 1
            span.add(row)
        ranks[p] = span.rank
    return [
        len(cells.get(p, [])) - ranks.get(p, 0) - ranks.get(p + 1, 0)
        for p in range(top + 1)
    ]


def koszul_betti_with_audit(
    S: NumericalSemigroup,
    mode: KoszulMode = KoszulMode.TANGENT_CONE,
    s_bound: Optional[int] = None,
    t_bound: Optional[int] = None,
) -> tuple[BettiTable, EulerAudit]:
    """Betti numbers as Koszul homology of the module with basis ``[b]``, ``b`` in S.

    Returns the table (``beta_0`` omitted) and the Euler-characteristic
    audit.  Pieces with S-degree above ``s_bound`` or total degree above
    ``t_bound`` are not computed.
    """
    mode = KoszulMode(mode)
    gens = S.generators
    n = S.n
    subsets = _subsets_by_size(n)
    subset_deg = {F: sum(gens[j] for j in F) for row in subsets for F in row}
    tc = mode is KoszulMode.TANGENT_CONE
    if s_bound is None:
        s_bound = default_sdeg_bound(S) if tc else S.degree_bound
    table = BettiTable(length=n, bigraded=tc)
    euler: dict[int, int] = {}

    if tc:
        model = TangentConeModel(S)
        ordt = model.ord_table(s_bound + max(gens))
        if t_bound is None:
            t_bound = max(ordt[: s_bound + 1]) + n

        def act(j, c):
            return c if ordt[c + gens[j]] == ordt[c] + 1 else None
    else:
        def act(j, c):
            return c

    for b in range(s_bound + 1):
        strands: dict = {}
        for p, row in enumerate(subsets):
            for F in row:
                c = b - subset_deg[F]
                if c not in S:
                    continue
                grade = ordt[c] + p if tc else b
                if tc and grade > t_bound:
                    continue
                strands.setdefault(grade, {}).setdefault(p, []).append((F, c))
        for grade, cells in strands.items():
            h = _koszul_piece(cells, act)
            key = (b, grade) if tc else b
            for p, r in enumerate(h):
                if p >= 1:
                    table.add(p, key, r)
                euler[grade] = euler.get(grade, 0) + (-1) ** p * r

    if tc:
        window = range(max(t_bound, model.stable_degree + n) + 1)
        expected = {d: model.hilbert_numerator(d) for d in window}
    else:
        window = range(s_bound + 1)
        expected = {
            b: sum(
                (-1) ** len(F) * ((b - subset_deg[F]) in S)
                for row in subsets for F in row
            )
            for b in window
        }
    residuals = {d: expected[d] - euler.get(d, 0) for d in window}
    return table.normalized(), EulerAudit(mode, residuals)


def koszul_betti(
    S: NumericalSemigroup,
    mode: KoszulMode = KoszulMode.TANGENT_CONE,
    s_bound: Optional[int] = None,
    t_bound: Optional[int] = None,
) -> BettiTable:
    table, audit = koszul_betti_with_audit(S, mode, s_bound, t_bound)
    if not audit.ok:
        bad = sorted(d for d, r in audit.residuals.items() if r)
        raise BoundTooSmall(
            f"Euler audit failed for {S} in degrees {bad[:8]} (s_bound={s_bound})"
        )
    return table


def homogeneous_type(S: NumericalSemigroup, s_bound: Optional[int] = None) -> bool:
    ring = betti_table(S).vector()
    gr = koszul_betti(S, KoszulMode.TANGENT_CONE, s_bound).vector()
    return ring == gr


# -- projection x_1 -> 0 --------------------------------------------------
def project(poly: Polynomial) -> Polynomial:
    return Polynomial.from_dict({e: c for e, c in poly.terms if e[0] == 0})


def project_pi(generators: Iterable) -> list[Polynomial]:
    """Images under ``x_1 -> 0``: x_1-free binomials stay, others keep their x_1-free side."""
    out = set()
    for g in generators:
        poly = Polynomial.from_binomial(g) if isinstance(g, Binomial) else g
        img = project(poly)
        if img:
            out.add(img)
    return sorted(out, key=lambda p: p.terms)


def ideal_contains(
    S: NumericalSemigroup, generators: Sequence[Polynomial], f: Polynomial
) -> bool:
    """Membership of an S-homogeneous ``f`` in the ideal spanned by ``generators``.

    All polynomials must be S-homogeneous; the test is exact linear
    algebra in the S-degree of ``f``.
    """
    gens = S.generators
    c = f.s_degree(gens)
    basis = list(S.iter_factorizations(c))
    index = {m: j for j, m in enumerate(basis)}
    span = EchelonBasis()
    for g in generators:
        dg = g.s_degree(gens)
        if c - dg not in S:
            continue
        for w in S.iter_factorizations(c - dg):
            row = {}
            for e, coef in g.terms:
                row[index[tuple(x + y for x, y in zip(w, e))]] = coef
            span.add(row)
    return {index[e]: coef for e, coef in f.terms} in span


def same_ideal(S: NumericalSemigroup, a: Sequence[Polynomial], b: Sequence[Polynomial]) -> bool:
    return all(ideal_contains(S, a, f) for f in b) and all(ideal_contains(S, b, f) for f in a)
