"""Graded Betti numbers of K[S] from squarefree divisor complexes.

For ``b`` in S the complex ``Delta_b`` has a face ``F`` for every subset
of generator indices with ``b - sum_{i in F} m_i`` in S, and
``beta_{i,b} = dim H~_{i-1}(Delta_b; Q)``.  Nothing happens above
``F(S) + sum(m_i)``: there every subset is a face.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Union

from .errors import NotMember
from .linalg import rank
from .semigroup import NumericalSemigroup

Degree = Union[int, tuple[int, int]]


class BettiTable:
    """``entries[i][degree] = multiplicity`` for homological index ``i >= 1``.

    Degrees are S-degrees, or ``(S-degree, total degree)`` pairs when
    ``bigraded``.  ``beta_0 = 1`` is implicit.  ``length`` is the largest
    index the table speaks for; indices above the stored ones but within
    ``length`` are zero.
    """

    def __init__(self, entries=None, length: int = 0, bigraded: bool = False):
        self.bigraded = bigraded
        self.entries: dict[int, dict[Degree, int]] = {}
        for i, row in (entries or {}).items():
            row = {deg: m for deg, m in row.items() if m}
            if row:
                self.entries[int(i)] = dict(sorted(row.items()))
        self.length = max([length] + list(self.entries))

    def add(self, i: int, degree: Degree, mult: int) -> None:
        if mult:
            row = self.entries.setdefault(i, {})
            row[degree] = row.get(degree, 0) + mult
            self.length = max(self.length, i)

    def normalized(self) -> "BettiTable":
        return BettiTable(self.entries, self.length, self.bigraded)

    def beta(self, i: int) -> int:
        if i == 0:
            return 1
        return sum(self.entries.get(i, {}).values())

    def totals(self) -> list[int]:
        """``[beta_1, ..., beta_length]``."""
        return [self.beta(i) for i in range(1, self.length + 1)]

    def vector(self) -> tuple[int, ...]:
        """``(1, beta_1, ...)`` with trailing zeros dropped."""
        v = [1] + self.totals()
        while len(v) > 1 and v[-1] == 0:
            v.pop()
        return tuple(v)

    def degrees(self, i: int) -> list[Degree]:
        """Betti degrees ``B_i`` as a sorted multiset."""
        out = []
        for deg, m in sorted(self.entries.get(i, {}).items()):
            out.extend([deg] * m)
        return out

    def sdegree_table(self) -> "BettiTable":
        """Forget the total degree of a bigraded table."""
        if not self.bigraded:
            return self
        t = BettiTable(length=self.length)
        for i, row in self.entries.items():
            for (b, _d), m in row.items():
                t.add(i, b, m)
        return t.normalized()

    def tdegree_slices(self) -> dict[int, dict[int, int]]:
        """``{total degree: {i: beta_{i,d}}}`` for a bigraded table."""
        out: dict[int, dict[int, int]] = {}
        for i, row in self.entries.items():
            for (_b, d), m in row.items():
                slot = out.setdefault(d, {})
                slot[i] = slot.get(i, 0) + m
        return out

    def scaled(self, k: int) -> "BettiTable":
        if self.bigraded:
            raise ValueError("scaling applies to S-graded tables")
        return BettiTable(
            {i: {k * b: m for b, m in row.items()} for i, row in self.entries.items()},
            self.length,
        )

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return (
            self.bigraded == other.bigraded
            and self.entries == other.entries
        )

    def __repr__(self):
        return f"BettiTable({self.entries!r}, length={self.length}, bigraded={self.bigraded})"

    # -- serialization ------------------------------------------------
    def to_json(self) -> dict:
        if self.bigraded:
            return {
                str(i): [
                    {"sdeg": b, "tdeg": d, "mult": m}
                    for (b, d), m in sorted(self.entries.get(i, {}).items())
                ]
                for i in range(1, self.length + 1)
            }
        return {
            str(i): {str(b): m for b, m in sorted(self.entries.get(i, {}).items())}
            for i in range(1, self.length + 1)
        }

    @classmethod
    def from_json(cls, data: dict) -> "BettiTable":
        length = max((int(i) for i in data), default=0)
        bigraded = any(isinstance(v, list) for v in data.values())
        entries: dict[int, dict[Degree, int]] = {}
        for i, row in data.items():
            if isinstance(row, list):
                entries[int(i)] = {(r["sdeg"], r["tdeg"]): r["mult"] for r in row}
            else:
                entries[int(i)] = {int(b): m for b, m in row.items()}
        return cls(entries, length, bigraded)

    def csv_rows(self) -> list[str]:
        rows = []
        for i in range(1, self.length + 1):
            for deg, m in sorted(self.entries.get(i, {}).items()):
                if self.bigraded:
                    rows.append(f"{i},{deg[0]},{deg[1]},{m}")
                else:
                    rows.append(f"{i},{deg},{m}")
        return rows


@dataclass(frozen=True)
class DivisorComplex:
    """Faces are sorted tuples of 1-based generator indices."""

    degree: int
    n: int
    faces: frozenset

    def faces_of_size(self, p: int) -> list[tuple[int, ...]]:
        return sorted(f for f in self.faces if len(f) == p)


def divisor_complex(S: NumericalSemigroup, b: int) -> DivisorComplex:
    if b not in S:
        raise NotMember(f"{b} is not in {S}")
    gens = S.generators
    idx = range(1, S.n + 1)
    faces = [()]
    for p in range(1, S.n + 1):
        for F in combinations(idx, p):
            if b - sum(gens[i - 1] for i in F) in S:
                faces.append(F)
    return DivisorComplex(degree=b, n=S.n, faces=frozenset(faces))


def _boundary_rank(lower: list, upper: list) -> int:
    if not lower or not upper:
        return 0
    pos = {f: j for j, f in enumerate(lower)}
    rows = []
    for F in upper:
        row = {}
        for j in range(len(F)):
            row[pos[F[:j] + F[j + 1:]]] = -1 if j % 2 else 1
        rows.append(row)
    return rank(rows)


def reduced_homology_ranks(cx: DivisorComplex) -> list[int]:
    """Rational ranks of ``H~_{-1}, ..., H~_{n-2}``."""
    by_size = [cx.faces_of_size(p) for p in range(cx.n + 1)]
    ranks = [0] + [_boundary_rank(by_size[p - 1], by_size[p]) for p in range(1, cx.n + 1)] + [0]
    # ranks[p] is the rank of the map from size-p chains to size-(p-1) chains
    out = []
    for p in range(cx.n):
        out.append(len(by_size[p]) - ranks[p] - ranks[p + 1])
    return out


def _is_cone(cx: DivisorComplex) -> bool:
    for v in range(1, cx.n + 1):
        if all(tuple(sorted(set(F) | {v})) in cx.faces for F in cx.faces):
            return True
    return False


def betti_table(S: NumericalSemigroup, degrees: Optional[Iterable[int]] = None) -> BettiTable:
    """Graded Betti numbers ``beta_{i,b}``, ``i = 1..n-1``, of K[S] over R."""
    n = S.n
    table = BettiTable(length=max(n - 1, 0))
    if n < 2:
        return table
    total = sum(S.generators)
    if degrees is None:
        degrees = range(S.degree_bound + 1)
    for b in degrees:
        if b not in S or b - total in S:
            continue
        cx = divisor_complex(S, b)
        if _is_cone(cx):
            continue
        h = reduced_homology_ranks(cx)
        for i in range(1, n):
            table.add(i, b, h[i])
    return table.normalized()


@dataclass(frozen=True)
class StrongIndispensability:
    holds: bool
    violation: Optional[tuple[int, int, int]]
    repeated: tuple[tuple[int, int, int], ...]

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        if self.holds:
            text = "true"
        else:
            i, b, bp = self.violation
            text = f"false (i={i}: {b}-{bp}={b - bp} in S)"
        for i, b, m in self.repeated:
            text += f"\nwarning: multiplicity {m} >= 2 at i={i}, b={b}"
        return text

    def to_json(self) -> dict:
        return {
            "strong": self.holds,
            "violation": list(self.violation) if self.violation else None,
            "repeated": [list(r) for r in self.repeated],
        }


def strongly_indispensable(
    S: NumericalSemigroup, table: Optional[BettiTable] = None
) -> StrongIndispensability:
    """Test ``b - b' not in S`` for distinct Betti degrees of the same index.

    Degrees carrying multiplicity at least two are reported separately.
    """
    if table is None:
        table = betti_table(S)
    violation = None
    repeated = []
    for i in range(1, table.length + 1):
        row = table.entries.get(i, {})
        degs = sorted(row)
        repeated.extend((i, b, row[b]) for b in degs if row[b] >= 2)
        if violation is None:
            for b in degs:
                hit = next((bp for bp in degs if bp < b and b - bp in S), None)
                if hit is not None:
                    violation = (i, b, hit)
                    break
    return StrongIndispensability(violation is None, violation, tuple(repeated))
