"""Exact rank and span computations over the rationals.

Vectors are sparse ``{column: int}`` dicts.  Elimination is fraction-free:
rows are combined with integer multipliers and divided by their content,
so entries stay small and no Fraction objects are created.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Vector = Mapping[int, int]
VectorLike = Union[Vector, Sequence[int]]


def _as_dict(v: VectorLike) -> dict[int, int]:
    if isinstance(v, Mapping):
        return {c: x for c, x in v.items() if x}
    return {c: x for c, x in enumerate(v) if x}


def _primitive(v: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            return v
    if g > 1:
        for c in v:
            v[c] //= g
    return v


class EchelonBasis:
    """Incrementally maintained echelon form of a subspace of Q^N.

    Each stored row has a distinct leading (smallest) column.
    """

    def __init__(self, vectors: Iterable[VectorLike] = ()):
        self._pivots: dict[int, dict[int, int]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self) -> int:
        return len(self._pivots)

    @property
    def rank(self) -> int:
        return len(self._pivots)

    def reduce(self, v: VectorLike) -> dict[int, int]:
        """Reduce ``v`` until its leading column is not a pivot.

        The result is empty exactly when ``v`` lies in the span.
        """
        w = _as_dict(v)
        pivots = self._pivots
        while w:
            c = min(w)
            p = pivots.get(c)
            if p is None:
                return w
            a, b = p[c], w[c]
            g = gcd(a, b)
            a //= g
            b //= g
            out = {col: a * x for col, x in w.items()}
            for col, x in p.items():
                y = out.get(col, 0) - b * x
                if y:
                    out[col] = y
                else:
                    out.pop(col, None)
            w = _primitive(out)
        return w

    def add(self, v: VectorLike) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        w = self.reduce(v)
        if not w:
            return False
        self._pivots[min(w)] = w
        return True

    def __contains__(self, v: VectorLike) -> bool:
        return not self.reduce(v)


def rank(rows: Iterable[VectorLike]) -> int:
    return EchelonBasis(rows).rank


def in_span(rows: Iterable[VectorLike], target: VectorLike) -> bool:
    return target in EchelonBasis(rows)
