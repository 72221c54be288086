"""Brute-force reference implementations used only by the tests.

Nothing here imports the library's algorithms; membership, factorizations
and ranks are recomputed from the definitions.
"""

from __future__ import annotations

import random
from functools import reduce
from itertools import combinations, product
from math import gcd

import sympy


def members(gens, upto):
    """Boolean table of the monoid generated by ``gens`` on ``0..upto``."""
    ok = [False] * (upto + 1)
    ok[0] = True
    for x in range(1, upto + 1):
        ok[x] = any(x >= m and ok[x - m] for m in gens)
    return ok


def frobenius(gens):
    bound = gens[0] * max(gens) + max(gens)
    ok = members(gens, bound)
    gaps = [x for x in range(bound + 1) if not ok[x]]
    return max(gaps) if gaps else -1


def factorizations(gens, b):
    """All exponent vectors of ``b``, by looping over the x_1-free part."""
    m1, rest = gens[0], gens[1:]
    out = []
    for tail in product(*(range(b // m + 1) for m in rest)):
        r = b - sum(v * m for v, m in zip(tail, rest))
        if r >= 0 and r % m1 == 0:
            out.append((r // m1,) + tail)
    return sorted(out)


def components(vectors):
    """Connected components under 'share a variable', by BFS over all pairs."""
    vectors = list(vectors)
    seen = set()
    comps = []
    for start in range(len(vectors)):
        if start in seen:
            continue
        comp, todo = [], [start]
        seen.add(start)
        while todo:
            a = todo.pop()
            comp.append(vectors[a])
            for b in range(len(vectors)):
                if b not in seen and any(x and y for x, y in zip(vectors[a], vectors[b])):
                    seen.add(b)
                    todo.append(b)
        comps.append(sorted(comp))
    return sorted(comps)


def herzog_cm(gens, max_exponent=None, max_total=None):
    """Herzog's criterion by direct enumeration.

    Checks x_1-free monomials with every exponent below ``max_exponent``
    (default ``m_1``) or, with ``max_total``, all of total degree up to it.
    """
    m1 = gens[0]
    rest = gens[1:]
    bound = m1 * max(gens) * (len(gens) + 2) + (max_total or 0) * max(gens)
    ok = members(gens, bound)
    if max_total is None:
        ranges = [range(max_exponent or m1)] * len(rest)
        cands = product(*ranges)
    else:
        cands = (u for u in product(range(max_total + 1), repeat=len(rest)) if sum(u) <= max_total)
    for u in cands:
        b = sum(x * m for x, m in zip(u, rest))
        if b - m1 < 0 or not ok[b - m1]:
            continue
        if not any(N[0] > 0 and sum(N) >= sum(u) for N in factorizations(gens, b)):
            return False
    return True


def herzog_threshold_exhaustive(gens, k_max):
    """Smallest ``k`` with CM tangent cone for every ``k' in [k, k_max]``,
    found by testing each lifting directly (non-coprime ``k`` included)."""
    m1 = gens[0]
    results = {}
    for k in range(1, k_max + 1):
        results[k] = herzog_cm((m1,) + tuple(k * m for m in gens[1:]))
    k0 = k_max + 1
    for k in range(k_max, 0, -1):
        if results[k]:
            k0 = k
        else:
            break
    return k0, results


def rank(rows, ncols):
    if not rows:
        return 0
    M = sympy.Matrix([[r.get(c, 0) if isinstance(r, dict) else r[c] for c in range(ncols)] for r in rows])
    return M.rank()


def reduced_homology(faces, n):
    """Reduced rational homology ranks of a simplicial complex via sympy."""
    by_dim = {p: sorted(f for f in faces if len(f) == p) for p in range(n + 1)}
    ranks = {}
    for p in range(1, n + 1):
        lower, upper = by_dim[p - 1], by_dim[p]
        if not lower or not upper:
            ranks[p] = 0
            continue
        M = sympy.zeros(len(lower), len(upper))
        for j, F in enumerate(upper):
            for q in range(len(F)):
                M[lower.index(F[:q] + F[q + 1:]), j] = (-1) ** q
        ranks[p] = M.rank()
    return [len(by_dim[p]) - ranks.get(p, 0) - ranks.get(p + 1, 0) for p in range(n)]


def brute_betti(gens):
    """beta_{i,b} from divisor complexes built with the brute membership table."""
    n = len(gens)
    bound = frobenius(gens) + sum(gens)
    ok = members(gens, bound)
    table = {}
    for b in range(bound + 1):
        if not ok[b]:
            continue
        faces = [F for p in range(n + 1) for F in combinations(range(n), p)
                 if b - sum(gens[i] for i in F) >= 0 and ok[b - sum(gens[i] for i in F)]]
        h = reduced_homology(faces, n)
        for i in range(1, n):
            if h[i]:
                table.setdefault(i, {})[b] = h[i]
    return table


def random_semigroup(rng: random.Random, n_min=2, n_max=4, g_max=40, g_min=2):
    """Sorted minimal generators with gcd 1 (so m_1 is the multiplicity)."""
    while True:
        n = rng.randint(n_min, n_max)
        gens = sorted(rng.sample(range(g_min, g_max + 1), n))
        if reduce(gcd, gens) != 1:
            continue
        ok = members(gens, max(gens))
        minimal = [m for j, m in enumerate(gens)
                   if not members(gens[:j] + gens[j + 1:], m)[m]]
        if len(minimal) == n:
            return tuple(gens)


def valid_ks(gens, ks):
    return [k for k in ks if gcd(k, gens[0]) == 1]


def initial_piece_dim(fiber, d):
    """dim of the degree-``d`` initial forms of the zero-sum space on ``fiber``.

    Direct from the definition: take every f in the zero-sum space whose
    components in total degrees below ``d`` vanish, keep the degree-``d``
    part, and measure the span.
    """
    fiber = list(fiber)
    if len(fiber) < 1:
        return 0
    # zero-sum space: x_0 - x_j
    W = sympy.Matrix([[1 if c == 0 else (-1 if c == j else 0) for c in range(len(fiber))]
                      for j in range(1, len(fiber))]) if len(fiber) > 1 else sympy.zeros(0, len(fiber))
    if W.rows == 0:
        return 0
    low = [c for c, v in enumerate(fiber) if sum(v) < d]
    here = [c for c, v in enumerate(fiber) if sum(v) == d]
    if not here:
        return 0
    # combinations a^T W with the low coordinates zero
    if low:
        kernel = W[:, low].T.nullspace()
        if not kernel:
            return 0
        combos = sympy.Matrix.hstack(*kernel).T * W
    else:
        combos = W
    return combos[:, here].rank()


def orders(gens, upto):
    """Max total degree of a factorization, by dynamic programming; -1 on gaps."""
    best = [-1] * (upto + 1)
    best[0] = 0
    for x in range(1, upto + 1):
        cands = [best[x - m] for m in gens if x >= m and best[x - m] >= 0]
        best[x] = max(cands) + 1 if cands else -1
    return best
