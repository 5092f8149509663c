"""Seeded random corpora of categories, triples and functors.

All generators take a :class:`random.Random` so that a fixed seed
reproduces the same corpus bit for bit.  Values are small rationals.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Optional, Tuple

from .category import FinCategory, Functor, from_relation, validate_category, validate_functor
from .linalg import RationalMatrix
from .triples import Triple, validate_triple


def random_probability(rng: random.Random, n: int, zero_prob: float = 0.15) -> List[Fraction]:
    """Random rational probability vector; entries are zero with ``zero_prob``."""
    while True:
        raw = [0 if rng.random() < zero_prob else rng.randint(1, 12) for _ in range(n)]
        if sum(raw):
            break
    total = sum(raw)
    return [Fraction(x, total) for x in raw]


def random_category(rng: random.Random, n: int, edge_prob: float = 0.35,
                    multiplicities: bool = False) -> FinCategory:
    """Random preorder (occasionally with extra parallel arrows).

    Arrows ``i -> j`` for ``i < j`` are drawn independently; a few backward
    arrows create isomorphic objects.  The reflexive-transitive closure makes
    it a category.
    """
    pairs = [(i, j) for i in range(n) for j in range(n)
             if (i < j and rng.random() < edge_prob) or (i > j and rng.random() < edge_prob / 6)]
    C = from_relation(n, pairs)
    if not multiplicities:
        return C
    zeta = [[x * rng.randint(1, 3) if x else 0 for x in row] for row in C.zeta]
    return validate_category(C.labels, zeta)


def random_poset(rng: random.Random, n: int, edge_prob: float = 0.4) -> FinCategory:
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < edge_prob]
    return from_relation(n, pairs)


def random_kernel(rng: random.Random, C: FinCategory, zero_prob: float = 0.2) -> RationalMatrix:
    """Nonnegative kernel supported on the arrows of ``C`` with positive diagonal."""
    n = C.size
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(Fraction(rng.randint(1, 9), rng.randint(1, 4)))
            elif C.zeta[i][j] and rng.random() >= zero_prob:
                row.append(Fraction(rng.randint(1, 9), rng.randint(1, 4)))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def random_transition_kernel(rng: random.Random, C: FinCategory) -> RationalMatrix:
    """Column-stochastic kernel: column ``a`` is a distribution on ``{b : b -> a}``."""
    n = C.size
    cols = []
    for a in range(n):
        raw = [rng.randint(1, 9) if b == a else
               (rng.randint(0, 9) if C.zeta[b][a] else 0) for b in range(n)]
        total = sum(raw)
        cols.append([Fraction(x, total) for x in raw])
    return RationalMatrix.from_rows([[cols[a][b] for a in range(n)] for b in range(n)])


def random_triple(rng: random.Random, n_max: int = 5, transition: bool = False,
                  n: Optional[int] = None, multiplicities: bool = False) -> Triple:
    n = n or rng.randint(1, n_max)
    C = random_category(rng, n, multiplicities=multiplicities)
    phi = random_transition_kernel(rng, C) if transition else random_kernel(rng, C)
    return validate_triple(C, random_probability(rng, n), phi)


def random_functor(rng: random.Random, domain: FinCategory, m_max: int = 4,
                   extra_prob: float = 0.2) -> Functor:
    """Random incidence-preserving object map out of ``domain``.

    The codomain is the closure of the image of ``domain``'s arrows, plus
    some random extra arrows; it may contain objects that nothing hits.
    """
    m = rng.randint(1, m_max)
    object_map = [rng.randrange(m) for _ in range(domain.size)]
    pairs = {(object_map[i], object_map[j])
             for i in range(domain.size) for j in range(domain.size) if domain.zeta[i][j]}
    pairs |= {(b, c) for b in range(m) for c in range(m) if b < c and rng.random() < extra_prob}
    codomain = from_relation(m, sorted(pairs), labels=[f"b{i}" for i in range(m)])
    return validate_functor(domain, codomain, object_map)


def random_composable(rng: random.Random, domain: FinCategory, m_max: int = 4
                      ) -> Tuple[Functor, Functor]:
    F = random_functor(rng, domain, m_max)
    G = random_functor(rng, F.codomain, m_max)
    return F, G


def random_symmetric_similarity(rng: random.Random, n: int, denom: int = 10) -> RationalMatrix:
    """Symmetric matrix with unit diagonal and off-diagonal entries in ``[0, 1]``."""
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = Fraction(1)
        for j in range(i):
            rows[i][j] = rows[j][i] = Fraction(rng.randint(0, denom), denom)
    return RationalMatrix.from_rows(rows)
