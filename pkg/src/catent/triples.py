"""Categorical probabilistic triples ``(A, p, phi)`` and their morphisms.

A triple is a finite category with a probability ``p`` on its objects and a
kernel ``phi`` that is positive on the diagonal and vanishes wherever the
category has no arrow.  Morphisms are functors along which ``p`` and
``phi`` push forward.  All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .category import (
    FinCategory,
    Functor,
    collapse_functor,
    compose_functors,
    coproduct_of,
    discrete,
    fibers,
    identity_functor,
    product_category,
    terminal,
    validate_functor,
)
from .errors import (
    CompositionMismatch,
    DiagonalZero,
    IncidenceViolation,
    LambdaOutOfRange,
    LengthMismatch,
    NotAMorphism,
    NotAProbability,
    NotTransitionKernel,
    ShapeMismatch,
)
from .linalg import RationalMatrix, Vector, as_fraction, as_matrix, block_diagonal


@dataclass(frozen=True)
class Probability:
    """Rational weights summing to one; negative entries only if ``signed``."""

    weights: Vector
    signed: bool = False

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)


def make_probability(weights, signed: bool = False) -> Probability:
    if isinstance(weights, Probability):
        signed = signed or weights.signed
        weights = weights.weights
    weights = tuple(as_fraction(x) for x in weights)
    total = sum(weights, Fraction(0))
    if total != 1:
        raise NotAProbability(f"weights sum to {total}, not 1")
    if not signed and any(x < 0 for x in weights):
        raise NotAProbability("negative weight in an unsigned probability")
    return Probability(weights, signed)


def uniform(n: int) -> Probability:
    return Probability(tuple(Fraction(1, n) for _ in range(n)))


def delta_kernel(n: int) -> RationalMatrix:
    """Kronecker delta kernel (the identity matrix)."""
    return RationalMatrix.identity(n)


@dataclass(frozen=True)
class Triple:
    category: FinCategory
    p: Probability
    phi: RationalMatrix

    @property
    def size(self) -> int:
        return self.category.size

    @property
    def signed(self) -> bool:
        return self.p.signed


def validate_kernel(category: FinCategory, phi) -> RationalMatrix:
    phi = as_matrix(phi)
    n = category.size
    if phi.shape != (n, n):
        raise ShapeMismatch(f"kernel is {phi.rows}x{phi.cols}, category has {n} objects")
    for i in range(n):
        if phi[i, i] <= 0:
            raise DiagonalZero(f"phi({category.labels[i]}, {category.labels[i]}) = {phi[i, i]} is not positive")
    for i in range(n):
        for j in range(n):
            if phi[i, j] < 0:
                raise IncidenceViolation(f"phi({category.labels[i]}, {category.labels[j]}) is negative")
            if phi[i, j] != 0 and category.zeta[i][j] == 0:
                raise IncidenceViolation(
                    f"phi({category.labels[i]}, {category.labels[j]}) = {phi[i, j]} "
                    "but there is no arrow between them"
                )
    return phi


def validate_triple(category: FinCategory, p, phi, signed: bool = False) -> Triple:
    """Check shapes, probability and kernel invariants and build a :class:`Triple`.

    Raises
    ------
    ShapeMismatch, NotAProbability, DiagonalZero, IncidenceViolation
    """
    p = make_probability(p, signed)
    if len(p) != category.size:
        raise ShapeMismatch(f"probability has length {len(p)}, category has {category.size} objects")
    return Triple(category, p, validate_kernel(category, phi))


def embed_finprob(labels: Sequence[str], p) -> Triple:
    """Finite probability space as a triple on a discrete category with the delta kernel."""
    C = discrete(len(labels), labels)
    return validate_triple(C, p, delta_kernel(C.size))


def terminal_triple() -> Triple:
    """One object, probability 1, kernel 1: terminal among transition-kernel triples."""
    return validate_triple(terminal(), [1], [[1]])


def pushforward_probability(F: Functor, p) -> Probability:
    """Fiber sums ``q(b) = sum_{a in F^-1(b)} p(a)``."""
    p = make_probability(p) if not isinstance(p, Probability) else p
    if len(p) != F.domain.size:
        raise ShapeMismatch("probability length differs from the functor's domain")
    q = [Fraction(0)] * F.codomain.size
    for a, b in enumerate(F.object_map):
        q[b] += p[a]
    return Probability(tuple(q), p.signed)


def pushforward_kernel(F: Functor, source: Triple) -> RationalMatrix:
    """Image kernel along ``F``.

    ``theta(b, b')`` is the ``p``-weighted average over ``a' in F^-1(b')`` of
    ``sum_{a in F^-1(b)} phi(a, a')``.  Columns ``b'`` carrying no mass get
    the delta column.  For signed ``p`` the average is taken whenever the
    fiber mass is nonzero.
    """
    if F.domain != source.category:
        raise ShapeMismatch("functor domain is not the source category")
    p, phi = source.p, source.phi
    q = pushforward_probability(F, p)
    fib = fibers(F)
    m = F.codomain.size
    theta = [[Fraction(0)] * m for _ in range(m)]
    for bp in range(m):
        if q[bp] == 0:
            theta[bp][bp] = Fraction(1)
            continue
        for b in range(m):
            num = sum(
                (p[ap] * sum((phi[a, ap] for a in fib[b]), Fraction(0)) for ap in fib[bp]),
                Fraction(0),
            )
            theta[b][bp] = num / q[bp]
    return RationalMatrix.from_rows(theta)


@dataclass(frozen=True)
class TripleMorphism:
    functor: Functor
    source: Triple
    target: Triple


def pushforward(F: Functor, source: Triple) -> TripleMorphism:
    """The morphism out of ``source`` along ``F``; its target is computed."""
    q = pushforward_probability(F, source.p)
    theta = pushforward_kernel(F, source)
    target = validate_triple(F.codomain, q, theta, signed=q.signed)
    return TripleMorphism(F, source, target)


def make_morphism(source: Triple, codomain: FinCategory, object_map,
                  target: Optional[Triple] = None) -> TripleMorphism:
    """Validate an object map as a morphism of triples.

    If ``target`` is given it must equal the pushforward exactly, otherwise
    :class:`~catent.errors.NotAMorphism` is raised.
    """
    F = validate_functor(source.category, codomain, object_map)
    f = pushforward(F, source)
    if target is not None and target != f.target:
        if target.p != f.target.p:
            raise NotAMorphism("target probability is not the pushforward of the source probability")
        raise NotAMorphism("target kernel is not the pushforward of the source kernel")
    return f


def identity_morphism(T: Triple) -> TripleMorphism:
    """Pushforward of ``T`` along the identity functor.

    The target equals ``T`` when ``p`` has full support.  Otherwise the
    kernel columns of zero-mass objects are replaced by delta columns, as
    the pushforward rule prescribes; the entropy is unchanged.
    """
    return pushforward(identity_functor(T.category), T)


def to_terminal(T: Triple) -> TripleMorphism:
    """The collapse of ``T`` onto a single object."""
    return pushforward(collapse_functor(T.category), T)


def compose_morphisms(f: TripleMorphism, g: TripleMorphism) -> TripleMorphism:
    """Return ``g o f``; requires ``f.target == g.source`` exactly."""
    if f.target != g.source:
        raise CompositionMismatch("target of the first morphism is not the source of the second")
    return TripleMorphism(compose_functors(f.functor, g.functor), f.source, g.target)


def tensor(T1: Triple, T2: Triple) -> Triple:
    """Probability preserving product: product category, ``p(a) q(b)``, Kronecker kernel."""
    p = tuple(x * y for x in T1.p for y in T2.p)
    return Triple(
        product_category(T1.category, T2.category),
        Probability(p, T1.signed or T2.signed),
        T1.phi.kron(T2.phi),
    )


def _check_lambda(lam) -> Fraction:
    lam = as_fraction(lam)
    if not 0 <= lam <= 1:
        raise LambdaOutOfRange(f"lambda = {lam} is not in [0, 1]")
    return lam


def m_ary_weighted_sum(triples: Sequence[Triple], lambdas) -> Triple:
    """Convex combination: coproduct category, blocks ``lambda_i p_i``, block-diagonal kernel."""
    triples = list(triples)
    lambdas = make_probability(lambdas)
    if len(lambdas) != len(triples):
        raise LengthMismatch(f"{len(lambdas)} weights for {len(triples)} triples")
    p = tuple(lam * x for lam, T in zip(lambdas, triples) for x in T.p)
    return Triple(
        coproduct_of([T.category for T in triples]),
        Probability(p, any(T.signed for T in triples)),
        block_diagonal([T.phi for T in triples]),
    )


def weighted_sum(T1: Triple, T2: Triple, lam) -> Triple:
    lam = _check_lambda(lam)
    return m_ary_weighted_sum([T1, T2], [lam, 1 - lam])


def morphism_weighted_sum(f1: TripleMorphism, f2: TripleMorphism, lam) -> TripleMorphism:
    """The morphism ``lambda f1 + (1 - lambda) f2`` between weighted sums.

    It restricts to ``f1`` and ``f2`` on the two blocks.  For ``0 < lambda < 1``
    the target is the weighted sum of the targets; at ``lambda`` in ``{0, 1}``
    a block carries no mass and its target kernel columns are delta columns.
    """
    lam = _check_lambda(lam)
    source = weighted_sum(f1.source, f2.source, lam)
    codomain = coproduct_of([f1.target.category, f2.target.category])
    offset = f1.target.size
    object_map = f1.functor.object_map + tuple(b + offset for b in f2.functor.object_map)
    F = Functor(source.category, codomain, object_map)
    return pushforward(F, source)


def is_transition_kernel(T: Triple) -> bool:
    """True iff every column ``b -> phi(b, a)`` sums to exactly one."""
    return all(sum(T.phi.col(j), Fraction(0)) == 1 for j in range(T.phi.cols))


def transition_step(T: Triple) -> Probability:
    """Distribution after one transition: ``p_hat(a) = sum_b phi(a, b) p(b)``."""
    if not is_transition_kernel(T):
        raise NotTransitionKernel("kernel columns must sum to 1")
    return Probability(T.phi @ T.p.weights, T.signed)


def relabel(T: Triple, labels: Sequence[str]) -> Triple:
    return Triple(FinCategory(tuple(labels), T.category.zeta), T.p, T.phi)

