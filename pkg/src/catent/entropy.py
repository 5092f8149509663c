"""Categorical entropy of probabilistic triples and derived quantities.

The inner sums ``(Z_phi p)_a`` are formed exactly; floating point only
enters through the logarithm.  All values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple

from .errors import (
    LogOfZero,
    NoMagnitude,
    NoNonnegativeWeighting,
    NotTransitionKernel,
    ShapeMismatch,
    SignedInput,
)
from .linalg import Vector, as_matrix, magnitude
from .triples import (
    Probability,
    Triple,
    TripleMorphism,
    embed_finprob,
    is_transition_kernel,
    make_probability,
    to_terminal,
    transition_step,
    validate_kernel,
    validate_triple,
)


def ln(x: Fraction) -> float:
    """Natural log of a positive rational, robust to huge numerators/denominators."""
    if x <= 0:
        raise ValueError(f"log of non-positive value {x}")
    try:
        f = float(x)
    except OverflowError:
        f = math.inf
    if f == 0.0 or math.isinf(f):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(f)


def xlogx(x) -> float:
    """``x ln x`` with the continuous extension ``0 ln 0 = 0``."""
    x = Fraction(x)
    return 0.0 if x == 0 else float(x) * ln(x)


def inner_sums(T: Triple) -> Vector:
    """The exact vector ``Z_phi p``."""
    return T.phi @ T.p.weights


@dataclass(frozen=True)
class EntropyValue:
    nats: float
    inner_sums: Vector = ()

    def __float__(self) -> float:
        return self.nats


def _entropy_terms(p: Sequence[Fraction], f: Sequence[Fraction], absolute: bool) -> float:
    total = 0.0
    for pa, fa in zip(p, f):
        if pa == 0:
            continue
        if absolute:
            fa = abs(fa)
        if fa == 0:
            raise LogOfZero("inner sum vanishes at an object with nonzero weight")
        total -= float(pa) * ln(fa)
    return total + 0.0


def cat_entropy(T: Triple) -> float:
    r"""Categorical entropy of a triple.

    .. math::

       \mathcal{H}(A, p, \phi) = -\sum_a p(a) \ln \Big(\sum_b p(b)\phi(a, b)\Big)

    Terms with ``p(a) = 0`` are zero.

    Raises
    ------
    SignedInput
        If ``T`` carries a signed probability; use :func:`signed_entropy`.
    """
    return explain_entropy(T).nats


def explain_entropy(T: Triple) -> EntropyValue:
    """Like :func:`cat_entropy` but also returns the exact inner sums."""
    if T.signed:
        raise SignedInput("signed probability; use signed_entropy")
    f = inner_sums(T)
    return EntropyValue(_entropy_terms(T.p.weights, f, absolute=False), f)


def signed_entropy(T: Triple) -> float:
    """``-sum p_a ln |(Z_phi p)_a|``, defined for signed probabilities as well."""
    return _entropy_terms(T.p.weights, inner_sums(T), absolute=True)


def shannon_entropy(p) -> float:
    p = p if isinstance(p, Probability) else make_probability(p)
    if p.signed:
        raise SignedInput("Shannon entropy needs an unsigned probability")
    return -sum(xlogx(x) for x in p) + 0.0


def binary_entropy(lam) -> float:
    """``-lam ln lam - (1 - lam) ln(1 - lam)`` with ``h(0) = h(1) = 0``."""
    lam = Fraction(lam)
    return -(xlogx(lam) + xlogx(1 - lam)) + 0.0


def log_magnitude_entropy(category, phi) -> Tuple[Probability, float]:
    """Normalised nonnegative weighting ``u = w / |Z_phi|`` and ``H(A, u, phi)``.

    ``H(A, u, phi)`` equals ``ln |Z_phi|``.

    Raises
    ------
    NoMagnitude
        ``Z_phi`` lacks a weighting or coweighting.
    NoNonnegativeWeighting
        No weighting of ``Z_phi`` is nonnegative.
    """
    Z = validate_kernel(category, phi)
    result = magnitude(Z)
    if result.magnitude is None:
        raise NoMagnitude("kernel matrix has no magnitude")
    if not result.has_nonnegative_weighting:
        raise NoNonnegativeWeighting("kernel matrix has no nonnegative weighting")
    total = result.magnitude
    u = tuple(w / total for w in result.nonnegative_weighting)
    T = validate_triple(category, u, Z)
    return T.p, cat_entropy(T)


def diversity_order1(Z, p) -> float:
    """Similarity-sensitive diversity of order one, ``prod_i (Zp)_i^(-p_i)``.

    Computed as ``exp`` of the categorical entropy, so the identity matrix
    recovers the exponential of Shannon entropy.
    """
    Z = as_matrix(Z)
    p = p if isinstance(p, Probability) else make_probability(p)
    if not Z.is_square or Z.rows != len(p):
        raise ShapeMismatch(f"similarity matrix {Z.shape} does not match {len(p)} species")
    if any(Z[i, i] <= 0 for i in range(Z.rows)):
        raise ShapeMismatch("similarity matrix needs a positive diagonal")
    if p.signed:
        raise SignedInput("diversity needs an unsigned probability")
    return math.exp(_entropy_terms(p.weights, Z @ p.weights, absolute=False))


def kl_term(p_hat: Sequence[Fraction], p: Sequence[Fraction]) -> float:
    """``D(p_hat | p) = sum_a p(a) ln(p_hat(a) / p(a))``.

    Note the sign: this is *minus* the usual ``KL(p || p_hat)``, so that
    ``H_cat = H(p) - D``.
    """
    total = 0.0
    for ph, pa in zip(p_hat, p):
        if pa == 0:
            continue
        total += float(pa) * ln(ph / pa)
    return total


def entropy_decomposition(T: Triple, check_tol: float = 1e-9) -> Tuple[float, float, float]:
    """Split the entropy of a transition-kernel triple as ``H(p) - D(p_hat | p)``.

    Returns
    -------
    (H_p, D_term, H_cat)
    """
    if not is_transition_kernel(T):
        raise NotTransitionKernel("decomposition needs column-stochastic phi")
    if T.signed:
        raise SignedInput("decomposition needs an unsigned probability")
    p_hat = transition_step(T)
    h_p = shannon_entropy(T.p)
    d = kl_term(p_hat.weights, T.p.weights)
    h_cat = cat_entropy(T)
    if abs(h_cat - (h_p - d)) > check_tol:
        raise ArithmeticError(f"decomposition mismatch: {h_cat} vs {h_p} - {d}")
    return h_p, d, h_cat


def information_loss(f: TripleMorphism) -> float:
    """Entropy drop ``H(source) - H(target)`` along a morphism."""
    return cat_entropy(f.source) - cat_entropy(f.target)


def terminal_loss(T: Triple) -> float:
    """Loss of the unique morphism to the terminal transition-kernel triple."""
    if not is_transition_kernel(T):
        raise NotTransitionKernel("terminal loss is defined on transition-kernel triples")
    return information_loss(to_terminal(T))


def shannon_via_embedding(p) -> float:
    """Categorical entropy of the discrete embedding of ``p``."""
    p = p if isinstance(p, Probability) else make_probability(p)
    return cat_entropy(embed_finprob([f"x{i}" for i in range(len(p))], p))

