"""Randomised property suites run by ``catent check``.

Each property is a function ``(rng) -> bool`` evaluated on freshly
generated instances.  Output depends only on the seed.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction
from typing import Callable, Dict, List, Tuple

from . import generate as gen
from .category import identity_functor, indiscrete
from .entropy import (
    binary_entropy,
    cat_entropy,
    entropy_decomposition,
    information_loss,
    log_magnitude_entropy,
    shannon_entropy,
    terminal_loss,
)
from .linalg import magnitude
from .triples import (
    compose_morphisms,
    embed_finprob,
    is_transition_kernel,
    m_ary_weighted_sum,
    morphism_weighted_sum,
    pushforward,
    pushforward_kernel,
    pushforward_probability,
    tensor,
    transition_step,
    validate_triple,
    weighted_sum,
)

Property = Callable[[random.Random], bool]


def check_shannon(rng):
    n = rng.randint(1, 8)
    p = gen.random_probability(rng, n)
    T = embed_finprob([f"x{i}" for i in range(n)], p)
    return abs(cat_entropy(T) - shannon_entropy(p)) < 1e-12


def check_tensor(rng):
    T1, T2 = gen.random_triple(rng, 5), gen.random_triple(rng, 5)
    return abs(cat_entropy(tensor(T1, T2)) - cat_entropy(T1) - cat_entropy(T2)) < 1e-9


def check_weighted_sum(rng):
    T1, T2 = gen.random_triple(rng, 5), gen.random_triple(rng, 5)
    lam = rng.choice([Fraction(0), Fraction(1), Fraction(rng.randint(1, 9), 10)])
    lhs = cat_entropy(weighted_sum(T1, T2, lam))
    rhs = lam * cat_entropy(T1) + (1 - lam) * cat_entropy(T2) + binary_entropy(lam)
    return abs(lhs - float(rhs)) < 1e-9


def check_chain_rule(rng):
    m = rng.randint(1, 4)
    triples = [gen.random_triple(rng, 4) for _ in range(m)]
    lambdas = gen.random_probability(rng, m)
    lhs = cat_entropy(m_ary_weighted_sum(triples, lambdas))
    rhs = sum(float(lam) * cat_entropy(T) for lam, T in zip(lambdas, triples)) + shannon_entropy(lambdas)
    return abs(lhs - rhs) < 1e-9


def check_continuity(rng):
    T = gen.random_triple(rng, 5)
    n = T.size
    k = 10 ** 9
    # perturb p towards a random distribution and phi on its support by 1/k
    q = gen.random_probability(rng, n, zero_prob=0)
    p_k = [(1 - Fraction(1, k)) * a + Fraction(1, k) * b for a, b in zip(T.p, q)]
    phi_k = [[x + (Fraction(1, k) if T.category.zeta[i][j] else 0)
              for j, x in enumerate(T.phi.row(i))] for i in range(n)]
    T_k = validate_triple(T.category, p_k, phi_k)
    return abs(cat_entropy(T_k) - cat_entropy(T)) < 1e-6


def check_log_magnitude(rng):
    n = rng.randint(1, 4)
    Z = gen.random_symmetric_similarity(rng, n)
    C = indiscrete(n)
    result = magnitude(Z)
    if result.magnitude is None or not result.has_nonnegative_weighting:
        return True
    _, h = log_magnitude_entropy(C, Z)
    return abs(h - math.log(result.magnitude)) < 1e-12


def check_kernel_validity(rng):
    T = gen.random_triple(rng, 6)
    F = gen.random_functor(rng, T.category)
    theta = pushforward_kernel(F, T)
    m = F.codomain.size
    return all(theta[b, b] > 0 for b in range(m)) and all(
        theta[b, c] == 0 for b in range(m) for c in range(m) if not F.codomain.zeta[b][c]
    )


def check_functoriality(rng):
    T = gen.random_triple(rng, 6)
    F, G = gen.random_composable(rng, T.category)
    f = pushforward(F, T)
    g = pushforward(G, f.target)
    gf = compose_morphisms(f, g)
    direct = pushforward(gf.functor, T)
    return direct.target == gf.target and pushforward_probability(gf.functor, T.p) == g.target.p


def transition_preserved(rng):
    T = gen.random_triple(rng, 6, transition=True)
    f = pushforward(gen.random_functor(rng, T.category), T)
    return is_transition_kernel(f.target)


def step_compatible(rng):
    T = gen.random_triple(rng, 6, transition=True)
    f = pushforward(gen.random_functor(rng, T.category), T)
    return transition_step(f.target) == pushforward_probability(f.functor, transition_step(T))


def decomposition(rng):
    T = gen.random_triple(rng, 6, transition=True)
    h_p, d, h = entropy_decomposition(T)
    return abs(h - (h_p - d)) < 1e-12


def loss_functorial(rng):
    T = gen.random_triple(rng, 6)
    F, G = gen.random_composable(rng, T.category)
    f = pushforward(F, T)
    g = pushforward(G, f.target)
    total = information_loss(compose_morphisms(f, g))
    return abs(total - information_loss(f) - information_loss(g)) < 1e-9


def loss_convex(rng):
    fs = []
    for _ in range(2):
        T = gen.random_triple(rng, 5)
        fs.append(pushforward(gen.random_functor(rng, T.category), T))
    lam = Fraction(rng.randint(0, 10), 10)
    lhs = information_loss(morphism_weighted_sum(fs[0], fs[1], lam))
    rhs = float(lam) * information_loss(fs[0]) + float(1 - lam) * information_loss(fs[1])
    return abs(lhs - rhs) < 1e-9


def loss_identity(rng):
    T = gen.random_triple(rng, 6)
    f = pushforward(identity_functor(T.category), T)
    full_support = all(x > 0 for x in T.p)
    return (f.target == T or not full_support) and information_loss(f) == 0


def chain_rule_terminal(rng):
    m = rng.randint(1, 4)
    triples = [gen.random_triple(rng, 4, transition=True) for _ in range(m)]
    lambdas = gen.random_probability(rng, m)
    lhs = terminal_loss(m_ary_weighted_sum(triples, lambdas))
    rhs = shannon_entropy(lambdas) + sum(float(lam) * terminal_loss(T) for lam, T in zip(lambdas, triples))
    return abs(lhs - rhs) < 1e-9


SUITES: Dict[str, List[Tuple[str, Property]]] = {
    "props": [
        ("shannon_recovery", check_shannon),
        ("tensor_additivity", check_tensor),
        ("weighted_sum_rule", check_weighted_sum),
        ("m_ary_chain_rule", check_chain_rule),
        ("continuity", check_continuity),
        ("log_magnitude", check_log_magnitude),
        ("pushforward_kernel_validity", check_kernel_validity),
        ("pushforward_functoriality", check_functoriality),
    ],
    "transition": [
        ("transition_kernel_preserved", transition_preserved),
        ("one_step_compatibility", step_compatible),
        ("entropy_decomposition", decomposition),
    ],
    "loss": [
        ("loss_identity", loss_identity),
        ("loss_functoriality", loss_functorial),
        ("loss_convex_linearity", loss_convex),
        ("terminal_chain_rule", chain_rule_terminal),
    ],
}
SUITES["all"] = SUITES["props"] + SUITES["transition"] + SUITES["loss"]


def run_suite(name: str, seed: int = 0, trials: int = 50) -> Dict[str, Dict[str, int]]:
    """Run every property of a suite ``trials`` times.

    Each property gets its own generator seeded from ``(seed, name)`` so the
    result of one property does not depend on which others ran.
    """
    results = {}
    for prop_name, prop in SUITES[name]:
        rng = random.Random(f"{seed}:{prop_name}")
        passed = sum(1 for _ in range(trials) if prop(rng))
        results[prop_name] = {"passed": passed, "failed": trials - passed}
    return results
