"""Magnitude of finite categories and categorical entropy of probabilistic triples."""

from .category import (
    FinCategory,
    Functor,
    ObjectId,
    chain,
    compose_functors,
    coproduct_category,
    discrete,
    indiscrete,
    opposite,
    preimage,
    product_category,
    terminal,
    validate_category,
    validate_functor,
)
from .entropy import (
    cat_entropy,
    diversity_order1,
    entropy_decomposition,
    information_loss,
    log_magnitude_entropy,
    shannon_entropy,
    signed_entropy,
    terminal_loss,
)
from .linalg import (
    MagnitudeResult,
    RationalMatrix,
    category_magnitude,
    has_nonnegative_weighting,
    magnitude,
    mobius_inverse,
    solve_coweighting,
    solve_weighting,
)
from .maxent import MaxEntReport, numeric_maximize, sup_entropy_by_subsets
from .triples import (
    Probability,
    Triple,
    TripleMorphism,
    compose_morphisms,
    embed_finprob,
    is_transition_kernel,
    m_ary_weighted_sum,
    make_morphism,
    morphism_weighted_sum,
    pushforward,
    pushforward_kernel,
    pushforward_probability,
    tensor,
    transition_step,
    validate_triple,
    weighted_sum,
)

__version__ = "0.1.0"
