"""Index algebra, identity generators and verifiers for multiple zeta values.

Typical use::

    from mzvrel import grsf_sides, verify_real, verify_finite, grsf_finite_sides
    rel = grsf_sides((1, 2), 1)
    verify_real(rel).passed
"""
from .bigfixed import BigFixed
from .errors import (
    DepthMismatch,
    DepthTooSmall,
    EmptyIndex,
    InvalidParams,
    MZVError,
    NotAdmissible,
    NotPrime,
    ParseError,
)
from .finite import FiniteReport, PrimeEvaluator, eval_sum_mod, primes_between, verify_finite, verify_finite_many, zeta_p, zeta_p_star
from .formal import FormalSum, circled_harmonic, harmonic, naive_shuffle, star_expand, zeta_plus_sum
from .indices import (
    add,
    compositions,
    depth,
    format_index,
    hoffman_dual,
    parse_index,
    weight,
    zeta_plus_index,
)
from .posets import TwoPoset, expand_poset, index_to_word, integral_series_sides, mu, parse_poset, word_to_index
from .real import EvalReport, eval_sum, mzv, mzv_star, verify_real
from .relations import (
    Relation,
    SymbolicReport,
    f_sides,
    g_sides,
    grsf_finite_sides,
    grsf_ones_sides,
    grsf_sides,
    k_sub_u,
    lemma_first_check,
    lemma_second_check,
    ohno_sides,
    sum_formula_sides,
    verify_symbolic,
)

__version__ = "0.1.0"
