from qbailey.bailey.classical import (
    ClassicalCheck, classical_table, pentagonal_check, verify_classical
)
from qbailey.bailey.lemma import (
    CrossCheck, LemmaSides, LemmaSpec, bailey_lemma_sides, lemma_cross_check, lemma_normalizer
)
from qbailey.bailey.pairs import (
    PairCheck, PairReport, beta_definitional, beta_formula_eval, printed_variant, resolve_pair,
    standard_a_specs, verify_bailey_pair
)
from qbailey.bailey.smpbp import (
    B_TO_INFINITY, B_TO_ZERO, BaileyError, BaileyPairSpec, LimitError, alpha_limit_check,
    beta_from_alpha, smpbp_alpha, smpbp_beta
)
from qbailey.bailey.transform import (
    TransformCheck, TransformSequences, bailey_transform_check, canonical_u, canonical_v
)

__all__ = (
    "B_TO_INFINITY", "B_TO_ZERO", "BaileyError", "BaileyPairSpec", "ClassicalCheck", "CrossCheck",
    "LemmaSides", "LemmaSpec", "LimitError", "PairCheck", "PairReport", "TransformCheck",
    "TransformSequences", "alpha_limit_check", "bailey_lemma_sides", "bailey_transform_check",
    "beta_definitional", "beta_formula_eval", "beta_from_alpha", "canonical_u", "canonical_v",
    "classical_table", "lemma_cross_check", "lemma_normalizer", "pentagonal_check",
    "printed_variant", "resolve_pair", "smpbp_alpha", "smpbp_beta", "standard_a_specs",
    "verify_bailey_pair", "verify_classical"
)
