from qbailey.registry.spec import (
    IdentitySpec, LemmaMeta, LinearForm, PairSpec, QuadForm, RegistryError, TermSpec, get_identity,
    get_pair, load_pairs, load_registry, pairs, registry
)
from qbailey.registry.terms import eval_rhs, expand, lattice_points, pair_beta, sum_lhs
from qbailey.registry.verify import Report, Summary, verify_all, verify_identity

__all__ = (
    "IdentitySpec", "LemmaMeta", "LinearForm", "PairSpec", "QuadForm", "RegistryError", "Report",
    "Summary", "TermSpec", "eval_rhs", "expand", "get_identity", "get_pair", "lattice_points",
    "load_pairs", "load_registry", "pair_beta", "pairs", "registry", "sum_lhs", "verify_all",
    "verify_identity"
)
