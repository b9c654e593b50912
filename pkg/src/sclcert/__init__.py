"""Certified bounds on stable commutator length of Dehn twists.

Word identities in the mapping class group are checked by a rewriting proof
checker, cross-examined in Sp(2g, Z) and in the abelianization, and pushed
through a formal quasimorphism calculus to exact rational upper bounds.
Lower bounds in the hyperelliptic mapping class group come from the
signature of hyperelliptic Lefschetz fibrations.
"""
from .abelian import GroupSpec, ab_image, min_power_in_commutator, separating_weight
from .certificates import (
    bounds, genus2_chain, emit_certificate, feasible, parse_certificate, strictness_check,
)
from .homology import check_identity, transvection, word_image
from .lefschetz import CycleClass, MonodromyCounts, scl_lower_bound, signature, signature_rate
from .quasimorphism import NU, PhiClass, PhiForm, run_pipeline, sigma
from .rewriting import (
    Derivation, RewriteStep, apply_rule, builtin_derivation, builtin_derivations, check_derivation,
    normalize_goal,
)
from .surface import builtin_config, pairing, validate
from .words import TwistWord, conjugate, exponent_sums, free_reduce, invert, multiply, parse_word

__version__ = "0.1.0"
