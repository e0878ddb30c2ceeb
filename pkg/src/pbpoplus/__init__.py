"""PBPO+ graph rewriting over lattice-labeled multigraphs."""
from .classifier import (T_map, classify_object, classify_partial, classify_total, materialize,
                         restricted_classifier_certificate)
from .errors import *  # noqa: F401,F403
from .graph import (Graph, Morphism, commutes, compose, identity, inverse, is_epi, is_iso,
                    is_label_preserving, is_mono, is_regular_mono, patch_decomposition)
from .interop import (AgreeRule, DpoRule, PbpoRule, agree_step, compact_rules, dpo_step,
                      pbpo_step, translate_agree, translate_dpo)
from .lattice import (Lattice, chain_lattice, explicit_lattice, flat_lattice, from_descriptor,
                      is_heyting, join, meet, powerset_lattice, unit_lattice)
from .limits import (enumerate_quotients, epi_regmono_factorize, is_pullback_square,
                     is_pushout_square, mediating_from_pushout, mediating_into_pullback,
                     pullback, pushout)
from .rewrite import (Rule, StepResult, Trace, apply_step, determinism_certificate,
                      find_strong_matches, is_strong_match, rewrite_closure, validate_rule)
from .search import are_isomorphic, count_morphisms, enumerate_morphisms, find_isomorphism

__version__ = "0.1.0"
