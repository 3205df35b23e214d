"""Polynomial connectives in second-order natural deduction.

Proof terms, typechecking for the propositional, second-order and atomic
systems, the Russell-Prawitz encoding and three atomizing translations,
a rewriting engine with verifiable traces, and finite Kripke models.
"""
from .concrete import parse_context_decls, parse_formula, parse_signature, parse_term, show
from .corpus import Corpus, enumerate_formulas, enumerate_judgments
from .expansion import ExpansionPair, c_expansion, expansion_pair, weak_expansion
from .fragments import FRAGMENTS, in_fragment
from .kripke import KripkeModel, build_iso_contexts, countermodel_search, forces, three_world_countermodel
from .rewrite import (
    RewriteTrace, Step, apply_step, beta_eta_normalize, beta_normalize, bounded_join, equiv_beta_eta,
    replay, verify_trace,
)
from .suites import SUITES, SuiteConfig, SuiteReport, run_suite
from .syntax import alpha_eq, fill_avoiding, fill_capturing
from .translations import eps_atomize, esf_translate, ff_atomize, rp_context, rp_formula, rp_term, translate
from .typecheck import Judgment, TypingError, typecheck

__version__ = "0.1.0"

__all__ = [
    "parse_context_decls", "parse_formula", "parse_signature", "parse_term", "show",
    "Corpus", "enumerate_formulas", "enumerate_judgments",
    "ExpansionPair", "c_expansion", "expansion_pair", "weak_expansion",
    "FRAGMENTS", "in_fragment",
    "KripkeModel", "build_iso_contexts", "countermodel_search", "forces", "three_world_countermodel",
    "RewriteTrace", "Step", "apply_step", "beta_eta_normalize", "beta_normalize", "bounded_join",
    "equiv_beta_eta", "replay", "verify_trace",
    "SUITES", "SuiteConfig", "SuiteReport", "run_suite",
    "alpha_eq", "fill_avoiding", "fill_capturing",
    "eps_atomize", "esf_translate", "ff_atomize", "rp_context", "rp_formula", "rp_term", "translate",
    "Judgment", "TypingError", "typecheck",
]
