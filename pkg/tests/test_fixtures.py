"""Golden values transcribed from the worked examples, checked against the implementation."""
import json
from pathlib import Path

import pytest

from polycalc.concrete import parse_context_decls, parse_term
from polycalc.expansion import c_expansion, expansion_pair
from polycalc.fragments import is_sp, is_universal_polynomial, signature_of
from polycalc.kripke import three_world_countermodel
from polycalc.rewrite import RewriteTrace, equiv_beta_eta, replay, verify_trace
from polycalc.syntax import alpha_eq, fill_capturing, lookup_signature
from polycalc.translations import esf_translate, ff_atomize, rp_context, rp_formula, rp_term, translate_context
from polycalc.typecheck import typecheck

from conftest import F, T

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLD = json.loads((FIXTURES / "worked_examples.json").read_text())


@pytest.mark.parametrize("row", GOLD["encodings"], ids=lambda r: r["formula"])
def test_encodings(row):
    assert alpha_eq(rp_formula(F(row["formula"])), F(row["encoded"]))


@pytest.mark.parametrize("row", GOLD["sp_formulas"], ids=lambda r: r["formula"])
def test_sp(row):
    assert is_sp(F(row["formula"]), row["variable"]) == row["sp"]


@pytest.mark.parametrize("row", GOLD["universal_polynomials"], ids=lambda r: r["formula"])
def test_universal_polynomials(row):
    assert is_universal_polynomial(F(row["formula"])) == row["polynomial"]


@pytest.mark.parametrize("row", GOLD["recovered_signatures"], ids=lambda r: r["formula"])
def test_recovered_signatures(row):
    sig, args = signature_of(F(row["formula"]))
    assert (sig.size_i, sig.size_j, sig.size_k) == (row["I"], row["J"], row["K"])
    assert list(args) == [F(x) for x in row["args"]]
    if "f" in row:
        assert list(sig.f) == row["f"] and list(sig.g) == row["g"]


@pytest.mark.parametrize("row", GOLD["signatures"], ids=lambda r: r["name"])
def test_signatures(row):
    s = lookup_signature(row["name"])
    assert (s.size_i, s.size_j, s.size_k, list(s.f), list(s.g)) == (row["I"], row["J"], row["K"], row["f"], row["g"])


@pytest.mark.parametrize("row", GOLD["typings"], ids=lambda r: r["term"])
def test_typings(row):
    assert alpha_eq(typecheck(parse_context_decls(row["ctx"]), T(row["term"]), row["system"]), F(row["type"]))


@pytest.mark.parametrize("row", GOLD["expansion_pairs"], ids=lambda r: r["formula"])
def test_expansion_pairs(row):
    p = expansion_pair(F(row["formula"]))
    # binder names are a fixed choice: compare the composite (where they are bound) up to alpha
    assert alpha_eq(fill_capturing(p.intro, p.elim), fill_capturing(T(row["intro"]), T(row["elim"])))
    assert len(p.binders) == row["elim"].count(" ")


@pytest.mark.parametrize("row", GOLD["c_expansions"], ids=lambda r: r["formula"])
def test_c_expansions(row):
    assert alpha_eq(c_expansion(F(row["formula"]), row["variable"], T(row["context"])), T(row["result"]))


@pytest.mark.parametrize("row", GOLD["term_encodings"], ids=lambda r: r["term"])
def test_term_encodings(row):
    assert alpha_eq(rp_term(parse_context_decls(row["ctx"]), T(row["term"])), T(row["encoded"]))


@pytest.mark.parametrize("row", GOLD["ff_atomic_instantiation"], ids=lambda r: r["term"])
def test_atomic_instantiation(row):
    assert ff_atomize(parse_context_decls(row["ctx"]), T(row["term"])) == T(row["atomized"])


@pytest.mark.parametrize("row", GOLD["esf_injection_unchanged"], ids=lambda r: r["term"])
def test_direct_translation_keeps_injections(row):
    ctx = parse_context_decls(row["ctx"])
    assert alpha_eq(esf_translate(ctx, T(row["term"])), rp_term(ctx, T(row["term"])))


@pytest.mark.parametrize("row", GOLD["context_encodings"], ids=lambda r: r["context"])
def test_context_encodings(row):
    ctx = parse_context_decls(row["ctx"])
    assert alpha_eq(translate_context("RP", ctx, F(row["hole"]), T(row["context"])), T(row["encoded"]))


def test_gamma_plus_counterexample():
    g = GOLD["gamma_plus_counterexample"]
    ctx = parse_context_decls(g["ctx"])
    src, tgt = T(g["source"]), T(g["target"])
    cs = rp_context(ctx)
    assert equiv_beta_eta(esf_translate(ctx, src), esf_translate(ctx, tgt)) == g["esf_equivalent"]
    assert equiv_beta_eta(ff_atomize(cs, rp_term(ctx, src)), ff_atomize(cs, rp_term(ctx, tgt))) == g["ff_equivalent"]
    assert equiv_beta_eta(rp_term(ctx, src), rp_term(ctx, tgt)) == g["rp_equivalent"]


def test_countermodel():
    g = GOLD["countermodel"]
    m = three_world_countermodel()
    assert list(m.worlds) == g["worlds"]
    assert sorted(map(tuple, g["leq"])) == sorted(m.leq)
    for w in m.worlds:
        assert m.domain[w] == frozenset(frozenset(a) for a in g["D"])
    assert {x: sorted(m.valuation[x]) for x in g["g"]} == g["g"]
    for src, want in g["forced_at_bottom"].items():
        assert m.forces(m.bottom, F(src)) == want
    for w, src, want in g["forces"]:
        assert m.forces(w, F(src)) == want


def test_disjunction_property():
    g = GOLD["disjunction_property"]
    want = rp_formula(F(f"({g['A']}) \\/ ({g['B']})"))
    assert alpha_eq(typecheck({}, T(g["term"]), g["system"]), want)


def test_conjunction_eta():
    g = GOLD["conjunction_eta"]
    tr = RewriteTrace.from_json((FIXTURES / "conjunction_eta.trace.json").read_text())
    assert alpha_eq(tr.start, T(g["start"])) and alpha_eq(tr.end, T(g["end"]))
    assert tr.ctx == parse_context_decls(g["ctx"])
    assert sorted({s.rule for s in tr.steps}) == g["rules_used"]
    assert verify_trace(tr)


def test_stored_eta_eps_trace_replays():
    tr = RewriteTrace.from_json((FIXTURES / "eta_eps_example.trace.json").read_text())
    assert verify_trace(tr)
    assert {s.rule for s in tr.steps} <= {"ImpEta", "ForallEta", "Epsilon"}
    assert len(replay(tr)) == len(tr.steps) + 1
