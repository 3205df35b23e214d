import pytest
from hypothesis import given
from hypothesis import strategies as st

from polycalc.expansion import c_expansion, expansion_pair, weak_expansion
from polycalc.rewrite import beta_eta_normalize
from polycalc.suites import (
    c_expansion_instances, c_expansion_law, expansion_law_holds, multicontext_instances, multicontext_law,
)
from polycalc.syntax import App, Hole, Lam, TVar, Var, alpha_eq, fill_capturing
from polycalc.typecheck import typecheck_context

from conftest import F, T, L2_FORMULAS, l2_formulas


def test_atomic_pair_is_bare_holes():
    p = expansion_pair(F("Z"))
    assert p.elim == Hole() and p.intro == Hole() and p.atom == "Z"


def test_implication_pair():
    p = expansion_pair(F("Y -> Z"))
    x = p.term_vars[0]
    assert p.elim == App(Hole(), Var(x)) and p.intro == Lam(x, F("Y"), Hole())
    assert alpha_eq(weak_expansion(F("Y -> Z")), T("\\x:Y. [] x"))


def test_quantifier_pair():
    p = expansion_pair(F("forall X. X"))
    assert alpha_eq(fill_capturing(p.intro, p.elim), T("/\\X. [] [X]"))


def test_pair_for_implication_extends_the_consequent_pair():
    a, b = F("Y"), F("forall X. Z -> X")
    outer, inner = expansion_pair(F(f"Y -> forall X. Z -> X")), expansion_pair(b)
    assert len(outer.binders) == len(inner.binders) + 1 and outer.binders[0][1] == a


def test_weak_expansion_applied_is_identity():
    for a in L2_FORMULAS:
        w = weak_expansion(a, avoid={"x0"})
        assert alpha_eq(beta_eta_normalize(fill_capturing(w, Var("x0"))), Var("x0"))


@given(l2_formulas)
def test_expansion_law(a):
    assert expansion_law_holds(a)


def test_c_expansion_examples():
    u = T("f []")
    assert c_expansion(F("X"), "X", u) == u
    assert alpha_eq(c_expansion(F("W -> X"), "X", Hole()), T("\\n:W. [] n"))
    out = c_expansion(F("Y -> X"), "X", u)
    assert alpha_eq(out, T("\\n:Y. f ([] n)"))
    ctx = {"f": F("Z -> W")}
    assert typecheck_context(ctx, F("Y -> Z"), out, "NI2") == F("Y -> W")
    with pytest.raises(ValueError):
        c_expansion(F("(X -> Y) -> X"), "X", u)


def test_c_expansion_independent_of_binder_names():
    u = T("(\\n:Y. f []) y")
    a = c_expansion(F("Y -> X"), "X", u)
    b = c_expansion(F("Y -> X"), "X", u, avoid={"n1", "n2"})
    assert alpha_eq(a, b)


_G2 = list(c_expansion_instances())
_H1 = list(multicontext_instances())


@given(st.sampled_from(_G2))
def test_c_expansion_of_abstraction_reduces_to_abstraction_of_filling(inst):
    _, ctx, cf, u, xs, t = inst
    ok, why = c_expansion_law(ctx, cf, u, xs, t)
    assert ok, why


@given(st.sampled_from(_H1))
def test_principal_contexts_commute_with_multicontexts(inst):
    _, ctx, a, c, m, us = inst
    ok, why = multicontext_law(ctx, a, c, m, us)
    assert ok, why
