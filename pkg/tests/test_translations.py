from hypothesis import given
from hypothesis import strategies as st

from polycalc.fragments import is_universal_polynomial
from polycalc.rewrite import beta_normalize, equiv_beta_eta
from polycalc.syntax import Forall, Hole, TApp, Var, alpha_eq, formula_size, subst_formula
from polycalc.translations import (
    eps_atomize, esf_translate, ff_atomize, rp_context, rp_formula, rp_term, translate, translate_context,
)
from polycalc.typecheck import typecheck

from conftest import F, T, L2_FORMULAS, L2RP_FORMULAS

OR_STAR = F("forall X. (Y -> X) -> (Z -> X) -> X")


def test_formula_encodings():
    assert alpha_eq(rp_formula(F("Y \\/ Z")), OR_STAR)
    assert alpha_eq(rp_formula(F("bullet(Y, Z, W)")), F("forall X. (Y -> Z -> X) -> (W -> X) -> X"))
    assert alpha_eq(rp_formula(F("(Y -> Z) \\/ W")), F("forall X. ((Y -> Z) -> X) -> (W -> X) -> X"))
    assert rp_formula(F("Y")) == F("Y")
    assert alpha_eq(rp_formula(F("bot")), F("forall X. X"))
    assert alpha_eq(rp_formula(F("top")), F("forall X. X -> X"))


def test_term_encodings():
    assert rp_term({"x": F("Y")}, Var("x")) == Var("x")
    assert alpha_eq(rp_term({"y": F("Y")}, T("inj#or.1[Y, Z](y)")), T("/\\X. \\x1:Y -> X. \\x2:Z -> X. x1 y"))
    ctx = {"x": F("Y \\/ Z"), "f": F("Y -> W"), "g": F("Z -> W")}
    out = rp_term(ctx, T("case#or[W](x; y => f y | z => g z)"))
    assert alpha_eq(out, T("x [W] (\\y:Y. f y) (\\z:Z. g z)"))


def test_atomic_instantiation_is_kept():
    ctx = {"t": OR_STAR}
    for tr in (ff_atomize, eps_atomize):
        assert tr(ctx, T("t [W]")) == T("t [W]")
        assert tr(ctx, Var("t")) == Var("t")


def test_ff_atomization_of_an_implication_witness():
    ctx = {"t": OR_STAR}
    out = ff_atomize(ctx, T("t [W1 -> W2]"))
    want = T("\\y1:Y -> W1 -> W2. \\y2:Z -> W1 -> W2. \\x:W1. t [W2] (\\z1:Y. y1 z1 x) (\\z2:Z. y2 z2 x)")
    assert alpha_eq(out, want)
    assert typecheck(ctx, out, "NI2AT") == F("(Y -> W1 -> W2) -> (Z -> W1 -> W2) -> W1 -> W2")


def test_eps_atomization_of_an_implication_witness():
    ctx = {"t": OR_STAR}
    out = eps_atomize(ctx, T("t [W1 -> W2]"))
    want = T("\\y1:Y -> W1 -> W2. \\y2:Z -> W1 -> W2. \\m:W1. t [W2] (\\v1:Y. y1 v1 m) (\\v2:Z. y2 v2 m)")
    assert alpha_eq(out, want)
    assert equiv_beta_eta(out, ff_atomize(ctx, T("t [W1 -> W2]")))


def test_direct_translation():
    ctx = {"x": F("Y \\/ Y")}
    u = T("case#or[Y](x; y => y | z => z)")
    assert alpha_eq(esf_translate(ctx, u), T("x [Y] (\\y:Y. y) (\\z:Y. z)"))
    cs = rp_context(ctx)
    assert alpha_eq(beta_normalize(eps_atomize(cs, rp_term(ctx, u))), beta_normalize(esf_translate(ctx, u)))
    inj = T("inj#or.1[Y, Z](y)")
    assert alpha_eq(esf_translate({"y": F("Y")}, inj), rp_term({"y": F("Y")}, inj))


def test_context_translation():
    assert translate_context("RP", {}, F("Y"), Hole()) == Hole()
    ctx = {"u": F("Y \\/ Z")}
    out = translate_context("RP", ctx, F("Y -> W"), T("[] y"))
    assert out == T("[] y")
    out = translate_context("RP", {}, F("forall X. X"), T("[] [Y \\/ Z]"))
    assert alpha_eq(out, TApp(Hole(), OR_STAR))


def test_composite_translations():
    ctx = {"x": F("Y \\/ Z")}
    u = T("case#or[Y \\/ Z](x; y => inj#or.1[Y, Z](y) | z => inj#or.2[Y, Z](z))")
    assert alpha_eq(translate("FF_TOTAL", ctx, u), ff_atomize(rp_context(ctx), rp_term(ctx, u)))


_POLYS = [a for a in L2RP_FORMULAS if isinstance(a, Forall) and is_universal_polynomial(a)]
_WITNESSES = [b for b in L2_FORMULAS if formula_size(b) <= 4]


@given(st.sampled_from(_POLYS), st.sampled_from(_WITNESSES))
def test_instantiation_overflow(a, b):
    ctx = {"x": a}
    out = ff_atomize(ctx, TApp(Var("x"), b))
    assert alpha_eq(typecheck(ctx, out, "NI2AT"), subst_formula(a.body, a.var, b))


def test_translations_preserve_typing(nip_small):
    for j in nip_small.judgments:
        cs, a = rp_context(j.context), rp_formula(j.type)
        assert alpha_eq(typecheck(cs, rp_term(j.context, j.term), "NI2RP"), a)
        assert alpha_eq(typecheck(cs, esf_translate(j.context, j.term), "NI2AT"), a)


def test_atomizations_preserve_typing(ni2rp):
    for j in ni2rp.judgments:
        for tr in (ff_atomize, eps_atomize):
            assert alpha_eq(typecheck(j.context, tr(j.context, j.term), "NI2AT"), j.type)
