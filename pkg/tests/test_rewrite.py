import pytest
from hypothesis import given
from hypothesis import strategies as st

from polycalc.corpus import conversion_steps
from polycalc.proofs import eta_eps_trace
from polycalc.rewrite import (
    BETA, PatternMismatch, RewriteTrace, Step, apply_step, beta_eta_normalize, beta_normalize, beta_steps,
    bounded_join, equiv_beta_eta, find_beta_trace, normalize_trace, step, verify_trace,
)
from polycalc.suites import gamma_plus_counterexample
from polycalc.syntax import Var, alpha_eq
from polycalc.translations import esf_translate, ff_atomize, rp_context, rp_term
from polycalc.typecheck import typecheck

from conftest import F, T


def test_beta_steps():
    ctx = {"y": F("Y")}
    assert step(T("(\\x:Y. x) y"), "ImpBeta", ctx=ctx) == Var("y")
    assert alpha_eq(step(T("(/\\X. \\x:X. x) [Y]"), "ForallBeta"), T("\\x:Y. x"))
    assert step(T("case#or[Y](inj#or.2[Z, Y](y); z => y | w => w)"), "ConnBeta", ctx=ctx) == Var("y")


def test_eta_steps():
    assert step(T("\\x:Y. f x"), "ImpEta", ctx={"f": F("Y -> Z")}) == Var("f")
    assert step(T("/\\X. t [X]"), "ForallEta", ctx={"t": F("forall X. X")}) == Var("t")
    ctx = {"x": F("Y \\/ Z")}
    assert step(T("case#or[Y \\/ Z](x; y => inj#or.1[Y, Z](y) | z => inj#or.2[Y, Z](z))"), "ConnEta", ctx=ctx) == Var("x")


def test_eta_side_condition():
    with pytest.raises(PatternMismatch):
        step(T("\\x:Y. x x"), "ImpEta", ctx={"x": F("Y")})


def test_gamma_plus_step():
    r = gamma_plus_counterexample()
    assert r["is_instance"]
    out = step(T("f (case#or[W](x; y => z | y1 => z))"), "ConnGammaPlus", aux={"context": T("f []")},
               ctx={"x": F("Y \\/ Z"), "z": F("W"), "f": F("W -> U")})
    assert alpha_eq(out, T("case#or[U](x; y => f z | y1 => f z)"))


def test_backward_step_needs_the_redex():
    t = Var("y")
    back = Step("ImpBeta", (), "backward", redex=T("(\\x:Y. x) y"))
    assert alpha_eq(apply_step(t, back, {"y": F("Y")}), T("(\\x:Y. x) y"))


def test_normalization():
    assert beta_normalize(T("(\\x:Y. x) y")) == Var("y")
    assert beta_eta_normalize(T("\\x:Y. f x")) == Var("f")
    assert equiv_beta_eta(T("t"), T("\\x:Y. t x"))
    assert equiv_beta_eta(T("t"), T("t"))


def test_the_counterexample_images_are_inequivalent():
    r = gamma_plus_counterexample()
    assert not r["esf_equivalent"] and not r["ff_equivalent"]


def test_atomization_chain_example():
    ctx = {"x": F("Y \\/ Z")}
    u = T("case#or[Y \\/ Z](x; y => inj#or.1[Y, Z](y) | z => inj#or.2[Y, Z](z))")
    cs = rp_context(ctx)
    assert alpha_eq(beta_normalize(ff_atomize(cs, rp_term(ctx, u))), beta_normalize(esf_translate(ctx, u)))


def test_trace_checking():
    t = T("(\\x:Y. x) y")
    assert verify_trace(RewriteTrace(t, [], t))
    good = RewriteTrace(t, [Step("ImpBeta", ())], Var("y"), {"y": F("Y")})
    assert verify_trace(good)
    bad = RewriteTrace(t, [Step("ImpBeta", (0,))], Var("y"), {"y": F("Y")})
    r = verify_trace(bad)
    assert not r and r.failed_at == 0
    wrong_end = RewriteTrace(t, [Step("ImpBeta", ())], Var("z"), {"y": F("Y")})
    assert verify_trace(wrong_end).failed_at == 1


def test_trace_json_round_trip():
    ctx = {"x": F("forall X. (Y -> X) -> (Z -> X) -> X")}
    tr = eta_eps_trace(ctx, T("x [Y -> W]"))
    back = RewriteTrace.from_json(tr.dumps())
    assert verify_trace(back) and alpha_eq(back.end, tr.end)


def test_bounded_join():
    t = T("(\\x:Y. x) y")
    assert bounded_join(t, t).steps == []
    found = bounded_join(t, Var("y"), rules=BETA, ctx={"y": F("Y")})
    assert len(found.steps) == 1 and verify_trace(found)


def test_bounded_join_on_a_translated_gamma_pair(nip_small):
    pairs = [p for p in nip_small.conversion_pairs if p.rule == "ConnGamma"][:20]
    assert pairs
    for p in pairs:
        cs = rp_context(p.source.context)
        tr = bounded_join(rp_term(p.source.context, p.source.term), rp_term(p.target.context, p.target.term),
                          max_steps=64, ctx=cs)
        assert tr is not None and len(tr.steps) <= 64 and verify_trace(tr)


def test_subject_reduction(nip_small):
    """Every single conversion step on a well-typed term preserves its type."""
    for j in nip_small.judgments:
        for st_ in conversion_steps(j.context, j.term):
            out = apply_step(j.term, st_, j.context, check_types=False)
            assert alpha_eq(typecheck(j.context, out, "NIP"), j.type)


def test_beta_confluence(nip_small):
    """Leftmost-outermost and the engine's own strategy reach the same normal form."""
    for j in nip_small.judgments:
        star = rp_term(j.context, j.term)
        _, nf = beta_steps(star)
        assert alpha_eq(nf, beta_normalize(star))


def test_find_beta_trace(nip_small):
    for j in nip_small.judgments[:200]:
        star = rp_term(j.context, j.term)
        steps = find_beta_trace(star, beta_normalize(star))
        assert steps is not None
        assert verify_trace(RewriteTrace(star, steps, beta_normalize(star), rp_context(j.context)))


def test_normalize_trace_matches_normalizers(nip_small):
    """Recorded normalization ends where the direct normalizers do, and replays."""
    for j in nip_small.judgments[:300]:
        cs, star = rp_context(j.context), rp_term(j.context, j.term)
        tb = normalize_trace(star, "beta", cs)
        assert alpha_eq(tb.end, beta_normalize(star)) and verify_trace(tb)
        te = normalize_trace(star, "betaeta", cs)
        assert alpha_eq(te.end, beta_eta_normalize(star)) and verify_trace(te)


def test_normalize_trace_rejects_unknown_rules():
    with pytest.raises(ValueError):
        normalize_trace(T("x"), "eps")
