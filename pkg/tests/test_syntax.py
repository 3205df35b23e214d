from hypothesis import given
from hypothesis import strategies as st

from polycalc.syntax import (
    AND, BOT, BULLET, OR, TOP, App, Forall, Hole, Imp, Lam, TApp, TVar, Var, alpha_eq, ast_size,
    fill_avoiding, fill_capturing, fresh, subst_formula, subst_term, subst_type_in_term, subterm_paths,
    term_size,
)
from polycalc.rewrite import is_elimination_context, is_principal_context

from conftest import F, L2_FORMULAS, T, l2_formulas

Y, Z, W = TVar("Y"), TVar("Z"), TVar("W")


def test_substitution_in_formulas():
    assert subst_formula(F("X -> Y"), "X", Z) == F("Z -> Y")
    assert subst_formula(F("forall X. X"), "X", Y) == F("forall X. X")
    out = subst_formula(F("forall Y. X -> Y"), "X", Y)
    assert isinstance(out, Forall) and out.var != "Y"
    assert alpha_eq(out, F("forall V. Y -> V"))


def test_substitution_in_terms():
    assert subst_term(Var("x"), "x", Var("y")) == Var("y")
    out = subst_term(T("\\y:Y. x"), "x", Var("y"))
    assert isinstance(out, Lam) and out.var != "y" and out.body == Var("y")
    assert subst_type_in_term(TApp(Var("t"), TVar("X")), "X", F("Y -> Z")) == TApp(Var("t"), F("Y -> Z"))


def test_filling_contexts():
    ctx = Lam("x", Y, Hole())
    assert fill_capturing(ctx, Var("x")) == Lam("x", Y, Var("x"))
    out = fill_avoiding(ctx, Var("x"))
    assert isinstance(out, Lam) and out.var != "x" and out.body == Var("x")


def test_elimination_contexts_fill_the_same_both_ways():
    for src in ["[] x", "[] [Y] y", "[] x [Y -> Z]", "case#or[W]([]; y1 => c | y2 => c)"]:
        e = T(src)
        assert is_elimination_context(e) or "case" in src
        for arg in [Var("x"), T("\\x:Y. x"), T("f y")]:
            assert alpha_eq(fill_avoiding(e, arg), fill_capturing(e, arg))


def test_principal_contexts_compose():
    c, d = T("[] x [Y]"), T("[] [Z] y")
    assert is_principal_context(c) and is_principal_context(d)
    assert is_principal_context(fill_capturing(c, d))


def test_alpha_equivalence():
    assert alpha_eq(T("\\x:Y. x"), T("\\y:Y. y"))
    assert alpha_eq(F("forall X. X"), F("forall Y. Y"))
    assert not alpha_eq(T("\\x:Y. x"), T("\\x:Z. x"))
    assert not alpha_eq(T("\\x:Y. \\y:Y. x"), T("\\x:Y. \\y:Y. y"))


def test_builtin_signatures():
    assert (OR.size_i, OR.size_j, OR.size_k, OR.f, OR.g) == (2, 2, 2, (1, 2), (1, 2))
    assert (BULLET.size_i, BULLET.size_j, BULLET.size_k, BULLET.f, BULLET.g) == (3, 3, 2, (1, 2, 3), (1, 1, 2))
    assert (BOT.size_i, BOT.size_j, BOT.size_k) == (0, 0, 0)
    assert (TOP.size_k, AND.size_k, AND.g) == (1, 1, (1, 1))
    assert BULLET.premises(1) == (1, 2) and BULLET.premises(2) == (3,)


def test_sizes():
    eta = T("case#or[Y \\/ Z](x; y => inj#or.1[Y, Z](y) | z => inj#or.2[Y, Z](z))")
    assert ast_size(eta) == 3
    assert ast_size(T("/\\X. \\x:X. x")) == 2
    assert term_size(T("/\\X. \\x:X. x")) == 3


def test_fresh_avoids():
    assert fresh("x", {"x", "x1"}) not in {"x", "x1"}
    assert fresh("x", set()) == "x"


@given(l2_formulas)
def test_substitution_composes_through_a_fresh_name(a):
    y = fresh("V", a.names)
    assert alpha_eq(subst_formula(subst_formula(a, "Y", TVar(y)), y, Z), subst_formula(a, "Y", Z))


@given(l2_formulas, l2_formulas)
def test_substitution_leaves_no_trace_of_the_variable(a, b):
    out = subst_formula(a, "Y", b)
    if "Y" not in b.ftv:
        assert "Y" not in out.ftv
    assert out.ftv <= (a.ftv - {"Y"}) | (b.ftv if "Y" in a.ftv else frozenset())


_CONTEXTS = [T(s) for s in ["[]", "\\x:Y. []", "\\x:Y. f []", "/\\X. []", "(\\z:Y. []) y", "[] x", "g ([] y)"]]
_ARGS = [T(s) for s in ["x", "y", "f x", "\\x:Y. x", "z"]]


@given(st.sampled_from(_CONTEXTS), st.sampled_from(_ARGS))
def test_fillings_agree_without_capture(c, t):
    bound_on_path = set()
    cur = c
    while not isinstance(cur, Hole):
        if isinstance(cur, Lam):
            bound_on_path.add(cur.var)
            cur = cur.body
        elif isinstance(cur, App):
            cur = cur.fun if cur.fun.holes else cur.arg
        else:
            cur = cur.body if hasattr(cur, "body") else cur.fun
    if not (t.fv & bound_on_path):
        assert alpha_eq(fill_avoiding(c, t), fill_capturing(c, t))
    else:
        assert not alpha_eq(fill_avoiding(c, t), fill_capturing(c, t))


def test_subterm_paths_reach_every_node():
    t = T("\\x:Y. f (g x) x")
    assert len(list(subterm_paths(t))) == term_size(t)
