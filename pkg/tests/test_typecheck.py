import pytest

from polycalc.kripke import build_iso_contexts
from polycalc.syntax import alpha_eq
from polycalc.translations import rp_formula, rp_term
from polycalc.typecheck import (
    FragmentViolation, FreshnessViolation, NonAtomicWitness, RuleMismatch, UnboundVariable, typecheck,
    typecheck_context, well_typed,
)

from conftest import F, T


def test_polymorphic_identity():
    assert typecheck({}, T("/\\X. \\x:X. x"), "NI2") == F("forall X. X -> X")


def test_atomic_witness_restriction():
    ctx = {"x": F("forall X. X")}
    assert typecheck(ctx, T("x [Y -> Z]"), "NI2") == F("Y -> Z")
    with pytest.raises(NonAtomicWitness):
        typecheck(ctx, T("x [Y -> Z]"), "NI2AT")
    assert typecheck(ctx, T("x [Y]"), "NI2AT") == F("Y")


def test_injection_translates_to_the_encoded_type():
    ctx = {"y": F("Y")}
    u = T("inj#or.1[Y, Z](y)")
    assert typecheck(ctx, u, "NIP") == F("Y \\/ Z")
    assert alpha_eq(typecheck(ctx, rp_term(ctx, u), "NI2RP"), rp_formula(F("Y \\/ Z")))


def test_context_typing():
    assert typecheck_context({}, F("Y \\/ Z"), T("[]")) == F("Y \\/ Z")
    assert typecheck_context({}, F("forall X. X"), T("[] [Y]"), "NI2") == F("Y")
    a = F("Y \\/ Z")
    c, _ = build_iso_contexts(a)
    assert typecheck_context({}, rp_formula(a), c) == a


def test_errors():
    with pytest.raises(UnboundVariable):
        typecheck({}, T("x"))
    with pytest.raises(RuleMismatch):
        typecheck({"y": F("Y")}, T("y y"))
    with pytest.raises(FreshnessViolation):
        typecheck({"x": F("X")}, T("/\\X. x"), "NI2")
    with pytest.raises(FragmentViolation):
        typecheck({"y": F("Y")}, T("inj#or.1[Y, Z](y)"), "NI2")
    assert not well_typed({}, T("x"))


def test_case_elimination():
    ctx = {"x": F("Y \\/ Z"), "f": F("Y -> W"), "g": F("Z -> W")}
    t = T("case#or[W](x; y => f y | z => g z)")
    assert typecheck(ctx, t, "NIP") == F("W")
    with pytest.raises(RuleMismatch):
        typecheck(ctx, T("case#or[W](x; y => g y | z => g z)"), "NIP")
