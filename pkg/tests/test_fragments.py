from hypothesis import given
from hypothesis import strategies as st

from polycalc.fragments import (
    atomic_witnesses_only, in_fragment, is_sp, is_universal_polynomial, rightmost_atom, signature_of,
)
from polycalc.syntax import BOT, BULLET, OR, Conn, TVar, alpha_eq, subst_formula
from polycalc.translations import rp_formula

from conftest import F, T, L2RP_FORMULAS, LP_FORMULAS, lp_formulas


def test_strong_positivity():
    assert is_sp(F("X"), "X")
    assert is_sp(F("Y -> Z -> X"), "X")
    assert not is_sp(F("(X -> Y) -> X"), "X")


def test_universal_polynomials():
    assert is_universal_polynomial(F("forall X. (Y -> X) -> (Z -> X) -> X"))
    assert not is_universal_polynomial(F("forall X. (X -> Y) -> X"))
    assert is_universal_polynomial(F("forall X. X"))


def test_fragment_membership():
    assert in_fragment(F("forall X. (Y -> X) -> X"), "L2RP")
    assert not in_fragment(F("forall X. forall Y. X -> Y"), "L2RP")
    assert in_fragment(F("bullet(Y, Z, W)"), "LBULLET")
    assert not in_fragment(F("Y \\/ Z"), "L2")
    assert in_fragment(F("Y \\/ Z"), "LVEE") and in_fragment(F("forall X. X \\/ Y"), "L2VEE")


def test_rightmost_atom():
    assert rightmost_atom(F("Y")) == "Y"
    assert rightmost_atom(F("forall X. (Y -> X) -> X")) == "X"
    assert rightmost_atom(F("Y -> forall Z. W")) == "W"


def test_recovering_signatures():
    sig, args = signature_of(F("forall X. (Y -> X) -> (Z -> X) -> X"))
    assert (sig.size_i, sig.size_j, sig.size_k, sig.f, sig.g) == (OR.size_i, OR.size_j, OR.size_k, OR.f, OR.g)
    assert args == (TVar("Y"), TVar("Z"))
    sig, args = signature_of(F("forall X. X"))
    assert (sig.size_i, sig.size_j, sig.size_k) == (0, 0, 0) and args == ()
    sig, args = signature_of(F("forall X. (Y -> Z -> X) -> (W -> X) -> X"))
    assert (sig.size_k, sig.g) == (BULLET.size_k, BULLET.g) and len(args) == 3


def test_atomic_witnesses():
    assert atomic_witnesses_only(T("t [Y]"))
    assert not atomic_witnesses_only(T("t [Y -> Z]"))
    assert atomic_witnesses_only(T("/\\X. x [X]"))


@given(lp_formulas)
def test_encoding_lands_in_the_polynomial_fragment(a):
    assert in_fragment(rp_formula(a), "L2RP")


@given(lp_formulas)
def test_signature_recovery_is_a_retraction(a):
    if isinstance(a, Conn):
        sig, args = signature_of(rp_formula(a))
        assert alpha_eq(rp_formula(Conn(sig, args)), rp_formula(a))


@given(st.sampled_from(L2RP_FORMULAS), st.sampled_from(L2RP_FORMULAS))
def test_polynomial_fragment_closed_under_substitution(a, b):
    assert in_fragment(subst_formula(a, "Y", b), "L2RP")
