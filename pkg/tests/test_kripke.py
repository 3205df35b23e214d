import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polycalc.kripke import (
    COUNTERMODEL_FACTS, DISJUNCTION_FIXTURE_A, DISJUNCTION_FIXTURE_B, DISJUNCTION_FIXTURE_TERM, OVERFLOW_REFUTED,
    RP_OR_REFUTED, KripkeModel, UncoveredVariable, build_iso_contexts, check_countermodel_facts,
    countermodel_search, iter_models, three_world_countermodel,
)
from polycalc.suites import corpus_for
from polycalc.syntax import alpha_eq
from polycalc.translations import rp_formula
from polycalc.typecheck import TypingError, typecheck, typecheck_context

from conftest import F, T, L2VEE_FORMULAS, LP_FORMULAS

M = three_world_countermodel()
SMALL_MODELS = [M] + list(iter_models(("Y", "Z"), 2))


def test_countermodel_basics():
    assert M.forces("α", F("Y"))
    assert not M.forces("⊥", F("Y \\/ Z"))
    assert M.forces("⊥", F("forall X. (Y -> X) -> (Z -> X) -> X"))
    assert not M.forces("⊥", RP_OR_REFUTED)
    assert M.regular and M.violations() == []


def test_every_fact_is_reproduced():
    results = check_countermodel_facts(M)
    assert len(results) == len(COUNTERMODEL_FACTS)
    assert all(ok for _, ok in results), [f for f, ok in results if not ok]


def test_search_refutes_the_encoded_disjunction_quickly():
    t = time.perf_counter()
    m = countermodel_search(RP_OR_REFUTED, 3)
    assert time.perf_counter() - t < 5
    assert m is not None and not m.forces(m.bottom, RP_OR_REFUTED) and m.regular
    assert len(m.worlds) == 3


def test_theorems_have_no_countermodel():
    assert countermodel_search(F("Y -> Y"), 3) is None
    assert countermodel_search(F("Y -> Y \\/ Z"), 3) is None


def test_overflow_failure():
    assert not M.forces(M.bottom, OVERFLOW_REFUTED)
    assert countermodel_search(OVERFLOW_REFUTED, 3) is not None


def test_malformed_models_are_reported():
    ws = ("a", "b")
    leq = frozenset({("a", "a"), ("b", "b"), ("a", "b")})
    bad = KripkeModel(ws, leq, "a", {"a": frozenset({frozenset({"a"})}), "b": frozenset()}, {"Y": frozenset({"b"})})
    assert bad.violations()
    assert not bad.regular
    with pytest.raises(UncoveredVariable):
        bad.value("Q")


def test_json_shape():
    data = M.to_json()
    assert set(data) >= {"worlds", "leq", "D", "g"}
    assert data["g"]["Y"] == ["α"]


@given(st.sampled_from(L2VEE_FORMULAS), st.sampled_from(SMALL_MODELS))
def test_forcing_is_monotone(a, m):
    ext = m.extent(a)
    for w in ext:
        assert m.up(w) <= ext


def test_soundness_spot_check():
    for j in corpus_for("NI2VEEAT", 4, with_conversions=False).judgments:
        if not j.ctx:
            assert countermodel_search(j.type, 3) is None, j.type


def test_iso_contexts_for_atoms_are_holes():
    c, d = build_iso_contexts(F("Y"))
    assert c == T("[]") and d == T("[]")


def test_iso_contexts_for_disjunction():
    c, d = build_iso_contexts(F("Y \\/ Z"))
    assert alpha_eq(c, T("[] [Y \\/ Z] (\\y:Y. inj#or.1[Y, Z](y)) (\\z:Z. inj#or.2[Y, Z](z))"))
    assert alpha_eq(d, T("/\\X. case#or[(Y -> X) -> (Z -> X) -> X]([]; "
                         "y => \\x1:Y -> X. \\x2:Z -> X. x1 y | z => \\x1:Y -> X. \\x2:Z -> X. x2 z)"))


@given(st.sampled_from(LP_FORMULAS))
def test_iso_contexts_typecheck(a):
    c, d = build_iso_contexts(a)
    assert alpha_eq(typecheck_context({}, rp_formula(a), c), a)
    assert alpha_eq(typecheck_context({}, a, d), rp_formula(a))


def test_disjunction_property_fixture():
    a, b = F(DISJUNCTION_FIXTURE_A), F(DISJUNCTION_FIXTURE_B)
    t = T(DISJUNCTION_FIXTURE_TERM)
    assert alpha_eq(typecheck({}, t, "NI2AT"), rp_formula(F(f"({DISJUNCTION_FIXTURE_A}) \\/ ({DISJUNCTION_FIXTURE_B})")))


def test_encoding_direction_needs_a_non_atomic_witness():
    c, d = build_iso_contexts(F("Y \\/ Z"))
    with pytest.raises(TypingError):
        typecheck_context({}, rp_formula(F("Y \\/ Z")), c, "NI2VEEAT")
    assert typecheck_context({}, F("Y \\/ Z"), d, "NI2VEEAT") is not None
