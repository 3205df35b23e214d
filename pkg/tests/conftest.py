import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from polycalc.concrete import parse_formula, parse_term
from polycalc.corpus import enumerate_formulas
from polycalc.suites import corpus_for

settings.register_profile("desk", max_examples=150, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("desk")

F = parse_formula
T = parse_term

L2_FORMULAS = enumerate_formulas(5, "L2")
L2RP_FORMULAS = enumerate_formulas(5, "L2RP")
LP_FORMULAS = enumerate_formulas(4, "LP")
L2VEE_FORMULAS = enumerate_formulas(5, "L2VEE")

l2_formulas = st.sampled_from(L2_FORMULAS)
lp_formulas = st.sampled_from(LP_FORMULAS)


@pytest.fixture(scope="session")
def nip():
    return corpus_for("NIP", 7)


@pytest.fixture(scope="session")
def nip_small():
    return corpus_for("NIP", 5)


@pytest.fixture(scope="session")
def ni2rp():
    return corpus_for("NI2RP", 6, with_conversions=False)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
