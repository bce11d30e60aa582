import json

import numpy as np
import pytest

from coneperturb import cones as C
from coneperturb.functionals import DenseCovector
from coneperturb.operators import Identity
from coneperturb.verify import (
    Check,
    Expectation,
    Report,
    Scenario,
    default_cones,
    golden_scenarios,
    run_paper_examples,
    run_property_suite,
    run_scenario,
)

GOLDEN = ["spin-factor", "c01-piecewise", "copositive-psd", "lp-truncation", "c0-grid",
          "orthant-automorphism-control", "ray-cone-control"]


def test_scenario_catalogue():
    assert set(golden_scenarios()) == set(GOLDEN) | {"nondecomposable-2x2"}


@pytest.mark.parametrize("name", GOLDEN)
def test_golden_scenarios_pass(name):
    rep = run_paper_examples(0, name)
    assert rep.checks
    assert rep.passed, rep.to_text()


def test_every_golden_assertion_has_a_source():
    for name in ("spin-factor", "c01-piecewise", "copositive-psd", "lp-truncation", "c0-grid"):
        sc = golden_scenarios()[name]
        quoted = [e for e in sc.expectations if e.source]
        assert len(quoted) >= len(sc.expectations) // 2, name


def test_copositive_margin_of_image_is_five_ninths():
    rep = run_paper_examples(0, "copositive-psd")
    row = next(c for c in rep.checks if c.assertion == "copositive margin(T(D))")
    assert row.passed and row.measured.startswith("0.5555")


def test_lp_truncation_scenario():
    rep = run_paper_examples(3, "lp-truncation")
    inv = next(c for c in rep.checks if c.assertion.startswith("T⁻¹e₁"))
    assert inv.passed


def test_construction_error_becomes_failure():
    sc = Scenario("bad", C.Orthant(2), Identity((2,)), DenseCovector([1.0, 0.0]), np.array([-1.0, 0.0]),
                  [Expectation("margin", "m", 0.0, [0.0, 0.0])])
    rep = run_scenario(sc)
    assert not rep.passed
    assert "NotInCone" in rep.checks[0].measured


def test_orthant_control_witness_not_found():
    rep = run_paper_examples(0, "orthant-automorphism-control")
    row = next(c for c in rep.checks if c.assertion.startswith("witness not found"))
    assert row.passed and row.measured.startswith("false")


def test_unknown_scenario():
    with pytest.raises(KeyError):
        run_paper_examples(0, "nope")


def test_reports_are_deterministic():
    a = run_paper_examples(5).to_json()
    b = run_paper_examples(5).to_json()
    assert a == b
    json.loads(a)


def test_report_ordering_is_independent_of_insertion():
    c1 = Check("b", "x", "1", "1", True)
    c2 = Check("a", "y", "1", "2", False)
    r1, r2 = Report("t", 0, [c1, c2]), Report("t", 0, [c2, c1])
    assert r1.to_json() == r2.to_json() and r1.to_text() == r2.to_text() and r1.to_csv() == r2.to_csv()
    assert r1.to_csv().splitlines()[0] == "scenario,assertion,expected,measured,pass"
    assert not r1.passed and r1.failures == [c2]


@pytest.mark.parametrize("cone", [C.Orthant(4), C.Psd(3)], ids=str)
def test_property_suite_seed_seven(cone):
    rep = run_property_suite(cone, 7)
    assert rep.passed, rep.to_text()


def test_property_suite_lexicographic_skips():
    rep = run_property_suite(C.Lexicographic(), 0)
    assert rep.passed
    notes = " ".join(rep.notes)
    assert "duality skipped" in notes and "order unit skipped" in notes
    assert any("extremal" in c.assertion for c in rep.checks)


@pytest.mark.parametrize("cone", default_cones(), ids=str)
def test_property_suites_default_cones(cone):
    rep = run_property_suite(cone, 0)
    assert rep.passed, rep.to_text()
