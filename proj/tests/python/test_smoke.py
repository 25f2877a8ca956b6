import json
import math
import os
from fractions import Fraction

import pytest

import cantorgeo as cg

SPECS = os.environ.get("CANTORGEO_SPECS", os.path.join(os.path.dirname(__file__), "..", "..", "specs"))


def spec(name):
    return cg.parse_spec(os.path.join(SPECS, name + ".cfg"))


def test_logscalar_basics():
    x = cg.LogScalar(1e-300) * cg.LogScalar(1e-300)
    assert x.layer == 1
    assert x.exponent_sign == -1
    assert math.isclose(x.mantissa, 600 * math.log(10), rel_tol=1e-14)
    assert cg.LogScalar.parse("exp(-exp(3235.7))").approx() == "exp(-exp(3235.7))"
    assert cg.LogScalar(0.25) < cg.LogScalar(0.5)


def test_cantor_exact():
    mid = spec("mid3")
    assert mid.q_exact(4) == Fraction(1, 3)
    assert cg.closed_interval_length_exact(mid, 2) == Fraction(1, 9)
    assert cg.gap_length_exact(mid, 3, 4) == Fraction(1, 3)
    lv = cg.level(mid, 2, "exact")
    assert len(lv["intervals"]) == 4 and len(lv["gaps"]) == 3
    assert cg.two_adic(4, 12)["ell"] == 2


def test_geometry_values():
    assert math.isclose(float(cg.U(1 / 3)), 2 * math.pi**2 / math.log(2), rel_tol=1e-14)
    assert math.isclose(float(cg.L(1 / 3)), 2.619479395698261e-6, rel_tol=1e-10)
    d = cg.pentagon_d(math.asinh(2), math.asinh(1))
    assert math.isclose(float(d), math.acosh(2), rel_tol=1e-14)
    with pytest.raises(cg.NoPentagon):
        cg.pentagon_d(math.asinh(0.5), math.asinh(0.5))
    with pytest.raises(cg.DomainError):
        cg.U(1.5)


def test_analysis():
    rec = spec("recI")
    v = cg.check_condition_I(rec, 50)
    assert v["status"] == "HoldsOnPrefix"
    assert math.isclose(v["trace"][-1]["value"]["mantissa"], 50, rel_tol=1e-9)
    ex2 = spec("ex2")
    r = cg.check_condition_II(ex2, 3)
    assert [b["S"] for b in r["blocks"]][0] == 0.5
    assert math.isclose(r["blocks"][2]["S"], 2.0260337608486, rel_tol=1e-12)
    assert cg.classify_qc(spec("mid3"), 100)["class"] == "QCEquivalentEvidence"
    ratio, comparator = cg.witness_ratio(rec, 1)
    assert math.isclose(float(ratio), 0.0519119556052, rel_tol=1e-10)
    assert math.isclose(float(comparator), 1 / math.pi**2, rel_tol=1e-12)


def test_run_matches_cli_contract():
    code, out, err = cg.run("check-ii", os.path.join(SPECS, "ex2.cfg"), blocks=3)
    assert code == 2 and err == ""
    assert json.loads(out)["report"] == "check-ii"
    code, out, _ = cg.run("intervals", os.path.join(SPECS, "mid3.cfg"), depth=2, format="csv")
    assert code == 0
    assert out.splitlines()[0] == "k,i,type,length"
    assert len(out.splitlines()) == 8
    code, _, err = cg.run("intervals", "/nonexistent.cfg")
    assert code == 1 and err.startswith("error:")
