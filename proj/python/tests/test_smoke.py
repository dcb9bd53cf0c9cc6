from fractions import Fraction

import pytest

import widthcalc


def test_case1_exponent():
    out = widthcalc.exponent([3, 3], [1, 1], 2)
    assert out["theta"] == Fraction(1, 2)
    assert out["alpha"] == [Fraction(1, 2), Fraction(1, 2)]
    assert out["unique"]


def test_two_dim_small_r2():
    out = widthcalc.exponent(["8", "8/5"], [1, Fraction(1, 4)], 2)
    assert out["theta"] == Fraction(3, 16)
    assert widthcalc.regime(["8", "8/5"], [1, Fraction(1, 4)], 2)["theorem_case"] == "T4.1"


def test_regime_thetas_are_fractions():
    rep = widthcalc.regime([Fraction(3, 2)] * 2, [1, 1], 2)
    assert rep["theorem_case"] == "T1.2a"
    assert rep["exponent"] == Fraction(1, 3)
    assert all(isinstance(v, Fraction) for v in rep["thetas"].values())


def test_finite_cross_term():
    out = widthcalc.finite(16, 4, 2, [("inf", "1/4"), ("1", "1")])
    assert out["rational"] == Fraction(1, 2)
    assert out["branch"].startswith("cross-lambda")


def test_bad_input():
    with pytest.raises(ValueError):
        widthcalc.exponent(["1/2", 3], [1, 1], 2)
    with pytest.raises(TypeError):
        widthcalc.exponent([3.0, 3], [1, 1], 2)


def test_cli_exit_codes():
    code, out, _ = widthcalc.run_cli(["exponent", "--d", "2", "--p", "2,4/3", "--q", "2", "--r", "1,1/4"])
    assert code == 2
    code, _, err = widthcalc.run_cli(["finite", "--N", "16", "--n", "9", "--q", "2", "--balls", "1:1"])
    assert code == 4 and "n > N/2" in err
