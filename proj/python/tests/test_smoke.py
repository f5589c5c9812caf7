from decimal import Decimal, getcontext
from fractions import Fraction

import pytest

import rootrefine as rr

getcontext().prec = 80


def test_sqrt2():
    out = rr.refine(["-2", 0, 1], center=1.5, radius="0.2", isolation=9, eps_bits=128)
    assert "error" not in out
    assert out["err_exp"] <= -128
    re, im = out["root"]
    assert im == "0"
    assert abs(Decimal(re) - Decimal(2).sqrt()) < Decimal(2) ** -127


def test_refine_all_and_oracle():
    # (x - 1)(x - 2)(x - 3)(x - 4)
    coeffs = [24, -50, 35, -10, 1]
    discs = [{"center": (j + 0.05, -0.02), "radius": 0.3, "isolation": 3} for j in range(1, 5)]
    out = rr.refine_all(coeffs, discs, eps_bits=100)
    assert [round(rr.to_complex(o["root"]).real) for o in out] == [1, 2, 3, 4]
    for j, o in enumerate(out, start=1):
        assert abs(Decimal(o["root"][0]) - j) < Decimal(2) ** -100

    roots = sorted(rr.to_complex(z).real for z in rr.oracle_roots(coeffs, 200))
    assert roots == pytest.approx([1, 2, 3, 4], abs=1e-15)


def test_factor():
    # (x - 1/2)(x - 1/4)(x - 3)(x + 4)
    out = rr.extract_factor(["-1.5", "9.125", "-12.625", "0x1p-2", 1], center=0.375, radius=0.2,
                            isolation=6, eps_bits=100, count=2)
    assert out["count"] == 2
    got = [Fraction(Decimal(c[0])) for c in out["coeffs"]]
    for g, want in zip(got, [Fraction(1, 8), Fraction(-3, 4), Fraction(1)]):
        assert abs(g - want) < Fraction(1, 2**100)


def test_power_sums():
    est = rr.power_sums([-0.5, 1], center=0, radius=0.6, isolation=4, kmax=2, delta=1e-12)
    assert [e["k"] for e in est] == [0, 1, 2]
    assert abs(float(est[1]["value"][0]) - 0.5 / 0.6) <= est[1]["error_radius"] + 1e-15


def test_errors_and_schedule():
    assert rr.working_precision_for(100, 8, 16) == 232
    out = rr.refine([-1, 1], center=5, radius=0.5, isolation=4, eps_bits=64)
    assert "holds 0 roots" in out["error"]
    with pytest.raises(rr.ContractViolation):
        rr.extract_factor([2, -3, 1], center=1, radius=0.2, isolation=4, eps_bits=64, count=2)
    with pytest.raises(ValueError):
        rr.refine([3], center=0, radius=1, isolation=4, eps_bits=10)
    out = rr.refine_all([2, -3, 1], [{"center": 1.5, "radius": 0.1, "isolation": 2}], eps_bits=32)
    assert "error" in out[0]
    assert issubclass(rr.ContractViolation, rr.RootRefineError)


def test_big_int_coefficients_are_exact():
    # (x - (2**70 + 1)) has a root no double can hold
    c = 2**70 + 1
    out = rr.refine([-c, 1], center=float(c), radius=2.0**20, isolation=4, eps_bits=80)
    assert Decimal(out["root"][0]) == c
