from decimal import Decimal, getcontext

import pytest

import rmtgap

getcontext().prec = 50


def test_version():
    assert rmtgap.__version__ == "0.1.0"


def test_gap_probabilities_sum_to_one():
    r = rmtgap.gap_probabilities("goe", 4, "0")
    assert len(r["E"]) == 5
    assert abs(sum(Decimal(e) for e in r["E"]) - 1) < Decimal("1e-15")
    assert r["residual"] < 1e-16
    assert r["bits_used"] >= 128


def test_goe_reflection():
    lo = rmtgap.gap_probabilities("goe", 5, "-0.4")["E"]
    hi = rmtgap.gap_probabilities("goe", 5, "0.4")["E"]
    for k in range(6):
        assert abs(Decimal(lo[k]) - Decimal(hi[5 - k])) < Decimal("1e-15")


def test_loe_counting_mean():
    c = rmtgap.counting_stats("loe", 20, "20", a=1.0)
    assert abs(Decimal(c["mean"]) - Decimal("8.71149059519")) < Decimal("1e-10")


def test_cumulants_and_marginals():
    c = rmtgap.cumulants("loe", 2, 1, a=4.0)
    assert c["mu"].startswith("15.063492")
    F = Decimal(rmtgap.marginal_cdf("goe", 3, 1, "1"))
    assert 0 < F < 1
    assert Decimal(rmtgap.marginal_pdf("goe", 3, 1, "1")) > 0


def test_large_deviation_and_mp():
    r = rmtgap.large_deviation(10)
    assert abs(Decimal(r["exact"]) - Decimal("-31.4183282145")) < Decimal("1e-9")
    assert abs(Decimal(rmtgap.mp_tail_mass("1")) - Decimal("0.391002218956")) < Decimal("1e-11")


def test_monte_carlo_is_seeded():
    a = rmtgap.mc_gap_probabilities("goe", 3, 0.0, samples=20000, seed=5)
    b = rmtgap.mc_gap_probabilities("goe", 3, 0.0, samples=20000, seed=5)
    assert a == b
    assert abs(sum(a["frequency"]) - 1) < 1e-12


def test_errors():
    with pytest.raises(ValueError):
        rmtgap.gap_probabilities("gue", 3, "0")
    with pytest.raises(ValueError):
        rmtgap.gap_probabilities("loe", 3, "1")
    with pytest.raises(rmtgap.PrecisionExhausted):
        rmtgap.gap_probabilities("goe", 30, "0", bits=64, max_escalations=0)
    # Escalating from 64 bits recovers.
    r = rmtgap.gap_probabilities("goe", 30, "0", bits=64)
    assert r["bits_used"] > 64
