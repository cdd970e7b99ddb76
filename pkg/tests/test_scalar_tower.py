from fractions import Fraction
from math import factorial, gamma, isclose, pi, sqrt

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from monogenic_radon.scalar_tower import (
    GaussianRational,
    HalfInt,
    PiScalar,
    binomial,
    gamma_half,
    gamma_ratio,
    pochhammer,
    unit_sphere_area,
)


def as_float(p: PiScalar) -> float:
    total = 0.0
    for e, q in p.terms.items():
        assert q.im == 0
        total += float(q.re) * pi ** (e / 2)
    return total


def test_gamma_examples():
    assert gamma_half(3) == 2
    assert gamma_half(mpq(1, 2)) == PiScalar.pi_power(1)
    assert gamma_half(mpq(5, 2)) == PiScalar.pi_power(1, mpq(3, 4))


def test_gamma_rejects_nonpositive():
    for bad in (0, -1, mpq(-1, 2)):
        with pytest.raises(ValueError):
            gamma_half(bad)


def test_gamma_rejects_non_half_integer():
    with pytest.raises(ValueError):
        gamma_half(mpq(1, 3))


@given(st.integers(min_value=1, max_value=60))
def test_gamma_matches_float(twice):
    a = HalfInt(twice)
    assert isclose(as_float(gamma_half(a)), gamma(twice / 2), rel_tol=1e-12)


@given(st.integers(min_value=1, max_value=80))
def test_gamma_recursion(twice):
    a = HalfInt(twice)
    assert gamma_half(a + 1) == gamma_half(a) * a.value


def test_gamma_integer_is_rational_half_is_sqrt_pi():
    for n in range(1, 10):
        assert gamma_half(n).is_rational
        assert gamma_half(n) == factorial(n - 1)
        assert set(gamma_half(HalfInt(2 * n - 1)).terms) == {1}


def test_pochhammer_examples():
    assert pochhammer(mpq(7, 2), 0) == 1
    assert pochhammer(mpq(3, 2), 2) == mpq(15, 4)
    assert pochhammer(-2, 3) == 0


@given(
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=0, max_value=20),
    st.integers(min_value=0, max_value=20),
)
def test_pochhammer_splits(twice, n, k):
    a = mpq(twice, 2)
    assert pochhammer(a, n) * pochhammer(a + n, k) == pochhammer(a, n + k)


@given(st.integers(min_value=1, max_value=40), st.integers(min_value=-10, max_value=10))
def test_gamma_ratio_against_gamma_half(twice, shift):
    a = mpq(twice, 2)
    b = a + shift
    if b <= 0:
        return
    assert PiScalar(gamma_ratio(b, a)) == gamma_half(b) / gamma_half(a)


def test_sphere_area_examples():
    assert unit_sphere_area(2) == PiScalar.pi_power(2, 2)
    assert unit_sphere_area(3) == PiScalar.pi_power(2, 4)
    assert unit_sphere_area(4) == PiScalar.pi_power(4, 2)
    with pytest.raises(ValueError):
        unit_sphere_area(0)


def test_sphere_area_float():
    for m in range(1, 12):
        assert isclose(as_float(unit_sphere_area(m)), 2 * pi ** (m / 2) / gamma(m / 2), rel_tol=1e-12)


def test_binomial():
    for n in range(12):
        for k in range(n + 1):
            assert binomial(n, k) == factorial(n) // (factorial(k) * factorial(n - k))
    assert binomial(3, 5) == 0


gauss = st.builds(
    GaussianRational,
    st.fractions(max_denominator=7).map(lambda f: mpq(f.numerator, f.denominator)),
    st.fractions(max_denominator=7).map(lambda f: mpq(f.numerator, f.denominator)),
)
pis = st.dictionaries(st.integers(min_value=-4, max_value=4), gauss, max_size=3).map(PiScalar)


@given(pis, pis, pis)
def test_piscalar_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == 0


@given(gauss, gauss)
def test_rational_times_rational_is_rational(x, y):
    assert (PiScalar(x) * PiScalar(y)).is_rational


def test_piscalar_no_zero_terms():
    p = PiScalar({0: 1, 1: 0, 2: GaussianRational(0, 0)})
    assert set(p.terms) == {0}


def test_piscalar_render():
    assert str(PiScalar.pi_power(1, mpq(3, 4))) == "3/4 * pi^(1/2)"
    assert str(PiScalar(2)) == "2"


def test_gaussian_lowest_terms():
    g = GaussianRational(mpq(2, 4), mpq(6, 8))
    assert (g.re, g.im) == (mpq(1, 2), mpq(3, 4))
    assert Fraction(int(g.re.numerator), int(g.re.denominator)) == Fraction(1, 2)


def test_sqrt_pi_float():
    assert isclose(as_float(PiScalar.pi_power(1)), sqrt(pi))
