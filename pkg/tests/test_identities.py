from math import comb, factorial

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from monogenic_radon.identities import (
    IdentityCheck,
    appendix_b_inner_sum,
    appendix_b_outer_sum,
    chu_vandermonde,
    m2_degeneracy,
    pascal_sum,
    roy_sum,
)


def test_pascal_examples():
    for k in range(6):
        assert pascal_sum(0, k) == 1
    assert pascal_sum(2, 1) == 1
    assert pascal_sum(40, 7) == 1


def test_pascal_sweep():
    for s in range(41):
        for k in range(13):
            assert pascal_sum(s, k) == 1


def test_pascal_rejects_negative():
    with pytest.raises(ValueError):
        pascal_sum(-1, 0)


def test_roy_examples():
    assert roy_sum(1, 0, 4) == (mpq(2, 3), mpq(2, 3))
    lhs, rhs = roy_sum(5, 3, 5)
    assert lhs == rhs
    for m in range(3, 11):
        for k in range(6):
            lhs, rhs = roy_sum(1, k, m)
            assert rhs == mpq(k + 2) / (mpq(m, 2) + k + 1)
    with pytest.raises(ValueError):
        roy_sum(0, 1, 4)


def test_roy_sweep():
    for m in range(3, 11):
        for s in range(1, 13):
            for k in range(13):
                lhs, rhs = roy_sum(s, k, m)
                assert lhs == rhs, (s, k, m)


def test_inner_sum_examples():
    for m in (3, 4):
        for k in range(4):
            assert appendix_b_inner_sum(0, 0, k, m) == 1
    assert appendix_b_inner_sum(1, 2, 0, 5) == 1
    assert appendix_b_inner_sum(3, 3, 2, 4) == 1
    with pytest.raises(ValueError):
        appendix_b_inner_sum(3, 2, 0, 4)


def test_inner_sum_sweep():
    for m in range(3, 11):
        for s in range(13):
            for k in range(0, 13, 3):
                for j in range(s + 1):
                    assert appendix_b_inner_sum(j, s, k, m) == 1


def test_outer_sum_examples():
    assert appendix_b_outer_sum(1, 0, 4) == (4, 4)
    lhs, rhs = appendix_b_outer_sum(4, 2, 7)
    assert lhs == rhs
    for k in range(5):
        lhs, rhs = appendix_b_outer_sum(0, k, 5)
        assert lhs == rhs


def test_outer_sum_sweep():
    for m in range(3, 11):
        for s in range(13):
            for k in range(13):
                lhs, rhs = appendix_b_outer_sum(s, k, m)
                assert lhs == rhs


def test_chu_vandermonde_examples():
    assert chu_vandermonde(mpq(5, 2), mpq(3, 2), 0) == (1, 1)
    s, k = 2, 1
    direct, closed = chu_vandermonde(-s - k, -2 * s - k, s)
    assert direct == closed == mpq(factorial(s) * factorial(s + k), factorial(2 * s + k))


def test_chu_vandermonde_rejects_vanishing_denominator():
    with pytest.raises(ValueError):
        chu_vandermonde(1, -1, 3)


@given(
    st.integers(-24, 24),
    st.sampled_from([1, 2]),
    st.integers(1, 24),
    st.sampled_from([1, 2]),
    st.integers(0, 10),
)
def test_chu_vandermonde_random(bn, bd, cn, cd, n):
    direct, closed = chu_vandermonde(mpq(bn, bd), mpq(cn, cd), n)
    assert direct == closed


def test_chu_vandermonde_against_binomials():
    # b = -n2, c = 1: the terms are C(n, i) C(n2, i), summing to C(n + n2, n)
    for n in range(10):
        for n2 in range(10):
            direct, closed = chu_vandermonde(-n2, 1, n)
            assert direct == closed == comb(n + n2, n)


@pytest.mark.parametrize("s", [1, 2, 3])
@pytest.mark.parametrize("k", range(4))
def test_m2_degeneracy(s, k):
    check = m2_degeneracy(s, k)
    assert check.passed
    rec = check.as_record()
    assert rec["pass"] is True and rec["params"] == {"s": s, "k": k}


def test_m2_degeneracy_rejects_s0():
    with pytest.raises(ValueError):
        m2_degeneracy(0, 1)


def test_identity_check_record():
    c = IdentityCheck("x", {"a": 1}, mpq(1, 2), mpq(2, 4))
    assert c.passed
    assert c.as_record() == {"name": "x", "params": {"a": 1}, "lhs": "1/2", "rhs": "1/2", "pass": True}
    assert not IdentityCheck("y", {}, 1, 2).passed
