import random

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from monogenic_radon.clifford import CliffordElement, canonical_frame, rotated_frame
from monogenic_radon.fischer import monogenic_component, z_power_times
from monogenic_radon.huaradon import psi
from monogenic_radon.poly import (
    CPoly,
    S,
    T,
    Y,
    Z,
    dirac,
    evaluate,
    gamma_operator,
    homogeneous_components,
    inner,
    laplacian,
    move_block,
    parse_cpoly,
    right_dirac,
    vector_variable,
)
from monogenic_radon.scalar_tower import GaussianRational

I = GaussianRational(0, 1)


def z(m, i):
    return CPoly.var(m, Z, i)


def tau_poly(frame):
    return CPoly.const(frame.m, frame.tau())


def rand_poly(m, degree, seed, blocks=(Z,), terms=4):
    rng = random.Random(seed)
    out = CPoly(m)
    for _ in range(terms):
        exps = {}
        for _ in range(degree):
            key = (rng.choice(blocks), rng.randint(1, m))
            exps[key] = exps.get(key, 0) + 1
        blade = sorted(rng.sample(range(1, m + 1), rng.randint(0, 2)))
        coeff = CliffordElement.basis(m, *blade) * CliffordElement.scalar(m, GaussianRational(rng.randint(-3, 3), rng.randint(-2, 2)))
        out = out + CPoly.monomial(m, exps, coeff)
    return out


def test_dirac_of_vector_variable():
    assert dirac(vector_variable(4)) == CPoly.const(4, -4)


def test_dirac_of_monogenic_power():
    f = canonical_frame(4)
    tau = tau_poly(f)
    for k in range(4):
        assert dirac(tau * inner(vector_variable(4), tau) ** k) == CPoly(4)


def test_dirac_lowers_psi():
    for m in (3, 4):
        f = canonical_frame(m)
        assert dirac(psi(f, 1, 0)) == psi(f, 0, 0).scale(4)
        assert dirac(psi(f, 2, 0)) == psi(f, 1, 0)


def test_laplacian_examples():
    assert laplacian(z(3, 1) ** 2) == CPoly.const(3, 2)
    f = canonical_frame(4)
    zz = vector_variable(4)
    a = inner(zz, tau_poly(f))
    b = inner(zz, CPoly.const(4, f.tau_dagger()))
    assert laplacian(a * b) == CPoly.const(4, -4)


@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("seed", range(4))
def test_dirac_squared_is_minus_laplacian(m, seed):
    p = rand_poly(m, 4, seed)
    assert dirac(dirac(p)) == -laplacian(p)


@pytest.mark.parametrize("seed", range(3))
def test_right_dirac_matches_dagger(seed):
    # (p d)^dagger = -(d p^dagger) since e_j^dagger = -e_j and variables are real
    p = rand_poly(3, 3, seed)
    assert right_dirac(p).dagger() == -dirac(p.dagger())


def test_gamma_operator_constant():
    assert gamma_operator(CPoly.const(3, 1)) == CPoly(3)


@pytest.mark.parametrize("m", [3, 4])
def test_gamma_operator_spectrum(m):
    for frame in (canonical_frame(m), rotated_frame(m, 2)):
        for ell in range(5):
            # a monogenic M_ell built from the frame
            M = psi(frame, 0, ell)
            for j in range(5):
                f = z_power_times(j, M)
                eig = -ell if j % 2 == 0 else ell + m - 1
                assert gamma_operator(f) == f.scale(eig), (ell, j)


def test_gamma_operator_on_projected_psi():
    m = 4
    f = canonical_frame(m)
    M = monogenic_component(psi(f, 1, 0), 0)
    assert gamma_operator(z_power_times(2, M)) == z_power_times(2, M).scale(-1)
    assert gamma_operator(z_power_times(1, M)) == z_power_times(1, M).scale(m)


def test_gamma_operator_rejects_mixed_blocks():
    with pytest.raises(ValueError):
        gamma_operator(CPoly.var(3, T, 1) * z(3, 1))


def test_homogeneous_components():
    p = CPoly.const(3, 1) + z(3, 1) + z(3, 1) * z(3, 2)
    parts = homogeneous_components(p)
    assert [d for d, _ in parts] == [0, 1, 2]
    total = CPoly(3)
    for _, q in parts:
        total = total + q
    assert total == p
    assert homogeneous_components(CPoly(3)) == []
    assert [d for d, _ in homogeneous_components(psi(canonical_frame(3), 2, 1))] == [3]


def test_evaluate_examples():
    assert evaluate(z(3, 1) ** 2, {Z: [2, 0, 0]}) == CliffordElement.scalar(3, 4)
    f = canonical_frame(3)
    assert evaluate(inner(vector_variable(3), tau_poly(f)), {Z: [1, 0, 0]}) == CliffordElement.scalar(3, 1)
    expected = f.tau() * CliffordElement.scalar(3, I)
    assert evaluate(psi(f, 0, 1), {Z: [0, 1, 0]}) == expected


def test_evaluate_partial_leaves_other_blocks():
    p = z(3, 1) * CPoly.var(3, T, 2)
    out = evaluate(p, {Z: [3, 0, 0]})
    assert out == CPoly.var(3, T, 2).scale(3)


@pytest.mark.parametrize("seed", range(5))
def test_evaluate_is_multiplicative_for_scalar_factor(seed):
    m = 3
    rng = random.Random(seed)
    a = rand_poly(m, 2, seed)
    b = CPoly.const(m, 1)
    for _ in range(3):
        b = b + CPoly.monomial(m, {(Z, rng.randint(1, m)): 1}, rng.randint(-2, 2))
    point = {Z: [mpq(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(m)]}
    assert evaluate(a * b, point) == evaluate(a, point) * evaluate(b, point)
    assert evaluate(b * a, point) == evaluate(b, point) * evaluate(a, point)


@pytest.mark.parametrize("seed", range(4))
def test_product_associative(seed):
    a, b, c = (rand_poly(3, 2, seed * 3 + i, blocks=(Z, T, S)) for i in range(3))
    assert (a * b) * c == a * (b * c)


def test_vector_variable_multiplication_order():
    # z * e_1 = sum_j z_j e_j e_1 ; coefficient of z_2 is e_2 e_1 = -e_12
    p = vector_variable(3) * CPoly.const(3, CliffordElement.basis(3, 1))
    assert p == parse_cpoly(str(p), 3)
    coeff = CPoly.var(3, Z, 2) * CPoly.const(3, -CliffordElement.basis(3, 1, 2))
    assert (p - coeff).degree(Z) == 1
    assert "z2 * ([-1]e{1,2})" in str(p)


@pytest.mark.parametrize("seed", range(6))
def test_text_round_trip(seed):
    p = rand_poly(4, 3, seed, blocks=(Z, Y, T, S))
    assert parse_cpoly(str(p), 4) == p


def test_move_block():
    p = z(3, 1) ** 2 * z(3, 3)
    q = move_block(p, Z, Y)
    assert q == CPoly.var(3, Y, 1) ** 2 * CPoly.var(3, Y, 3)
    assert move_block(q, Y, Z) == p


@given(st.integers(0, 5), st.integers(3, 5))
def test_homogeneous_degree_of_psi(alpha, m):
    p = psi(canonical_frame(m), alpha, 1)
    assert p.is_homogeneous(Z)
    assert p.degree(Z) == alpha + 1
