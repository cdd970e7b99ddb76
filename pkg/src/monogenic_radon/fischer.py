"""Harmonic and monogenic projections and the Fischer decomposition.

The operators act on the Z block; any other blocks are carried along as
coefficients, so a frame given by indeterminates is fine.
"""
from __future__ import annotations

from math import factorial

from gmpy2 import mpq

from .poly import CPoly, Z, dirac, laplacian, multiply_vector_variable
from .scalar_tower import gamma_ratio

__all__ = [
    "FischerDecomposition",
    "harmonic_alpha",
    "monogenic_beta",
    "harmonic_component",
    "monogenic_component",
    "fischer_decompose",
    "z_power_times",
]


def _degree(P: CPoly) -> int:
    if not P.is_homogeneous(Z):
        raise ValueError("expected a homogeneous polynomial in z")
    return P.degree(Z)


def harmonic_alpha(j: int, ell: int, k: int, m: int) -> mpq:
    """Coefficient of (-z^2)^j Delta^(j+ell) in the degree k - 2 ell harmonic projector."""
    x = mpq(m, 2) + k - 2 * ell - 1
    # x Gamma(x - j) stays finite at x = 0, j = 0
    num = gamma_ratio(x + 1, mpq(m, 2) + k - ell) if j == 0 else x * gamma_ratio(x - j, mpq(m, 2) + k - ell)
    return mpq((-1) ** j, 4 ** (j + ell) * factorial(j) * factorial(ell)) * num


def monogenic_beta(j: int, ell: int, k: int, m: int) -> mpq:
    """beta_{j, 2 ell} of the degree k - 2 ell monogenic projector."""
    h, odd = divmod(j, 2)
    sign = mpq(-1, 4) ** (h + ell)
    top = mpq(m, 2) + k - 2 * ell - h - (1 if odd else 0)
    denom = factorial(h) * factorial(ell) * (2 if odd else 1)
    return sign * gamma_ratio(top, mpq(m, 2) + k - ell) / denom


def z_power_times(j: int, f: CPoly) -> CPoly:
    """z^j f."""
    for _ in range(j):
        f = multiply_vector_variable(f, Z)
    return f


def harmonic_component(P: CPoly, ell: int) -> CPoly:
    """H_{k - 2 ell} in P = sum_l (-z^2)^l H_{k - 2l}."""
    if not P:
        return CPoly(P.m)
    k = _degree(P)
    if not 0 <= 2 * ell <= k:
        raise ValueError("need 0 <= 2 ell <= deg P")
    m = P.m
    norm2 = CPoly(m)
    for i in range(1, m + 1):
        norm2 = norm2 + CPoly.var(m, Z, i) ** 2
    lap = P
    for _ in range(ell):
        lap = laplacian(lap, Z)
    out = CPoly(m)
    weight = CPoly.const(m, 1)
    for j in range(k // 2 - ell + 1):
        if j:
            lap = laplacian(lap, Z)
            weight = weight * norm2
        if not lap:
            break
        out = out + (weight * lap).scale(harmonic_alpha(j, ell, k, m))
    return out


def monogenic_component(P: CPoly, ell: int) -> CPoly:
    """proj^k_{2 ell}(P) = sum_j beta_{j, 2 ell} z^j d^(j + 2 ell) P."""
    if not P:
        return CPoly(P.m)
    k = _degree(P)
    if not 0 <= 2 * ell <= k:
        raise ValueError("need 0 <= 2 ell <= deg P")
    m = P.m
    d = P
    for _ in range(2 * ell):
        d = dirac(d, Z)
    out = CPoly(m)
    for j in range(k - 2 * ell + 1):
        if j:
            d = dirac(d, Z)
        if not d:
            break
        out = out + z_power_times(j, d).scale(monogenic_beta(j, ell, k, m))
    return out


class FischerDecomposition:
    """P = sum over parts (j, M) of z^j M with every M monogenic."""

    def __init__(self, m: int, parts):
        self.m = m
        self.parts = [(j, M) for j, M in parts if M]

    def part(self, j: int) -> CPoly:
        for jj, M in self.parts:
            if jj == j:
                return M
        return CPoly(self.m)

    def reassemble(self) -> CPoly:
        out = CPoly(self.m)
        for j, M in self.parts:
            out = out + z_power_times(j, M)
        return out

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __repr__(self):
        return f"FischerDecomposition({[(j, str(M)) for j, M in self.parts]})"


def fischer_decompose(P: CPoly) -> FischerDecomposition:
    """Split a homogeneous P into its pieces z^j M_{k-j}.

    Even pieces: the z^{2i} part is (-1)^i proj^k_{2i}(P), because
    (-z^2)^i = (-1)^i z^{2i}.  Odd pieces come from the even pieces of dP,
    using d(z^{2i+1} M_d) = -(2i + m + 2d) z^{2i} M_d and d(z^{2i} M_d) = -2i z^{2i-1} M_d.
    """
    m = P.m
    if not P:
        return FischerDecomposition(m, [])
    k = _degree(P)
    parts = []
    for i in range(k // 2 + 1):
        parts.append((2 * i, monogenic_component(P, i).scale((-1) ** i)))
    if k >= 1:
        dP = dirac(P, Z)
        if dP:
            for i in range((k - 1) // 2 + 1):
                d = k - 2 * i - 1
                piece = monogenic_component(dP, i).scale(mpq(-((-1) ** i), 2 * i + m + 2 * d))
                parts.append((2 * i + 1, piece))
    parts.sort(key=lambda p: p[0])
    return FischerDecomposition(m, parts)
