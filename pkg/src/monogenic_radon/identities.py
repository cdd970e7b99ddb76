"""Brute-force checks of the combinatorial and hypergeometric identities
behind the closed forms of lambda and gamma, and of the m = 2 degeneracy.

Every series here is summed term by term in exact arithmetic; no
transformation formula is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from gmpy2 import mpq

from .clifford import canonical_frame
from .fischer import monogenic_component
from .huaradon import psi
from .scalar_tower import as_rational, binomial, gamma_ratio, pochhammer

__all__ = [
    "IdentityCheck",
    "pascal_sum",
    "roy_sum",
    "appendix_b_inner_sum",
    "appendix_b_outer_sum",
    "chu_vandermonde",
    "m2_degeneracy",
]


@dataclass
class IdentityCheck:
    name: str
    params: dict = field(default_factory=dict)
    lhs: object = None
    rhs: object = None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def as_record(self) -> dict:
        return {
            "name": self.name,
            "params": dict(self.params),
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "pass": self.passed,
        }


def pascal_sum(s: int, k: int) -> mpq:
    """sum_l (-1)^l C(s, l) C(2s+k-l, s+k-l); equals 1."""
    if s < 0 or k < 0:
        raise ValueError("s and k must be nonnegative")
    return mpq(sum((-1) ** l * binomial(s, l) * binomial(2 * s + k - l, s + k - l) for l in range(s + 1)))


def roy_sum(s: int, k: int, m: int):
    """(lhs, rhs) of

    sum_{l<s} (-1)^l s/(m/2+2s+k-l-1) C(s-1, l) C(2s+k-l, s+k-l) = 1 - (m/2-1)_s / (m/2+s+k)_s.
    """
    if s < 1:
        raise ValueError("s must be at least 1")
    h = mpq(m, 2)
    lhs = mpq(0)
    for l in range(s):
        lhs += (-1) ** l * mpq(s) / (h + 2 * s + k - l - 1) * binomial(s - 1, l) * binomial(2 * s + k - l, s + k - l)
    rhs = 1 - pochhammer(h - 1, s) / pochhammer(h + s + k, s)
    return lhs, rhs


def appendix_b_inner_sum(j: int, s: int, k: int, m: int) -> mpq:
    """sum_l (-1)^l G(m/2+2s+k-l) G(2s-j-l+k+1) / (l! (s-l)! (s+k-l)! G(2s-j-l+k+m/2)); equals 1."""
    if not 0 <= j <= s:
        raise ValueError("need 0 <= j <= s")
    h = mpq(m, 2)
    total = mpq(0)
    for l in range(s + 1):
        g = gamma_ratio(h + 2 * s + k - l, h + 2 * s + k - l - j)
        total += (-1) ** l * g * factorial(2 * s - j - l + k) / (
            factorial(l) * factorial(s - l) * factorial(s + k - l)
        )
    return total


def appendix_b_outer_sum(s: int, k: int, m: int):
    """(lhs, rhs) of sum_j (-1)^j G(m/2+2s+k-j)/(j!(s-j)!(s+k-j)!)
    = G(m/2+s) G(m/2+s+k) / (s!(s+k)! G(m/2)), both divided by G(m/2)."""
    if s < 0 or k < 0:
        raise ValueError("s and k must be nonnegative")
    h = mpq(m, 2)
    lhs = mpq(0)
    for j in range(s + 1):
        lhs += (-1) ** j * gamma_ratio(h + 2 * s + k - j, h) / (factorial(j) * factorial(s - j) * factorial(s + k - j))
    rhs = gamma_ratio(h + s, h) * gamma_ratio(h + s + k, h) / (factorial(s) * factorial(s + k))
    return lhs, rhs


def chu_vandermonde(b, c, n: int):
    """(direct sum, closed form) for 2F1([-n, b], [c]; 1) = (c - b)_n / (c)_n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    b, c = as_rational(b), as_rational(c)
    for i in range(n):
        if c + i == 0:
            raise ValueError("lower parameter reaches zero before the series terminates")
    total, term = mpq(0), mpq(1)
    for i in range(n + 1):
        total += term
        if i < n:
            term = term * (-n + i) * (b + i) / ((c + i) * (i + 1))
    return total, pochhammer(c - b, n) / pochhammer(c, n)


def m2_degeneracy(s: int, k: int) -> IdentityCheck:
    """Monogenic projections of psi_{2s,k} and psi_{2s+1,k} at m = 2 (frame (e1, e2))."""
    if s < 1:
        raise ValueError("s must be at least 1")
    frame = canonical_frame(2)
    even = monogenic_component(psi(frame, 2 * s, k), 0)
    odd = monogenic_component(psi(frame, 2 * s + 1, k), 0)
    lhs = f"{even} ; {odd}"
    return IdentityCheck("m2-degeneracy", {"s": s, "k": k}, lhs, "0 ; 0")
