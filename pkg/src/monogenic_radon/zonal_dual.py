"""Zonal spherical monogenics, frame averages of M[psi] M[psi]^dagger, the
dual transform and the inversion of the total transform."""
from __future__ import annotations

from math import factorial

from gmpy2 import mpq

from .clifford import Blade, CliffordElement, Frame, layout
from .fischer import fischer_decompose, z_power_times
from .huaradon import lambda_, monogenic_psi
from .integrate import integrate_block, integrate_product, stiefel_average, stiefel_average_product, theta_integral
from .poly import (
    CPoly,
    SYMBOLIC,
    Y,
    Z,
    dirac,
    homogeneous_components,
    linear_substitute,
    move_block,
    multiply_vector_variable,
)
from .scalar_tower import PiScalar, gamma_half, HalfInt, pochhammer, unit_sphere_area

__all__ = [
    "GegenbauerPoly",
    "gegenbauer",
    "zonal_monogenic",
    "zonal_reproduce",
    "frame_kernel",
    "gamma_constant",
    "gamma_even_closed_form",
    "gamma_odd_form_a",
    "gamma_odd_form_b",
    "dual_transform",
    "dual_of_transform",
    "total_dual_transform",
    "vartheta",
    "invert",
    "spin_element",
    "rational_unit_vector",
    "spin_rotation_matrix",
    "spin_act",
    "spin_frame",
    "spin_transform_poly",
]


class GegenbauerPoly:
    """C_k^nu(t) with nu = m/2 - 1; coeffs[i] multiplies t^i."""

    def __init__(self, k: int, m: int, coeffs):
        self.k, self.m = k, m
        self.nu = mpq(m - 2, 2)
        self.coeffs = list(coeffs)

    def __call__(self, t):
        out = mpq(0)
        for c in reversed(self.coeffs):
            out = out * t + c
        return out

    def __eq__(self, other):
        return isinstance(other, GegenbauerPoly) and (self.k, self.m, self.coeffs) == (other.k, other.m, other.coeffs)

    def __repr__(self):
        return f"GegenbauerPoly(k={self.k}, m={self.m}, {[str(c) for c in self.coeffs]})"


def _gegenbauer_coeffs(k: int, nu) -> list:
    """Coefficients of C_k^nu via n C_n = 2 t (n + nu - 1) C_{n-1} - (n + 2 nu - 2) C_{n-2}."""
    prev, cur = [mpq(0)], [mpq(1)]
    for n in range(1, k + 1):
        nxt = [mpq(0)] * (n + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * (n + nu - 1) * c
        for i, c in enumerate(prev):
            nxt[i] -= (n + 2 * nu - 2) * c
        prev, cur = cur, [c / n for c in nxt]
    return cur


def gegenbauer(k: int, m: int) -> GegenbauerPoly:
    """C_k^nu with nu = m/2 - 1."""
    if m < 3:
        raise ValueError("Gegenbauer parameter needs m >= 3")
    if k < 0:
        raise ValueError("degree must be nonnegative")
    return GegenbauerPoly(k, m, _gegenbauer_coeffs(k, mpq(m - 2, 2)))


def _norm2(m: int, block: int) -> CPoly:
    out = CPoly(m)
    for i in range(1, m + 1):
        out = out + CPoly.var(m, block, i) ** 2
    return out


def _dot(m: int) -> CPoly:
    out = CPoly(m)
    for i in range(1, m + 1):
        out = out + CPoly.var(m, Z, i) * CPoly.var(m, Y, i)
    return out


def _wedge_xy(m: int) -> CPoly:
    out = CPoly(m)
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            c = CPoly.var(m, Z, i) * CPoly.var(m, Y, j) - CPoly.var(m, Z, j) * CPoly.var(m, Y, i)
            out = out + c * CliffordElement.basis(m, i, j)
    return out


def _homogenized(coeffs, m: int) -> CPoly:
    """(|x||y|)^k C(<x,y>/(|x||y|)) as a polynomial (only k - i even occurs)."""
    k = len(coeffs) - 1
    dot, r2 = _dot(m), _norm2(m, Z) * _norm2(m, Y)
    out = CPoly(m)
    for i, c in enumerate(coeffs):
        if c:
            if (k - i) % 2:
                raise ArithmeticError("Gegenbauer parity violated")
            out = out + (dot**i * r2 ** ((k - i) // 2)).scale(c)
    return out


_zonal_cache = {}


def zonal_monogenic(k: int, m: int) -> CPoly:
    """C_k(x, y) with x in block Z and y in block Y.

    The bivector part carries C_{k-1}^{m/2} = (1/(m-2)) d/dt C_k^{m/2-1};
    with parameter m/2 - 1 there the result is not monogenic for k >= 2.
    """
    key = (k, m)
    if key in _zonal_cache:
        return _zonal_cache[key]
    if m < 3:
        raise ValueError("zonal monogenics need m >= 3")
    out = _homogenized(gegenbauer(k, m).coeffs, m).scale(mpq(k + m - 2, m - 2))
    if k >= 1:
        out = out + _wedge_xy(m) * _homogenized(_gegenbauer_coeffs(k - 1, mpq(m, 2)), m)
    _zonal_cache[key] = out
    return out


def zonal_reproduce(M: CPoly, ell: int | None = None) -> CPoly:
    """(1/A_m) int C_ell(z, w) M(w) dS(w), ell = deg M by default."""
    m = M.m
    if not M:
        return CPoly(m)
    if not M.is_homogeneous(Z) or dirac(M, Z):
        raise ValueError("expected a homogeneous monogenic polynomial")
    if ell is None:
        ell = M.degree(Z)
    val = integrate_product(zonal_monogenic(ell, m), move_block(M, Z, Y), Y)
    return val * CliffordElement.scalar(m, PiScalar(1) / unit_sphere_area(m))


_frame_kernel_cache = {}


def frame_kernel(alpha: int, k: int, m: int) -> CPoly:
    """L(x, y): normalized frame average of M[psi](x) M[psi](y)^dagger."""
    key = (alpha, k, m)
    hit = _frame_kernel_cache.get(key)
    if hit is None:
        a = monogenic_psi(SYMBOLIC, alpha, k, m)
        b = move_block(a, Z, Y).dagger()
        hit = stiefel_average_product(a, b)
        _frame_kernel_cache[key] = hit
    return hit


def _proportionality(a: CPoly, b: CPoly):
    """c with a = c b, or None."""
    if not b:
        return None if a else mpq(0)
    k0 = next(iter(b.terms))
    if k0 not in a.terms:
        return None
    c = a.terms[k0] / b.terms[k0]
    return c if a == b.scale(c) else None


def gamma_constant(alpha: int, k: int, m: int) -> mpq:
    """gamma with frame_kernel(alpha, k) = gamma C_{alpha+k}; raises if not proportional."""
    c = _proportionality(frame_kernel(alpha, k, m), zonal_monogenic(alpha + k, m))
    if c is None:
        raise ArithmeticError("frame average is not a multiple of the zonal monogenic")
    return c


def _g(x) -> PiScalar:
    return gamma_half(HalfInt.of(x))


def _rational(x: PiScalar) -> mpq:
    r = x.rational()
    if r.im:
        raise ArithmeticError("expected a real value")
    return r.re


def gamma_even_closed_form(s: int, k: int, m: int) -> mpq:
    h = mpq(m, 2)
    val = (
        _g(h + s - 1) * _g(h + s + k) * (factorial(s) * factorial(s + k) * (m - 2))
        * _g(m - 1) * _g(2 * s + k + 1)
        / (_g(h + 2 * s + k) ** 2 * _g(2 * s + k + m - 1))
    )
    return _rational(val)


def gamma_odd_form_a(s: int, k: int, m: int) -> mpq:
    h = mpq(m, 2)
    val = (
        _g(h + s) * _g(h + s + k) * (factorial(s) * factorial(s + k + 1) * (m - 2))
        * _g(m - 1) * _g(2 * s + k + 2)
        / (_g(h + 2 * s + k) ** 2 * _g(2 * s + k + m))
    )
    return _rational(val)


def gamma_odd_form_b(s: int, k: int, m: int) -> mpq:
    h = mpq(m, 2)
    val = (
        _g(h + s - 1) * _g(h + s + k) * (4 * factorial(s) * factorial(s + k + 1) * (m - 2))
        * _g(m - 1) * _g(2 * s + k + 1)
        / (_g(h + 2 * s + k) ** 2 * _g(2 * s + k + m - 1))
    )
    return _rational(val)


def dual_transform(F: CPoly) -> CPoly:
    """Normalized frame average (1/(A_m A_{m-1})) int int F dS(s) dS(t)."""
    return stiefel_average(F)


def dual_of_transform(j: int, f: CPoly, weight=lambda_) -> CPoly:
    """R[M_{tau, j}(f)] computed by exchanging the frame average with the
    Lie-sphere integral: for each (alpha, k) with alpha + k + j <= deg f,

        lambda z^j sum_b theta(b - alpha - k - j) int L(z, w) (-w)^j f_b(w) dS(w).
    """
    m = f.m
    out = CPoly(m)
    top = f.degree(Z) - j
    parts = [(b, move_block(fb, Z, Y)) for b, fb in homogeneous_components(f, Z)]
    minus_y_pow = {}
    for alpha in range(top + 1):
        for k in range(top - alpha + 1):
            d = alpha + k
            L = None
            acc = CPoly(m)
            for b, fb in parts:
                th = theta_integral(b - d - j)
                if not th or (b + d + j) % 2:
                    continue
                if L is None:
                    L = frame_kernel(alpha, k, m)
                if b not in minus_y_pow:
                    g = fb
                    for _ in range(j):
                        g = -multiply_vector_variable(g, Y)
                    minus_y_pow[b] = g
                acc = acc + integrate_product(L, minus_y_pow[b], Y) * CliffordElement.scalar(m, th)
            if acc:
                acc = acc * CliffordElement.scalar(m, weight(alpha, k, m))
                out = out + z_power_times(j, acc)
    return out


def total_dual_transform(f: CPoly, weight=lambda_) -> CPoly:
    """sum_j R[M_{tau, j}(f)] over all j that can contribute."""
    out = CPoly(f.m)
    for j in range(max(f.degree(Z), -1) + 1):
        out = out + dual_of_transform(j, f, weight)
    return out


def vartheta(j: int, ell: int, m: int) -> mpq:
    """(ell + 1)! (m - 2)! / (2 (ell + m - 2)!); independent of j."""
    if m < 3:
        raise ValueError("vartheta needs m >= 3")
    return mpq(factorial(ell + 1) * factorial(m - 2), 2 * factorial(ell + m - 2))


def invert(g: CPoly) -> CPoly:
    """Undo R o (sum_j M_{tau, j}): rescale each Fischer piece z^j M_ell by 1/vartheta."""
    m = g.m
    out = CPoly(m)
    for _, part in homogeneous_components(g, Z):
        for j, M in fischer_decompose(part):
            ell = M.degree(Z)
            out = out + z_power_times(j, M).scale(1 / vartheta(j, ell, m))
    return out


# spin group elements with rational entries

def rational_unit_vector(p) -> list:
    """Inverse stereographic image of a rational point p of R^(m-1)."""
    p = [mpq(x) for x in p]
    n2 = sum(x * x for x in p)
    return [2 * x / (n2 + 1) for x in p] + [(n2 - 1) / (n2 + 1)]


def spin_element(vectors) -> CliffordElement:
    """Product of an even number of rational unit vectors."""
    if len(vectors) % 2:
        raise ValueError("a spin element needs an even number of factors")
    m = len(vectors[0])
    out = CliffordElement.scalar(m, 1)
    for v in vectors:
        if sum(mpq(x) * mpq(x) for x in v) != 1:
            raise ValueError("factors must be unit vectors")
        out = out * CliffordElement.vector(m, v)
    return out


def _bar(sigma: CliffordElement) -> CliffordElement:
    """Clifford conjugate; equals the Hermitian conjugate on real elements."""
    return sigma.dagger()


def spin_act(sigma: CliffordElement, x: CliffordElement) -> CliffordElement:
    """sigma-bar x sigma."""
    return _bar(sigma) * x * sigma


def spin_rotation_matrix(sigma: CliffordElement) -> list:
    """R with sigma-bar x sigma = sum_i (R x)_i e_i."""
    m = sigma.m
    cols = []
    for j in range(1, m + 1):
        img = spin_act(sigma, CliffordElement.basis(m, j))
        comps = img.vector_components()
        cols.append([_rational(c) for c in comps])
    return [[cols[j][i] for j in range(m)] for i in range(m)]


def spin_frame(sigma: CliffordElement, frame: Frame) -> Frame:
    """The frame of sigma tau sigma-bar."""
    m = frame.m
    t = (sigma * CliffordElement.vector(m, frame.t) * _bar(sigma)).vector_components()
    s = (sigma * CliffordElement.vector(m, frame.s) * _bar(sigma)).vector_components()
    return Frame([_rational(x) for x in t], [_rational(x) for x in s])


def spin_transform_poly(sigma: CliffordElement, f: CPoly) -> CPoly:
    """sigma f(sigma-bar z sigma) sigma-bar."""
    g = linear_substitute(f, Z, spin_rotation_matrix(sigma))
    sbar = _bar(sigma)
    return CPoly.const(f.m, sigma) * g * CPoly.const(f.m, sbar)
