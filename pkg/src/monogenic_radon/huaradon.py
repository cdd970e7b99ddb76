"""The psi family, its monogenic projections, the constants mu, phi, lambda
and the reproducing kernel of the monogenic Hua-Radon transform."""
from __future__ import annotations

from math import factorial

from gmpy2 import mpq

from .clifford import CliffordElement, Frame
from .fischer import z_power_times
from .integrate import ol2_pairing
from .poly import CPoly, Y, Z, frame_vectors, inner, move_block, vector_variable
from .scalar_tower import PiScalar, gamma_half, gamma_ratio, HalfInt, unit_sphere_area

__all__ = [
    "psi",
    "psi_j",
    "mu",
    "monogenic_psi",
    "phi",
    "lambda_",
    "lambda_unnormalized",
    "lambda_discrepancy",
    "KernelComponent",
    "kernel_component",
    "apply_transform",
]


def _dim(frame, m):
    if isinstance(frame, Frame):
        if m is not None and m != frame.m:
            raise ValueError("frame dimension mismatch")
        return frame.m
    if m is None:
        raise ValueError("m is required for a symbolic frame")
    return m


_psi_cache = {}


def psi(frame, alpha: int, k: int, m: int | None = None) -> CPoly:
    """tau <z,tau>^(s+k) <z,tau^dagger>^s for alpha = 2s, and
    tau^dagger tau <z,tau>^(s+k+1) <z,tau^dagger>^s for alpha = 2s + 1."""
    if alpha < 0 or k < 0:
        raise ValueError("alpha and k must be nonnegative")
    m = _dim(frame, m)
    key = (frame, alpha, k, m)
    hit = _psi_cache.get(key)
    if hit is not None:
        return hit
    tau, taud = frame_vectors(frame, m)
    z = vector_variable(m, Z)
    a, b = inner(z, tau), inner(z, taud)
    s, odd = divmod(alpha, 2)
    if odd:
        out = taud * tau * a ** (s + k + 1) * b**s
    else:
        out = tau * a ** (s + k) * b**s
    _psi_cache[key] = out
    return out


def mu(j: int, alpha: int, k: int, m: int) -> mpq:
    """Coefficient of z^j psi_{alpha - j, k} in M[psi_{alpha, k}]."""
    if j < 0 or j > alpha or k < 0:
        raise ValueError("index out of range")
    s, aodd = divmod(alpha, 2)
    i, jodd = divmod(j, 2)
    h = mpq(m, 2)
    sign = (-1) ** i
    if not aodd and not jodd:
        return (
            sign
            * gamma_ratio(h + 2 * s + k - i, h + 2 * s + k)
            / factorial(i)
            * mpq(factorial(s), factorial(s - i))
            * mpq(factorial(s + k), factorial(s + k - i))
        )
    if not aodd and jodd:
        if i > s - 1:
            raise ValueError("index out of range")
        return (
            sign
            * gamma_ratio(h + 2 * s + k - i - 1, h + 2 * s + k)
            / (2 * factorial(i))
            * mpq(factorial(s), factorial(s - i - 1))
            * mpq(factorial(s + k), factorial(s + k - i))
        )
    if not jodd:
        return (
            sign
            * gamma_ratio(h + 2 * s + k + 1 - i, h + 2 * s + k + 1)
            / factorial(i)
            * mpq(factorial(s), factorial(s - i))
            * mpq(factorial(s + k + 1), factorial(s + k - i + 1))
        )
    return (
        2
        * sign
        * gamma_ratio(h + 2 * s + k - i, h + 2 * s + k + 1)
        / factorial(i)
        * mpq(factorial(s), factorial(s - i))
        * mpq(factorial(s + k + 1), factorial(s + k - i))
    )


_mpsi_cache = {}


def monogenic_psi(frame, alpha: int, k: int, m: int | None = None) -> CPoly:
    """M[psi_{alpha, k}] = sum_j mu_{j, alpha, k} z^j psi_{alpha - j, k}."""
    m = _dim(frame, m)
    if m < 3:
        raise ValueError("the closed form needs m >= 3")
    key = (frame, alpha, k, m)
    hit = _mpsi_cache.get(key)
    if hit is not None:
        return hit
    out = CPoly(m)
    for j in range(alpha + 1):
        out = out + z_power_times(j, psi(frame, alpha - j, k, m)).scale(mu(j, alpha, k, m))
    _mpsi_cache[key] = out
    return out


def psi_j(frame, alpha: int, k: int, j: int, m: int | None = None) -> CPoly:
    """psi^j_{alpha, k} = z^j M[psi_{alpha, k}]."""
    return z_power_times(j, monogenic_psi(frame, alpha, k, m))


def phi(j: int, alpha: int, k: int, m: int) -> PiScalar:
    """Scalar phi with Phi_{j, alpha, k} = phi * tau^dagger tau."""
    if j < 0 or j > alpha or k < 0:
        raise ValueError("index out of range")
    s, aodd = divmod(alpha, 2)
    l, jodd = divmod(j, 2)
    h = HalfInt(m)
    pref = PiScalar.pi_power(m + 2)
    if not aodd and not jodd:
        n = k - l + 2 * s
        return pref * 2 * gamma_half(n + 1) / gamma_half(h + n)
    if not aodd:
        if l > s - 1:
            raise ValueError("index out of range")
        n = 2 * s - l + k
        return pref * -4 * gamma_half(n + 1) / gamma_half(h + n)
    if not jodd:
        n = k - l + 2 * s + 1
        return pref * 8 * gamma_half(n + 1) / gamma_half(h + n)
    n = 2 * s - l + k + 1
    return pref * -4 * gamma_half(n + 1) / gamma_half(h + n)


def lambda_(alpha: int, k: int, m: int) -> PiScalar:
    """Kernel weight lambda_k^alpha making K^{j, alpha} reproducing."""
    if m < 3:
        raise ValueError("lambda needs m >= 3")
    s, odd = divmod(alpha, 2)
    h = HalfInt(m)
    g = gamma_half
    pi_inv = PiScalar.pi_power(-(m + 2))
    if odd:
        num = g(h + (2 * s + k + 1)) ** 2 * g(h - 1)
        den = g(h + s) * g(h + (s + k)) * (32 * factorial(s) * factorial(s + k + 1))
    else:
        num = g(h + (2 * s + k)) ** 2 * g(h - 1)
        den = g(h + (s + k)) * g(h + (s - 1)) * (8 * factorial(s) * factorial(s + k))
    return num * pi_inv / den


def lambda_unnormalized(alpha: int, k: int, m: int) -> PiScalar:
    """Weight carrying an extra prefactor pi A_m (m/2 - 1); it is off from
    lambda_ by lambda_discrepancy(m) and kept to show the mismatch."""
    if m < 3:
        raise ValueError("lambda needs m >= 3")
    s, odd = divmod(alpha, 2)
    h = HalfInt(m)
    g = gamma_half
    pref = PiScalar.pi_power(2) * unit_sphere_area(m) * mpq(m - 2, 2)
    if odd:
        val = g(h + (2 * s + k + 1)) ** 2 / (
            g(h + s) * g(h + (s + k)) * (16 * factorial(s) * factorial(s + k + 1))
        )
    else:
        val = g(h + (2 * s + k)) ** 2 / (g(h + (s - 1)) * g(h + (s + k)) * (4 * factorial(s) * factorial(s + k)))
    return pref * val


def lambda_discrepancy(m: int) -> PiScalar:
    """(pi A_m (m/2 - 1))^2, the ratio lambda_unnormalized / lambda_."""
    x = PiScalar.pi_power(2) * unit_sphere_area(m) * mpq(m - 2, 2)
    return x * x


class KernelComponent:
    """Truncation of K^{j, alpha}: sum over k <= max_k of
    lambda_k^alpha z^j M[psi](z) (w^j M[psi](w))^dagger."""

    def __init__(self, j, alpha, frame, max_k, m, weight=lambda_):
        self.j, self.alpha, self.frame, self.max_k, self.m = j, alpha, frame, max_k, m
        self.weights = [weight(alpha, k, m) for k in range(max_k + 1)]
        self.left = [psi_j(frame, alpha, k, j, m) for k in range(max_k + 1)]

    def __len__(self):
        return len(self.left)

    def kernel_polynomial(self) -> CPoly:
        """The kernel as a polynomial in z (block Z) and a real point y (block Y)."""
        m = self.m
        out = CPoly(m)
        for lam, left in zip(self.weights, self.left):
            right = move_block(left, Z, Y).dagger()
            out = out + left * right * CliffordElement.scalar(m, lam)
        return out

    def apply(self, f: CPoly) -> CPoly:
        m = self.m
        out = CPoly(m)
        for lam, left in zip(self.weights, self.left):
            coeff = ol2_pairing(left, f)
            if coeff:
                out = out + left * coeff * CliffordElement.scalar(m, lam)
        return out


def kernel_component(j: int, alpha: int, frame, max_degree: int, m: int | None = None, weight=lambda_):
    m = _dim(frame, m)
    return KernelComponent(j, alpha, frame, max_degree - alpha, m, weight)


def apply_transform(j: int, frame, f: CPoly, m: int | None = None, weight=lambda_) -> CPoly:
    """M_{tau, j}[f] for a polynomial f in z.

    Sum over alpha + k + j <= deg f of lambda psi^j(z) <psi^j, f>; higher
    terms pair to zero with f by degree.
    """
    m = _dim(frame, m) if m is None or isinstance(frame, Frame) else m
    if f.m != m:
        raise ValueError("dimension mismatch")
    if m < 3:
        raise ValueError("the transform needs m >= 3")
    out = CPoly(m)
    top = f.degree(Z) - j
    for alpha in range(top + 1):
        comp = KernelComponent(j, alpha, frame, top - alpha, m, weight)
        out = out + comp.apply(f)
    return out
