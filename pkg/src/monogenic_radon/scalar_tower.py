"""Exact scalars: Gaussian rationals, half-integer powers of pi, Gamma values.

Every constant that appears in the integration formulas lives in the ring
Q(i)[pi^(1/2), pi^(-1/2)], because Gamma at a positive half-integer contributes
at most one factor sqrt(pi).  :class:`PiScalar` is an element of that ring.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial
from numbers import Rational

from gmpy2 import mpq

__all__ = [
    "Q",
    "HalfInt",
    "GaussianRational",
    "PiScalar",
    "as_rational",
    "gamma_half",
    "gamma_ratio",
    "pochhammer",
    "binomial",
    "unit_sphere_area",
]

Q = mpq


def as_rational(x) -> mpq:
    """Coerce int, Fraction, mpq, HalfInt or a 'p/q' string to an mpq."""
    if isinstance(x, HalfInt):
        return x.value
    if isinstance(x, (int, Rational)) or type(x).__name__ == "mpq":
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    raise TypeError(f"not an exact rational: {x!r}")


class HalfInt:
    """The number ``twice_value / 2`` held exactly."""

    __slots__ = ("twice_value",)

    def __init__(self, twice_value: int):
        self.twice_value = int(twice_value)

    @classmethod
    def of(cls, x) -> "HalfInt":
        if isinstance(x, HalfInt):
            return x
        q = as_rational(x) * 2
        if q.denominator != 1:
            raise ValueError(f"{x!r} is not a half-integer")
        return cls(int(q))

    @property
    def value(self) -> mpq:
        return mpq(self.twice_value, 2)

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def __add__(self, n):
        return HalfInt(self.twice_value + HalfInt.of(n).twice_value)

    __radd__ = __add__

    def __sub__(self, n):
        return HalfInt(self.twice_value - HalfInt.of(n).twice_value)

    def __eq__(self, other):
        try:
            return self.twice_value == HalfInt.of(other).twice_value
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(("HalfInt", self.twice_value))

    def __repr__(self):
        if self.is_integer:
            return f"HalfInt({self.twice_value // 2})"
        return f"HalfInt({self.twice_value}/2)"


def _fmt_q(q: mpq) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """re + i*im with both parts rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_rational(re)
        self.im = as_rational(im)

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x, 0)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        d = o.re * o.re + o.im * o.im
        if not d:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __str__(self):
        if not self.im:
            return _fmt_q(self.re)
        im = "i" if self.im == 1 else "-i" if self.im == -1 else f"{_fmt_q(self.im)}i"
        if not self.re:
            return im
        sign = "" if im.startswith("-") else "+"
        return f"({_fmt_q(self.re)}{sign}{im})"

    def __repr__(self):
        return f"GaussianRational({self})"


class PiScalar:
    """Finite sum of ``q * pi^(p/2)`` with q Gaussian rational and p an integer.

    ``terms`` maps the half-exponent p to its coefficient; zero coefficients
    are never stored.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is not None and not isinstance(terms, dict):
            terms = {0: terms}
        clean = {}
        for p, q in (terms or {}).items():
            q = GaussianRational.coerce(q)
            if q:
                clean[int(p)] = q
        self.terms = clean

    @classmethod
    def coerce(cls, x) -> "PiScalar":
        if isinstance(x, PiScalar):
            return x
        return cls({0: GaussianRational.coerce(x)})

    @classmethod
    def pi_power(cls, half_exponent: int, coeff=1) -> "PiScalar":
        return cls({half_exponent: coeff})

    @classmethod
    def i(cls) -> "PiScalar":
        return cls({0: GaussianRational(0, 1)})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted((p, hash(q)) for p, q in self.terms.items())))

    def __neg__(self):
        return PiScalar({p: -q for p, q in self.terms.items()})

    def __add__(self, other):
        o = PiScalar.coerce(other)
        out = dict(self.terms)
        for p, q in o.terms.items():
            out[p] = out.get(p, GaussianRational()) + q
        return PiScalar(out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-PiScalar.coerce(other))

    def __rsub__(self, other):
        return PiScalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = PiScalar.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for p1, q1 in self.terms.items():
            for p2, q2 in o.terms.items():
                out[p1 + p2] = out.get(p1 + p2, GaussianRational()) + q1 * q2
        return PiScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = PiScalar.coerce(other)
        if len(o.terms) != 1:
            raise ZeroDivisionError("can only divide by a single pi-power term")
        (p, q), = o.terms.items()
        return PiScalar({p1: q1 / q for p1, q1 in self.terms.items()}) * PiScalar.pi_power(-p)

    def __rtruediv__(self, other):
        return PiScalar.coerce(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return PiScalar(1) / self ** (-n)
        out = PiScalar(1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "PiScalar":
        return PiScalar({p: q.conjugate() for p, q in self.terms.items()})

    @property
    def is_rational(self) -> bool:
        """True iff only the exponent 0 is present (the value lies in Q(i))."""
        return all(p == 0 for p in self.terms)

    def rational(self) -> GaussianRational:
        if not self.is_rational:
            raise ValueError(f"{self} carries a power of pi")
        return self.terms.get(0, GaussianRational())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for p in sorted(self.terms):
            q = self.terms[p]
            parts.append(str(q) if p == 0 else f"{q} * pi^({p}/2)")
        return " + ".join(parts)

    def __repr__(self):
        return f"PiScalar({self})"


@lru_cache(maxsize=None)
def _gamma_half_cached(twice: int) -> PiScalar:
    if twice % 2 == 0:
        return PiScalar({0: factorial(twice // 2 - 1)})
    # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    n = (twice - 1) // 2
    return PiScalar({1: mpq(factorial(2 * n), 4**n * factorial(n))})


def gamma_half(a) -> PiScalar:
    """Gamma(a) for a positive integer or half-integer, exactly."""
    a = HalfInt.of(a)
    if a.twice_value <= 0:
        raise ValueError(f"Gamma is only evaluated at positive arguments, got {a}")
    return _gamma_half_cached(a.twice_value)


def pochhammer(a, n: int) -> mpq:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise ValueError("Pochhammer length must be nonnegative")
    a = as_rational(a)
    out = mpq(1)
    for i in range(n):
        out *= a + i
    return out


def gamma_ratio(a, b) -> mpq:
    """Gamma(a) / Gamma(b) for positive half-integers with a - b an integer."""
    a, b = as_rational(a), as_rational(b)
    if a <= 0 or b <= 0:
        raise ValueError("gamma_ratio needs positive arguments")
    d = a - b
    if d.denominator != 1:
        raise ValueError("gamma_ratio needs an integer difference")
    d = int(d)
    return pochhammer(b, d) if d >= 0 else 1 / pochhammer(a, -d)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def unit_sphere_area(m: int) -> PiScalar:
    """A_m = 2 pi^(m/2) / Gamma(m/2), the area of S^(m-1)."""
    if m < 1:
        raise ValueError("sphere dimension must be at least 1")
    return PiScalar.pi_power(m, 2) / gamma_half(HalfInt(m))
