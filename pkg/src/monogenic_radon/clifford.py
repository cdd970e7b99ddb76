"""The complex Clifford algebra C_m with e_j^2 = -1.

Coefficients are stored in a packed form shared with :mod:`poly`.  A single
"coefficient key" encodes a basis blade (bitmask over e_1..e_m), an imaginary
flag and a half-integer power of pi; the value attached to the key is an mpq.
So a CliffordElement is a dict ``key -> mpq`` and a polynomial term only needs
a monomial on top of the same key.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

from .scalar_tower import GaussianRational, PiScalar, as_rational

__all__ = [
    "Blade",
    "CliffordElement",
    "Frame",
    "Layout",
    "layout",
    "geometric_product",
    "hermitian_conjugate",
    "wedge",
    "scalar_part",
    "canonical_frame",
    "cayley_rotation",
    "random_rational_rotation",
    "rotated_frame",
]

PI_BITS = 12
PI_OFFSET = 1 << (PI_BITS - 1)


def _reorder_swaps(a: int, b: int) -> int:
    """Number of transpositions needed to sort the word e_A e_B."""
    n = 0
    while b:
        low = b & -b
        n += bin(a & ~((low << 1) - 1)).count("1")
        b ^= low
    return n


class Layout:
    """Bit layout of coefficient keys for a fixed dimension m.

    key = ((p + PI_OFFSET) << (m + 1)) | (imag << m) | blade_mask
    """

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("dimension must be positive")
        self.m = m
        self.imag = 1 << m
        self.blade_mask = (1 << m) - 1
        self.pi_shift = m + 1
        self.cbits = m + 1 + PI_BITS
        self.cmask = (1 << self.cbits) - 1
        self.unit = PI_OFFSET << self.pi_shift
        self._mul = {}

    def ckey(self, mask: int = 0, imag: bool = False, pi: int = 0) -> int:
        return ((pi + PI_OFFSET) << self.pi_shift) | (self.imag if imag else 0) | mask

    def split(self, c: int):
        return c & self.blade_mask, bool(c & self.imag), (c >> self.pi_shift) - PI_OFFSET

    def cmul(self, c1: int, c2: int):
        """Product of two coefficient keys: (key, sign)."""
        hit = self._mul.get((c1, c2))
        if hit is not None:
            return hit
        a, b = c1 & self.blade_mask, c2 & self.blade_mask
        n = _reorder_swaps(a, b) + bin(a & b).count("1")
        if c1 & c2 & self.imag:
            n += 1
        pi = (c1 >> self.pi_shift) + (c2 >> self.pi_shift) - PI_OFFSET
        out = ((pi << self.pi_shift) | ((c1 ^ c2) & self.imag) | (a ^ b), -1 if n & 1 else 1)
        self._mul[(c1, c2)] = out
        return out

    def dagger(self, c: int):
        r = bin(c & self.blade_mask).count("1")
        n = r * (r + 1) // 2 + (1 if c & self.imag else 0)
        return c, -1 if n & 1 else 1


@lru_cache(maxsize=None)
def layout(m: int) -> Layout:
    return Layout(m)


class Blade:
    """A basis blade e_A for a strictly increasing index tuple A (1-based)."""

    __slots__ = ("index_set",)

    def __init__(self, *indices):
        if len(indices) == 1 and isinstance(indices[0], (tuple, list)):
            indices = tuple(indices[0])
        idx = tuple(int(i) for i in indices)
        if any(i < 1 for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"blade indices must be positive and strictly increasing: {idx}")
        self.index_set = idx

    @classmethod
    def from_mask(cls, mask: int) -> "Blade":
        return cls(tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1))

    @property
    def mask(self) -> int:
        out = 0
        for i in self.index_set:
            out |= 1 << (i - 1)
        return out

    @property
    def grade(self) -> int:
        return len(self.index_set)

    def __eq__(self, other):
        return isinstance(other, Blade) and self.index_set == other.index_set

    def __lt__(self, other):
        return self.index_set < other.index_set

    def __hash__(self):
        return hash(self.index_set)

    def __str__(self):
        return "e{" + ",".join(map(str, self.index_set)) + "}"

    def __repr__(self):
        return f"Blade{self.index_set}"


def _scalar_terms(lay: Layout, x, mask: int = 0) -> dict:
    """Packed terms of the scalar x times the blade ``mask``."""
    if isinstance(x, PiScalar):
        out = {}
        for p, q in x.terms.items():
            if q.re:
                out[lay.ckey(mask, False, p)] = q.re
            if q.im:
                out[lay.ckey(mask, True, p)] = q.im
        return out
    if isinstance(x, GaussianRational):
        return _scalar_terms(lay, PiScalar.coerce(x), mask)
    q = as_rational(x)
    return {lay.ckey(mask): q} if q else {}


def _add_into(acc: dict, key, value):
    v = acc.get(key)
    if v is None:
        acc[key] = value
    else:
        v = v + value
        if v:
            acc[key] = v
        else:
            del acc[key]


class CliffordElement:
    """Element of C_m with PiScalar coefficients.

    ``terms`` is the packed representation (coefficient key -> mpq) and is
    treated as immutable once the element is built.
    """

    __slots__ = ("m", "terms")

    def __init__(self, m: int, coeffs=None, *, _terms=None):
        self.m = m
        lay = layout(m)
        if _terms is not None:
            self.terms = _terms
            return
        acc = {}
        for blade, value in (coeffs or {}).items():
            if not isinstance(blade, Blade):
                blade = Blade(blade)
            if blade.index_set and blade.index_set[-1] > m:
                raise ValueError(f"{blade} is outside C_{m}")
            for k, v in _scalar_terms(lay, value, blade.mask).items():
                _add_into(acc, k, v)
        self.terms = acc

    # construction helpers
    @classmethod
    def scalar(cls, m: int, x=1) -> "CliffordElement":
        return cls(m, _terms=_scalar_terms(layout(m), x))

    @classmethod
    def basis(cls, m: int, *indices) -> "CliffordElement":
        return cls(m, {Blade(*indices): 1})

    @classmethod
    def vector(cls, m: int, components) -> "CliffordElement":
        """Sum of components[j] * e_{j+1}."""
        comps = list(components)
        if len(comps) != m:
            raise ValueError("vector needs exactly m components")
        return cls(m, {Blade(j + 1): c for j, c in enumerate(comps) if c})

    # views
    @property
    def coeffs(self) -> dict:
        """Blade -> PiScalar view."""
        lay = layout(self.m)
        grouped = {}
        for c, q in self.terms.items():
            mask, im, p = lay.split(c)
            grouped.setdefault(mask, {}).setdefault(p, [0, 0])[1 if im else 0] += q
        return {
            Blade.from_mask(mask): PiScalar({p: GaussianRational(re, im) for p, (re, im) in d.items()})
            for mask, d in grouped.items()
        }

    def coefficient(self, blade) -> PiScalar:
        if not isinstance(blade, Blade):
            blade = Blade(blade)
        return self.coeffs.get(blade, PiScalar())

    def grades(self) -> set:
        lay = layout(self.m)
        return {bin(c & lay.blade_mask).count("1") for c in self.terms}

    def grade_part(self, r: int) -> "CliffordElement":
        lay = layout(self.m)
        return CliffordElement(
            self.m, _terms={c: q for c, q in self.terms.items() if bin(c & lay.blade_mask).count("1") == r}
        )

    def is_vector(self) -> bool:
        return self.grades() <= {1}

    def vector_components(self) -> list:
        if not self.is_vector():
            raise ValueError("not a 1-vector")
        cf = self.coeffs
        return [cf.get(Blade(j + 1), PiScalar()) for j in range(self.m)]

    # arithmetic
    def _check(self, other):
        if not isinstance(other, CliffordElement):
            return None
        if other.m != self.m:
            raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")
        return other

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.m == other.m and self.terms == other.terms
        try:
            return self.terms == _scalar_terms(layout(self.m), other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def __neg__(self):
        return CliffordElement(self.m, _terms={c: -q for c, q in self.terms.items()})

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            o = CliffordElement.scalar(self.m, other)
        out = dict(self.terms)
        for c, q in o.terms.items():
            _add_into(out, c, q)
        return CliffordElement(self.m, _terms=out)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            o = CliffordElement.scalar(self.m, other)
        return self + (-o)

    def __rsub__(self, other):
        return CliffordElement.scalar(self.m, other) - self

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            try:
                o = CliffordElement.scalar(self.m, other)
            except TypeError:
                return NotImplemented
        return geometric_product(self, o)

    def __rmul__(self, other):
        try:
            return geometric_product(CliffordElement.scalar(self.m, other), self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        q = PiScalar(1) / PiScalar.coerce(other)
        return self * q

    def dagger(self) -> "CliffordElement":
        return hermitian_conjugate(self)

    def scalar_part(self) -> PiScalar:
        return scalar_part(self)

    def __str__(self):
        cf = self.coeffs
        if not cf:
            return "0"
        return " + ".join(f"[{cf[b]}]{b}" for b in sorted(cf))

    def __repr__(self):
        return f"CliffordElement(m={self.m}, {self})"


def geometric_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.m != b.m:
        raise ValueError(f"dimension mismatch: {a.m} vs {b.m}")
    lay = layout(a.m)
    out = {}
    for c1, q1 in a.terms.items():
        for c2, q2 in b.terms.items():
            c, sign = lay.cmul(c1, c2)
            _add_into(out, c, q1 * q2 if sign > 0 else -(q1 * q2))
    return CliffordElement(a.m, _terms=out)


def hermitian_conjugate(a: CliffordElement) -> CliffordElement:
    """Anti-automorphism with e_j -> -e_j and complex conjugation."""
    lay = layout(a.m)
    out = {}
    for c, q in a.terms.items():
        c2, sign = lay.dagger(c)
        out[c2] = q if sign > 0 else -q
    return CliffordElement(a.m, _terms=out)


def wedge(u: CliffordElement, v: CliffordElement) -> CliffordElement:
    if not (u.is_vector() and v.is_vector()):
        raise ValueError("wedge is defined here for 1-vectors only")
    return ((u * v) - (v * u)) / 2


def scalar_part(a: CliffordElement) -> PiScalar:
    return a.coeffs.get(Blade(), PiScalar())


class Frame:
    """An exact orthonormal pair (t, s); tau = t + i s."""

    __slots__ = ("t", "s")

    def __init__(self, t, s):
        t = tuple(as_rational(x) for x in t)
        s = tuple(as_rational(x) for x in s)
        if len(t) != len(s):
            raise ValueError("t and s must have the same length")
        if sum(x * x for x in t) != 1 or sum(x * x for x in s) != 1 or sum(x * y for x, y in zip(t, s)):
            raise ValueError("frame vectors must be orthonormal")
        self.t, self.s = t, s

    @property
    def m(self) -> int:
        return len(self.t)

    def tau_components(self) -> list:
        return [GaussianRational(a, b) for a, b in zip(self.t, self.s)]

    def tau(self) -> CliffordElement:
        return CliffordElement.vector(self.m, self.tau_components())

    def tau_dagger(self) -> CliffordElement:
        return hermitian_conjugate(self.tau())

    def __eq__(self, other):
        return isinstance(other, Frame) and (self.t, self.s) == (other.t, other.s)

    def __hash__(self):
        return hash((self.t, self.s))

    def __repr__(self):
        fmt = lambda v: "(" + ", ".join(str(Fraction(int(x.numerator), int(x.denominator))) for x in v) + ")"
        return f"Frame(t={fmt(self.t)}, s={fmt(self.s)})"


def canonical_frame(m: int) -> Frame:
    if m < 2:
        raise ValueError("a frame needs m >= 2")
    t = [0] * m
    s = [0] * m
    t[0] = 1
    s[1] = 1
    return Frame(t, s)


def _solve(a, b):
    """Solve a x = b exactly (Gauss-Jordan over Q); a is square, b a matrix."""
    n = len(a)
    aug = [list(map(mpq, a[i])) + list(map(mpq, b[i])) for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def cayley_rotation(antisym) -> list:
    """Q = (I - A)(I + A)^(-1) for a rational antisymmetric A; Q is orthogonal."""
    n = len(antisym)
    a = [[mpq(antisym[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if a[i][j] != -a[j][i]:
                raise ValueError("matrix is not antisymmetric")
    eye = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    i_plus = [[eye[i][j] + a[i][j] for j in range(n)] for i in range(n)]
    i_minus = [[eye[i][j] - a[i][j] for j in range(n)] for i in range(n)]
    # (I + A) commutes with (I - A), so Q = (I + A)^(-1)(I - A)
    return _solve(i_plus, i_minus)


def random_rational_rotation(m: int, seed: int, max_entry: int = 3) -> list:
    rng = random.Random(seed)
    a = [[mpq(0)] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            x = mpq(rng.randint(-max_entry, max_entry), rng.randint(1, max_entry))
            a[i][j], a[j][i] = x, -x
    return cayley_rotation(a)


def rotated_frame(m: int, seed: int) -> Frame:
    """Image of the canonical frame under a seeded rational rotation."""
    q = random_rational_rotation(m, seed)
    return Frame([q[i][0] for i in range(m)], [q[i][1] for i in range(m)])
