"""Polynomials in vector-variable blocks with Clifford coefficients.

A term is a commuting monomial times a Clifford coefficient placed on its
right.  Storage is a dict from a packed integer key to an mpq:

    key = (monomial << cbits) | coefficient_key

where the monomial packs one 8-bit exponent per scalar indeterminate and
``coefficient_key`` is the blade/imaginary/pi key of :mod:`clifford`.

Blocks:
    Z  the function argument
    Y  a second real vector argument (zonal kernels, two-point functions)
    T, S  real frame vectors, tau = t + i s
    U, V  the frame in complex coordinates: u = t + i s and v = t - i s
          (the symbolic frame uses these; v is the conjugate of u)
"""
from __future__ import annotations

import re
from itertools import product as iproduct

from gmpy2 import mpq

from .clifford import Blade, CliffordElement, Frame, _add_into, _scalar_terms, layout
from .scalar_tower import GaussianRational, PiScalar, as_rational

__all__ = [
    "Z",
    "Y",
    "T",
    "S",
    "U",
    "V",
    "BLOCK_NAMES",
    "CPoly",
    "SymbolicFrame",
    "SYMBOLIC",
    "vector_variable",
    "dirac",
    "right_dirac",
    "laplacian",
    "gamma_operator",
    "homogeneous_components",
    "evaluate",
    "linear_substitute",
    "move_block",
    "multiply_vector_variable",
    "partial",
    "frame_vectors",
    "inner",
    "parse_cpoly",
]

Z, Y, T, S, U, V = range(6)
BLOCK_NAMES = "zytsuv"
NBLOCKS = 6
EXP_BITS = 8
EXP_MASK = (1 << EXP_BITS) - 1


def _var(m: int, block: int, i: int) -> int:
    """Bit position of variable i (0-based) of ``block`` inside a monomial."""
    return EXP_BITS * (block * m + i)


class CPoly:
    """Polynomial with C_m coefficients in the blocks Z, Y, T, S, U, V."""

    __slots__ = ("m", "terms")

    def __init__(self, m: int, terms=None):
        self.m = m
        self.terms = terms if terms is not None else {}

    # construction
    @classmethod
    def const(cls, m: int, x=1) -> "CPoly":
        if isinstance(x, CliffordElement):
            if x.m != m:
                raise ValueError("dimension mismatch")
            return cls(m, dict(x.terms))
        return cls(m, _scalar_terms(layout(m), x))

    @classmethod
    def var(cls, m: int, block: int, i: int) -> "CPoly":
        """The scalar indeterminate number i (1-based) of ``block``."""
        if not 1 <= i <= m:
            raise ValueError("variable index out of range")
        lay = layout(m)
        return cls(m, {(1 << _var(m, block, i - 1)) << lay.cbits | lay.unit: mpq(1)})

    @classmethod
    def monomial(cls, m: int, exps: dict, coeff=1) -> "CPoly":
        """exps maps (block, i) with i 1-based to an exponent."""
        lay = layout(m)
        mono = 0
        for (block, i), e in exps.items():
            if e:
                if e > EXP_MASK:
                    raise OverflowError("exponent too large")
                mono |= e << _var(m, block, i - 1)
        coef = coeff if isinstance(coeff, CliffordElement) else CliffordElement.scalar(m, coeff)
        return cls(m, {mono << lay.cbits | c: q for c, q in coef.terms.items()})

    # basic protocol
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, CPoly):
            return self.m == other.m and self.terms == other.terms
        if isinstance(other, CliffordElement):
            return self.terms == other.terms
        try:
            return self.terms == _scalar_terms(layout(self.m), other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def _coerce(self, other) -> "CPoly":
        if isinstance(other, CPoly):
            if other.m != self.m:
                raise ValueError(f"dimension mismatch: {self.m} vs {other.m}")
            return other
        return CPoly.const(self.m, other)

    def __neg__(self):
        return CPoly(self.m, {k: -q for k, q in self.terms.items()})

    def __add__(self, other):
        o = self._coerce(other)
        if len(o.terms) > len(self.terms):
            small, big = self.terms, o.terms
        else:
            small, big = o.terms, self.terms
        out = dict(big)
        for k, q in small.items():
            _add_into(out, k, q)
        return CPoly(self.m, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, type(mpq(0)))) or type(other).__name__ == "Fraction":
            return self.scale(other)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(self, o)

    def __rmul__(self, other):
        if isinstance(other, (int, type(mpq(0)))) or type(other).__name__ == "Fraction":
            return self.scale(other)
        try:
            return _mul(self._coerce(other), self)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (PiScalar, GaussianRational)):
            return self * (PiScalar(1) / PiScalar.coerce(other))
        return self.scale(1 / as_rational(other))

    def __pow__(self, n: int):
        out = CPoly.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def scale(self, q) -> "CPoly":
        q = mpq(q)
        if not q:
            return CPoly(self.m)
        return CPoly(self.m, {k: v * q for k, v in self.terms.items()})

    # structure
    def _split(self, key: int):
        cb = layout(self.m).cbits
        return key >> cb, key & ((1 << cb) - 1)

    def exponents(self, mono: int, block: int) -> tuple:
        base = EXP_BITS * block * self.m
        return tuple((mono >> (base + EXP_BITS * i)) & EXP_MASK for i in range(self.m))

    def block_mask(self, block: int) -> int:
        """Bits of a monomial that belong to ``block``."""
        return ((1 << (EXP_BITS * self.m)) - 1) << (EXP_BITS * block * self.m)

    def blocks(self) -> set:
        cb = layout(self.m).cbits
        mono_all = 0
        for k in self.terms:
            mono_all |= k >> cb
        return {b for b in range(NBLOCKS) if mono_all & self.block_mask(b)}

    def block_degree(self, mono: int, block: int) -> int:
        return sum(self.exponents(mono, block))

    def degree(self, block: int = Z) -> int:
        """Maximal total degree in ``block`` (-1 for the zero polynomial)."""
        cb = layout(self.m).cbits
        return max((self.block_degree(k >> cb, block) for k in self.terms), default=-1)

    def is_homogeneous(self, block: int = Z) -> bool:
        cb = layout(self.m).cbits
        return len({self.block_degree(k >> cb, block) for k in self.terms}) <= 1

    def constant_term(self) -> CliffordElement:
        cb = layout(self.m).cbits
        return CliffordElement(self.m, _terms={k: q for k, q in self.terms.items() if not k >> cb})

    def as_clifford(self) -> CliffordElement:
        if len(self.blocks()):
            raise ValueError("polynomial is not constant")
        return self.constant_term()

    def dagger(self) -> "CPoly":
        """Hermitian conjugate with Z, Y, T, S real and U <-> V swapped."""
        lay = layout(self.m)
        cb, m = lay.cbits, self.m
        wu, wv = self.block_mask(U), self.block_mask(V)
        shift = EXP_BITS * m
        out = {}
        for k, q in self.terms.items():
            c = k & lay.cmask
            mono = k >> cb
            if mono & (wu | wv):
                mono = (mono & ~(wu | wv)) | ((mono & wu) << shift) | ((mono & wv) >> shift)
            _, sign = lay.dagger(c)
            out[mono << cb | c] = q if sign > 0 else -q
        return CPoly(m, out)

    def map_coefficients(self, fn) -> "CPoly":
        """Apply fn(CliffordElement) -> CliffordElement monomial by monomial."""
        lay = layout(self.m)
        groups = {}
        for k, q in self.terms.items():
            groups.setdefault(k >> lay.cbits, {})[k & lay.cmask] = q
        out = {}
        for mono, cterms in groups.items():
            img = fn(CliffordElement(self.m, _terms=cterms))
            for c, q in img.terms.items():
                out[mono << lay.cbits | c] = q
        return CPoly(self.m, out)

    def grouped(self, block_set) -> dict:
        """Split into {monomial in block_set: CPoly without those variables}."""
        cb = layout(self.m).cbits
        sel = 0
        for b in block_set:
            sel |= self.block_mask(b)
        out = {}
        for k, q in self.terms.items():
            mono = k >> cb
            part = mono & sel
            out.setdefault(part, {})[k - (part << cb)] = q
        return {p: CPoly(self.m, t) for p, t in out.items()}

    # text form
    def _mono_text(self, mono: int) -> str:
        parts = []
        for b in range(NBLOCKS):
            for i, e in enumerate(self.exponents(mono, b)):
                if e:
                    parts.append(f"{BLOCK_NAMES[b]}{i + 1}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) or "1"

    def _mono_sort_key(self, mono: int):
        exps = [e for b in range(NBLOCKS) for e in self.exponents(mono, b)]
        return (sum(exps), tuple(-e for e in exps))

    def __str__(self):
        if not self.terms:
            return "0"
        lay = layout(self.m)
        groups = {}
        for k, q in self.terms.items():
            groups.setdefault(k >> lay.cbits, {})[k & lay.cmask] = q
        out = []
        for mono in sorted(groups, key=self._mono_sort_key):
            out.append(f"{self._mono_text(mono)} * ({CliffordElement(self.m, _terms=groups[mono])})")
        return " + ".join(out)

    def __repr__(self):
        return f"CPoly(m={self.m}, {self})"


def _mul(a: CPoly, b: CPoly) -> CPoly:
    lay = layout(a.m)
    cb, cmask, cmul = lay.cbits, lay.cmask, lay.cmul
    mono_mask = ~cmask
    out = {}
    get = out.get
    bt = [(k & mono_mask, k & cmask, q) for k, q in b.terms.items()]
    for k1, q1 in a.terms.items():
        m1, c1 = k1 & mono_mask, k1 & cmask
        for m2, c2, q2 in bt:
            c, sign = cmul(c1, c2)
            key = (m1 + m2) | c
            v = q1 * q2
            old = get(key)
            if sign > 0:
                out[key] = v if old is None else old + v
            else:
                out[key] = -v if old is None else old - v
    return CPoly(a.m, {k: q for k, q in out.items() if q})


def vector_variable(m: int, block: int = Z) -> CPoly:
    """sum_j e_j x_j for the variables x of ``block``."""
    out = CPoly(m)
    for j in range(1, m + 1):
        out = out + CPoly.var(m, block, j) * CliffordElement.basis(m, j)
    return out


def partial(f: CPoly, block: int, i: int) -> CPoly:
    """d/dx_i of f, i 1-based."""
    lay = layout(f.m)
    pos = _var(f.m, block, i - 1) + lay.cbits
    one = 1 << pos
    out = {}
    for k, q in f.terms.items():
        e = (k >> pos) & EXP_MASK
        if e:
            out[k - one] = q * e
    return CPoly(f.m, out)


def _left_basis(f: CPoly, j: int, right: bool = False) -> CPoly:
    """e_j f (or f e_j when ``right``)."""
    lay = layout(f.m)
    ej = lay.ckey(1 << (j - 1))
    cmask = lay.cmask
    out = {}
    for k, q in f.terms.items():
        c = k & cmask
        c2, sign = lay.cmul(c, ej) if right else lay.cmul(ej, c)
        out[(k - c) | c2] = q if sign > 0 else -q
    return CPoly(f.m, out)


def _accumulate(m: int, parts) -> CPoly:
    out = {}
    for p in parts:
        for k, q in p.terms.items():
            _add_into(out, k, q)
    return CPoly(m, out)


def dirac(f: CPoly, block: int = Z) -> CPoly:
    """Left Dirac operator sum_j e_j d/dx_j."""
    return _accumulate(f.m, (_left_basis(partial(f, block, j), j) for j in range(1, f.m + 1)))


def right_dirac(f: CPoly, block: int = Z) -> CPoly:
    """Right Dirac operator f d = sum_j (d/dx_j f) e_j."""
    return _accumulate(f.m, (_left_basis(partial(f, block, j), j, right=True) for j in range(1, f.m + 1)))


def laplacian(f: CPoly, block: int = Z) -> CPoly:
    return _accumulate(f.m, (partial(partial(f, block, j), block, j) for j in range(1, f.m + 1)))


def multiply_vector_variable(f: CPoly, block: int = Z) -> CPoly:
    """x f with x = sum_j e_j x_j, computed term by term."""
    m = f.m
    lay = layout(m)
    parts = []
    for j in range(1, m + 1):
        shift = 1 << (_var(m, block, j - 1) + lay.cbits)
        g = _left_basis(f, j)
        parts.append(CPoly(m, {k + shift: q for k, q in g.terms.items()}))
    return _accumulate(m, parts)


def gamma_operator(f: CPoly) -> CPoly:
    """Gamma_z = -sum_{i<j} e_i e_j (z_i d_j - z_j d_i), acting on the left."""
    if f.blocks() - {Z}:
        raise ValueError("gamma_operator expects a polynomial in Z only")
    m = f.m
    lay = layout(m)
    parts = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            zi = 1 << (_var(m, Z, i - 1) + lay.cbits)
            zj = 1 << (_var(m, Z, j - 1) + lay.cbits)
            dj, di = partial(f, Z, j), partial(f, Z, i)
            lij = {}
            for k, q in dj.terms.items():
                _add_into(lij, k + zi, q)
            for k, q in di.terms.items():
                _add_into(lij, k + zj, -q)
            g = _left_basis(_left_basis(CPoly(m, lij), j), i)
            parts.append(-g)
    return _accumulate(m, parts)


def homogeneous_components(f: CPoly, block: int = Z) -> list:
    """[(degree, part)] in increasing degree; parts sum to f."""
    cb = layout(f.m).cbits
    groups = {}
    for k, q in f.terms.items():
        groups.setdefault(f.block_degree(k >> cb, block), {})[k] = q
    return [(d, CPoly(f.m, groups[d])) for d in sorted(groups)]


def evaluate(f: CPoly, assignments: dict):
    """Substitute values for whole blocks.

    ``assignments`` maps a block to a length-m vector of rationals (or
    Gaussian rationals).  Returns a CliffordElement when no variables are
    left, otherwise a CPoly in the remaining blocks.
    """
    m = f.m
    lay = layout(m)
    cb = lay.cbits
    for b, vec in assignments.items():
        if len(vec) != m:
            raise ValueError("assignment vectors need m entries")
    present = f.blocks()
    vals = {b: [GaussianRational.coerce(x if not isinstance(x, int) else mpq(x)) for x in vec]
            for b, vec in assignments.items()}
    clear = 0
    for b in vals:
        clear |= f.block_mask(b)
    out = CPoly(m)
    acc = {}
    for k, q in f.terms.items():
        mono = k >> cb
        factor = GaussianRational(1)
        for b, vec in vals.items():
            for i, e in enumerate(f.exponents(mono, b)):
                if e:
                    x = vec[i]
                    if not x:
                        factor = GaussianRational(0)
                        break
                    for _ in range(e):
                        factor = factor * x
            if not factor:
                break
        if not factor:
            continue
        rest = (mono & ~clear) << cb
        c = k & lay.cmask
        if factor.re:
            _add_into(acc, rest | c, q * factor.re)
        if factor.im:
            c2, sign = lay.cmul(lay.ckey(0, True), c)
            _add_into(acc, rest | c2, q * factor.im * sign)
    out = CPoly(m, acc)
    if present - set(vals):
        return out
    return out.as_clifford()


def move_block(f: CPoly, src: int, dst: int) -> CPoly:
    """Rename the variables of block ``src`` to those of block ``dst``."""
    if src == dst:
        return f
    m = f.m
    cb = layout(m).cbits
    mask = f.block_mask(src)
    if f.blocks() & {dst}:
        raise ValueError("target block is already in use")
    shift = EXP_BITS * m * (dst - src)
    out = {}
    for k, q in f.terms.items():
        mono = k >> cb
        part = mono & mask
        if part:
            mono = (mono & ~mask) | (part << shift if shift > 0 else part >> -shift)
        out[mono << cb | (k & ((1 << cb) - 1))] = q
    return CPoly(m, out)


def linear_substitute(f: CPoly, block: int, matrix) -> CPoly:
    """f(Q x) in ``block``: x_i -> sum_j Q[i][j] x_j."""
    m = f.m
    images = []
    for i in range(m):
        row = CPoly(m)
        for j in range(m):
            if matrix[i][j]:
                row = row + CPoly.var(m, block, j + 1).scale(matrix[i][j])
        images.append(row)
    lay = layout(m)
    cb = lay.cbits
    wipe = f.block_mask(block)
    powers = {}
    out = CPoly(m)
    for k, q in f.terms.items():
        mono = k >> cb
        term = CPoly(m, {((mono & ~wipe) << cb) | (k & lay.cmask): q})
        for i, e in enumerate(f.exponents(mono, block)):
            if e:
                key = (i, e)
                if key not in powers:
                    powers[key] = images[i] ** e
                term = powers[key] * term
        out = out + term
    return out


class SymbolicFrame:
    """Marker for a frame whose coordinates are indeterminates.

    ``coordinates="uv"`` uses tau = sum e_j u_j, tau^dagger = -sum e_j v_j.
    ``coordinates="ts"`` uses tau = sum e_j (t_j + i s_j).
    """

    def __init__(self, coordinates: str = "uv"):
        if coordinates not in ("uv", "ts"):
            raise ValueError("coordinates must be 'uv' or 'ts'")
        self.coordinates = coordinates

    def __eq__(self, other):
        return isinstance(other, SymbolicFrame) and other.coordinates == self.coordinates

    def __hash__(self):
        return hash(("SymbolicFrame", self.coordinates))

    def __repr__(self):
        return f"SymbolicFrame({self.coordinates!r})"


SYMBOLIC = SymbolicFrame()

_frame_cache = {}


def frame_vectors(frame, m: int):
    """(tau, tau^dagger) as CPolys for a concrete or symbolic frame."""
    key = (frame, m)
    hit = _frame_cache.get(key)
    if hit is not None:
        return hit
    if isinstance(frame, Frame):
        if frame.m != m:
            raise ValueError("frame dimension mismatch")
        tau = CPoly.const(m, frame.tau())
        out = (tau, tau.dagger())
    elif isinstance(frame, SymbolicFrame):
        if frame.coordinates == "uv":
            tau = _accumulate(m, (CPoly.var(m, U, j) * CliffordElement.basis(m, j) for j in range(1, m + 1)))
        else:
            i = CliffordElement.scalar(m, GaussianRational(0, 1))
            tau = _accumulate(
                m,
                (
                    (CPoly.var(m, T, j) + CPoly.var(m, S, j) * i) * CliffordElement.basis(m, j)
                    for j in range(1, m + 1)
                ),
            )
        out = (tau, tau.dagger())
    else:
        raise TypeError(f"not a frame: {frame!r}")
    _frame_cache[key] = out
    return out


def inner(x: CPoly, y: CPoly) -> CPoly:
    """Bilinear <x, y> = sum_j x_j y_j of two 1-vector valued polynomials.

    Uses <x, y> = -(xy + yx)/2, which needs no component extraction.
    """
    return (x * y + y * x).scale(mpq(-1, 2))


# text parsing

_TERM_SPLIT = " + "


def _split_top(text: str, sep: str = _TERM_SPLIT) -> list:
    out, depth, start, i = [], 0, 0, 0
    while i < len(text):
        ch = text[i]
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif depth == 0 and text.startswith(sep, i):
            out.append(text[start:i])
            i += len(sep)
            start = i
            continue
        i += 1
    out.append(text[start:])
    return out


_GR_FULL = re.compile(r"^\((?P<re>-?\d+(?:/\d+)?)(?P<im>[+-](?:\d+(?:/\d+)?)?)i\)$")
_GR_IM = re.compile(r"^(?P<im>-?(?:\d+(?:/\d+)?)?)i$")


def _parse_gaussian(text: str) -> GaussianRational:
    text = text.strip()
    m = _GR_FULL.match(text)
    if m:
        im = m["im"]
        im = im + "1" if im in "+-" else im
        # mpq rejects an explicit leading plus sign
        return GaussianRational(mpq(m["re"]), mpq(im.lstrip("+")))
    m = _GR_IM.match(text)
    if m:
        im = m["im"]
        im = {"": "1", "-": "-1"}.get(im, im)
        return GaussianRational(0, mpq(im))
    return GaussianRational(mpq(text))


def parse_piscalar(text: str) -> PiScalar:
    text = text.strip()
    if text == "0":
        return PiScalar()
    out = PiScalar()
    for part in _split_top(text):
        if " * pi^(" in part:
            q, p = part.split(" * pi^(")
            out = out + PiScalar.pi_power(int(p.rstrip(")").split("/")[0]), _parse_gaussian(q))
        else:
            out = out + PiScalar(_parse_gaussian(part))
    return out


def parse_clifford(text: str, m: int) -> CliffordElement:
    text = text.strip()
    if text == "0":
        return CliffordElement(m)
    coeffs = {}
    for part in _split_top(text):
        part = part.strip()
        close = part.rindex("]e{")
        coeff = parse_piscalar(part[1:close])
        idx = part[close + 3 : -1]
        blade = Blade(tuple(int(x) for x in idx.split(",")) if idx else ())
        coeffs[blade] = coeff
    return CliffordElement(m, coeffs)


_VAR = re.compile(r"^([zytsuv])(\d+)(?:\^(\d+))?$")


def parse_cpoly(text: str, m: int) -> CPoly:
    """Inverse of ``str(CPoly)``."""
    text = text.strip()
    if text == "0":
        return CPoly(m)
    out = CPoly(m)
    for part in _split_top(text):
        mono_txt, cliff_txt = part.split(" * (", 1)
        exps = {}
        if mono_txt != "1":
            for factor in mono_txt.split("*"):
                g = _VAR.match(factor)
                if not g:
                    raise ValueError(f"bad monomial factor {factor!r}")
                exps[(BLOCK_NAMES.index(g[1]), int(g[2]))] = int(g[3] or 1)
        out = out + CPoly.monomial(m, exps, parse_clifford(cliff_txt[:-1], m))
    return out
