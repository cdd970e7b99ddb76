"""Exact integration of polynomials over spheres, the Lie sphere and frames.

Everything is reduced to Pizzetti's formula

    int_{S^{n-1}} f dS = sum_k 2 pi^(n/2) / (4^k k! Gamma(k + n/2)) (Delta^k f)(0)

applied monomial by monomial (the formula is linear, and monomial results are
cached).  For the sphere of unit vectors orthogonal to t the Laplacian is
replaced by the projected one, Delta_P = sum_ij (delta_ij - t_i t_j) d_i d_j,
in dimension n = m - 1; the outcome is a polynomial in t that is meaningful
on |t| = 1, which the outer sphere integral over t enforces.
"""
from __future__ import annotations

from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .clifford import CliffordElement, _add_into, layout
from .poly import EXP_BITS, EXP_MASK, CPoly, S, T, U, V, Z, homogeneous_components
from .scalar_tower import GaussianRational, PiScalar, gamma_half, HalfInt, unit_sphere_area

__all__ = [
    "theta_integral",
    "pizzetti_weight",
    "sphere_monomial_moment",
    "integrate_block",
    "sphere_integral",
    "subspace_sphere_integral",
    "ol2_pairing",
    "stiefel_moment",
    "stiefel_average",
    "stiefel_average_product",
    "ts_to_uv",
]


def theta_integral(n: int) -> PiScalar:
    """int_0^pi e^(i n theta) d theta."""
    if n == 0:
        return PiScalar.pi_power(2)
    if n % 2 == 0:
        return PiScalar()
    return PiScalar(GaussianRational(0, mpq(2, n)))


def _single_term(x: PiScalar):
    """(half exponent, rational) of a real single-term PiScalar."""
    if not x:
        return 0, mpq(0)
    if len(x.terms) != 1:
        raise ValueError("expected a single pi-power")
    (p, q), = x.terms.items()
    if q.im:
        raise ValueError("expected a real value")
    return p, q.re


@lru_cache(maxsize=None)
def pizzetti_weight(n: int, k: int):
    """2 pi^(n/2) / (4^k k! Gamma(k + n/2)) as (half exponent, rational)."""
    w = PiScalar.pi_power(n, 2) / (gamma_half(HalfInt(2 * k + n)) * (4**k * factorial(k)))
    return _single_term(w)


def _laplace_dict(poly: dict) -> dict:
    out = {}
    for exps, q in poly.items():
        for i, e in enumerate(exps):
            if e >= 2:
                new = exps[:i] + (e - 2,) + exps[i + 1 :]
                _add_into(out, new, q * e * (e - 1))
    return out


@lru_cache(maxsize=None)
def _laplace_power_at_zero(exps: tuple) -> mpq:
    """(Delta^k x^exps)(0) with 2k = |exps|; exps sorted."""
    k = sum(exps) // 2
    poly = {exps: mpq(1)}
    for _ in range(k):
        poly = _laplace_dict(poly)
    return poly.get(tuple(0 for _ in exps), mpq(0))


@lru_cache(maxsize=None)
def _sphere_moment_sorted(n: int, exps: tuple):
    if any(e % 2 for e in exps):
        return 0, mpq(0)
    k = sum(exps) // 2
    p, w = pizzetti_weight(n, k)
    return p, w * _laplace_power_at_zero(exps)


def sphere_monomial_moment(n: int, exps) -> PiScalar:
    """int_{S^{n-1}} x^exps dS by Pizzetti."""
    exps = tuple(exps)
    if len(exps) != n:
        raise ValueError("need one exponent per coordinate")
    p, q = _sphere_moment_sorted(n, tuple(sorted(exps, reverse=True)))
    return PiScalar.pi_power(p, q) if q else PiScalar()


class _PackedMoments:
    """Sphere moments keyed by the packed exponent bits of one block."""

    def __init__(self, m: int):
        self.m = m
        self.cache = {}

    def __call__(self, packed: int):
        hit = self.cache.get(packed)
        if hit is None:
            exps = tuple(sorted(((packed >> (EXP_BITS * i)) & EXP_MASK for i in range(self.m)), reverse=True))
            hit = _sphere_moment_sorted(self.m, exps)
            self.cache[packed] = hit
        return hit


@lru_cache(maxsize=None)
def _packed_moments(m: int) -> _PackedMoments:
    return _PackedMoments(m)


def integrate_block(f: CPoly, block: int = Z) -> CPoly:
    """int over S^{m-1} in the variables of ``block``; other blocks pass through."""
    m = f.m
    lay = layout(m)
    cb, ps = lay.cbits, lay.pi_shift
    base = EXP_BITS * block * m + cb
    width = (1 << (EXP_BITS * m)) - 1
    moments = _packed_moments(m)
    out = {}
    for k, q in f.terms.items():
        packed = (k >> base) & width
        p, w = moments(packed)
        if not w:
            continue
        key = (k - (packed << base)) + (p << ps)
        _add_into(out, key, q * w)
    return CPoly(m, out)


def sphere_integral(f: CPoly, block: int = Z) -> CliffordElement:
    """int_{S^{m-1}} f dS for a polynomial in a single block."""
    extra = f.blocks() - {block}
    if extra:
        raise ValueError("sphere_integral expects a polynomial in exactly one block")
    return integrate_block(f, block).as_clifford()


# products integrated without expanding them

def _groups(f: CPoly, block: int):
    """{packed exponents of ``block``: [(rest key, value)]}."""
    m = f.m
    cb = layout(m).cbits
    base = EXP_BITS * block * m + cb
    width = (1 << (EXP_BITS * m)) - 1
    out = {}
    for k, q in f.terms.items():
        packed = (k >> base) & width
        out.setdefault(packed, []).append((k - (packed << base), q))
    return out


def _contract(a_groups: dict, b_groups: dict, m: int, weight) -> CPoly:
    """sum_{mu, nu} weight(mu + nu) a_mu b_nu with weight -> (pi exponent, q)."""
    lay = layout(m)
    cmask, cmul, ps = lay.cmask, lay.cmul, lay.pi_shift
    mono_mask = ~cmask
    out = {}
    b_items = list(b_groups.items())
    for mu, a_terms in a_groups.items():
        acc = {}
        for nu, b_terms in b_items:
            p, w = weight(mu + nu)
            if not w:
                continue
            shift = p << ps
            for k, q in b_terms:
                key = k + shift
                v = acc.get(key)
                acc[key] = q * w if v is None else v + q * w
        if not acc:
            continue
        acc_items = [(k & mono_mask, k & cmask, q) for k, q in acc.items() if q]
        for k1, q1 in a_terms:
            m1, c1 = k1 & mono_mask, k1 & cmask
            for m2, c2, q2 in acc_items:
                c, sign = cmul(c1, c2)
                key = (m1 + m2) | c
                v = q1 * q2 if sign > 0 else -(q1 * q2)
                old = out.get(key)
                out[key] = v if old is None else old + v
    return CPoly(m, {k: q for k, q in out.items() if q})


def integrate_product(a: CPoly, b: CPoly, block: int = Z) -> CPoly:
    """integrate_block(a * b, block) without forming a * b."""
    moments = _packed_moments(a.m)
    return _contract(_groups(a, block), _groups(b, block), a.m, moments)


def ol2_pairing(g: CPoly, f: CPoly, block: int = Z) -> CPoly:
    """<g, f> = int_0^pi int_{S^{m-1}} g(e^{i theta} w)^dagger f(e^{i theta} w).

    The phase of each homogeneous pair (g_a, f_b) is e^{i (b - a) theta}.
    Pairs of odd total degree vanish in Pizzetti's formula and are skipped.
    Returns a CPoly (a constant when g and f only involve ``block``).
    """
    out = CPoly(f.m)
    gparts = homogeneous_components(g, block)
    fparts = homogeneous_components(f, block)
    for a, ga in gparts:
        gad = ga.dagger()
        for b, fb in fparts:
            th = theta_integral(b - a)
            if not th or (a + b) % 2:
                continue
            out = out + integrate_product(gad, fb, block) * CliffordElement.scalar(f.m, th)
    return out


def ol2_pairing_value(g: CPoly, f: CPoly) -> CliffordElement:
    return ol2_pairing(g, f).as_clifford()


# sphere orthogonal to t

def _projected_laplacian(poly: dict, n: int) -> dict:
    """Delta_P on {(t exps, s exps): q}."""
    out = {}
    for (te, se), q in poly.items():
        for i in range(n):
            e = se[i]
            if e >= 2:
                s2 = se[:i] + (e - 2,) + se[i + 1 :]
                _add_into(out, (te, s2), q * e * (e - 1))
        for i in range(n):
            ei = se[i]
            if not ei:
                continue
            s1 = se[:i] + (ei - 1,) + se[i + 1 :]
            for j in range(n):
                ej = s1[j]
                if not ej:
                    continue
                s2 = s1[:j] + (ej - 1,) + s1[j + 1 :]
                t2 = list(te)
                t2[i] += 1
                t2[j] += 1
                _add_into(out, (tuple(t2), s2), -q * ei * ej)
    return out


@lru_cache(maxsize=None)
def _subspace_monomial(m: int, sexps: tuple):
    """Pizzetti value of int_{S^{m-2} in t-perp} s^sexps as (pi exponent, {t exps: q})."""
    deg = sum(sexps)
    if deg % 2:
        return 0, {}
    k = deg // 2
    zero = (0,) * m
    poly = {(zero, sexps): mpq(1)}
    for _ in range(k):
        poly = _projected_laplacian(poly, m)
    p, w = pizzetti_weight(m - 1, k)
    return p, {te: q * w for (te, se), q in poly.items() if q}


def subspace_sphere_integral(f: CPoly, s_block: int = S, t_block: int = T) -> CPoly:
    """int over the unit sphere of t-perp in the ``s_block`` variables.

    The result is a polynomial in ``t_block``; it agrees with the true
    integral whenever |t| = 1.
    """
    m = f.m
    lay = layout(m)
    cb, ps = lay.cbits, lay.pi_shift
    base = EXP_BITS * s_block * m + cb
    width = (1 << (EXP_BITS * m)) - 1
    tbase = EXP_BITS * t_block * m + cb
    out = {}
    for k, q in f.terms.items():
        packed = (k >> base) & width
        sexps = tuple((packed >> (EXP_BITS * i)) & EXP_MASK for i in range(m))
        p, tpoly = _subspace_monomial(m, sexps)
        if not tpoly:
            continue
        rest = k - (packed << base) + (p << ps)
        for te, w in tpoly.items():
            shift = 0
            for i, e in enumerate(te):
                shift += e << (EXP_BITS * i)
            _add_into(out, rest + (shift << tbase), q * w)
    return CPoly(m, out)


@lru_cache(maxsize=None)
def _normalizer(m: int) -> PiScalar:
    return PiScalar(1) / (unit_sphere_area(m) * unit_sphere_area(m - 1))


def _stiefel_ts_raw(f: CPoly) -> CPoly:
    inner = subspace_sphere_integral(f, S, T)
    return integrate_block(inner, T) * CliffordElement.scalar(f.m, _normalizer(f.m))


# frame moments in complex coordinates

def _binom_expand(a: int, b: int, sign_s: int):
    """(t + i s)^a (t - i s)^b as {(t exp, s exp): GaussianRational}."""
    out = {(0, 0): GaussianRational(1)}
    for factor_s, count in ((1, a), (-1, b)):
        for _ in range(count):
            nxt = {}
            for (te, se), c in out.items():
                for dt, ds, fac in ((1, 0, GaussianRational(1)), (0, 1, GaussianRational(0, factor_s * sign_s))):
                    key = (te + dt, se + ds)
                    nxt[key] = nxt.get(key, GaussianRational()) + c * fac
            out = nxt
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _stiefel_uv_class(m: int, pairs: tuple) -> mpq:
    """Normalized frame average of prod_j u_j^a_j v_j^b_j, pairs sorted."""
    per_coord = [_binom_expand(a, b, 1) for a, b in pairs]
    poly = CPoly(m)
    lay = layout(m)
    cb = lay.cbits
    terms = {}
    for combo in _product_dicts(per_coord):
        mono = 0
        coef = GaussianRational(1)
        for i, ((te, se), c) in enumerate(combo):
            mono |= te << (EXP_BITS * (T * m + i))
            mono |= se << (EXP_BITS * (S * m + i))
            coef = coef * c
        if coef.re:
            _add_into(terms, mono << cb | lay.unit, coef.re)
        if coef.im:
            _add_into(terms, mono << cb | lay.ckey(0, True), coef.im)
    poly = CPoly(m, terms)
    val = _stiefel_ts_raw(poly).as_clifford().scalar_part()
    g = val.rational()
    if g.im:
        raise ArithmeticError("frame moment is not real")
    return g.re


def _product_dicts(dicts):
    if not dicts:
        yield ()
        return
    head, *tail = dicts
    for rest in _product_dicts(tail):
        for item in head.items():
            yield (item,) + rest


def stiefel_moment(m: int, a, b) -> mpq:
    """Normalized frame average of u^a v^b (u = t + i s, v = t - i s)."""
    if sum(a) != sum(b):
        return mpq(0)
    if any((x + y) % 2 for x, y in zip(a, b)):
        return mpq(0)
    # coordinate permutations and the global swap u <-> v (s -> -s) are symmetries
    pairs = min(tuple(sorted(zip(a, b))), tuple(sorted(zip(b, a))))
    return _stiefel_uv_class(m, pairs)


class _PackedUV:
    """Frame moments keyed by packed U and V exponent bits (U block low)."""

    def __init__(self, m: int):
        self.m = m
        self.cache = {}

    def __call__(self, packed: int):
        hit = self.cache.get(packed)
        if hit is None:
            m = self.m
            a = [(packed >> (EXP_BITS * i)) & EXP_MASK for i in range(m)]
            b = [(packed >> (EXP_BITS * (m + i))) & EXP_MASK for i in range(m)]
            hit = (0, stiefel_moment(m, a, b))
            self.cache[packed] = hit
        return hit


@lru_cache(maxsize=None)
def _packed_uv(m: int) -> _PackedUV:
    return _PackedUV(m)


def _uv_groups(f: CPoly):
    m = f.m
    cb = layout(m).cbits
    base = EXP_BITS * U * m + cb  # U and V are adjacent blocks
    width = (1 << (2 * EXP_BITS * m)) - 1
    out = {}
    for k, q in f.terms.items():
        packed = (k >> base) & width
        out.setdefault(packed, []).append((k - (packed << base), q))
    return out


def ts_to_uv(f: CPoly) -> CPoly:
    """Rewrite t = (u + v)/2 and s = (u - v)/(2i)."""
    if not f.blocks() & {T, S}:
        return f
    m = f.m
    half = mpq(1, 2)
    i_half = CliffordElement.scalar(m, GaussianRational(0, mpq(-1, 2)))
    out = f
    for j in range(1, m + 1):
        tj = (CPoly.var(m, U, j) + CPoly.var(m, V, j)).scale(half)
        sj = (CPoly.var(m, U, j) - CPoly.var(m, V, j)) * i_half
        out = _substitute_var(out, T, j, tj)
        out = _substitute_var(out, S, j, sj)
    return out


def _substitute_var(f: CPoly, block: int, j: int, image: CPoly) -> CPoly:
    m = f.m
    lay = layout(m)
    pos = EXP_BITS * (block * m + j - 1) + lay.cbits
    by_exp = {}
    for k, q in f.terms.items():
        e = (k >> pos) & EXP_MASK
        by_exp.setdefault(e, {})[k - (e << pos)] = q
    if set(by_exp) == {0}:
        return f
    out = CPoly(m)
    power = CPoly.const(m, 1)
    for e in range(max(by_exp) + 1):
        if e in by_exp:
            out = out + power * CPoly(m, by_exp[e])
        power = power * image
    return out


def stiefel_average(f: CPoly) -> CPoly:
    """Normalized average over orthonormal frames (t, s).

    Accepts the frame in T, S coordinates (handled by subspace Pizzetti and
    an outer sphere integral) or in U, V coordinates (handled through cached
    monomial moments, themselves computed by the T, S route).
    """
    blocks = f.blocks()
    if blocks & {T, S} and blocks & {U, V}:
        f = ts_to_uv(f)
        blocks = f.blocks()
    if blocks & {T, S}:
        out = _stiefel_ts_raw(f)
    else:
        ones = CPoly.const(f.m, 1)
        out = _contract(_uv_groups(f), _uv_groups(ones), f.m, _packed_uv(f.m))
    return out


def stiefel_average_product(a: CPoly, b: CPoly) -> CPoly:
    """stiefel_average(a * b) for a, b in U, V coordinates, without forming a * b."""
    if (a.blocks() | b.blocks()) & {T, S}:
        a, b = ts_to_uv(a), ts_to_uv(b)
    return _contract(_uv_groups(a), _uv_groups(b), a.m, _packed_uv(a.m))
