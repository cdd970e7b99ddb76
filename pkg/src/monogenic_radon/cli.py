"""Command line verification harness.

    monogenic-radon verify --suite sphere-lemmas --m 3,4 --max-degree 3 --format json --out report.json
    monogenic-radon list-suites

Exit status: 0 when every check passes, 1 when some check fails, 2 for a
configuration error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from math import factorial

from gmpy2 import mpq

from .clifford import CliffordElement, canonical_frame, rotated_frame, wedge
from .fischer import fischer_decompose, z_power_times
from .huaradon import (
    apply_transform,
    lambda_,
    lambda_discrepancy,
    monogenic_psi,
    lambda_unnormalized,
    psi,
    psi_j,
)
from .identities import (
    appendix_b_inner_sum,
    appendix_b_outer_sum,
    chu_vandermonde,
    m2_degeneracy,
    pascal_sum,
    roy_sum,
)
from .integrate import ol2_pairing, sphere_integral
from .fischer import monogenic_component
from .poly import CPoly, Y, Z, dirac, inner, right_dirac, vector_variable
from .scalar_tower import PiScalar, gamma_half, HalfInt, unit_sphere_area
from .zonal_dual import (
    dual_of_transform,
    frame_kernel,
    gamma_constant,
    gamma_even_closed_form,
    gamma_odd_form_b,
    gamma_odd_form_a,
    invert,
    total_dual_transform,
    vartheta,
    zonal_monogenic,
    zonal_reproduce,
)

SUITES = (
    "clifford-axioms",
    "sphere-lemmas",
    "projections",
    "kernel-reproduction",
    "orthogonality",
    "stiefel-zonal",
    "dual-inversion",
    "appendix-identities",
    "m2-degeneracy",
)

# suites that accept dimensions below 3
_LOW_DIM_OK = {"clifford-axioms": 2, "m2-degeneracy": 2}

WORKERS_ENV = "MONOGENIC_RADON_WORKERS"


class ConfigError(ValueError):
    pass


def list_suites() -> list:
    return list(SUITES)


@dataclass
class SuiteConfig:
    suite: str
    m: list = field(default_factory=lambda: [3, 4])
    max_degree: int = 3
    frame: str = "canonical"
    format: str = "json"
    out: str | None = None
    use_printed_lambda: bool = False
    compare_odd_gamma_forms: bool = False

    def validate(self):
        if self.suite not in SUITES:
            raise ConfigError(f"unknown suite {self.suite!r}")
        low = _LOW_DIM_OK.get(self.suite, 3)
        for m in self.m:
            if m < low:
                raise ConfigError(f"suite {self.suite} needs m >= {low}, got {m}")
            if m > 12:
                raise ConfigError(f"m = {m} is beyond the supported range")
        if self.format not in ("json", "markdown"):
            raise ConfigError(f"unknown format {self.format!r}")
        parse_frame_spec(self.frame)
        if self.out is not None:
            parent = os.path.dirname(os.path.abspath(self.out))
            if not os.path.isdir(parent) or not os.access(parent, os.W_OK):
                raise ConfigError(f"cannot write {self.out}")
            if os.path.isdir(self.out):
                raise ConfigError(f"{self.out} is a directory")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d


@dataclass
class Report:
    suite: str
    config: dict
    checks: list
    elapsed_ms: int = 0

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c["pass"])

    @property
    def failed(self) -> int:
        return len(self.checks) - self.passed

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "checks": self.checks,
            "passed": self.passed,
            "failed": self.failed,
            "elapsed_ms": self.elapsed_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        d = json.loads(text)
        rep = cls(d["suite"], d["config"], d["checks"], d["elapsed_ms"])
        if rep.passed != d["passed"] or rep.failed != d["failed"]:
            raise ValueError("inconsistent counts in report")
        return rep

    def to_markdown(self) -> str:
        lines = [
            f"# {self.suite}",
            "",
            f"config: `{json.dumps(self.config, sort_keys=True)}`",
            "",
            f"passed: {self.passed}, failed: {self.failed}, elapsed: {self.elapsed_ms} ms",
            "",
            "| name | params | lhs | rhs | pass |",
            "| --- | --- | --- | --- | --- |",
        ]
        for c in self.checks:
            params = ", ".join(f"{k}={v}" for k, v in c["params"].items())
            cells = [c["name"], params, c["lhs"], c["rhs"], "yes" if c["pass"] else "NO"]
            lines.append("| " + " | ".join(x.replace("|", "\\|") for x in cells) + " |")
        return "\n".join(lines) + "\n"


def parse_frame_spec(text: str):
    if text == "canonical":
        return None
    if text.startswith("rotated:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise ConfigError(f"frame must be 'canonical' or 'rotated:SEED', got {text!r}")


def make_frame(spec: str, m: int):
    seed = parse_frame_spec(spec)
    return canonical_frame(m) if seed is None else rotated_frame(m, seed)


def _record(name, params, lhs, rhs) -> dict:
    return {"name": name, "params": params, "lhs": str(lhs), "rhs": str(rhs), "pass": lhs == rhs}


def _pi_half(m: int) -> PiScalar:
    return PiScalar.pi_power(m)


def _g(x) -> PiScalar:
    return gamma_half(HalfInt.of(x))


def random_poly(m: int, degree: int, rng: random.Random, homogeneous: bool = True, terms: int = 4) -> CPoly:
    """A small random polynomial in Z with Gaussian-rational Clifford coefficients."""
    out = CPoly(m)
    degrees = [degree] if homogeneous else list(range(degree + 1))
    for _ in range(terms):
        d = rng.choice(degrees)
        exps = {}
        for _ in range(d):
            i = rng.randint(1, m)
            exps[(Z, i)] = exps.get((Z, i), 0) + 1
        blade = tuple(sorted(rng.sample(range(1, m + 1), rng.randint(0, min(2, m)))))
        coeff = CliffordElement.basis(m, *blade) * mpq(rng.randint(-3, 3) or 1, rng.randint(1, 3))
        if rng.random() < 0.3:
            coeff = coeff * CliffordElement.scalar(m, PiScalar.i())
        out = out + CPoly.monomial(m, exps, coeff)
    return out


# individual grid points; each returns a list of records

def _clifford_point(m, frame_spec):
    frame = make_frame(frame_spec, m)
    tau, taud = frame.tau(), frame.tau_dagger()
    p = {"m": m, "frame": frame_spec}
    four = CliffordElement.scalar(m, 4)
    zero = CliffordElement(m)
    out = [
        _record("tau taudag tau = 4 tau", p, tau * taud * tau, tau * 4),
        _record("tau^2 = 0", p, tau * tau, zero),
        _record("taudag^2 = 0", p, taud * taud, zero),
        _record("tau taudag + taudag tau = 4", p, tau * taud + taud * tau, four),
        _record("[tau taudag]_0 = 2", p, (tau * taud).scalar_part(), PiScalar(2)),
        _record("tau taudag = 2 + tau^taudag", p, tau * taud, CliffordElement.scalar(m, 2) + wedge(tau, taud)),
        _record("tau^taudag is a bivector", p, wedge(tau, taud).grades() <= {2}, True),
    ]
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            ei, ej = CliffordElement.basis(m, i), CliffordElement.basis(m, j)
            rhs = CliffordElement.scalar(m, -2 if i == j else 0)
            out.append(_record("e_i e_j + e_j e_i = -2 delta_ij", dict(p, i=i, j=j), ei * ej + ej * ei, rhs))
    return out


def _sphere_point(m, frame_spec, D):
    frame = make_frame(frame_spec, m)
    tau, taud = frame.tau(), frame.tau_dagger()
    z = vector_variable(m, Z)
    a, b = inner(z, CPoly.const(m, tau)), inner(z, CPoly.const(m, taud))
    ph = _pi_half(m)
    h = mpq(m, 2)
    out = []
    base = {"m": m, "frame": frame_spec}
    for k in range(D + 1):
        for l in range(D + 1):
            lhs = sphere_integral(b**k * a**l)
            rhs = CliffordElement(m)
            if k == l:
                rhs = CliffordElement.scalar(m, ph * ((-1) ** k * 2 * factorial(k)) / _g(h + k))
            out.append(_record("sphere <w,taudag>^k <w,tau>^l", dict(base, k=k, l=l), lhs, rhs))
    for l in range(D):
        for k in range(D + 1):
            coef = ph * ((-1) ** l * factorial(l + 1)) / _g(h + l + 1)
            lhs = sphere_integral(b**k * a**l * CPoly.const(m, tau) * z)
            rhs = CliffordElement.scalar(m, coef) * tau * taud if k == l + 1 else CliffordElement(m)
            out.append(_record("sphere <w,taudag>^k <w,tau>^l tau w", dict(base, k=k, l=l), lhs, rhs))
            lhs2 = sphere_integral(a**k * b**l * CPoly.const(m, taud) * z)
            rhs2 = CliffordElement.scalar(m, coef) * taud * tau if k == l + 1 else CliffordElement(m)
            out.append(_record("sphere <w,tau>^k <w,taudag>^l taudag w", dict(base, k=k, l=l), lhs2, rhs2))
            mirrored = sphere_integral((a**k * b**l * z * CPoly.const(m, taud)).scale((-1) ** (k + l)))
            out.append(_record("conjugation mirror of tau w integral", dict(base, k=k, l=l), lhs, -mirrored.dagger()))
    for k in range(D):
        for l in range(D):
            lhs = sphere_integral(b**k * a**l * z * CPoly.const(m, tau * taud) * z)
            if k == l:
                bracket = wedge(tau, taud) * 4 - tau * taud * m - taud * tau * (2 * k)
                rhs = CliffordElement.scalar(m, ph * ((-1) ** k * factorial(k)) / _g(h + k + 1)) * bracket
            else:
                rhs = CliffordElement(m)
            out.append(_record("sphere <w,taudag>^k <w,tau>^l w tau taudag w", dict(base, k=k, l=l), lhs, rhs))
            if k == l:
                sp = ph * ((-1) ** (k + 1) * 4 * factorial(k)) / _g(h + k)
                out.append(_record("scalar part of w tau taudag w integral", dict(base, k=k), lhs.scalar_part(), sp))
    return out


def _projection_point(m, frame_spec, alpha, k):
    frame = make_frame(frame_spec, m)
    p = {"m": m, "frame": frame_spec, "alpha": alpha, "k": k}
    M = monogenic_psi(frame, alpha, k, m)
    return [
        _record("closed form = monogenic projection", p, M, monogenic_component(psi(frame, alpha, k, m), 0)),
        _record("closed form is monogenic", p, dirac(M, Z), CPoly(m)),
    ]


def _fischer_point(m, degree, seed):
    rng = random.Random(seed * 1000 + m * 31 + degree)
    P = random_poly(m, degree, rng)
    dec = fischer_decompose(P)
    p = {"m": m, "degree": degree, "seed": seed}
    out = [_record("Fischer reassembly", p, dec.reassemble(), P)]
    for j, M in dec:
        out.append(_record("Fischer part is monogenic", dict(p, j=j), dirac(M, Z), CPoly(m)))
    return out


def _kernel_point(m, frame_spec, alpha, k, j, printed):
    frame = make_frame(frame_spec, m)
    f = psi_j(frame, alpha, k, j, m)
    p = {"m": m, "frame": frame_spec, "alpha": alpha, "k": k, "j": j}
    weight = lambda_unnormalized if printed else lambda_
    image = apply_transform(j, frame, f, m, weight=weight)
    out = [_record("transform reproduces psi^j", p, image, f)]
    if printed:
        scaled = f * CliffordElement.scalar(m, lambda_discrepancy(m))
        out.append(_record("unnormalized weight scales psi^j by (pi A_m (m/2-1))^2", p, image, scaled))
    return out


def _lambda_ratio_point(m, alpha, k):
    p = {"m": m, "alpha": alpha, "k": k}
    return [_record("unnormalized lambda / lambda", p, lambda_unnormalized(alpha, k, m) / lambda_(alpha, k, m), lambda_discrepancy(m))]


def _orthogonality_point(m, frame_spec, alpha, k, alpha2, k2, j):
    frame = make_frame(frame_spec, m)
    p = {"m": m, "frame": frame_spec, "alpha": alpha, "k": k, "alpha2": alpha2, "k2": k2, "j": j}
    p1 = ol2_pairing(psi_j(frame, alpha, k, j, m), psi_j(frame, alpha2, k2, j, m))
    M1 = monogenic_psi(frame, alpha, k, m)
    p2 = ol2_pairing(M1, monogenic_psi(frame, alpha2, k2, m))
    p3 = ol2_pairing(M1, psi(frame, alpha2, k2, m))
    out = [
        _record("<psi^j, psi'^j> = <M psi, M psi'>", p, p1, p2),
        _record("<M psi, M psi'> = <M psi, psi'>", p, p2, p3),
    ]
    if alpha + k != alpha2 + k2:
        out.append(_record("pairing vanishes off the diagonal", p, p1, CPoly(m)))
    return out


def _stiefel_point(m, alpha, k, compare_forms):
    p = {"m": m, "alpha": alpha, "k": k}
    L = frame_kernel(alpha, k, m)
    C = zonal_monogenic(alpha + k, m)
    try:
        g = gamma_constant(alpha, k, m)
    except ArithmeticError:
        return [_record("frame average is a multiple of the zonal monogenic", p, L, "gamma * C")]
    ell = alpha + k
    target = PiScalar(mpq(factorial(ell) * factorial(m - 2), 2 * factorial(ell + m - 2)))
    consistent = (lambda_(alpha, k, m) * g * PiScalar.pi_power(2) * unit_sphere_area(m))
    out = [
        _record("frame average = gamma C", p, L, C.scale(g)),
        _record("lambda gamma pi A_m = l!(m-2)!/(2(l+m-2)!)", p, consistent, target),
    ]
    s, odd = divmod(alpha, 2)
    if not odd:
        out.append(_record("gamma even = closed form", p, g, gamma_even_closed_form(s, k, m)))
    elif compare_forms:
        out.append(_record("gamma odd = closed form A", p, g, gamma_odd_form_a(s, k, m)))
        out.append(_record("gamma odd = closed form B", p, g, gamma_odd_form_b(s, k, m)))
    return out


def _zonal_point(m, frame_spec, ell):
    frame = make_frame(frame_spec, m)
    C = zonal_monogenic(ell, m)
    p = {"m": m, "frame": frame_spec, "l": ell}
    out = [
        _record("zonal monogenic in x", p, dirac(C, Z), CPoly(m)),
        _record("zonal right monogenic in y", p, right_dirac(C, Y), CPoly(m)),
    ]
    for alpha in range(ell + 1):
        M = monogenic_psi(frame, alpha, ell - alpha, m)
        out.append(_record("zonal reproduction", dict(p, alpha=alpha), zonal_reproduce(M), M))
    return out


def _dual_point(m, frame_spec, n, j, ell):
    frame = make_frame(frame_spec, m)
    alpha = (ell + 1) // 2
    M = monogenic_psi(frame, alpha, ell - alpha, m)
    f = z_power_times(n, M)
    p = {"m": m, "frame": frame_spec, "n": n, "j": j, "l": ell}
    rhs = f.scale(vartheta(j, ell, m)) if n == j else CPoly(m)
    return [_record("dual of transform of z^n M_l", p, dual_of_transform(j, f), rhs)]


def _roundtrip_point(m, degree, seed):
    rng = random.Random(seed * 7919 + m * 101 + degree)
    f = random_poly(m, degree, rng, homogeneous=False, terms=5)
    p = {"m": m, "degree": degree, "seed": seed}
    return [_record("inversion round trip", p, invert(total_dual_transform(f)), f)]


def _identity_point(kind, args):
    params = dict(zip(("s", "k", "m", "j") if kind != "chu" else ("b", "c", "n"), args))
    if kind == "pascal":
        s, k = args
        return [_record("pascal sum", {"s": s, "k": k}, pascal_sum(s, k), mpq(1))]
    if kind == "roy":
        s, k, m = args
        lhs, rhs = roy_sum(s, k, m)
        return [_record("roy sum", {"s": s, "k": k, "m": m}, lhs, rhs)]
    if kind == "b-inner":
        j, s, k, m = args
        return [_record("inner l-sum", {"j": j, "s": s, "k": k, "m": m}, appendix_b_inner_sum(j, s, k, m), mpq(1))]
    if kind == "b-outer":
        s, k, m = args
        lhs, rhs = appendix_b_outer_sum(s, k, m)
        return [_record("outer j-sum", {"s": s, "k": k, "m": m}, lhs, rhs)]
    if kind == "chu":
        b, c, n = args
        lhs, rhs = chu_vandermonde(b, c, n)
        return [_record("Chu-Vandermonde", {"b": str(b), "c": str(c), "n": n}, lhs, rhs)]
    raise ValueError(kind)


def _m2_point(s, k):
    return [m2_degeneracy(s, k).as_record()]


def _tasks(cfg: SuiteConfig):
    D, fs = cfg.max_degree, cfg.frame
    name = cfg.suite
    if name == "clifford-axioms":
        return [(_clifford_point, (m, fs)) for m in cfg.m] if D >= 0 else []
    if name == "sphere-lemmas":
        return [(_sphere_point, (m, fs, D)) for m in cfg.m] if D >= 0 else []
    if name == "projections":
        out = [(_projection_point, (m, fs, a, k)) for m in cfg.m for a in range(D + 1) for k in range(D)]
        out += [(_fischer_point, (m, d, seed)) for m in cfg.m for d in range(D + 3) for seed in range(2)]
        return out
    if name == "kernel-reproduction":
        out = [
            (_kernel_point, (m, fs, a, k, j, cfg.use_printed_lambda))
            for m in cfg.m
            for a in range(D + 1)
            for k in range(D + 1 - a)
            for j in range(3)
        ]
        if cfg.use_printed_lambda:
            out += [(_lambda_ratio_point, (m, a, k)) for m in cfg.m for a in range(D + 1) for k in range(D + 1 - a)]
        return out
    if name == "orthogonality":
        rng = range(D + 1)
        return [
            (_orthogonality_point, (m, fs, a, k, a2, k2, 1))
            for m in cfg.m for a in rng for k in rng for a2 in rng for k2 in rng
        ]
    if name == "stiefel-zonal":
        out = [
            (_stiefel_point, (m, a, k, cfg.compare_odd_gamma_forms))
            for m in cfg.m for a in range(D + 1) for k in range(D + 1 - a)
        ]
        out += [(_zonal_point, (m, fs, ell)) for m in cfg.m for ell in range(D + 2)] if D >= 0 else []
        return out
    if name == "dual-inversion":
        out = [
            (_dual_point, (m, fs, n, j, ell))
            for m in cfg.m for ell in range(D + 1) for n in range(3) for j in range(3)
        ]
        out += [(_roundtrip_point, (m, D + 1, seed)) for m in cfg.m for seed in range(2)] if D >= 0 else []
        return out
    if name == "appendix-identities":
        if D < 0:
            return []
        out = [(_identity_point, ("pascal", (s, k))) for s in range(41) for k in range(D + 1)]
        for m in cfg.m:
            out += [(_identity_point, ("roy", (s, k, m))) for s in range(1, D + 1) for k in range(D + 1)]
            out += [(_identity_point, ("b-inner", (j, s, k, m))) for s in range(D + 1) for j in range(s + 1) for k in range(D + 1)]
            out += [(_identity_point, ("b-outer", (s, k, m))) for s in range(D + 1) for k in range(D + 1)]
        out += [(_identity_point, ("chu", (-s - k, -2 * s - k, s))) for s in range(D + 1) for k in range(D + 1)]
        rng = random.Random(20240611)
        for _ in range(20):
            n = rng.randint(0, 8)
            b = mpq(rng.randint(-12, 12), rng.choice((1, 2)))
            c = mpq(rng.randint(1, 12), rng.choice((1, 2)))
            out.append((_identity_point, ("chu", (b, c, n))))
        return out
    if name == "m2-degeneracy":
        return [(_m2_point, (s, k)) for s in range(1, max(D, 0) + 1) for k in range(D + 1)]
    raise ConfigError(name)


def _call(task):
    fn, args = task
    return fn(*args)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{WORKERS_ENV} must be an integer, got {raw!r}")
    if n < 1:
        raise ConfigError(f"{WORKERS_ENV} must be positive")
    return n


def run_suite(cfg: SuiteConfig, workers: int | None = None) -> Report:
    cfg.validate()
    workers = worker_count() if workers is None else workers
    start = time.perf_counter()
    tasks = _tasks(cfg)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_call, tasks))
    else:
        results = [_call(t) for t in tasks]
    checks = [rec for batch in results for rec in batch]
    elapsed = int((time.perf_counter() - start) * 1000)
    return Report(cfg.suite, cfg.echo(), checks, elapsed)


def _parse_m(text: str) -> list:
    if not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--m expects comma separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monogenic-radon", description="Exact verification suites.")
    sub = parser.add_subparsers(dest="command", required=True)
    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--m", type=_parse_m, default=[3, 4], help="comma separated dimensions, e.g. 3,4")
    v.add_argument("--max-degree", type=int, default=3)
    v.add_argument("--frame", default="canonical", help="canonical or rotated:SEED")
    v.add_argument("--format", choices=("json", "markdown"), default="json")
    v.add_argument("--out", default=None, help="output file (stdout when omitted)")
    v.add_argument("--use-printed-lambda", action="store_true",
                   help="use the unnormalized kernel weights (expected to fail)")
    v.add_argument("--compare-odd-gamma-forms", action="store_true",
                   help="also compare odd gamma with both closed forms A and B")
    sub.add_parser("list-suites", help="print the suite names")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if args.command == "list-suites":
        print("\n".join(list_suites()))
        return 0
    cfg = SuiteConfig(
        suite=args.suite,
        m=args.m,
        max_degree=args.max_degree,
        frame=args.frame,
        format=args.format,
        out=args.out,
        use_printed_lambda=args.use_printed_lambda,
        compare_odd_gamma_forms=args.compare_odd_gamma_forms,
    )
    try:
        report = run_suite(cfg)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = report.to_json() if cfg.format == "json" else report.to_markdown()
    if cfg.out:
        try:
            with open(cfg.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            print(f"error: cannot write {cfg.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 0 if report.failed == 0 else 1


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
