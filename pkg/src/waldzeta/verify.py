"""Seeded invariant suite behind ``waldzeta verify``.

Each check draws from its own ``random.Random`` derived from the suite
seed, so a single check can be rerun in isolation with the same data.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from typing import Callable, List

from sympy import primerange

from . import sampling
from .arith import ONE, ZERO, CoeffElem, Poly, RatFunc, ratfunc_reduce, series_expand
from .archimedean import (
    ArchParams,
    arch_I,
    arch_I_quadrature,
    cartan_z,
    lie_action_nonsplit,
    lie_action_nonsplit_expected,
    lowering_residual_nonsplit,
    lowering_residual_split,
    nonsplit_profile,
    split_profile,
    torus_angle_derivative,
    zeta_infinity,
)
from .global_assembly import (
    build_config,
    global_factors,
    global_product,
    is_fundamental,
    legendre_of_prime,
    local_results,
    y_table,
)
from .local_data import (
    LocalField,
    SteinbergTwist,
    TorusChar,
    UnramifiedPS,
    central_compat_check,
    waldspurger_exists,
)
from .local_zeta import zeta_for_setup, zeta_steinberg_newform
from .waldspurger import spherical_generating_series, spherical_values_recurrence, steinberg_table

DEFAULT_SEED = 42
ORDER = 50


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def to_json(self) -> dict:
        # timing is left out so reports are reproducible byte for byte
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


CHECKS: List[tuple] = []


def check(name: str):
    def deco(fn: Callable[[random.Random], str]):
        CHECKS.append((name, fn))
        return fn

    return deco


def _rand_elem(rng: random.Random, q: int) -> CoeffElem:
    return CoeffElem(*(rng.randint(-4, 4) for _ in range(4)), q=q)


# ---------------------------------------------------------------------------
# Exact arithmetic


@check("coeff_field_axioms")
def _field_axioms(rng):
    for _ in range(1000):
        q = rng.choice(sampling.QS)
        a, b, c = (_rand_elem(rng, q) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        if a:
            assert a * a.inverse() == ONE
    return "1000 triples"


def _rand_ratfunc(rng, q, unit_den=True):
    num = Poly([_rand_elem(rng, q) for _ in range(rng.randint(1, 4))])
    den = [_rand_elem(rng, q) for _ in range(rng.randint(1, 4))]
    if unit_den:
        den[0] = sampling.unit(rng, q)
    return num, Poly(den)


@check("series_times_denominator")
def _series(rng):
    for _ in range(100):
        q = rng.choice(sampling.QS)
        num, den = _rand_ratfunc(rng, q)
        if not den:
            continue
        T = 20
        s = series_expand(RatFunc(num, den), T)
        prod = Poly(s.coeffs) * den
        assert all(prod[k] == num[k] for k in range(T + 1))
    return "100 rational functions to order 20"


@check("reduce_idempotent_and_scale_invariant")
def _reduce(rng):
    for _ in range(100):
        q = rng.choice(sampling.QS)
        num, den = _rand_ratfunc(rng, q, unit_den=False)
        if not den:
            continue
        common = Poly([_rand_elem(rng, q), ONE])
        f = ratfunc_reduce(num * common, den * common)
        assert ratfunc_reduce(f.num, f.den) == f
        c = sampling.unit(rng, q)
        assert ratfunc_reduce(num.scale(c), den.scale(c)) == ratfunc_reduce(num, den)
        assert f == ratfunc_reduce(num, den)
    return "100 pairs"


# ---------------------------------------------------------------------------
# Local data


@check("existence_depends_only_on_data")
def _existence(rng):
    for _ in range(200):
        q = rng.choice(sampling.QS)
        eps = rng.choice((-1, 0, 1))
        fld = LocalField(q, eps)
        omega = sampling.random_char(rng, fld, rng.randint(0, 3))
        chi = sampling.unit(rng, q)
        rep = SteinbergTwist(chi)
        a = waldspurger_exists(fld, rep, omega)
        again = waldspurger_exists(
            LocalField(q, eps), SteinbergTwist(CoeffElem.coerce(chi)), TorusChar(omega.kind, omega.values, omega.conductor)
        )
        assert a == again and isinstance(a, bool)
    return "200 draws"


@check("central_compat_swap_symmetric")
def _central_swap(rng):
    for _ in range(200):
        q = rng.choice(sampling.QS)
        fld, rep, omega = sampling.spherical_case(rng, q, rng.choice((-1, 0, 1)), rng.randint(0, 3))
        if rng.random() < 0.5:
            omega = sampling.random_char(rng, fld, omega.conductor)
        swapped = UnramifiedPS(rep.alpha2, rep.alpha1)
        assert central_compat_check(rep, omega, fld) == central_compat_check(swapped, omega, fld)
    return "200 draws"


# ---------------------------------------------------------------------------
# Waldspurger values


@check("generating_function_vs_recurrence")
def _gen_vs_rec(rng):
    for _ in range(200):
        q = rng.choice(sampling.QS)
        eps = rng.choice((-1, 0, 1))
        c = rng.randint(0, 3)
        fld, rep, omega = sampling.spherical_case(rng, q, eps, c)
        gen = spherical_generating_series(fld, rep, omega).coefficients(ORDER - 1)
        rec = spherical_values_recurrence(fld, rep, omega, ORDER - 1)
        assert gen == rec, (q, eps, c)
        assert all(x == ZERO for x in gen[:c]) and gen[c] == ONE
    return f"200 sets, {ORDER} coefficients"


def _steinberg_char(rng, fld, chi, c):
    """A character of conductor c compatible with chi St and admitting a model.

    None for inert L with c = 0, where compatibility rules a model out.
    """
    if fld.kind == "inert" and c == 0:
        return None
    while True:
        omega = sampling.random_char(rng, fld, c)
        vals = list(omega.values)
        if fld.kind == "ramified":
            if c == 0:
                vals[0] = -chi
        else:
            vals[0] = vals[0] * chi * chi / omega.at_base_uniformizer()
        omega = TorusChar(fld.kind, tuple(vals), c)
        if fld.kind == "split" and c == 0 and rng.random() < 0.3:
            omega = TorusChar("split", (chi, chi))
        if waldspurger_exists(fld, SteinbergTwist(chi), omega):
            return omega


@check("steinberg_table_identities")
def _stein_table(rng):
    n = 0
    for _ in range(200):
        q = rng.choice(sampling.QS)
        eps = rng.choice((-1, 0, 1))
        c = rng.randint(0, 3)
        fld = LocalField(q, eps)
        chi = sampling.unit(rng, q)
        omega = _steinberg_char(rng, fld, chi, c)
        if omega is None:
            continue
        t = steinberg_table(fld, SteinbergTwist(chi), omega, 6)
        for m in range(max(c, 1), 7):
            assert t.get("diag", m) == -q * t.get("diagw", m)
        if eps == 1 and c == 0:
            u1, u2 = t.get("u1"), t.get("u2")
            w2 = omega.values[1]
            assert w2 * u2 == -chi * u1
            if w2 != chi:
                assert u1 + u2 == -(q - 1) * t.b0_w
                n += 1
    return f"200 tables ({n} split c=0 with B0(w)=1)"


# ---------------------------------------------------------------------------
# Local zeta integrals


@check("unramified_zeta_oracle")
def _unram_zeta(rng):
    for eps in (-1, 0, 1):
        for _ in range(100):
            setup = sampling.unramified_setup(rng, rng.choice(sampling.QS), eps)
            res, direct, closed = zeta_for_setup(setup, ORDER)
            assert direct == closed
            assert res.check()
            assert closed[0] == ONE
    return f"100 sets per legendre, order {ORDER}"


def steinberg_branches(rng, per_branch: int = 25):
    """Random setups covering every reachable Steinberg branch, labelled."""
    out = []
    specs = [
        ("newform", -1, 1, None),
        ("newform", 0, 1, None),
        ("newform", 1, 1, None),
        ("ramified", 0, 0, "ramified_exists"),
        ("split_b0w_0", 1, 0, "b0w_zero"),
        ("split_b0w_1", 1, 0, None),
    ]
    for label, eps, c1, branch in specs:
        got = 0
        while got < per_branch:
            setup = sampling.steinberg_setup(rng, rng.choice(sampling.QS), eps, c1, branch)
            if setup is None:
                continue
            out.append((label, setup))
            got += 1
    return out


@check("steinberg_zeta_oracles")
def _stein_zeta(rng):
    seen = {}
    for label, setup in steinberg_branches(rng):
        res, direct, closed = zeta_for_setup(setup, ORDER)
        assert direct == closed, label
        assert res.check(), label
        seen[res.case] = seen.get(res.case, 0) + 1
    return ", ".join(f"{k}: {v}" for k, v in sorted(seen.items()))


@check("newform_prefactor")
def _prefactor(rng):
    for eps in (-1, 0, 1):
        for _ in range(10):
            setup = sampling.steinberg_setup(rng, rng.choice(sampling.QS), eps, 1)
            if setup is None:
                continue
            q = setup.field.q
            res = zeta_steinberg_newform(setup.field, setup.rep, setup.pair, setup.omega)
            ratio = res.y_factor / res.l_den
            assert ratio.is_constant()
            assert ratio == RatFunc(CoeffElem(q - eps) / (q + 1))
    return "(q - legendre)/(q + 1) for all three legendre values"


# ---------------------------------------------------------------------------
# Archimedean place

ZETA_NONSPLIT = [1.1 + 0.1 * k for k in range(40)] + [5.0]
ZETA_SPLIT = [-3 + 0.1 * k for k in range(61)]


@check("lowering_annihilation")
def _lowering(rng):
    worst = 0.0
    for ell in (2, 4, 6, 8):
        p = ArchParams(ell)
        for z in ZETA_NONSPLIT:
            worst = max(worst, abs(lowering_residual_nonsplit(p, z)))
            ctl = abs(lowering_residual_nonsplit(p, z, control=True)) / abs(z * nonsplit_profile(ell, z))
            assert ctl > 1e-2
        for mu1, mu2 in ((ell, 0), (0, ell), (0.5 + 1j, -0.25), (ell / 2, ell / 2)):
            ps = ArchParams(ell, mu=mu1 + mu2, mu1=mu1, mu2=mu2)
            for z in ZETA_SPLIT:
                worst = max(worst, abs(lowering_residual_split(ps, z)))
                ctl = abs(lowering_residual_split(ps, z, control=True)) / abs(math.exp(z) * split_profile(ps, z))
                assert ctl > 1e-2
    assert worst < 1e-10, worst
    return f"max residual {worst:.1e}"


@check("lie_action_finite_difference")
def _lie(rng):
    worst = 0.0
    for ell in (2, 4, 6):
        p = ArchParams(ell)
        for z in (1.3, 2.0, 3.5):
            for w in ("D", "E", "F", "L"):
                got = lie_action_nonsplit(p, z, w)
                want = lie_action_nonsplit_expected(p, z, w)
                worst = max(worst, abs(got - want))
            fd, closed = torus_angle_derivative(z)
            worst = max(worst, abs(fd - closed))
    assert worst < 1e-6, worst
    return f"max deviation {worst:.1e}"


@check("cartan_z_quadratic")
def _cartan(rng):
    for _ in range(500):
        x = rng.uniform(-5, 5)
        y = rng.choice((-1, 1)) * rng.uniform(0.1, 5)
        z = cartan_z(x, y)
        val = y * y * z ** 4 - (1 + x * x * y * y + y ** 4) * z * z + y * y
        scale = y * y * z ** 4 + (1 + x * x * y * y + y ** 4) * z * z
        assert abs(val) < 1e-12 * scale
        assert z >= 1
    return "500 points"


@check("arch_integral_vs_quadrature")
def _arch_I(rng):
    worst = 0.0
    for k in range(1, 7):
        for s in (0.5, 1.0, 1.5, 1 + 0.5j):
            a, b = arch_I(k, s), arch_I_quadrature(k, s)
            worst = max(worst, abs(a - b) / abs(b))
    assert worst < 1e-8, worst
    assert abs(arch_I(1, 0) - 1j * math.pi) < 1e-12
    assert abs(arch_I(2, 1) + math.pi / 4) < 1e-10
    return f"max relative error {worst:.1e}"


@check("zeta_infinity_formula")
def _zinf(rng):
    for _ in range(100):
        ell = rng.choice((2, 4, 6, 8))
        ell1 = rng.randint(1, ell - 1)
        D = rng.choice((5, 8, 12, 13))
        k = ell // 2
        s = complex(rng.uniform(0.3, 2.0), rng.uniform(-1, 1))
        if (2 * s + k).real <= 1:
            continue
        p = ArchParams(ell, ell1=ell1, D=D)
        want = 2 ** ((ell1 - (ell - ell1)) / 2) * D ** (-ell / 4 - s) * arch_I(k, s)
        got = zeta_infinity(p, s)
        assert abs(got - want) <= 1e-12 * abs(want)
    for ell in (4, 6, 8):
        p = ArchParams(ell)
        assert zeta_infinity(p, 0) == 0
        mags = [abs(zeta_infinity(p, 10.0 ** -j)) for j in range(2, 7)]
        assert all(b < a for a, b in zip(mags, mags[1:]))
    return "closed form and vanishing at s = 0"


# ---------------------------------------------------------------------------
# Global assembly


@check("legendre_brute_force")
def _legendre(rng):
    n = 0
    for D in range(-99, 100):
        if not is_fundamental(D, allow_negative=True):
            continue
        for p in primerange(2, 100):
            if D % p == 0:
                want = 0
            elif p == 2:
                want = 1 if D % 8 == 1 else -1
            else:
                want = 1 if any((x * x - D) % p == 0 for x in range(p)) else -1
            assert legendre_of_prime(D, p) == want, (D, p)
            n += 1
    return f"{n} pairs"


GLOBAL_FIXTURES = [(12, 6, 2), (5, 22, 2), (8, 7, 1), (5, 6, 6), (13, 39, 13)]


@check("global_y_table_exact")
def _global_exact(rng):
    for D, N, Np in GLOBAL_FIXTURES:
        for flag in (False, True):
            cfg = build_config(D, N, Np, split_b0w_zero=flag)
            yt = y_table(cfg)
            for p, res in local_results(cfg).items():
                assert yt[p] == res.y_factor
            assert yt[10007] == RatFunc(1)
    return f"{len(GLOBAL_FIXTURES)} fixtures"


@check("global_product_factors")
def _global_factors(rng):
    for D, N, Np in GLOBAL_FIXTURES:
        cfg = build_config(D, N, Np)
        s = complex(rng.uniform(0.6, 1.5), rng.uniform(-1, 1))
        fac = global_factors(cfg, s)
        prod = 1 + 0j
        for part in (fac["l_ratio"], fac["y"]):
            for p in sorted(part):
                prod *= part[p]
        prod *= fac["y_inf"]
        got = global_product(cfg, s)
        assert abs(got - prod) <= 1e-12 * max(1.0, abs(prod))
        assert global_product(build_config(D, N, Np, ell=4), 0) == 0
    return "products agree; ell = 4 vanishes at s = 0"


def run_suite(seed: int = DEFAULT_SEED, only: List[str] | None = None) -> List[CheckResult]:
    out = []
    for i, (name, fn) in enumerate(CHECKS):
        if only and name not in only:
            continue
        rng = random.Random(seed * 1000003 + i)
        t0 = time.perf_counter()
        try:
            detail = fn(rng)
            passed = True
        except AssertionError as exc:
            detail, passed = f"assertion failed: {exc}", False
        except Exception as exc:  # a crash counts as a failed invariant
            detail, passed = f"{type(exc).__name__}: {exc}", False
        out.append(CheckResult(name, passed, detail, time.perf_counter() - t0))
    return out
