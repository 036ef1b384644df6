"""Global assembly over Q with L = Q(sqrt(D)).

A :class:`GlobalConfig` bundles the discriminant, the square-free level N
with its divisor N', the weight, per-prime local data at p | N, Satake
data at good primes for a truncated Euler product, and externally
supplied L-values.

Normalizations.  ``locals`` entries describe the representation exactly
as it enters the local integral, so Y_p is that local integral's
y-factor with no further twisting.  ``satake`` entries are Satake
parameters of pi itself; the contragredient in the numerator L-function
is formed by inverting them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

from sympy import factorint, isprime, primerange
from sympy.functions.combinatorial.numbers import kronecker_symbol

from .arith import ONE, RatFunc
from .archimedean import ArchParams, zeta_infinity
from .errors import ValidationError
from .local_data import (
    InducedPair,
    LocalField,
    LocalSetup,
    SteinbergTwist,
    TorusChar,
    _rep_from_json,
)
from .local_zeta import LocalZetaResult, zeta_for_setup, zeta_unramified

__all__ = [
    "LValues",
    "GlobalConfig",
    "YTable",
    "is_fundamental",
    "legendre_of_prime",
    "s_matrix",
    "validate",
    "y_table",
    "local_results",
    "global_product",
    "global_factors",
    "volume_gamma0",
    "global_z_at_zero",
    "inner_product_value",
    "nonvanishing",
    "DEFAULT_PRIME_BOUND",
    "build_config",
]

DEFAULT_PRIME_BOUND = 50


def _squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorint(n).values())


def is_fundamental(D: int, allow_negative: bool = False) -> bool:
    """Fundamental discriminant of a quadratic field; positive unless ``allow_negative``."""
    if isinstance(D, bool) or not isinstance(D, int) or D in (0, 1):
        return False
    if D < 0 and not allow_negative:
        return False
    if D % 4 == 1:
        return _squarefree(abs(D))
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and _squarefree(abs(m))
    return False


def legendre_of_prime(D: int, p: int) -> int:
    """Splitting type of p in Q(sqrt(D)): the Kronecker symbol (D/p)."""
    if not is_fundamental(D, allow_negative=True):
        raise ValidationError(f"{D} is not a fundamental discriminant")
    if not isprime(p):
        raise ValidationError(f"{p} is not prime")
    return int(kronecker_symbol(D, p))


def s_matrix(D: int) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    """Symmetric matrix of determinant -D/4 whose stabilizer is the torus L^x."""
    if not is_fundamental(D):
        raise ValidationError(f"{D} is not a positive fundamental discriminant")
    if D % 4 == 0:
        return ((Fraction(-D, 4), Fraction(0)), (Fraction(0), Fraction(1)))
    return ((Fraction(1 - D, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)))


def volume_gamma0(N: int) -> float:
    """Hyperbolic volume of Gamma_0(N) \\ H for square-free N."""
    if not _squarefree(N):
        raise ValidationError(f"N must be a square-free positive integer, got {N}")
    index = Fraction(N)
    for p in factorint(N):
        index *= 1 + Fraction(1, p)
    return math.pi / 3 * float(index)


# ---------------------------------------------------------------------------
# Config


@dataclass(frozen=True)
class LValues:
    L_half_pi: complex
    L_one_chi: complex
    L_half_bc_twist_nonzero: bool

    @classmethod
    def from_json(cls, obj) -> "LValues":
        if not isinstance(obj, dict):
            raise ValidationError("l_values must be an object")
        need = {"L_half_pi", "L_one_chi", "L_half_bc_twist_nonzero"}
        if set(obj) != need:
            raise ValidationError(f"l_values needs exactly {sorted(need)}")
        if not isinstance(obj["L_half_bc_twist_nonzero"], bool):
            raise ValidationError("L_half_bc_twist_nonzero must be a boolean")
        return cls(_complex(obj["L_half_pi"]), _complex(obj["L_one_chi"]), obj["L_half_bc_twist_nonzero"])

    def to_json(self) -> dict:
        return {
            "L_half_pi": [self.L_half_pi.real, self.L_half_pi.imag],
            "L_one_chi": [self.L_one_chi.real, self.L_one_chi.imag],
            "L_half_bc_twist_nonzero": self.L_half_bc_twist_nonzero,
        }


def _complex(v) -> complex:
    if isinstance(v, bool):
        raise ValidationError("expected a number or [re, im]")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2 and all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in v
    ):
        return complex(v[0], v[1])
    raise ValidationError(f"expected a number or [re, im], got {v!r}")


@dataclass(frozen=True)
class GlobalConfig:
    D: int
    N: int
    Nprime: int
    ell: int
    locals: Dict[int, LocalSetup] = field(default_factory=dict)
    satake: Dict[int, LocalSetup] = field(default_factory=dict)
    prime_bound: int = DEFAULT_PRIME_BOUND
    l_values: Optional[LValues] = None

    @classmethod
    def from_json(cls, obj) -> "GlobalConfig":
        if not isinstance(obj, dict):
            raise ValidationError("config must be a JSON object")
        allowed = {"D", "N", "Nprime", "ell", "locals", "satake", "prime_bound", "l_values"}
        extra = set(obj) - allowed
        if extra:
            raise ValidationError(f"unknown config keys {sorted(extra)}")
        for k in ("D", "N", "Nprime", "ell"):
            if k not in obj:
                raise ValidationError(f"missing key {k!r}")
            if isinstance(obj[k], bool) or not isinstance(obj[k], int):
                raise ValidationError(f"{k} must be an integer")
        D = obj["D"]
        locals_ = {}
        for key, val in (obj.get("locals") or {}).items():
            p = _prime_key(key)
            locals_[p] = LocalSetup.from_json(val)
        satake = {}
        for key, val in (obj.get("satake") or {}).items():
            p = _prime_key(key)
            satake[p] = _satake_setup(p, val, D)
        bound = obj.get("prime_bound", DEFAULT_PRIME_BOUND)
        if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
            raise ValidationError("prime_bound must be a positive integer")
        lv = LValues.from_json(obj["l_values"]) if "l_values" in obj else None
        return cls(D, obj["N"], obj["Nprime"], obj["ell"], locals_, satake, bound, lv)

    def to_json(self) -> dict:
        out = {
            "D": self.D,
            "N": self.N,
            "Nprime": self.Nprime,
            "ell": self.ell,
            "locals": {str(p): s.to_json() for p, s in sorted(self.locals.items())},
            "satake": {str(p): _satake_to_json(s) for p, s in sorted(self.satake.items())},
            "prime_bound": self.prime_bound,
        }
        if self.l_values is not None:
            out["l_values"] = self.l_values.to_json()
        return out


def _prime_key(key) -> int:
    try:
        p = int(key)
    except (TypeError, ValueError):
        raise ValidationError(f"prime keys must be integers, got {key!r}") from None
    if not isprime(p):
        raise ValidationError(f"{p} is not a prime")
    return p


def _satake_setup(p: int, obj, D: int) -> LocalSetup:
    """Satake entry {"alpha1", "alpha2", optional "omega1"/"omega2"} -> local setup of the contragredient."""
    if not isinstance(obj, dict):
        raise ValidationError(f"satake[{p}] must be an object")
    extra = set(obj) - {"alpha1", "alpha2", "omega1", "omega2"}
    if extra:
        raise ValidationError(f"satake[{p}] has unknown keys {sorted(extra)}")
    if not is_fundamental(D):
        raise ValidationError(f"{D} is not a positive fundamental discriminant")
    fld = LocalField(p, legendre_of_prime(D, p))
    rep = _rep_from_json(
        {"type": "unramified", "alpha1": obj.get("alpha1"), "alpha2": obj.get("alpha2")}, p
    )
    if "omega1" in obj:
        o1 = TorusChar.from_json(obj["omega1"], fld)
    else:
        o1 = TorusChar(fld.kind, (1,) * (2 if fld.legendre == 1 else 1))
    if "omega2" in obj:
        o2 = TorusChar.from_json(obj["omega2"], fld)
    else:
        o2 = TorusChar(fld.kind, (1,) * (2 if fld.legendre == 1 else 1))
    return LocalSetup(fld, rep.contragredient(), None, InducedPair(o1, o2))


def _satake_to_json(s: LocalSetup) -> dict:
    orig = s.rep.contragredient()
    from .arith import coeff_to_json

    return {
        "alpha1": coeff_to_json(orig.alpha1),
        "alpha2": coeff_to_json(orig.alpha2),
        "omega1": s.pair.omega1.to_json(),
        "omega2": s.pair.omega2.to_json(),
    }


# ---------------------------------------------------------------------------
# Validation


def validate(config: GlobalConfig) -> List[str]:
    v: List[str] = []
    D, N, Np, ell = config.D, config.N, config.Nprime, config.ell
    fundamental = is_fundamental(D)
    if not fundamental:
        v.append(f"D={D} is not a positive fundamental discriminant")
    if not _squarefree(N):
        v.append(f"N={N} must be a square-free positive integer")
    if Np < 1 or N < 1 or N % Np:
        v.append("Nprime must divide N")
    if ell < 2 or ell % 2:
        v.append(f"ell={ell} must be a positive even integer")
    if v:
        return v

    primes_N = sorted(factorint(N))
    for p in primes_N:
        setup = config.locals.get(p)
        tag = f"p={p}"
        if setup is None:
            v.append(f"{tag}: missing local data for p | N")
            continue
        if setup.field.q != p:
            v.append(f"{tag}: local q={setup.field.q} does not match p")
        eps = legendre_of_prime(D, p)
        if setup.field.legendre != eps:
            v.append(f"{tag}: local legendre {setup.field.legendre} but (D/p) = {eps}")
        if not isinstance(setup.rep, SteinbergTwist):
            v.append(f"{tag}: p | N needs a Steinberg twist, got an unramified principal series")
            continue
        if setup.pair is None:
            v.append(f"{tag}: omega1 and omega2 are required for p | N")
            continue
        c1, c2 = setup.pair.omega1.conductor, setup.pair.omega2.conductor
        if Np % p == 0:
            if (c1, c2) != (1, 0):
                v.append(f"{tag}: p | Nprime needs c(omega1)=1, c(omega2)=0")
        else:
            if (c1, c2) != (0, 0):
                v.append(f"{tag}: p | N/Nprime needs unramified omega1, omega2")
            if eps == -1:
                v.append(f"{tag}: p | N/Nprime must be split or ramified in L (no model for inert p)")
        v.extend(f"{tag}: {msg}" for msg in setup.violations())

    for p in sorted(config.locals):
        if N % p:
            v.append(f"p={p}: local data given for a prime not dividing N")
    for p in sorted(config.satake):
        if N % p == 0:
            v.append(f"p={p}: satake data given for p | N (Steinberg data comes from locals)")
            continue
        v.extend(f"satake p={p}: {msg}" for msg in config.satake[p].violations())

    a = ArchParams(ell, D=D)
    v.extend(f"archimedean: {msg}" for msg in a.global_violations())
    return v


def _require_valid(config: GlobalConfig) -> None:
    bad = validate(config)
    if bad:
        raise ValidationError("invalid global configuration", bad)


# ---------------------------------------------------------------------------
# Y-table and product


@dataclass(frozen=True)
class YTable:
    entries: Dict[int, RatFunc]
    y_inf: Callable[[complex], complex]

    def __getitem__(self, p: int) -> RatFunc:
        return self.entries.get(p, RatFunc(1))


def local_results(config: GlobalConfig) -> Dict[int, LocalZetaResult]:
    """Local zeta results at each p | N, in ascending prime order."""
    _require_valid(config)
    return {p: zeta_for_setup(config.locals[p], T=2)[0] for p in sorted(factorint(config.N))}


def y_table(config: GlobalConfig) -> YTable:
    res = local_results(config)
    arch = ArchParams(config.ell, D=config.D)
    return YTable({p: r.y_factor for p, r in res.items()}, lambda s: zeta_infinity(arch, s))


def _eval_at(f: RatFunc, p: int, s: complex) -> complex:
    return complex(f(complex(p) ** (-complex(s))))


def _check_s(config: GlobalConfig, s: complex) -> None:
    if not ((config.ell == 2 and s == 0) or (2 * s + config.ell // 2).real > 1):
        raise ValidationError(f"s={s} outside Re(2s + ell/2) > 1")


def global_factors(config: GlobalConfig, s: complex) -> dict:
    """Numeric factors of the global product, keyed by kind and prime."""
    _require_valid(config)
    s = complex(s)
    _check_s(config, s)
    primes_N = sorted(factorint(config.N))
    missing = [
        p for p in primerange(2, config.prime_bound + 1) if config.N % p and p not in config.satake
    ]
    if missing:
        raise ValidationError(
            f"missing satake data for primes {missing} below prime_bound={config.prime_bound}",
            [f"missing satake data for p={p}" for p in missing],
        )
    l_ratio: Dict[int, complex] = {}
    for p in sorted(set(primerange(2, config.prime_bound + 1)) | set(primes_N)):
        if p in primes_N:
            r = zeta_for_setup(config.locals[p], T=2)[0]
        else:
            st = config.satake[p]
            r = zeta_unramified(st.field, st.rep, st.pair, st.omega)
        l_ratio[p] = _eval_at(r.l_num / r.l_den, p, s)
    yt = y_table(config)
    y_finite = {p: _eval_at(yt[p], p, s) for p in primes_N}
    return {"l_ratio": l_ratio, "y": y_finite, "y_inf": yt.y_inf(s)}


def global_product(config: GlobalConfig, s: complex) -> complex:
    """Truncated L-ratio times the finite Y_p times Y_infinity."""
    s = complex(s)
    if config.ell > 2 and s == 0:
        _require_valid(config)
        return 0j
    fac = global_factors(config, s)
    value = 1 + 0j
    for p in sorted(fac["l_ratio"]):
        value *= fac["l_ratio"][p]
    for p in sorted(fac["y"]):
        value *= fac["y"][p]
    return value * fac["y_inf"]


# ---------------------------------------------------------------------------
# Classical form


def global_z_at_zero(config: GlobalConfig) -> complex:
    """Z(0) with the supplied L(1/2, pi) / L(1, chi) in place of the Euler product."""
    if config.ell != 2:
        raise ValidationError("the classical formula needs ell = 2")
    if config.l_values is None:
        raise ValidationError("l_values are required")
    yt = y_table(config)
    value = config.l_values.L_half_pi / config.l_values.L_one_chi
    for p in sorted(yt.entries):
        value *= _eval_at(yt.entries[p], p, 0)
    return value * yt.y_inf(0)


def inner_product_value(config: GlobalConfig) -> complex:
    """Petersson product of the restricted Eisenstein series with the cusp form: Z(0) / vol."""
    return global_z_at_zero(config) / volume_gamma0(config.N)


def nonvanishing(l_values: LValues) -> bool:
    return l_values.L_half_pi != 0 and bool(l_values.L_half_bc_twist_nonzero)


# ---------------------------------------------------------------------------
# Fixtures


def build_config(
    D: int,
    N: int,
    Nprime: int,
    ell: int = 2,
    prime_bound: int = 20,
    split_b0w_zero: bool = False,
    l_values: Optional[LValues] = None,
) -> GlobalConfig:
    """A configuration with simple local data: chi = 1 at every p | N.

    At p | Nprime omega1 has conductor 1 and all uniformizer values are 1.
    At p | N/Nprime the unramified characters are chosen so that a model
    exists whenever one can (never at inert p; the result then fails
    :func:`validate`).  Good primes get Satake parameters (i, -i).
    """
    locals_: Dict[int, LocalSetup] = {}
    for p in sorted(factorint(N)) if N > 1 else []:
        fld = LocalField(p, legendre_of_prime(D, p))
        rep = SteinbergTwist(ONE)
        if Nprime % p == 0:
            o1 = TorusChar(fld.kind, _ones(fld), 1)
            o2 = TorusChar(fld.kind, _ones(fld))
        elif fld.kind == "ramified":
            o1, o2 = TorusChar.ramified(1), TorusChar.ramified(-1)
        elif fld.kind == "split" and not split_b0w_zero:
            o1 = o2 = TorusChar.split(1, -1)
        else:
            o1 = o2 = TorusChar(fld.kind, _ones(fld))
        locals_[p] = LocalSetup(fld, rep, None, InducedPair(o1, o2))
    satake = {}
    for p in primerange(2, prime_bound + 1):
        if N % p:
            satake[p] = _satake_setup(p, {"alpha1": {"b": 1}, "alpha2": {"b": -1}}, D)
    if l_values is None:
        l_values = LValues(1 + 0j, 1 + 0j, True)
    return GlobalConfig(D, N, Nprime, ell, locals_, satake, prime_bound, l_values)


def _ones(fld: LocalField) -> tuple:
    return (ONE,) * (2 if fld.legendre == 1 else 1)
