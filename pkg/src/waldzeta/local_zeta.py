"""Local non-archimedean zeta integrals as exact rational functions of X = q^{-s}.

Each closed form comes with a direct coset-sum evaluation returning a
truncated power series; the two must agree coefficient by coefficient.

L-factors are built in an auxiliary variable T = q^{-s'} and moved to the
argument s' = 2s + 1/2 or 2s + 1 with :func:`at_argument`:

    2s + 1/2 :  T -> X^2 / r
    2s + 1   :  T -> X^2 / q
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import (
    DEFAULT_ORDER,
    ONE,
    ZERO,
    CoeffElem,
    Poly,
    PowerSeries,
    RatFunc,
    root,
    series_expand,
)
from .errors import ModelNonexistence, ScopeError, ValidationError
from .local_data import (
    InducedPair,
    LocalField,
    LocalSetup,
    RepData,
    SteinbergTwist,
    TorusChar,
    UnramifiedPS,
    central_compat_check,
    require_model,
)
from .waldspurger import spherical_generating_series, steinberg_table

__all__ = [
    "VolumeTable",
    "volumes",
    "ARGUMENTS",
    "at_argument",
    "hecke_l_factor",
    "pi_l_factor",
    "LocalZetaResult",
    "zeta_unramified",
    "zeta_unramified_direct",
    "zeta_steinberg_newform",
    "zeta_steinberg_newform_direct",
    "k_integral_old_vector",
    "k_integral_old_vector_direct",
    "zeta_steinberg_oldvector",
    "zeta_steinberg_oldvector_direct",
    "unramified_section_zero_case",
    "UNRAMIFIED_SECTION_Z",
    "zeta_for_setup",
]


# ---------------------------------------------------------------------------
# Volumes


@dataclass(frozen=True)
class VolumeTable:
    """Volumes of T(F)-orbits of cosets at level m; absent entries are None."""

    m: int
    V: Fraction
    V_wI: Fraction
    V_I: Optional[Fraction] = None
    V_u0I: Optional[Fraction] = None
    V_uiI: Optional[Fraction] = None


def volumes(fld: LocalField, m: int) -> VolumeTable:
    if m < 0:
        raise ValidationError("volume index must be >= 0")
    q, eps = fld.q, fld.legendre
    base = 1 - Fraction(eps, q)
    V = Fraction(1) if m == 0 else base * q ** m
    V_wI = Fraction(q ** (m + 1)) * base / (q + 1)
    V_I = Fraction(q ** m) * base / (q + 1) if m >= 1 else None
    V_u0I = Fraction(1, q + 1) if (m == 0 and eps == 0) else None
    V_uiI = Fraction(1, q + 1) if (m == 0 and eps == 1) else None
    return VolumeTable(m, V, V_wI, V_I, V_u0I, V_uiI)


# ---------------------------------------------------------------------------
# L-factors


ARGUMENTS = ("2s+1/2", "2s+1")


def at_argument(f: RatFunc, argument: str, q: int) -> RatFunc:
    """Substitute T = q^{-argument} in terms of X = q^{-s}."""
    if argument == "2s+1/2":
        return f.subs_monomial(root(q).inverse(), 2)
    if argument == "2s+1":
        return f.subs_monomial(CoeffElem(Fraction(1, q)), 2)
    raise ValueError(f"unknown argument {argument!r}; expected one of {ARGUMENTS}")


def _euler(*roots) -> RatFunc:
    den = Poly([1])
    for a in roots:
        den = den * Poly([1, -a])
    return RatFunc(Poly([1]), den)


def hecke_l_factor(fld: LocalField, ratio: TorusChar) -> RatFunc:
    """L(s', ratio) in T = q^{-s'}; 1 when ratio is ramified."""
    if not ratio.matches(fld):
        raise ValidationError("ratio character kind does not match legendre")
    if ratio.conductor > 0:
        return RatFunc(1)
    if fld.legendre == -1:
        return RatFunc(Poly([1]), Poly([1, 0, -ratio.values[0]]))
    return _euler(*ratio.values)


def pi_l_factor(rep: RepData, twist, q: Optional[int] = None) -> RatFunc:
    """L(s', rep x twist) in T = q^{-s'} for an unramified twist value.

    The Steinberg factor is (1 - chi twist T / r)^{-1}; its ``q`` is taken
    from the argument or from whichever value carries one.
    """
    twist = CoeffElem.coerce(twist)
    if not twist:
        raise ValidationError("twist value must be nonzero")
    if isinstance(rep, UnramifiedPS):
        return _euler(rep.alpha1 * twist, rep.alpha2 * twist)
    if q is None:
        q = rep.chi.q if rep.chi.q is not None else twist.q
    if q is None:
        raise ValueError("the Steinberg L-factor needs q")
    return _euler(rep.chi * twist / root(q))


def _ratio_char(pair: InducedPair) -> TorusChar:
    return TorusChar(pair.kind, pair.ratio_values(), pair.omega1.conductor)


# ---------------------------------------------------------------------------
# Results


@dataclass(frozen=True)
class LocalZetaResult:
    """closed_form = y_factor * l_num / l_den, all in X = q^{-s}."""

    closed_form: RatFunc
    l_num: RatFunc
    l_den: RatFunc
    y_factor: RatFunc
    case: str

    def check(self) -> bool:
        return self.closed_form * self.l_den / self.l_num == self.y_factor


def _l_pair(fld: LocalField, rep: RepData, pair: InducedPair):
    beta = pair.restriction_to_base()
    l_num = at_argument(pi_l_factor(rep, beta, fld.q), "2s+1/2", fld.q)
    l_den = at_argument(hecke_l_factor(fld, _ratio_char(pair)), "2s+1", fld.q)
    return l_num, l_den


def _check_pair(fld: LocalField, rep: RepData, pair: InducedPair, omega: TorusChar) -> None:
    if pair.kind != fld.kind or not omega.matches(fld):
        raise ValidationError("character kinds do not match legendre")
    if not pair.central_ok(rep):
        raise ValidationError("omega1*omega2 on F^x must be the inverse central character")
    derived = pair.torus_character()
    if derived.values != omega.values or derived.conductor != omega.conductor:
        raise ValidationError("omega is not the character induced by (omega1, omega2)")


# ---------------------------------------------------------------------------
# Unramified principal series, spherical section


def _unramified_scope(fld, rep, pair, omega):
    if not isinstance(rep, UnramifiedPS):
        raise ScopeError("zeta_unramified needs an unramified principal series")
    if pair.omega1.conductor or pair.omega2.conductor:
        raise ScopeError("zeta_unramified needs unramified omega1 and omega2")
    _check_pair(fld, rep, pair, omega)
    if not central_compat_check(rep, omega, fld):
        raise ValidationError("omega does not restrict to the central character")


def zeta_unramified(fld: LocalField, rep: UnramifiedPS, pair: InducedPair, omega: TorusChar) -> LocalZetaResult:
    _unramified_scope(fld, rep, pair, omega)
    l_num, l_den = _l_pair(fld, rep, pair)
    return LocalZetaResult(l_num / l_den, l_num, l_den, RatFunc(1), "unramified")


def zeta_unramified_direct(
    fld: LocalField, rep: UnramifiedPS, pair: InducedPair, omega: TorusChar, T: int = DEFAULT_ORDER
) -> PowerSeries:
    """(1 - eps/q) R(beta X^2) + eps/q, from the spherical generating function."""
    _unramified_scope(fld, rep, pair, omega)
    q, eps = fld.q, fld.legendre
    R = spherical_generating_series(fld, rep, omega).gen
    g = series_expand(R, T // 2).subs_monomial(pair.restriction_to_base(), 2, T)
    return g * (1 - Fraction(eps, q)) + Fraction(eps, q)


# ---------------------------------------------------------------------------
# Steinberg, ramified omega1 (new vector section)


def _newform_scope(fld, rep, pair, omega):
    if not isinstance(rep, SteinbergTwist):
        raise ScopeError("the Steinberg integrals need a Steinberg twist")
    if pair.omega1.conductor != 1 or pair.omega2.conductor != 0:
        raise ScopeError("the new-vector integral needs c(omega1) = 1, c(omega2) = 0")
    _check_pair(fld, rep, pair, omega)
    require_model(fld, rep, omega)


def zeta_steinberg_newform(fld: LocalField, rep: SteinbergTwist, pair: InducedPair, omega: TorusChar) -> LocalZetaResult:
    _newform_scope(fld, rep, pair, omega)
    q, eps = fld.q, fld.legendre
    pref = RatFunc(CoeffElem(Fraction(q - eps, q + 1)))
    l_num, l_den = _l_pair(fld, rep, pair)
    return LocalZetaResult(pref * l_num / l_den, l_num, l_den, pref * l_den, "newform")


def zeta_steinberg_newform_direct(
    fld: LocalField, rep: SteinbergTwist, pair: InducedPair, omega: TorusChar, T: int = DEFAULT_ORDER
) -> PowerSeries:
    """Sum over m of V_{wI,m} * section * B0(diag(p^m,1) w)."""
    _newform_scope(fld, rep, pair, omega)
    q = fld.q
    M = T // 2
    table = steinberg_table(fld, rep, omega, max(M, 1))
    beta = pair.restriction_to_base()
    out = [ZERO] * (T + 1)
    step = beta / q
    sec = ONE
    for m in range(M + 1):
        b0 = table.b0_w if m == 0 else table.get("diagw", m)
        out[2 * m] = volumes(fld, m).V_wI * sec * b0
        sec = sec * step
    return PowerSeries(out, T)


# ---------------------------------------------------------------------------
# Steinberg, unramified omega1, omega2 (translated old vector section)


def _oldvector_scope(fld, rep, pair, omega):
    if not isinstance(rep, SteinbergTwist):
        raise ScopeError("the Steinberg integrals need a Steinberg twist")
    if pair.omega1.conductor or pair.omega2.conductor:
        raise ScopeError("the old-vector integral needs unramified omega1 and omega2")
    if fld.legendre == -1:
        raise ModelNonexistence("no Waldspurger model for a Steinberg twist with unramified omega on inert L")
    _check_pair(fld, rep, pair, omega)
    require_model(fld, rep, omega)


def _old_case(fld: LocalField, rep: SteinbergTwist, omega: TorusChar) -> str:
    if fld.legendre == 0:
        return "ramified"
    return "split_b0w_0" if omega.values[1] == rep.chi else "split_b0w_1"


def _old_case_factor(fld, rep, pair, omega, case) -> CoeffElem:
    q = fld.q
    a_inv = pair.omega1.values[0].inverse()
    if case == "ramified":
        return q * a_inv
    if case == "split_b0w_0":
        return a_inv
    return (q - 1) * a_inv / (1 - rep.chi.inverse() * omega.values[1])


def _q_pow_s_half(q: int) -> RatFunc:
    """q^{s+1/2} = r X^{-1}."""
    return RatFunc(Poly([root(q)]), Poly([0, 1]))


def k_integral_old_vector(fld: LocalField, rep: SteinbergTwist, pair: InducedPair, omega: TorusChar) -> RatFunc:
    """Contribution of the maximal compact coset to the old-vector integral."""
    _oldvector_scope(fld, rep, pair, omega)
    q = fld.q
    case = _old_case(fld, rep, omega)
    v1 = pair.ratio_values()[0]
    tail = RatFunc(Poly([1, 0, -v1 / q]))
    pref = RatFunc(-_old_case_factor(fld, rep, pair, omega, case) / (q + 1))
    return pref * _q_pow_s_half(q) * tail


def zeta_steinberg_oldvector(fld: LocalField, rep: SteinbergTwist, pair: InducedPair, omega: TorusChar) -> LocalZetaResult:
    _oldvector_scope(fld, rep, pair, omega)
    q = fld.q
    case = _old_case(fld, rep, omega)
    y = RatFunc(-_old_case_factor(fld, rep, pair, omega, case) / (q + 1)) * _q_pow_s_half(q)
    l_num, l_den = _l_pair(fld, rep, pair)
    return LocalZetaResult(y * l_num / l_den, l_num, l_den, y, case)


def _oldvector_sections(fld, pair):
    """Section values times X, as (a-type coefficient, b-type coefficient).

    a-type cosets carry Omega1(p_L)^{-1} q^{s+1/2}, b-type cosets carry
    Omega2(p_L)^{-1} q^{-s-1/2}; after multiplying by X these become the
    constants a^{-1} r and b^{-1} X^2 / r.
    """
    r = root(fld.q)
    a_inv = pair.omega1.values[0].inverse()
    b_inv = pair.omega2.values[0].inverse()
    return a_inv * r, b_inv / r


def k_integral_old_vector_direct(
    fld: LocalField, rep: SteinbergTwist, pair: InducedPair, omega: TorusChar, T: int = DEFAULT_ORDER
) -> PowerSeries:
    """X times the compact-coset integral, summed over Iwahori cosets.

    w and (split) u1 are b-type; u0 (ramified) and u2 (split) are a-type.
    """
    _oldvector_scope(fld, rep, pair, omega)
    table = steinberg_table(fld, rep, omega, 1)
    vol = volumes(fld, 0)
    a_c, b_c = _oldvector_sections(fld, pair)
    const = ZERO
    x2 = vol.V_wI * table.b0_w * b_c
    if fld.legendre == 0:
        const = const + vol.V_u0I * table.get("u0") * a_c
    else:
        x2 = x2 + vol.V_uiI * table.get("u1") * b_c
        const = const + vol.V_uiI * table.get("u2") * a_c
    return PowerSeries([const, ZERO, x2], T)


def zeta_steinberg_oldvector_direct(
    fld: LocalField, rep: SteinbergTwist, pair: InducedPair, omega: TorusChar, T: int = DEFAULT_ORDER
) -> PowerSeries:
    """X * Z(s) as a power series, summed coset by coset."""
    _oldvector_scope(fld, rep, pair, omega)
    q = fld.q
    M = T // 2
    table = steinberg_table(fld, rep, omega, max(M, 1))
    a_c, b_c = _oldvector_sections(fld, pair)
    beta = pair.restriction_to_base()
    out = list(k_integral_old_vector_direct(fld, rep, pair, omega, T).coeffs)
    step = beta / q
    sec = step
    for m in range(1, M + 1):
        vol = volumes(fld, m)
        i_piece = vol.V_I * table.get("diag", m) * a_c * sec
        out[2 * m] = out[2 * m] + i_piece
        if 2 * m + 2 <= T:
            w_piece = vol.V_wI * table.get("diagw", m) * b_c * sec
            out[2 * m + 2] = out[2 * m + 2] + w_piece
        sec = sec * step
    return PowerSeries(out, T)


# ---------------------------------------------------------------------------
# Spherical section against a Steinberg twist


UNRAMIFIED_SECTION_Z = RatFunc(0)


def unramified_section_zero_case() -> RatFunc:
    """The spherical section pairs to zero with any Steinberg twist.

    The K-integral would produce a spherical vector in a Steinberg
    representation, so Z(s) vanishes identically.  No y-factor is defined.
    """
    return UNRAMIFIED_SECTION_Z


# ---------------------------------------------------------------------------
# Dispatcher


def zeta_for_setup(setup: LocalSetup, T: int = DEFAULT_ORDER):
    """Pick the integral matching ``setup``; returns (result, direct, series_of).

    ``series_of`` is the closed form's expansion shifted the same way as
    the direct series (times X for the old-vector case).
    """
    if setup.pair is None:
        raise ValidationError("local zeta integrals need omega1 and omega2")
    fld, rep, pair, omega = setup.field, setup.rep, setup.pair, setup.omega
    if isinstance(rep, UnramifiedPS):
        res = zeta_unramified(fld, rep, pair, omega)
        direct = zeta_unramified_direct(fld, rep, pair, omega, T)
        return res, direct, series_expand(res.closed_form, T)
    if pair.omega1.conductor == 1:
        res = zeta_steinberg_newform(fld, rep, pair, omega)
        direct = zeta_steinberg_newform_direct(fld, rep, pair, omega, T)
        return res, direct, series_expand(res.closed_form, T)
    res = zeta_steinberg_oldvector(fld, rep, pair, omega)
    direct = zeta_steinberg_oldvector_direct(fld, rep, pair, omega, T)
    return res, direct, series_expand(res.closed_form.shift(1), T)
