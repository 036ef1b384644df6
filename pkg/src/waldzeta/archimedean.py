"""Archimedean place: weight vectors in Waldspurger models of discrete series
of GL(2, R), their lowering-operator checks, and the local zeta integral.

Everything here is double precision.  Gamma quotients go through the
reciprocal gamma function so that 1/Gamma at a pole is an exact zero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import integrate, special

__all__ = [
    "ArchParams",
    "CartanCoords",
    "SplitCoords",
    "cartan_z",
    "cartan_coords",
    "weight_vector_nonsplit",
    "weight_vector_split",
    "nonsplit_profile",
    "split_profile",
    "lowering_residual_nonsplit",
    "lowering_residual_split",
    "lie_action_nonsplit",
    "lie_action_nonsplit_expected",
    "torus_angle_derivative",
    "arch_I",
    "arch_I_quadrature",
    "zeta_infinity",
]

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


class ArchDomainError(ValueError):
    """Argument outside the region where a formula or integral is defined."""


@dataclass(frozen=True)
class ArchParams:
    """Discrete series D_mu(ell) together with torus-character data.

    Non-split model: character gamma^mu e^{i m delta}, m = +-ell.
    Split model: exponents (mu1, mu2) and signs (eps1, eps2).
    Global application: mu = 0, ell1 + ell2 = ell, discriminant D.
    """

    ell: int
    mu: complex = 0.0
    m: Optional[int] = None
    mu1: complex = 0.0
    mu2: complex = 0.0
    eps1: int = 0
    eps2: int = 0
    ell1: Optional[int] = None
    ell2: Optional[int] = None
    D: int = 1

    def __post_init__(self):
        if not isinstance(self.ell, int) or self.ell < 1:
            raise ArchDomainError(f"ell must be a positive integer, got {self.ell!r}")
        if self.m is None:
            object.__setattr__(self, "m", self.ell)
        if self.ell1 is None and self.ell2 is None and self.ell % 2 == 0:
            object.__setattr__(self, "ell1", self.ell // 2)
            object.__setattr__(self, "ell2", self.ell // 2)
        elif self.ell1 is not None and self.ell2 is None:
            object.__setattr__(self, "ell2", self.ell - self.ell1)
        elif self.ell2 is not None and self.ell1 is None:
            object.__setattr__(self, "ell1", self.ell - self.ell2)
        if self.D < 1:
            raise ArchDomainError("D must be positive")

    def nonsplit_violations(self) -> list:
        if self.m not in (self.ell, -self.ell):
            return [f"non-split model needs m = +-ell, got m={self.m}"]
        return []

    def split_violations(self) -> list:
        out = []
        if self.eps1 not in (0, 1) or self.eps2 not in (0, 1):
            out.append("eps1, eps2 must be 0 or 1")
        elif (self.eps1 + self.eps2 - self.ell) % 2:
            out.append("eps1 + eps2 must be congruent to ell mod 2")
        if abs(complex(self.mu1) + complex(self.mu2) - complex(self.mu)) > 1e-12:
            out.append("mu1 + mu2 must equal mu")
        return out

    def global_violations(self) -> list:
        out = []
        if self.ell % 2:
            out.append("ell must be even")
        if self.ell1 is None or self.ell2 is None or self.ell1 < 1 or self.ell2 < 1:
            out.append("ell1, ell2 must be positive")
        elif self.ell1 + self.ell2 != self.ell:
            out.append("ell1 + ell2 must equal ell")
        return out


@dataclass(frozen=True)
class CartanCoords:
    """g = gamma r(delta) diag(sign*zeta, 1/zeta) r(theta), r(a) = [[cos a, sin a], [-sin a, cos a]]."""

    gamma: float
    delta: float
    zeta: float
    theta: float
    sign: int = 1

    def __post_init__(self):
        if self.gamma <= 0:
            raise ArchDomainError("gamma must be positive")
        if self.zeta < 1:
            raise ArchDomainError("zeta must be >= 1")
        if self.sign not in (1, -1):
            raise ArchDomainError("sign must be +1 or -1")
        object.__setattr__(self, "delta", math.remainder(self.delta, 2 * math.pi))
        object.__setattr__(self, "theta", math.remainder(self.theta, 2 * math.pi))

    def matrix(self) -> np.ndarray:
        return self.gamma * _rot(self.delta) @ np.diag([self.sign * self.zeta, 1 / self.zeta]) @ _rot(self.theta)


@dataclass(frozen=True)
class SplitCoords:
    """g = [[x, y], [y, x]] t0 [[1, zeta], [0, 1]] r(theta), t0 = [[1, 1], [1, -1]]."""

    x: float
    y: float
    zeta: float
    theta: float = 0.0

    def __post_init__(self):
        if self.x + self.y == 0 or self.x - self.y == 0:
            raise ArchDomainError("x + y and x - y must be nonzero")


def _rot(a: float) -> np.ndarray:
    c, s = math.cos(a), math.sin(a)
    return np.array([[c, s], [-s, c]])


# ---------------------------------------------------------------------------
# Cartan decomposition


def cartan_z(x: float, y: float) -> float:
    """z >= 1 with [[y, x], [0, 1/y]] in SO(2) diag(z, 1/z) SO(2)."""
    if y == 0:
        raise ArchDomainError("y must be nonzero")
    a = 1 + x * x * y * y + y ** 4
    disc = max(a * a - 4 * y ** 4, 0.0)
    z2 = (a + math.sqrt(disc)) / (2 * y * y)
    return math.sqrt(z2)


def cartan_coords(g) -> CartanCoords:
    """Cartan coordinates of an invertible 2x2 real matrix (zeta > 1 assumed generic)."""
    g = np.asarray(g, dtype=float)
    det = float(np.linalg.det(g))
    if det == 0:
        raise ArchDomainError("matrix must be invertible")
    sign = 1 if det > 0 else -1
    gamma = math.sqrt(abs(det))
    h = g / gamma
    if sign < 0:
        # r(d) diag(-z, 1/z) r(t) = r(d) diag(z, 1/z) r(-t) diag(-1, 1)
        h = h @ np.diag([-1.0, 1.0])
    U, S, Vt = np.linalg.svd(h)
    if np.linalg.det(U) < 0:
        U = U @ np.diag([1.0, -1.0])
        Vt = np.diag([1.0, -1.0]) @ Vt
    delta = math.atan2(U[0, 1], U[0, 0])
    theta = math.atan2(Vt[0, 1], Vt[0, 0])
    if sign < 0:
        theta = -theta
    return CartanCoords(gamma, delta, float(S[0]), theta, sign)


# ---------------------------------------------------------------------------
# Weight vectors


def nonsplit_profile(ell: int, zeta: float) -> float:
    return (zeta / (1 + zeta * zeta)) ** ell


def _nonsplit_profile_prime(ell: int, zeta: float) -> float:
    u = zeta / (1 + zeta * zeta)
    du = (1 - zeta * zeta) / (1 + zeta * zeta) ** 2
    return ell * u ** (ell - 1) * du


def weight_vector_nonsplit(c: CartanCoords, p: ArchParams) -> complex:
    bad = p.nonsplit_violations()
    if bad:
        raise ArchDomainError(bad[0])
    if (p.m == p.ell) != (c.sign == 1):
        return 0j
    scale = cmath.exp(complex(p.mu) * math.log(c.gamma))
    phase = cmath.exp(1j * p.ell * (c.delta + c.theta))
    return scale * phase * nonsplit_profile(p.ell, c.zeta)


def split_profile(p: ArchParams, zeta: float) -> complex:
    """(2i + 2 zeta)^{(mu1 - mu2)/2}, principal branch."""
    e = (complex(p.mu1) - complex(p.mu2)) / 2
    base = complex(2 * zeta, 2.0)
    if e.imag == 0 and e.real == int(e.real):
        return base ** int(e.real)
    return cmath.exp(e * cmath.log(base))


def _split_profile_prime(p: ArchParams, zeta: float) -> complex:
    e = (complex(p.mu1) - complex(p.mu2)) / 2
    if e == 0:
        return 0j
    base = complex(2 * zeta, 2.0)
    if e.imag == 0 and e.real == int(e.real):
        return 2 * e * base ** (int(e.real) - 1)
    return 2 * e * cmath.exp((e - 1) * cmath.log(base))


def _abs_pow(v: float, mu: complex) -> complex:
    return cmath.exp(complex(mu) * math.log(abs(v)))


def weight_vector_split(c: SplitCoords, p: ArchParams) -> complex:
    bad = p.split_violations()
    if bad:
        raise ArchDomainError(bad[0])
    u, v = c.x + c.y, c.x - c.y
    omega = _abs_pow(u, p.mu1) * _abs_pow(v, p.mu2)
    if u < 0 and p.eps1:
        omega = -omega
    if v < 0 and p.eps2:
        omega = -omega
    return omega * cmath.exp(1j * p.ell * c.theta) * split_profile(p, c.zeta)


# ---------------------------------------------------------------------------
# Lowering operator


def lowering_residual_nonsplit(p: ArchParams, zeta: float, control: bool = False) -> complex:
    """(1/2)(zeta f' - ell (1 - zeta^2)/(1 + zeta^2) f) for f the weight-vector profile.

    With ``control`` the profile is replaced by zeta * f, which is not
    annihilated; the residual is then zeta f / 2.
    """
    if zeta <= 1:
        raise ArchDomainError("zeta must exceed 1")
    ell = p.ell
    f = nonsplit_profile(ell, zeta)
    fp = _nonsplit_profile_prime(ell, zeta)
    if control:
        f, fp = zeta * f, f + zeta * fp
    return complex(0.5 * (zeta * fp - ell * (1 - zeta * zeta) / (1 + zeta * zeta) * f))


def lowering_residual_split(p: ArchParams, zeta: float, control: bool = False) -> complex:
    """(1/2)((mu1 - mu2) f - (2 zeta + 2i) f'); ``control`` uses e^zeta f instead."""
    f = split_profile(p, zeta)
    fp = _split_profile_prime(p, zeta)
    if control:
        ez = math.exp(zeta)
        f, fp = ez * f, ez * (f + fp)
    d = complex(p.mu1) - complex(p.mu2)
    return 0.5 * (d * f - complex(2 * zeta, 2.0) * fp)


# ---------------------------------------------------------------------------
# Lie algebra action by finite differences

_LIE = {
    "D": np.array([[1.0, 0.0], [0.0, -1.0]]),
    "E": np.array([[0.0, 1.0], [0.0, 0.0]]),
    "F": np.array([[0.0, 0.0], [1.0, 0.0]]),
}


def _expm2(X: np.ndarray, t: float) -> np.ndarray:
    # X is nilpotent (E, F) or diagonal (D)
    if X[0, 1] == 0 and X[1, 0] == 0:
        return np.diag(np.exp(t * np.diag(X)))
    return np.eye(2) + t * X


def _b0_matrix(g: np.ndarray, p: ArchParams) -> complex:
    return weight_vector_nonsplit(cartan_coords(g), p)


def lie_action_nonsplit(p: ArchParams, zeta: float, which: str, h: float = 1e-5) -> complex:
    """(X.B0)(diag(zeta, 1/zeta)) by a centered difference along exp(tX).

    ``which`` is D, E, F, or one of the combinations E+F and L.
    """
    if which == "E+F":
        return lie_action_nonsplit(p, zeta, "E", h) + lie_action_nonsplit(p, zeta, "F", h)
    if which == "L":
        parts = [lie_action_nonsplit(p, zeta, w, h) for w in "DEF"]
        return 0.5 * (parts[0] - 1j * parts[1] - 1j * parts[2])
    X = _LIE[which]
    a = np.diag([zeta, 1 / zeta])
    plus = _b0_matrix(a @ _expm2(X, h), p)
    minus = _b0_matrix(a @ _expm2(X, -h), p)
    return (plus - minus) / (2 * h)


def lie_action_nonsplit_expected(p: ArchParams, zeta: float, which: str) -> complex:
    """Closed-form (X.B0)(diag(zeta, 1/zeta)) for X in D, E, F, E+F, L.

    With r(a) = [[cos a, sin a], [-sin a, cos a]] the unipotent flow
    exp(tE) contributes i ell zeta^2/(1+zeta^2) f and exp(tF) contributes
    -i ell/(1+zeta^2) f.  L = (D - iE - iF)/2 only sees the sum.
    """
    ell = p.ell
    f = nonsplit_profile(ell, zeta)
    z2 = zeta * zeta
    d = complex(zeta * _nonsplit_profile_prime(ell, zeta))
    e = 1j * ell * z2 / (1 + z2) * f
    fl = -1j * ell / (1 + z2) * f
    table = {"D": d, "E": e, "F": fl, "E+F": e + fl, "L": 0.5 * (d - 1j * e - 1j * fl)}
    if which not in table:
        raise ValueError(f"unknown Lie algebra element {which!r}")
    return table[which]


def torus_angle_derivative(zeta: float, h: float = 1e-6) -> Tuple[float, float]:
    """(finite-difference delta'(0), closed form zeta^2 / (1 - zeta^4)) along exp(tE)."""
    a = np.diag([zeta, 1 / zeta])

    def delta_at(t):
        d = cartan_coords(a @ _expm2(_LIE["E"], t)).delta
        # the pair (delta, theta) is defined up to a simultaneous shift by pi
        return math.remainder(d, math.pi)

    fd = (delta_at(h) - delta_at(-h)) / (2 * h)
    return fd, zeta * zeta / (1 - zeta ** 4)


# ---------------------------------------------------------------------------
# The integral I(k, s) and Z_infinity


def _check_k(k) -> None:
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise ArchDomainError(f"k must be a positive integer, got {k!r}")


def arch_I(k: int, s: complex) -> complex:
    """Integral over R of (i + x)^k / (1 + x^2)^{k+s}."""
    _check_k(k)
    s = complex(s)
    if k == 1 and s == 0:
        return 1j * math.pi
    if (2 * s + k).real <= 1:
        raise ArchDomainError(f"I(k, s) diverges for Re(2s + k) <= 1 (k={k}, s={s})")
    val = (
        _I_POWERS[k % 4]
        * 2 ** (2 - 2 * s - k)
        * math.pi
        * special.gamma(2 * s + k - 1)
        * special.rgamma(s)
        * special.rgamma(k + s)
    )
    return complex(val)


def arch_I_quadrature(k: int, s: complex, tol: float = 1e-10) -> complex:
    """I(k, s) by adaptive quadrature after x = tan(u), folded onto [0, pi/2].

    The integrand becomes i^k 2 cos(k u) cos(u)^{k + 2s - 2}.  At (1, 0)
    this equals the symmetric principal value.
    """
    _check_k(k)
    s = complex(s)
    if (2 * s + k).real <= 1 and not (k == 1 and s == 0):
        raise ArchDomainError(f"quadrature diverges for Re(2s + k) <= 1 (k={k}, s={s})")
    expo = k + 2 * s - 2

    def integrand(u):
        c = math.cos(u)
        if c <= 0:
            return 0j
        return 2 * math.cos(k * u) * cmath.exp(expo * math.log(c))

    val, _ = integrate.quad(
        integrand, 0.0, math.pi / 2, complex_func=True, epsabs=tol, epsrel=tol, limit=400
    )
    return _I_POWERS[k % 4] * complex(val)


def zeta_infinity(p: ArchParams, s: complex) -> complex:
    """Archimedean zeta integral of the weight (ell1, ell2) section against B_D."""
    bad = p.global_violations()
    if bad:
        raise ArchDomainError(bad[0])
    s = complex(s)
    ell, D = p.ell, p.D
    k = ell // 2
    if ell == 2 and s == 0:
        return 1j * math.pi / math.sqrt(D)
    if s == 0:
        return 0j
    if (2 * s + k).real <= 1:
        raise ArchDomainError(f"Z_infinity needs Re(2s + ell/2) > 1 (ell={ell}, s={s})")
    val = (
        2 ** (2 - 2 * s - p.ell2)
        * cmath.exp((-ell / 4 - s) * math.log(D))
        * _I_POWERS[k % 4]
        * math.pi
        * special.gamma(2 * s + k - 1)
        * special.rgamma(s)
        * special.rgamma(k + s)
    )
    return complex(val)
