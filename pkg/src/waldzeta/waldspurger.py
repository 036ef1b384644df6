"""Values of the distinguished vector in a local Waldspurger model.

Unramified principal series: the values A_m = B0(diag(p^m, 1)) are the
coefficients of an explicit rational generating function, with a
three-term Hecke recurrence kept as an independent check.

Steinberg twists: values on the Iwahori coset representatives, normalized
so that B0(w) = 1, or B0(u1) = -B0(u2) = 1 when B0(w) vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List

from .arith import ONE, ZERO, CoeffElem, Poly, RatFunc, series_expand
from .errors import ValidationError
from .local_data import (
    CosetLabel,
    LocalField,
    SteinbergTwist,
    TorusChar,
    UnramifiedPS,
    central_compat_check,
    require_model,
)

__all__ = [
    "kappa",
    "SphericalSeries",
    "spherical_generating_series",
    "spherical_values_recurrence",
    "WaldspurgerTable",
    "steinberg_table",
]


def _check_unramified(fld: LocalField, rep: UnramifiedPS, omega: TorusChar) -> None:
    if not isinstance(rep, UnramifiedPS):
        raise ValidationError("expected an unramified principal series")
    if not omega.matches(fld):
        raise ValidationError("omega kind does not match legendre")
    if not central_compat_check(rep, omega, fld):
        raise ValidationError("omega does not restrict to the central character")
    rep.check_irreducible(fld.q)


def kappa(fld: LocalField, rep: UnramifiedPS, omega: TorusChar) -> CoeffElem:
    """Linear numerator coefficient of the generating function."""
    _check_unramified(fld, rep, omega)
    if omega.conductor > 0:
        return ZERO
    q = fld.q
    lam = rep.hecke_eigenvalue(q)
    if fld.legendre == -1:
        return lam / (q + 1)
    if fld.legendre == 0:
        return omega.values[0]
    w1, w2 = omega.values
    return (-lam + q * (w1 + w2)) / (q - 1)


@dataclass(frozen=True)
class SphericalSeries:
    """R(x) = sum_m A_m x^m, normalized so A_c = 1."""

    gen: RatFunc
    conductor: int

    def coefficients(self, M: int) -> List[CoeffElem]:
        return list(series_expand(self.gen, M).coeffs)


def spherical_generating_series(fld: LocalField, rep: UnramifiedPS, omega: TorusChar) -> SphericalSeries:
    k = kappa(fld, rep, omega)
    q, c = fld.q, omega.conductor
    num = Poly([q, -k]) * Poly.monomial(1, c)
    den = Poly([q, -rep.hecke_eigenvalue(q), rep.central_value])
    return SphericalSeries(RatFunc(num, den), c)


def spherical_values_recurrence(
    fld: LocalField, rep: UnramifiedPS, omega: TorusChar, M: int
) -> List[CoeffElem]:
    """A_0..A_M from the Hecke recurrence and the initial-value lemmas."""
    _check_unramified(fld, rep, omega)
    if M < 0:
        raise ValueError("M must be >= 0")
    q, c = fld.q, omega.conductor
    lam = rep.hecke_eigenvalue(q)
    wpi = rep.central_value
    A = [ZERO] * (max(M, c) + 2)
    A[c] = ONE
    if c == 0:
        if fld.legendre == -1:
            A[1] = lam / (q + 1)
        elif fld.legendre == 0:
            A[1] = (lam - omega.values[0]) / q
        else:
            A[1] = (lam - omega.values[0] - omega.values[1]) / (q - 1)
        start = 1
    else:
        start = c
    for m in range(start, len(A) - 1):
        A[m + 1] = (lam * A[m] - wpi * A[m - 1]) / q
    return A[: M + 1]


@dataclass(frozen=True)
class WaldspurgerTable:
    """Values on coset representatives; ``normalization`` is "w" or "u"."""

    entries: Dict[CosetLabel, CoeffElem]
    normalization: str
    max_m: int

    def __getitem__(self, label: CosetLabel) -> CoeffElem:
        return self.entries[label]

    def get(self, kind: str, m: int = 0) -> CoeffElem:
        return self.entries[CosetLabel(kind, m)]

    @property
    def b0_w(self) -> CoeffElem:
        return self.entries[CosetLabel("w")]

    def items_sorted(self):
        order = {"w": 0, "u0": 1, "u1": 2, "u2": 3, "diag": 4, "diagw": 5}
        return sorted(self.entries.items(), key=lambda kv: (order[kv[0].kind], kv[0].m))


def steinberg_table(fld: LocalField, rep: SteinbergTwist, omega: TorusChar, M: int) -> WaldspurgerTable:
    if not isinstance(rep, SteinbergTwist):
        raise ValidationError("expected a Steinberg twist")
    if M < 1:
        raise ValueError("M must be >= 1")
    require_model(fld, rep, omega)
    q, c, chi = fld.q, omega.conductor, rep.chi

    entries: Dict[CosetLabel, CoeffElem] = {}
    b0w = ONE
    normalization = "w"
    if fld.legendre == 1:
        w2 = omega.values[1]
        if c > 0:
            u1 = u2 = ZERO
        elif w2 == chi:
            b0w, u1, u2 = ZERO, ONE, -ONE
            normalization = "u"
        else:
            u1 = (q - 1) / (chi / w2 - 1)
            u2 = (q - 1) / (w2 / chi - 1)
        entries[CosetLabel("u1")] = u1
        entries[CosetLabel("u2")] = u2
    elif fld.legendre == 0:
        entries[CosetLabel("u0")] = -q * b0w if c == 0 else ZERO
    entries[CosetLabel("w")] = b0w

    qinv = CoeffElem(1) / q
    for m in range(1, M + 1):
        t = chi ** m * qinv ** m
        entries[CosetLabel("diagw", m)] = t * b0w
        entries[CosetLabel("diag", m)] = -q * t * b0w if m >= c else ZERO
    return WaldspurgerTable(entries, normalization, M)
