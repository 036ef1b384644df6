"""Seeded random local data for the oracle checks."""

from __future__ import annotations

import random
from typing import Optional

from .arith import ONE, I, CoeffElem
from .errors import ValidationError
from .local_data import (
    InducedPair,
    LocalField,
    LocalSetup,
    SteinbergTwist,
    TorusChar,
    UnramifiedPS,
    waldspurger_exists,
)

QS = (2, 3, 5, 7, 9)


def unit(rng: random.Random, q: int) -> CoeffElem:
    """A nonzero element of Q(i)(r), usually a root of unity."""
    pick = rng.randrange(8)
    if pick < 4:
        return I ** pick
    if pick < 6:
        return CoeffElem(rng.randint(1, 3), rng.randint(-2, 2))
    if pick == 6:
        return CoeffElem(1, 1, 1, 0, q=q)
    return CoeffElem(rng.randint(-2, 2), 0, rng.randint(1, 2), rng.randint(-1, 1), q=q)


def _n_values(fld: LocalField) -> int:
    return 2 if fld.legendre == 1 else 1


def random_char(rng: random.Random, fld: LocalField, conductor: int = 0) -> TorusChar:
    return TorusChar(fld.kind, tuple(unit(rng, fld.q) for _ in range(_n_values(fld))), conductor)


def _irreducible(rep: UnramifiedPS, q: int) -> bool:
    try:
        rep.check_irreducible(q)
    except (ValidationError, ValueError):
        return False
    return True


def spherical_case(rng: random.Random, q: int, legendre: int, conductor: int):
    """(field, unramified rep, omega) with omega restricting to the central character."""
    fld = LocalField(q, legendre)
    while True:
        omega = random_char(rng, fld, conductor)
        a1 = unit(rng, q)
        if fld.kind == "ramified" and conductor > 0:
            a2 = unit(rng, q)
        else:
            a2 = omega.at_base_uniformizer() / a1
        try:
            rep = UnramifiedPS(a1, a2)
        except (ValidationError, ValueError):
            continue
        if _irreducible(rep, q):
            return fld, rep, omega


def unramified_setup(rng: random.Random, q: int, legendre: int) -> LocalSetup:
    """Unramified principal series with unramified omega1, omega2 satisfying the central condition."""
    fld = LocalField(q, legendre)
    while True:
        o1, o2 = random_char(rng, fld), random_char(rng, fld)
        wpi = (o1.at_base_uniformizer() * o2.at_base_uniformizer()).inverse()
        a1 = unit(rng, q)
        try:
            rep = UnramifiedPS(a1, wpi / a1)
        except (ValidationError, ValueError):
            continue
        if _irreducible(rep, q):
            return LocalSetup(fld, rep, None, InducedPair(o1, o2))


def steinberg_setup(
    rng: random.Random, q: int, legendre: int, c1: int, branch: Optional[str] = None
) -> Optional[LocalSetup]:
    """Steinberg twist with omega1 of conductor c1 and omega2 unramified.

    ``branch`` forces an old-vector sub-case: "b0w_zero" (split, omega at
    (1, p) equal to chi) or "ramified_exists" (wL = -chi).  Returns None
    when no Waldspurger model exists for the drawn data.
    """
    fld = LocalField(q, legendre)
    chi = unit(rng, q)
    o1 = random_char(rng, fld, c1)
    o2 = random_char(rng, fld)
    target = (chi * chi).inverse()
    if branch == "b0w_zero":
        if legendre != 1 or c1 != 0:
            raise ValueError("b0w_zero needs split L and unramified omega1")
        a1, a2 = o1.values
        b2 = (a1 * chi).inverse()
        b1 = target / (a1 * a2 * b2)
        o2 = TorusChar("split", (b1, b2))
    elif branch == "ramified_exists":
        if legendre != 0 or c1 != 0:
            raise ValueError("ramified_exists needs ramified L and unramified omega1")
        b = (-chi * o1.values[0]).inverse()
        o2 = TorusChar("ramified", (b,))
    elif fld.kind == "ramified":
        # the base uniformizer value is the square of the ramified one
        if c1 == 0:
            sign = rng.choice((ONE, -ONE))
            o2 = TorusChar("ramified", (sign / (chi * o1.values[0]),))
    else:
        vals = list(o2.values)
        vals[0] = vals[0] * target / (o1.at_base_uniformizer() * o2.at_base_uniformizer())
        o2 = TorusChar(fld.kind, tuple(vals))
    pair = InducedPair(o1, o2)
    setup = LocalSetup(fld, SteinbergTwist(chi), None, pair)
    if setup.violations() or not waldspurger_exists(fld, setup.rep, setup.omega):
        return None
    return setup

