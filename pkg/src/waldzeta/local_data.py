"""Parameter bundles for one non-archimedean place.

A place is described by its residue cardinality ``q`` and the splitting
type of the quadratic algebra L (``legendre`` = -1 inert, 0 ramified,
+1 split).  Characters are recorded only through their conductor
exponent and their values at uniformizers; nothing downstream needs more.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple, Union

from sympy import factorint

from .arith import ONE, CoeffElem, coeff_from_json, coeff_to_json, root
from .errors import ModelNonexistence, ValidationError

__all__ = [
    "LocalField",
    "UnramifiedPS",
    "SteinbergTwist",
    "RepData",
    "TorusChar",
    "InducedPair",
    "CosetLabel",
    "LocalSetup",
    "KIND_OF_LEGENDRE",
    "waldspurger_exists",
    "central_compat_check",
    "require_model",
]

KIND_OF_LEGENDRE = {-1: "inert", 0: "ramified", 1: "split"}
_VALUE_KEYS = {"inert": ("w",), "ramified": ("wL",), "split": ("w1", "w2")}


def _is_prime_power(q: int) -> bool:
    return q >= 2 and len(factorint(q)) == 1


@dataclass(frozen=True)
class LocalField:
    q: int
    legendre: int

    def __post_init__(self):
        if isinstance(self.q, bool) or not isinstance(self.q, int) or not _is_prime_power(self.q):
            raise ValidationError(f"q must be a prime power >= 2, got {self.q!r}")
        if self.legendre not in (-1, 0, 1):
            raise ValidationError(f"legendre must be -1, 0 or 1, got {self.legendre!r}")

    @property
    def kind(self) -> str:
        return KIND_OF_LEGENDRE[self.legendre]

    @property
    def r(self) -> CoeffElem:
        return root(self.q)


@dataclass(frozen=True)
class UnramifiedPS:
    """Unramified principal series with Satake values alpha1, alpha2."""

    alpha1: CoeffElem
    alpha2: CoeffElem

    def __post_init__(self):
        a1, a2 = CoeffElem.coerce(self.alpha1), CoeffElem.coerce(self.alpha2)
        object.__setattr__(self, "alpha1", a1)
        object.__setattr__(self, "alpha2", a2)
        if not a1 or not a2:
            raise ValidationError("Satake values must be nonzero")

    def check_irreducible(self, q: int) -> None:
        ratio = self.alpha1 / self.alpha2
        if ratio == q or ratio == CoeffElem(1) / q:
            raise ValidationError(
                "alpha1/alpha2 must not equal q or 1/q (reducible principal series)"
            )

    @property
    def central_value(self) -> CoeffElem:
        return self.alpha1 * self.alpha2

    def hecke_eigenvalue(self, q: int) -> CoeffElem:
        return root(q) * (self.alpha1 + self.alpha2)

    def contragredient(self) -> "UnramifiedPS":
        return UnramifiedPS(self.alpha1.inverse(), self.alpha2.inverse())


@dataclass(frozen=True)
class SteinbergTwist:
    """Twist of the Steinberg representation by an unramified character chi."""

    chi: CoeffElem

    def __post_init__(self):
        c = CoeffElem.coerce(self.chi)
        object.__setattr__(self, "chi", c)
        if not c:
            raise ValidationError("chi must be nonzero")

    @property
    def central_value(self) -> CoeffElem:
        return self.chi * self.chi

    def contragredient(self) -> "SteinbergTwist":
        return SteinbergTwist(self.chi.inverse())


RepData = Union[UnramifiedPS, SteinbergTwist]


@dataclass(frozen=True)
class TorusChar:
    """Character of L^x given by conductor exponent and uniformizer values.

    ``values`` is (w,) for inert L, (wL,) for ramified L and (w1, w2) =
    (value at (p,1), value at (1,p)) for split L.
    """

    kind: str
    values: Tuple[CoeffElem, ...]
    conductor: int = 0

    def __post_init__(self):
        if self.kind not in _VALUE_KEYS:
            raise ValidationError(f"unknown torus kind {self.kind!r}")
        vals = tuple(CoeffElem.coerce(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(_VALUE_KEYS[self.kind]):
            raise ValidationError(
                f"{self.kind} character needs {len(_VALUE_KEYS[self.kind])} value(s), got {len(vals)}"
            )
        if any(not v for v in vals):
            raise ValidationError("character values must be nonzero")
        if isinstance(self.conductor, bool) or not isinstance(self.conductor, int) or self.conductor < 0:
            raise ValidationError(f"conductor must be a non-negative integer, got {self.conductor!r}")

    @classmethod
    def inert(cls, w, conductor: int = 0) -> "TorusChar":
        return cls("inert", (w,), conductor)

    @classmethod
    def ramified(cls, wL, conductor: int = 0) -> "TorusChar":
        return cls("ramified", (wL,), conductor)

    @classmethod
    def split(cls, w1, w2, conductor: int = 0) -> "TorusChar":
        return cls("split", (w1, w2), conductor)

    def matches(self, fld: LocalField) -> bool:
        return self.kind == fld.kind

    def at_base_uniformizer(self) -> CoeffElem:
        """Value at the uniformizer of F viewed inside L.

        Ramified: p = (p_L)^2 times a unit, and the unit is ignored
        (exact when the conductor is 0).
        """
        if self.kind == "inert":
            return self.values[0]
        if self.kind == "ramified":
            return self.values[0] * self.values[0]
        return self.values[0] * self.values[1]

    def inverse(self) -> "TorusChar":
        return TorusChar(self.kind, tuple(v.inverse() for v in self.values), self.conductor)

    def to_json(self) -> dict:
        out = {"conductor": self.conductor}
        for k, v in zip(_VALUE_KEYS[self.kind], self.values):
            out[k] = coeff_to_json(v)
        return out

    @classmethod
    def from_json(cls, obj, fld: LocalField) -> "TorusChar":
        if not isinstance(obj, dict):
            raise ValidationError("character must be a JSON object")
        keys = _VALUE_KEYS[fld.kind]
        allowed = set(keys) | {"conductor"}
        extra = set(obj) - allowed
        if extra:
            raise ValidationError(
                f"{fld.kind} character accepts keys {sorted(allowed)}, got extra {sorted(extra)}"
            )
        missing = [k for k in keys if k not in obj]
        if missing:
            raise ValidationError(f"{fld.kind} character is missing {missing}")
        try:
            vals = tuple(coeff_from_json(obj[k], fld.q) for k in keys)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise ValidationError(f"bad character value: {exc}") from None
        return cls(fld.kind, vals, obj.get("conductor", 0))


def _rep_central(rep: RepData) -> CoeffElem:
    return rep.central_value


def central_compat_check(rep: RepData, omega: TorusChar, fld: LocalField) -> bool:
    """Does omega restrict to the central character of rep on F^x?

    Only uniformizer values are compared.  For ramified L with c >= 1 the
    restriction also involves a unit value that is not recorded, so the
    check passes vacuously.
    """
    if not omega.matches(fld):
        return False
    wpi = _rep_central(rep)
    if omega.kind == "ramified" and omega.conductor > 0:
        return True
    return omega.at_base_uniformizer() == wpi


def waldspurger_exists(fld: LocalField, rep: RepData, omega: TorusChar) -> bool:
    """Whether the pair (rep, omega) admits a Waldspurger model at this place."""
    if not omega.matches(fld):
        raise ValidationError(
            f"character kind {omega.kind!r} does not match legendre {fld.legendre}"
        )
    if isinstance(rep, UnramifiedPS):
        return True
    chi = rep.chi
    if fld.legendre == 1:
        return True
    if omega.conductor >= 1:
        return True
    if fld.legendre == -1:
        # omega = chi o Norm on unramified L means omega(p) = chi(p)^2
        return omega.values[0] != chi * chi
    return omega.values[0] == -chi


def require_model(fld: LocalField, rep: RepData, omega: TorusChar) -> None:
    if not central_compat_check(rep, omega, fld):
        raise ValidationError("character does not restrict to the central character")
    if not waldspurger_exists(fld, rep, omega):
        raise ModelNonexistence("no Waldspurger model for this representation and character")


@dataclass(frozen=True)
class InducedPair:
    """Characters (Omega1, Omega2) of L^x inducing the Eisenstein section."""

    omega1: TorusChar
    omega2: TorusChar

    def __post_init__(self):
        if self.omega1.kind != self.omega2.kind:
            raise ValidationError("omega1 and omega2 must live on the same torus")
        if self.omega1.conductor not in (0, 1):
            raise ValidationError("omega1 must have conductor 0 or 1")
        if self.omega2.conductor != 0:
            raise ValidationError("omega2 must be unramified")

    @property
    def kind(self) -> str:
        return self.omega1.kind

    def torus_character(self) -> TorusChar:
        """The character z -> Omega1(conj z)^-1 Omega2(z)^-1 of the model."""
        a, b = self.omega1.values, self.omega2.values
        if self.kind == "inert":
            vals = ((a[0] * b[0]).inverse(),)
        elif self.kind == "ramified":
            vals = ((a[0] * b[0]).inverse(),)
        else:
            vals = ((a[1] * b[0]).inverse(), (a[0] * b[1]).inverse())
        return TorusChar(self.kind, vals, self.omega1.conductor)

    def ratio_values(self) -> Tuple[CoeffElem, ...]:
        """Uniformizer values of Omega1 / Omega2."""
        return tuple(x / y for x, y in zip(self.omega1.values, self.omega2.values))

    def restriction_to_base(self) -> CoeffElem:
        """Omega1 at the uniformizer of F."""
        return self.omega1.at_base_uniformizer()

    def central_ok(self, rep: RepData) -> bool:
        """Omega1 Omega2 restricted to F^x is the inverse central character."""
        prod = self.omega1.at_base_uniformizer() * self.omega2.at_base_uniformizer()
        if self.kind == "ramified" and self.omega1.conductor > 0:
            return True
        return prod * rep.central_value == ONE


@dataclass(frozen=True)
class CosetLabel:
    """Coset representative indexing a value table.

    ``kind`` is one of diag (diag(p^m,1), m >= 0), diagw (diag(p^m,1) w,
    m >= 1), w, u0, u1, u2.
    """

    kind: str
    m: int = 0

    _KINDS = ("diag", "diagw", "w", "u0", "u1", "u2")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown coset kind {self.kind!r}")
        if self.kind == "diag" and self.m < 0:
            raise ValueError("DiagPower needs m >= 0")
        if self.kind == "diagw" and self.m < 1:
            raise ValueError("DiagPowerW needs m >= 1")
        if self.kind not in ("diag", "diagw") and self.m != 0:
            raise ValueError(f"{self.kind} carries no index")

    def valid_for(self, legendre: int) -> bool:
        if self.kind == "u0":
            return legendre == 0
        if self.kind in ("u1", "u2"):
            return legendre == 1
        return True

    def __str__(self):
        if self.kind == "diag":
            return f"DiagPower({self.m})"
        if self.kind == "diagw":
            return f"DiagPowerW({self.m})"
        return {"w": "W", "u0": "U0", "u1": "U1", "u2": "U2"}[self.kind]


# ---------------------------------------------------------------------------
# LocalSetup


@dataclass(frozen=True)
class LocalSetup:
    field: LocalField
    rep: RepData
    omega: Optional[TorusChar] = None
    pair: Optional[InducedPair] = None

    def __post_init__(self):
        if self.omega is None and self.pair is None:
            raise ValidationError("need omega or the pair omega1/omega2")
        if self.pair is not None:
            derived = self.pair.torus_character()
            if self.omega is None:
                object.__setattr__(self, "omega", derived)
            elif self.omega.values != derived.values or self.omega.conductor != derived.conductor:
                raise ValidationError("omega disagrees with the character derived from omega1, omega2")
        if not self.omega.matches(self.field):
            raise ValidationError("omega kind does not match legendre")
        if isinstance(self.rep, UnramifiedPS):
            self.rep.check_irreducible(self.field.q)

    def violations(self) -> list:
        out = []
        if not central_compat_check(self.rep, self.omega, self.field):
            out.append("omega does not restrict to the central character on F^x")
        elif not waldspurger_exists(self.field, self.rep, self.omega):
            out.append("no Waldspurger model exists for this rep and omega")
        if self.pair is not None and not self.pair.central_ok(self.rep):
            out.append("omega1*omega2 on F^x must be the inverse central character")
        return out

    def to_json(self) -> dict:
        out = {"q": self.field.q, "legendre": self.field.legendre}
        if isinstance(self.rep, UnramifiedPS):
            out["rep"] = {
                "type": "unramified",
                "alpha1": coeff_to_json(self.rep.alpha1),
                "alpha2": coeff_to_json(self.rep.alpha2),
            }
        else:
            out["rep"] = {"type": "steinberg", "chi": coeff_to_json(self.rep.chi)}
        out["omega"] = self.omega.to_json()
        if self.pair is not None:
            out["omega1"] = self.pair.omega1.to_json()
            out["omega2"] = self.pair.omega2.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "LocalSetup":
        if not isinstance(obj, dict):
            raise ValidationError("local setup must be a JSON object")
        allowed = {"q", "legendre", "rep", "omega", "omega1", "omega2"}
        extra = set(obj) - allowed
        if extra:
            raise ValidationError(f"unknown keys {sorted(extra)}")
        for k in ("q", "legendre", "rep"):
            if k not in obj:
                raise ValidationError(f"missing key {k!r}")
        fld = LocalField(obj["q"], obj["legendre"])
        rep = _rep_from_json(obj["rep"], fld.q)
        omega = TorusChar.from_json(obj["omega"], fld) if "omega" in obj else None
        pair = None
        if "omega1" in obj or "omega2" in obj:
            if not ("omega1" in obj and "omega2" in obj):
                raise ValidationError("omega1 and omega2 must be given together")
            pair = InducedPair(
                TorusChar.from_json(obj["omega1"], fld),
                TorusChar.from_json(obj["omega2"], fld),
            )
        return cls(fld, rep, omega, pair)


def _rep_from_json(obj, q: int) -> RepData:
    if not isinstance(obj, dict) or "type" not in obj:
        raise ValidationError("rep must be an object with a 'type'")
    try:
        if obj["type"] == "unramified":
            if set(obj) != {"type", "alpha1", "alpha2"}:
                raise ValidationError("unramified rep needs exactly alpha1, alpha2")
            return UnramifiedPS(coeff_from_json(obj["alpha1"], q), coeff_from_json(obj["alpha2"], q))
        if obj["type"] == "steinberg":
            if set(obj) != {"type", "chi"}:
                raise ValidationError("steinberg rep needs exactly chi")
            return SteinbergTwist(coeff_from_json(obj["chi"], q))
    except (TypeError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rep value: {exc}") from None
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError(f"bad rep value: {exc}") from None
    raise ValidationError(f"unknown rep type {obj['type']!r}")
