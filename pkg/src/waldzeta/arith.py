"""Exact arithmetic over Q(i)(r), r^2 = q.

Every non-archimedean quantity in this package lives in the tower
Q(i)(r): Satake parameters and character values need ``i`` for
finite-order characters, and Hecke eigenvalues carry a factor sqrt(q).
On top of the coefficient field sit dense univariate polynomials,
reduced rational functions in the formal variable X = q^{-s}, and
truncated power series used by the oracles.

All values are immutable.  Elements remember the ``q`` they were built
for; mixing two different ``q`` raises ``ValueError``.  Plain ``int``
and ``Fraction`` operands are coerced and carry no ``q``.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq
from math import isqrt
from numbers import Rational
from typing import Iterable, Sequence, Union

__all__ = [
    "CoeffElem",
    "Poly",
    "RatFunc",
    "PowerSeries",
    "I",
    "ONE",
    "ZERO",
    "root",
    "ratfunc_reduce",
    "series_expand",
    "coeff_to_json",
    "coeff_from_json",
    "ratfunc_to_json",
    "ratfunc_from_json",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 50

Scalar = Union["CoeffElem", int, Fraction]


def _merge_q(p, q):
    if p is None:
        return q
    if q is None or p == q:
        return p
    raise ValueError(f"cannot mix elements of Q(i)(sqrt({p})) and Q(i)(sqrt({q}))")


class CoeffElem:
    """The element (a + b i) + (c + d i) r, with i^2 = -1 and r^2 = q.

    When ``q`` is a perfect square, r is rational and the r-part is folded
    into (a, b) on construction; this keeps the ring a field for every q.
    """

    __slots__ = ("a", "b", "c", "d", "q")

    def __init__(self, a=0, b=0, c=0, d=0, q=None):
        a, b, c, d = _q(a), _q(b), _q(c), _q(d)
        if c or d:
            if q is None:
                raise ValueError("an r-component needs the ambient q")
            s = isqrt(q)
            if s * s == q:
                a, b, c, d = a + s * c, b + s * d, _F0, _F0
        if q is not None and q < 2:
            raise ValueError(f"q must be >= 2, got {q}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", q)

    @classmethod
    def _raw(cls, a, b, c, d, q):
        # trusted fast path: mpq components, perfect squares already folded
        self = object.__new__(cls)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "q", q)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("CoeffElem is immutable")

    @staticmethod
    def coerce(x) -> "CoeffElem":
        if isinstance(x, CoeffElem):
            return x
        if isinstance(x, (int, Rational)):
            return CoeffElem._raw(mpq(x), _F0, _F0, _F0, None)
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact coefficients")
        raise TypeError(f"cannot coerce {type(x).__name__} to CoeffElem")

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def has_root_part(self) -> bool:
        return bool(self.c or self.d)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        try:
            o = CoeffElem.coerce(other)
        except TypeError:
            return NotImplemented
        q = _merge_q(self.q, o.q)
        return CoeffElem._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, q)

    __radd__ = __add__

    def __neg__(self):
        return CoeffElem._raw(-self.a, -self.b, -self.c, -self.d, self.q)

    def __sub__(self, other):
        try:
            o = CoeffElem.coerce(other)
        except TypeError:
            return NotImplemented
        q = _merge_q(self.q, o.q)
        return CoeffElem._raw(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d, q)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = CoeffElem.coerce(other)
        except TypeError:
            return NotImplemented
        q = _merge_q(self.q, o.q)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        # (A1 + B1 r)(A2 + B2 r) = A1 A2 + q B1 B2 + (A1 B2 + B1 A2) r, A_k, B_k in Q(i)
        ra = a1 * a2 - b1 * b2
        rb = a1 * b2 + b1 * a2
        if c1 or d1 or c2 or d2:
            qa = c1 * c2 - d1 * d2
            qb = c1 * d2 + d1 * c2
            rc = a1 * c2 - b1 * d2 + c1 * a2 - d1 * b2
            rd = a1 * d2 + b1 * c2 + c1 * b2 + d1 * a2
            return CoeffElem._raw(ra + q * qa, rb + q * qb, rc, rd, q)
        return CoeffElem._raw(ra, rb, _F0, _F0, q)

    __rmul__ = __mul__

    def conj_r(self) -> "CoeffElem":
        """Galois conjugate r -> -r."""
        return CoeffElem._raw(self.a, self.b, -self.c, -self.d, self.q)

    def conj_i(self) -> "CoeffElem":
        """Galois conjugate i -> -i."""
        return CoeffElem._raw(self.a, -self.b, self.c, -self.d, self.q)

    def inverse(self) -> "CoeffElem":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(i)(r)")
        # N(x) = x * conj_r(x) lies in Q(i); invert that via its complex conjugate
        n = self * self.conj_r()
        norm = n.a * n.a + n.b * n.b
        n_inv = CoeffElem._raw(n.a / norm, -n.b / norm, _F0, _F0, None)
        return self.conj_r() * n_inv

    def __truediv__(self, other):
        try:
            o = CoeffElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return CoeffElem.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = CoeffElem._raw(_F1, _F0, _F0, _F0, self.q)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / conversion -----------------------------------------

    def _key(self):
        return (self.a, self.b, self.c, self.d, self.q if (self.c or self.d) else None)

    def __eq__(self, other):
        try:
            o = CoeffElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self._key() == o._key()

    def __hash__(self):
        return hash(self._key())

    def __complex__(self):
        v = complex(float(self.a), float(self.b))
        if self.c or self.d:
            v += complex(float(self.c), float(self.d)) * (self.q ** 0.5)
        return v

    def __repr__(self):
        return f"CoeffElem({self})"

    def __str__(self):
        def qi(x, y):
            if not y:
                return str(x)
            if not x:
                return f"{y}i"
            return f"({x} + {y}i)" if y > 0 else f"({x} - {-y}i)"

        head = qi(self.a, self.b) if (self.a or self.b or not self.has_root_part()) else ""
        if not self.has_root_part():
            return head
        tail = f"{qi(self.c, self.d)}*r"
        return f"{head} + {tail}" if head else tail


_F0 = mpq(0)
_F1 = mpq(1)


def _q(x):
    if isinstance(x, str):
        return mpq(Fraction(x))
    if isinstance(x, float):
        raise TypeError("floats are not exact coefficients")
    return mpq(x)

ZERO = CoeffElem(0)
ONE = CoeffElem(1)
I = CoeffElem(0, 1)


def root(q: int) -> CoeffElem:
    """The element r = sqrt(q) of Q(i)(r)."""
    return CoeffElem(0, 0, 1, 0, q=q)


# ---------------------------------------------------------------------------
# Polynomials


class Poly:
    """Dense polynomial in X with CoeffElem coefficients, ascending degree.

    The zero polynomial has no coefficients and degree -1.
    """

    __slots__ = ("coeffs",)
    ZERO_DEGREE = -1

    def __init__(self, coeffs: Iterable = ()):
        cs = [CoeffElem.coerce(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def _raw(cls, cs):
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        self = object.__new__(cls)
        object.__setattr__(self, "coeffs", tuple(cs))
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, coeff, k: int) -> "Poly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> CoeffElem:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def lead(self) -> CoeffElem:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def valuation(self) -> int:
        """Order of vanishing at X = 0 (-1 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return -1

    def __add__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly._raw(self[k] + o[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(-c for c in self.coeffs)

    def __sub__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        if not self.coeffs or not o.coeffs:
            return Poly()
        out = [ZERO] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if not x:
                continue
            for j, y in enumerate(o.coeffs):
                if y:
                    out[i + j] = out[i + j] + x * y
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly([1])
        for _ in range(n):
            result = result * self
        return result

    def scale(self, c) -> "Poly":
        c = CoeffElem.coerce(c)
        return Poly._raw(x * c for x in self.coeffs)

    def __divmod__(self, other):
        d = _as_poly(other)
        if d is None:
            return NotImplemented
        if not d:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [ZERO] * max(len(rem) - len(d.coeffs) + 1, 0)
        inv_lead = d.lead().inverse()
        dd = d.degree
        for k in range(len(rem) - 1, dd - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c * inv_lead
            quo[k - dd] = f
            for j, y in enumerate(d.coeffs):
                rem[k - dd + j] = rem[k - dd + j] - f * y
        return Poly._raw(quo), Poly._raw(rem[:dd] if dd > 0 else [])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self) -> "Poly":
        return self.scale(self.lead().inverse())

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic() if a else a

    def subs_monomial(self, c, k: int) -> "Poly":
        """p(X) -> p(c X^k) for k >= 1."""
        if k < 1:
            raise ValueError("monomial substitution needs a positive power")
        c = CoeffElem.coerce(c)
        out = [ZERO] * (k * self.degree + 1 if self else 0)
        cp = ONE
        for j, x in enumerate(self.coeffs):
            out[j * k] = x * cp
            cp = cp * c
        return Poly._raw(out)

    def __call__(self, x):
        """Horner evaluation at a CoeffElem (exact) or a complex number."""
        if isinstance(x, (complex, float)):
            acc = 0j
            for c in reversed(self.coeffs):
                acc = acc * x + complex(c)
            return acc
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        o = _as_poly(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"({c})" + ("" if k == 0 else "X" if k == 1 else f"X^{k}"))
        return "Poly(" + " + ".join(terms) + ")"


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    try:
        return Poly([CoeffElem.coerce(x)])
    except TypeError:
        return None


# ---------------------------------------------------------------------------
# Rational functions


class RatFunc:
    """Reduced quotient num/den of polynomials in X = q^{-s}.

    Normal form: gcd(num, den) = 1 and den is monic.  Laurent factors such
    as q^{s+1/2} = r X^{-1} appear as powers of X in the denominator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        n = _as_poly(num)
        d = Poly([1]) if den is None else _as_poly(den)
        if n is None or d is None:
            raise TypeError("RatFunc needs polynomial or scalar parts")
        n, d = _reduce_pair(n, d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def x(cls) -> "RatFunc":
        return cls(Poly([0, 1]))

    @classmethod
    def x_power(cls, k: int) -> "RatFunc":
        if k >= 0:
            return cls(Poly.monomial(1, k))
        return cls(Poly([1]), Poly.monomial(1, -k))

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def __add__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RatFunc)
        object.__setattr__(out, "num", -self.num)
        object.__setattr__(out, "den", self.den)
        return out

    def __sub__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return _as_ratfunc(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self.inverse()
        return RatFunc(base.num ** abs(n), base.den ** abs(n))

    def subs_monomial(self, c, k: int) -> "RatFunc":
        """f(X) -> f(c X^k), k >= 1."""
        return RatFunc(self.num.subs_monomial(c, k), self.den.subs_monomial(c, k))

    def shift(self, k: int) -> "RatFunc":
        """Multiply by X^k (k may be negative)."""
        return self * RatFunc.x_power(k)

    def __call__(self, x):
        if isinstance(x, (complex, float)):
            return self.num(x) / self.den(x)
        return self.num(x) / self.den(x)

    def series(self, order: int = DEFAULT_ORDER) -> "PowerSeries":
        return series_expand(self, order)

    def __eq__(self, other):
        o = _as_ratfunc(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunc({self.num!r} / {self.den!r})"


def _as_ratfunc(x):
    if isinstance(x, RatFunc):
        return x
    p = _as_poly(x)
    return None if p is None else RatFunc(p)


def _reduce_pair(n: Poly, d: Poly):
    if not d:
        raise ValueError("rational function with zero denominator")
    if not n:
        return Poly(), Poly([1])
    g = n.gcd(d)
    if g.degree > 0:
        n, d = n // g, d // g
    inv = d.lead().inverse()
    if inv != ONE:
        n, d = n.scale(inv), d.scale(inv)
    return n, d


def ratfunc_reduce(n: Poly, d: Poly) -> RatFunc:
    """Gcd-reduced, denominator-monic representative of n/d."""
    return RatFunc(n, d)


# ---------------------------------------------------------------------------
# Truncated power series


class PowerSeries:
    """Coefficients c_0..c_T of a power series truncated after X^T."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [CoeffElem.coerce(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        cs = (cs + [ZERO] * (order + 1))[: order + 1]
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def _align(self, other):
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries([CoeffElem.coerce(other)], self.order)

    def __add__(self, other):
        o = self._align(other)
        T = min(self.order, o.order)
        return PowerSeries([self[k] + o[k] for k in range(T + 1)], T)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._align(other))

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = CoeffElem.coerce(other)
            return PowerSeries([x * c for x in self.coeffs], self.order)
        T = min(self.order, other.order)
        out = [ZERO] * (T + 1)
        for i in range(T + 1):
            x = self[i]
            if not x:
                continue
            for j in range(T + 1 - i):
                y = other[j]
                if y:
                    out[i + j] = out[i + j] + x * y
        return PowerSeries(out, T)

    __rmul__ = __mul__

    def subs_monomial(self, c, k: int, order: int | None = None) -> "PowerSeries":
        """g(X) -> g(c X^k), truncated at ``order`` (default: same order)."""
        T = self.order if order is None else order
        if k * self.order < T:
            raise ValueError("source series too short for the requested order")
        c = CoeffElem.coerce(c)
        out = [ZERO] * (T + 1)
        cp = ONE
        for j in range(T // k + 1):
            out[j * k] = self[j] * cp
            cp = cp * c
        return PowerSeries(out, T)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        T = min(self.order, other.order)
        return self.coeffs[: T + 1] == other.coeffs[: T + 1]

    __hash__ = None

    def __repr__(self):
        return f"PowerSeries({[str(c) for c in self.coeffs]})"


def series_expand(f: RatFunc, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Power series g with g * den = num mod X^{order+1}."""
    d0 = f.den[0]
    if not d0:
        raise ValueError("pole at X=0: denominator has zero constant term")
    inv = d0.inverse()
    dens = f.den.coeffs
    g = []
    for k in range(order + 1):
        acc = f.num[k]
        for j in range(1, min(k, len(dens) - 1) + 1):
            acc = acc - dens[j] * g[k - j]
        g.append(acc * inv)
    return PowerSeries(g, order)


# ---------------------------------------------------------------------------
# JSON


def coeff_to_json(c) -> dict:
    c = CoeffElem.coerce(c)
    return {"a": str(c.a), "b": str(c.b), "c": str(c.c), "d": str(c.d)}


def coeff_from_json(obj, q: int | None = None) -> CoeffElem:
    """Accepts {"a","b","c","d"} (missing keys are 0), [a,b,c,d], an int, or "p/q"."""
    if isinstance(obj, CoeffElem):
        return obj
    if isinstance(obj, bool):
        raise ValueError("booleans are not coefficients")
    if isinstance(obj, int):
        return CoeffElem(obj)
    if isinstance(obj, str):
        return CoeffElem(Fraction(obj))
    if isinstance(obj, (list, tuple)):
        if not 1 <= len(obj) <= 4:
            raise ValueError(f"coefficient list must have 1..4 entries, got {len(obj)}")
        parts = [Fraction(str(x)) for x in obj] + [Fraction(0)] * (4 - len(obj))
    elif isinstance(obj, dict):
        unknown = set(obj) - {"a", "b", "c", "d"}
        if unknown:
            raise ValueError(f"unknown coefficient keys {sorted(unknown)}")
        parts = [Fraction(str(obj.get(k, 0))) for k in "abcd"]
    else:
        raise ValueError(f"cannot read a coefficient from {obj!r}")
    if (parts[2] or parts[3]) and q is None:
        raise ValueError("coefficient with an r-part needs q")
    return CoeffElem(*parts, q=q)


def ratfunc_to_json(f: RatFunc) -> dict:
    return {
        "num": [coeff_to_json(c) for c in f.num.coeffs],
        "den": [coeff_to_json(c) for c in f.den.coeffs],
    }


def ratfunc_from_json(obj: dict, q: int | None = None) -> RatFunc:
    num = Poly([coeff_from_json(c, q) for c in obj["num"]])
    den = Poly([coeff_from_json(c, q) for c in obj["den"]])
    return RatFunc(num, den)
