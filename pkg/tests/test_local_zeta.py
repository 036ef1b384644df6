import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waldzeta import sampling
from waldzeta.arith import ONE, CoeffElem, I, RatFunc, root, series_expand
from waldzeta.errors import ModelNonexistence, ScopeError, ValidationError
from waldzeta.local_data import InducedPair, LocalField, LocalSetup, SteinbergTwist, TorusChar, UnramifiedPS
from waldzeta.local_zeta import (
    UNRAMIFIED_SECTION_Z,
    at_argument,
    hecke_l_factor,
    k_integral_old_vector,
    k_integral_old_vector_direct,
    pi_l_factor,
    unramified_section_zero_case,
    volumes,
    zeta_for_setup,
    zeta_steinberg_newform,
    zeta_steinberg_oldvector,
    zeta_unramified,
)

X = RatFunc.x()


def test_volumes_examples():
    assert volumes(LocalField(3, -1), 1).V == 4
    for eps in (-1, 0, 1):
        assert volumes(LocalField(7, eps), 0).V == 1
    assert volumes(LocalField(5, 0), 0).V_u0I == Fraction(1, 6)
    assert volumes(LocalField(5, 1), 0).V_u0I is None


@pytest.mark.parametrize("eps", [-1, 0, 1])
def test_iwahori_volumes_partition_level_zero(eps):
    q = 5
    v = volumes(LocalField(q, eps), 0)
    extra = (v.V_u0I or 0) + 2 * (v.V_uiI or 0)
    assert v.V_wI + extra == v.V


@pytest.mark.parametrize("eps", [-1, 0, 1])
def test_iwahori_volumes_partition_higher_levels(eps):
    q = 7
    for m in range(1, 5):
        v = volumes(LocalField(q, eps), m)
        assert v.V_I + v.V_wI == v.V


def test_hecke_l_factor_examples():
    one = RatFunc(1)
    assert hecke_l_factor(LocalField(3, 1), TorusChar.split(1, 1)) == one / ((1 - X) * (1 - X))
    assert hecke_l_factor(LocalField(3, -1), TorusChar.inert(-1)) == one / (1 + X ** 2)
    assert hecke_l_factor(LocalField(3, 0), TorusChar.ramified(I)) == one / (1 - I * X)
    assert hecke_l_factor(LocalField(3, 0), TorusChar.ramified(I, conductor=1)) == one


def test_pi_l_factor_examples():
    one = RatFunc(1)
    assert pi_l_factor(UnramifiedPS(ONE, ONE), ONE, 3) == one / (1 - X) ** 2
    assert pi_l_factor(SteinbergTwist(ONE), ONE, 5) == one / (1 - X / root(5))
    with pytest.raises((ValidationError, ValueError, ZeroDivisionError)):
        pi_l_factor(SteinbergTwist(ONE), CoeffElem(0), 5)


def test_argument_substitutions():
    f = RatFunc(1) / (1 - X)
    assert at_argument(f, "2s+1", 3) == RatFunc(1) / (1 - X ** 2 / 3)
    assert at_argument(f, "2s+1/2", 3) == RatFunc(1) / (1 - X ** 2 / root(3))
    with pytest.raises(ValueError):
        at_argument(f, "s", 3)


def _unram(q, eps, a1=ONE, a2=ONE, w1=None, w2=None):
    fld = LocalField(q, eps)
    n = 2 if eps == 1 else 1
    o = TorusChar(fld.kind, (ONE,) * n)
    return LocalSetup(fld, UnramifiedPS(a1, a2), None, InducedPair(o, o))


def test_unramified_trivial_inert():
    s = _unram(3, -1, I, -I)
    res = zeta_unramified(s.field, s.rep, s.pair, s.omega)
    assert res.y_factor == RatFunc(1)
    assert series_expand(res.closed_form, 0)[0] == ONE
    _, direct, closed = zeta_for_setup(s, 50)
    assert direct == closed


def test_unramified_rejects_ramified_omega1():
    fld = LocalField(3, -1)
    pair = InducedPair(TorusChar.inert(1, conductor=1), TorusChar.inert(1))
    with pytest.raises(ScopeError):
        zeta_unramified(fld, UnramifiedPS(I, -I), pair, pair.torus_character())


def test_newform_prefactors():
    for eps, want in ((0, Fraction(3, 4)), (1, Fraction(1, 2)), (-1, Fraction(1))):
        fld = LocalField(3, eps)
        n = 2 if eps == 1 else 1
        pair = InducedPair(TorusChar(fld.kind, (ONE,) * n, 1), TorusChar(fld.kind, (ONE,) * n))
        res = zeta_steinberg_newform(fld, SteinbergTwist(ONE), pair, pair.torus_character())
        assert res.y_factor / res.l_den == RatFunc(CoeffElem(want))
        assert res.check()


def test_old_vector_ramified_k_integral():
    q = 5
    fld = LocalField(q, 0)
    pair = InducedPair(TorusChar.ramified(1), TorusChar.ramified(-1))
    omega = pair.torus_character()
    k = k_integral_old_vector(fld, SteinbergTwist(ONE), pair, omega)
    v = pair.ratio_values()[0]
    want = -q * root(q) / X * (1 - v * X ** 2 / q) / (q + 1)
    assert k == want
    assert series_expand(k.shift(1), 20) == k_integral_old_vector_direct(fld, SteinbergTwist(ONE), pair, omega, 20)


def test_old_vector_split_cases():
    q = 7
    fld = LocalField(q, 1)
    chi = ONE
    # B0(w) = 0: omega(1, p) = chi
    p0 = InducedPair(TorusChar.split(1, 1), TorusChar.split(1, 1))
    r0 = zeta_steinberg_oldvector(fld, SteinbergTwist(chi), p0, p0.torus_character())
    assert r0.case == "split_b0w_0"
    assert r0.y_factor == -RatFunc(root(q)) / X / (q + 1)
    # B0(w) = 1
    p1 = InducedPair(TorusChar.split(1, -1), TorusChar.split(1, -1))
    om = p1.torus_character()
    r1 = zeta_steinberg_oldvector(fld, SteinbergTwist(chi), p1, om)
    assert r1.case == "split_b0w_1"
    factor = (q - 1) / (1 - om.values[1] / chi)
    assert r1.y_factor == -RatFunc(factor * root(q)) / X / (q + 1)


def test_old_vector_inert_has_no_model():
    fld = LocalField(3, -1)
    pair = InducedPair(TorusChar.inert(1), TorusChar.inert(1))
    with pytest.raises(ModelNonexistence):
        zeta_steinberg_oldvector(fld, SteinbergTwist(ONE), pair, pair.torus_character())


def test_unramified_section_against_steinberg_is_zero():
    assert unramified_section_zero_case() == RatFunc(0)
    assert UNRAMIFIED_SECTION_Z == RatFunc(0)


def test_old_vector_b0w_zero_is_k_integral_alone():
    rng = random.Random(5)
    for _ in range(10):
        s = sampling.steinberg_setup(rng, 5, 1, 0, "b0w_zero")
        res = zeta_steinberg_oldvector(s.field, s.rep, s.pair, s.omega)
        assert res.case == "split_b0w_0"
        assert res.closed_form == k_integral_old_vector(s.field, s.rep, s.pair, s.omega)


# ---------------------------------------------------------------------------
# Oracle properties

seeds = st.integers(0, 2 ** 32)


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(sampling.QS), st.sampled_from([-1, 0, 1]))
def test_unramified_oracle(seed, q, eps):
    s = sampling.unramified_setup(random.Random(seed), q, eps)
    res, direct, closed = zeta_for_setup(s, 50)
    assert direct == closed
    assert res.check()


BRANCHES = [(-1, 1, None), (0, 1, None), (1, 1, None), (0, 0, "ramified_exists"), (1, 0, "b0w_zero"), (1, 0, None)]


@settings(max_examples=80, deadline=None)
@given(seeds, st.sampled_from(sampling.QS), st.sampled_from(BRANCHES))
def test_steinberg_oracles(seed, q, branch):
    eps, c1, forced = branch
    s = sampling.steinberg_setup(random.Random(seed), q, eps, c1, forced)
    if s is None:
        return
    res, direct, closed = zeta_for_setup(s, 50)
    assert direct == closed
    assert res.check()
    assert res.case == ("newform" if c1 else ("ramified" if eps == 0 else res.case))
