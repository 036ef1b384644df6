import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from waldzeta import sampling
from waldzeta.arith import ONE, ZERO, CoeffElem, Poly, root
from waldzeta.errors import ModelNonexistence
from waldzeta.local_data import LocalField, SteinbergTwist, TorusChar, UnramifiedPS
from waldzeta.waldspurger import (
    kappa,
    spherical_generating_series,
    spherical_values_recurrence,
    steinberg_table,
)

TRIVIAL = UnramifiedPS(ONE, ONE)


def test_kappa_cases():
    r = root(3)
    assert kappa(LocalField(3, -1), TRIVIAL, TorusChar.inert(1)) == r / 2
    assert kappa(LocalField(3, 0), TRIVIAL, TorusChar.ramified(-1)) == -ONE
    assert kappa(LocalField(3, 0), TRIVIAL, TorusChar.ramified(1, conductor=3)) == ZERO
    lam = 2 * r
    assert kappa(LocalField(3, 1), TRIVIAL, TorusChar.split(1, 1)) == (-lam + 3 * 2) / 2


def test_generating_function_inert_trivial():
    fld = LocalField(3, -1)
    r = root(3)
    gen = spherical_generating_series(fld, TRIVIAL, TorusChar.inert(1)).gen
    from waldzeta.arith import RatFunc

    assert gen == RatFunc(Poly([3, -r / 2]), Poly([3, -2 * r, 1]))
    assert spherical_values_recurrence(fld, TRIVIAL, TorusChar.inert(1), 1) == [ONE, r / 2]


@pytest.mark.parametrize("legendre", [-1, 0, 1])
def test_conductor_two_vanishing(legendre):
    rng = random.Random(legendre)
    fld, rep, omega = sampling.spherical_case(rng, 5, legendre, 2)
    ser = spherical_generating_series(fld, rep, omega)
    assert ser.gen.num.valuation() == 2
    A = ser.coefficients(4)
    assert A[:3] == [ZERO, ZERO, ONE]
    assert spherical_values_recurrence(fld, rep, omega, 4) == A


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 2 ** 32),
    st.sampled_from(sampling.QS),
    st.sampled_from([-1, 0, 1]),
    st.integers(0, 3),
)
def test_generating_function_matches_recurrence(seed, q, legendre, c):
    fld, rep, omega = sampling.spherical_case(random.Random(seed), q, legendre, c)
    gen = spherical_generating_series(fld, rep, omega).coefficients(30)
    assert gen == spherical_values_recurrence(fld, rep, omega, 30)
    assert gen[c] == ONE and all(x == ZERO for x in gen[:c])


def test_steinberg_diag_example():
    t = steinberg_table(LocalField(5, 1), SteinbergTwist(ONE), TorusChar.split(-1, -1), 3)
    assert t.get("diag", 1) == -ONE
    assert t.get("diagw", 2) == CoeffElem(1) / 25


def test_split_b0w_zero_branch():
    chi = CoeffElem(0, 1)
    t = steinberg_table(LocalField(5, 1), SteinbergTwist(chi), TorusChar.split(chi, chi), 3)
    assert t.normalization == "u"
    assert t.b0_w == ZERO and t.get("u1") == ONE and t.get("u2") == -ONE
    assert all(t.get("diag", m) == ZERO and t.get("diagw", m) == ZERO for m in (1, 2, 3))


def test_split_ramified_omega_zero_unipotents():
    t = steinberg_table(LocalField(7, 1), SteinbergTwist(ONE), TorusChar.split(2, CoeffElem(1) / 2, 1), 2)
    assert t.get("u1") == ZERO and t.get("u2") == ZERO


def test_split_unramified_identities():
    chi, w2 = CoeffElem(0, 1), CoeffElem(2)
    q = 7
    t = steinberg_table(LocalField(q, 1), SteinbergTwist(chi), TorusChar.split(chi * chi / w2, w2), 2)
    assert t.get("u1") + t.get("u2") == -(q - 1) * t.b0_w
    assert w2 * t.get("u2") == -chi * t.get("u1")


def test_ramified_u0_and_conductor_vanishing():
    q = 3
    t = steinberg_table(LocalField(q, 0), SteinbergTwist(ONE), TorusChar.ramified(-1), 2)
    assert t.get("u0") == CoeffElem(-q)
    t2 = steinberg_table(LocalField(q, 0), SteinbergTwist(ONE), TorusChar.ramified(1, conductor=2), 3)
    assert t2.get("u0") == ZERO
    assert t2.get("diag", 1) == ZERO
    assert t2.get("diag", 2) == -q * t2.get("diagw", 2)


def test_steinberg_without_model_rejected():
    with pytest.raises(ModelNonexistence):
        steinberg_table(LocalField(3, -1), SteinbergTwist(ONE), TorusChar.inert(1), 2)
