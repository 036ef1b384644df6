import pytest

from waldzeta.arith import ONE, I, CoeffElem
from waldzeta.errors import ValidationError
from waldzeta.local_data import (
    CosetLabel,
    InducedPair,
    LocalField,
    LocalSetup,
    SteinbergTwist,
    TorusChar,
    UnramifiedPS,
    central_compat_check,
    waldspurger_exists,
)


def test_field_checks():
    assert LocalField(9, 1).kind == "split"
    assert LocalField(4, -1).r == CoeffElem(2)
    for q, eps in ((6, 0), (1, 0), (3, 2)):
        with pytest.raises(ValidationError):
            LocalField(q, eps)


def test_irreducibility():
    with pytest.raises(ValidationError):
        UnramifiedPS(CoeffElem(3), ONE).check_irreducible(3)
    with pytest.raises(ValidationError):
        UnramifiedPS(ONE, CoeffElem(3)).check_irreducible(3)
    UnramifiedPS(I, -I).check_irreducible(3)


def test_zero_values_rejected():
    with pytest.raises(ValidationError):
        SteinbergTwist(CoeffElem(0))
    with pytest.raises(ValidationError):
        TorusChar.inert(0)


def test_existence_examples():
    st1 = SteinbergTwist(ONE)
    assert waldspurger_exists(LocalField(5, 1), st1, TorusChar.split(1, 1))
    assert waldspurger_exists(LocalField(5, 0), st1, TorusChar.ramified(-1))
    assert not waldspurger_exists(LocalField(5, -1), st1, TorusChar.inert(1))
    assert not waldspurger_exists(LocalField(5, 0), st1, TorusChar.ramified(1))
    assert waldspurger_exists(LocalField(5, -1), st1, TorusChar.inert(1, conductor=1))
    assert waldspurger_exists(LocalField(5, -1), UnramifiedPS(ONE, -ONE), TorusChar.inert(-1))


def test_existence_rejects_mismatched_kind():
    with pytest.raises(ValidationError):
        waldspurger_exists(LocalField(5, 1), SteinbergTwist(ONE), TorusChar.inert(1))


def test_central_compat_examples():
    assert central_compat_check(UnramifiedPS(ONE, ONE), TorusChar.split(1, 1), LocalField(3, 1))
    assert not central_compat_check(SteinbergTwist(ONE), TorusChar.inert(-1), LocalField(3, -1))
    assert central_compat_check(UnramifiedPS(I, -I), TorusChar.inert(1), LocalField(3, -1))
    # ramified: the base uniformizer is the square of the ramified one
    assert central_compat_check(SteinbergTwist(ONE), TorusChar.ramified(-1), LocalField(3, 0))
    assert central_compat_check(SteinbergTwist(I), TorusChar.ramified(5, conductor=2), LocalField(3, 0))


def test_induced_pair_rules():
    with pytest.raises(ValidationError):
        InducedPair(TorusChar.inert(1, conductor=2), TorusChar.inert(1))
    with pytest.raises(ValidationError):
        InducedPair(TorusChar.inert(1), TorusChar.inert(1, conductor=1))
    pair = InducedPair(TorusChar.split(2, 3), TorusChar.split(5, 7))
    omega = pair.torus_character()
    assert omega.values == (CoeffElem(1) / 15, CoeffElem(1) / 14)
    assert pair.ratio_values() == (CoeffElem(2) / 5, CoeffElem(3) / 7)


def test_coset_labels():
    assert CosetLabel("u0").valid_for(0) and not CosetLabel("u0").valid_for(1)
    assert CosetLabel("u1").valid_for(1) and not CosetLabel("u1").valid_for(-1)
    assert str(CosetLabel("diag", 3)) == "DiagPower(3)"
    with pytest.raises(ValueError):
        CosetLabel("diagw", 0)


def test_setup_json_round_trip():
    obj = {
        "q": 7,
        "legendre": 1,
        "rep": {"type": "steinberg", "chi": {"b": 1}},
        "omega1": {"w1": 1, "w2": -1},
        "omega2": {"w1": 1, "w2": 1},
    }
    s = LocalSetup.from_json(obj)
    assert LocalSetup.from_json(s.to_json()) == s
    assert s.violations() == []


def test_setup_rejects_inconsistent_omega():
    obj = {
        "q": 7,
        "legendre": -1,
        "rep": {"type": "unramified", "alpha1": 1, "alpha2": -1},
        "omega": {"w": -1},
        "omega1": {"w": 1},
        "omega2": {"w": 1},
    }
    with pytest.raises(ValidationError):
        LocalSetup.from_json(obj)


def test_setup_reports_central_violation():
    s = LocalSetup(LocalField(3, -1), SteinbergTwist(ONE), TorusChar.inert(-1))
    assert s.violations()
