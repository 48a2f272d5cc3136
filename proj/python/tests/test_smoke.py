import pytest

import valjet

QUARTIC = "(x1^2-x0^3)^2-x0^6*x1"


def test_semigroup():
    sg = valjet.semigroup(QUARTIC)
    assert sg["beta_bar"] == [4, 6, 15]
    assert sg["g"] == 2


def test_nu_and_initial_form():
    assert valjet.nu(QUARTIC, "(x1^2-x0^3)^2-4*x0^5*x1-x0^7") == 26
    assert valjet.nu(QUARTIC, QUARTIC) is None
    assert valjet.initial_form(QUARTIC, "x1^2-x0^3") == ("-x0^3 + x1^2", 15)


def test_jets():
    assert valjet.jets("x1^2-x0^3", 0) == ["-x0#0^3 + x1#0^2"]


def test_genseq():
    gs = valjet.genseq(QUARTIC)
    assert [e["value"] for e in gs["elements"]] == [4, 6, 15, None]
    assert gs["log"][0]["mu"] == 29
    assert gs["log"][0]["Qprime"] == "-x0^6*x1"


def test_divisorial_and_toric():
    assert valjet.nu_e("x1^2-x0^3", "x1^2-x0^3", 7) == 7
    gs = valjet.divisorial("x1^2-x0^3", 7)
    assert [e["value"] for e in gs["elements"]] == [2, 3, 7]
    t = valjet.toric("x1^2-x0^3", 7)
    assert t["ok"]
    assert [[1, 2, 3], [2, 3, 6], [2, 3, 7]] in t["cones"]


def test_approximate_root():
    assert valjet.approximate_root(QUARTIC, 2) == "-x0^3 + x1^2"


def test_errors():
    with pytest.raises(valjet.DomainError):
        valjet.genseq("x1^2-x0^2")
    with pytest.raises(ValueError):
        valjet.divisorial("x1^2-x0^3", 5)
    with pytest.raises(ValueError):
        valjet.semigroup("x1^^2")
