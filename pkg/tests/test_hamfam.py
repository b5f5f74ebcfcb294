import pytest

from hamop.diffalg import DiffFunction, JetContext
from hamop.diffop import LinDiffOp, adjoint, is_skew_adjoint
from hamop.errors import IndexBoundError
from hamop.hamfam import (
    FamilyIndex,
    LinearCombSpec,
    gardner,
    linear_combination,
    make_H,
    make_H_check,
    make_H_tilde,
    make_quasiconstant,
    n_max,
)
from hamop.parser import parse_operator as Op

XU, ZW, YV = JetContext(), JetContext("z", "w"), JetContext("y", "v")
u = DiffFunction.jet(0, XU)


def test_index():
    assert FamilyIndex(2).N == 7
    assert FamilyIndex.from_N(5).n == 1
    with pytest.raises(IndexBoundError):
        FamilyIndex(n_max() + 1).check_bound()
    with pytest.raises(ValueError):
        FamilyIndex(-1)


def test_n_max_env(monkeypatch):
    monkeypatch.setenv("HAMOP_NMAX", "2")
    assert n_max() == 2
    with pytest.raises(IndexBoundError):
        make_H(3)


def test_small_members():
    assert make_H(0) == LinDiffOp.D(3, XU)
    assert make_H_check(0) == -LinDiffOp.D(1, ZW)
    assert make_H_tilde(1) == -LinDiffOp.D(3, YV)
    assert make_H_check(1) == Op("-D o (1/w_1) o D o (1/w_1) o D", ZW)


@pytest.mark.parametrize("n", range(5))
def test_leading_coefficient_and_order(n):
    H = make_H(n)
    assert H.order == 2 * n + 3
    assert H.coeff(2 * n + 3) == u ** (-2 * n)
    assert make_H_check(n).order == make_H_tilde(n).order == 2 * n + 1


@pytest.mark.parametrize("n", range(5))
def test_families_skew_adjoint(n):
    assert is_skew_adjoint(make_H(n))
    assert is_skew_adjoint(make_H_check(n))
    assert is_skew_adjoint(make_H_tilde(n))


@pytest.mark.parametrize("n", range(5))
def test_tilde_has_constant_coefficients(n):
    assert make_H_tilde(n).has_constant_coefficients()


def test_gardner():
    assert gardner() == LinDiffOp.D(1, XU)
    assert adjoint(gardner()) == -gardner()


def test_linear_combination():
    spec = LinearCombSpec([(1, 0), (2, 1)])
    assert linear_combination(spec, "H_tilde") == -LinDiffOp.D(1, YV) - 2 * LinDiffOp.D(3, YV)
    assert spec.is_nontrivial()
    assert not LinearCombSpec([(0, 1)]).is_nontrivial()


def test_linear_combination_is_linear():
    a = LinearCombSpec([(3, 0), (-1, 2)])
    b = LinearCombSpec([(1, 1), (5, 0)])
    ab = LinearCombSpec([(3, 0), (-1, 2), (1, 1), (5, 0)])
    assert linear_combination(ab) == linear_combination(a) + linear_combination(b)


def test_quasiconstant():
    A = make_quasiconstant([0, 0, 0, 1])
    assert A == LinDiffOp.D(3, XU)
    assert is_skew_adjoint(A)
    x = DiffFunction.indep(XU)
    assert make_quasiconstant([x, x**2]).is_quasiconstant()
    with pytest.raises(ValueError):
        make_quasiconstant([u])
