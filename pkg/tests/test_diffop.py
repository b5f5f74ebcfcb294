import pytest

from hamop.diffalg import DiffFunction, JetContext
from hamop.diffop import LinDiffOp, adjoint, apply, commutator, compose, first_difference, is_skew_adjoint
from hamop.errors import NonlocalResult
from hamop.hamfam import make_H
from hamop.parser import parse_expression as P, parse_operator as Op
from hamop.transform import YV

XU = JetContext()
u = DiffFunction.jet(0, XU)
D = LinDiffOp.D(1, XU)


def test_compose_leibniz():
    assert compose(D, LinDiffOp.mult(1 / u, XU)) == Op("(1/u) o D + (-u_1/u^2)")


def test_compose_D_D():
    assert D @ D == LinDiffOp.D(2, XU)


def test_H5_by_composition():
    m = LinDiffOp.mult(1 / u, XU)
    H5 = D @ D @ m @ D @ m @ D @ D
    assert H5 == make_H(1)
    assert H5.order == 5
    assert H5.coeff(5) == u**-2


def test_adjoint_examples():
    assert adjoint(D) == -D
    A = Op("(1/v_1) o D", YV)
    assert adjoint(A) == Op("-(1/v_1) o D + (v_2/v_1^2)", YV)


def test_apply_examples():
    assert apply(LinDiffOp.D(3, XU), u**-2) == (u**-2).D(3)
    v = DiffFunction.jet(0, YV)
    assert apply(-LinDiffOp.D(3, YV), 2 * v) == -2 * DiffFunction.jet(3, YV)
    f = P("x*u_1 + u^2")
    assert LinDiffOp.identity(XU)(f) == f


def test_commutators():
    assert commutator(LinDiffOp.D(3, XU), LinDiffOp.D(2, XU)).is_zero()
    assert commutator(D, LinDiffOp.mult(u, XU)) == LinDiffOp.mult(DiffFunction.jet(1, XU), XU)
    assert commutator(-2 * LinDiffOp.D(3, YV), LinDiffOp.D(2, YV)).is_zero()


def test_negative_D_power_is_nonlocal():
    with pytest.raises(NonlocalResult):
        LinDiffOp.D(-1, XU)


def test_zero_operator_order():
    assert LinDiffOp.zero(XU).order == -1
    assert LinDiffOp([u, 0, 0], XU).order == 0


def test_first_difference_witness():
    w = first_difference(D, -D)
    assert w is not None and w.index == 1
    assert "D^1" in str(w)
    assert first_difference(D, D) is None


def test_skew_adjoint():
    assert is_skew_adjoint(D)
    assert not is_skew_adjoint(LinDiffOp.D(2, XU))
    assert is_skew_adjoint(Op("(2*u_1) o D + (u_2)"))


def test_power():
    assert (D**3) == LinDiffOp.D(3, XU)
    assert (D**0) == LinDiffOp.identity(XU)
