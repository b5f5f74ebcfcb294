import pytest

from hamop.diffalg import DiffFunction, JetContext
from hamop.diffop import LinDiffOp
from hamop.errors import ParseError
from hamop.hamfam import make_H
from hamop.parser import parse_context, parse_expression, parse_operator

XU = JetContext()

EXPRESSIONS = [
    "0", "1", "-1", "3/4", "i", "-i", "2 + 3*i", "(1 + i)^2", "x", "u", "u_0", "u_1", "u_12",
    "u_x", "u_xx", "x^2*u", "u^-2", "1/u", "-1/u", "u_3/u", "u*u_1*u_2", "u_1^2 - u_2^2",
    "x^3 - 2*x*u + u_1", "(u + u_1)^3", "(u^2 - u_1^2)/(u - u_1)", "(u + x)/(u_1 - x)",
    "D(u)", "D^3(u^-2)", "D^2(w_1^-2)", "D(x^2*u)", "D^0(u_5)", "1/2*u_1^2 + 1/3*u^3",
    "i*u + (2 - i)*u_1", "u^4 + u_1*u_2", "x^2*u_3/u^3", "(1/u)*(1/u_1)", "-(u - u_1)",
    "u_2^2", "x*u^2", "u*u_1^2", "u^3", "-2*u_3", "18*u_1*u_2/u^4", "1/(1 + u_1^2)",
    "u^-1*u_1^-1", "((u))", "+u", "2^3", "x/x", "u^2/u^5", "D(D(u_1))", "(u_1 + 1)/u^2",
]

OPERATORS = [
    "D", "D^3", "-D", "D^0", "u", "(1/u) o D", "D o (1/u)", "D^2 o (1/u) o D o (1/u) o D o D",
    "(2*u_1) o D + (u_2)", "(2*u_1)oD+(u_2)", "-D^3 + D", "D o D o D", "(x^2) o D^2 + x",
    "(i*u^-3) o D^3 + (u_1)", "(D + u) o (D - u)", "3/2 o D^2", "D^2o(1/u)oDo(1/u)oDoD",
]

CONTEXTS = {"z,w": JetContext("z", "w"), "y,v": JetContext("y", "v")}


def test_corpus_size():
    assert len(EXPRESSIONS) + len(OPERATORS) >= 50


@pytest.mark.parametrize("text", EXPRESSIONS)
def test_expression_round_trip(text):
    ctx = JetContext("z", "w") if "w" in text else XU
    f = parse_expression(text, ctx)
    g = parse_expression(str(f), ctx)
    assert g == f
    assert str(g) == str(f)


@pytest.mark.parametrize("text", OPERATORS)
def test_operator_round_trip(text):
    A = parse_operator(text)
    B = parse_operator(str(A))
    assert B == A
    assert str(B) == str(A)


def test_known_values():
    u = DiffFunction.jet(0, XU)
    assert parse_expression("D^3(u^-2)") == (u**-2).D(3)
    assert parse_operator("D^2 o (1/u) o D o (1/u) o D o D") == make_H(1)
    assert parse_expression("x^2*u") == DiffFunction.indep(XU) ** 2 * u
    assert parse_expression("u_xx") == DiffFunction.jet(2, XU)


def test_other_contexts():
    yv = parse_context("y,v")
    assert parse_expression("v_1^-2", yv) == DiffFunction.jet(1, yv) ** -2
    assert parse_operator("-D^3", yv) == -LinDiffOp.D(3, yv)


@pytest.mark.parametrize("text", [
    "", "u +", "u_", "q", "u)", "(u", "1/0", "0^-1", "u # 2", "D u", "D^-1(u)", "o",
])
def test_expression_errors(text):
    with pytest.raises(ParseError):
        parse_expression(text)


@pytest.mark.parametrize("text", ["D^-1", "D o", "(D", "u o o D"])
def test_operator_errors(text):
    with pytest.raises(ParseError):
        parse_operator(text)


def test_error_reports_position():
    with pytest.raises(ParseError, match="position 4"):
        parse_expression("u + q")


@pytest.mark.parametrize("spec", ["x", "x,x", "x,u,t", "x,D"])
def test_bad_context(spec):
    with pytest.raises(ParseError):
        parse_context(spec)
