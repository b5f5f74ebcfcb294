"""Recursive-descent parser for differential functions and operators.

Expressions::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' ['-'] nat)?
    atom   := nat | 'i' | name | name '_' nat | 'D' ('^' nat)? '(' expr ')' | '(' expr ')'

Operators (``o`` is composition, a bare expression is a multiplication
operator)::

    opexpr := ['+'|'-'] opprod (('+'|'-') opprod)*
    opprod := opfactor ('o' opfactor)*
    opfactor := 'D' ('^' nat)? | '(' opexpr ')' | term

Variable names come from a :class:`JetContext`: the independent variable,
the dependent variable ``u`` and its jets ``u_k`` (``u_x``, ``u_xx`` are
accepted as aliases).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .coeff import I
from .diffalg import DEFAULT_CONTEXT, DiffFunction, JetContext
from .diffop import LinDiffOp
from .errors import ParseError

__all__ = ["parse_expression", "parse_operator", "parse_context", "tokenize"]

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "name", "sym", "end"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if not m:
            break
        if m.group(1) is not None:
            tokens.append(Token("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            name, start = m.group(2), m.start(2)
            if len(name) > 1 and set(name) <= {"o", "D"}:
                # "oD", "Do" etc.: composition glued to D without spaces
                tokens.extend(Token("name", ch, start + k) for k, ch in enumerate(name))
            else:
                tokens.append(Token("name", name, start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()_":
                raise ParseError(f"unexpected character {ch!r}", m.start(3), text)
            tokens.append(Token("sym", ch, m.start(3)))
        else:
            break
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


def parse_context(text: str) -> JetContext:
    """``"x,u"`` -> ``JetContext("x", "u")``."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError(f"expected 'indep,dep', got {text!r}")
    try:
        return JetContext(*parts)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


class _Parser:
    def __init__(self, text: str, ctx: JetContext):
        self.text = text
        self.ctx = ctx
        self.tokens = tokenize(text)
        self.i = 0

    # -- token helpers -------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def at(self, text: str) -> bool:
        return self.tok.kind in ("sym", "name") and self.tok.text == text

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected {text!r}")
        return self.advance()

    def error(self, message: str):
        found = self.tok.text or "end of input"
        raise ParseError(f"{message}, found {found!r}", self.tok.pos, self.text)

    def nat(self) -> int:
        if self.tok.kind != "num":
            self.error("expected a natural number")
        return int(self.advance().text)

    def finish(self):
        if self.tok.kind != "end":
            self.error("unexpected trailing input")

    # -- expressions -----------------------------------------------------------

    def expr(self) -> DiffFunction:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> DiffFunction:
        value = self.factor()
        while self.at("*") or self.at("/"):
            op_tok = self.advance()
            rhs = self.factor()
            if op_tok.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", op_tok.pos, self.text)
                value = value / rhs
        return value

    def factor(self) -> DiffFunction:
        base = self.atom()
        if self.at("^"):
            caret = self.advance()
            neg = False
            if self.at("-"):
                self.advance()
                neg = True
            k = self.nat()
            if neg:
                if base.is_zero():
                    raise ParseError("zero to a negative power", caret.pos, self.text)
                k = -k
            base = base**k
        return base

    def _is_derivative_call(self) -> bool:
        """``D(`` or ``D^k(`` at the cursor."""
        if not self.at("D"):
            return False
        if self.peek().text == "(":
            return True
        return self.peek().text == "^" and self.peek(2).kind == "num" and self.peek(3).text == "("

    def atom(self) -> DiffFunction:
        t = self.tok
        if t.kind == "num":
            return DiffFunction.constant(int(self.advance().text), self.ctx)
        if self.at("("):
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        if self.at("D"):
            if not self._is_derivative_call():
                self.error("operator D needs a parenthesized argument here")
            self.advance()
            times = 1
            if self.at("^"):
                self.advance()
                times = self.nat()
            self.expect("(")
            value = self.expr()
            self.expect(")")
            return value.D(times)
        if t.kind == "name":
            return self.variable()
        self.error("expected an expression")

    def variable(self) -> DiffFunction:
        t = self.advance()
        name = t.text
        ctx = self.ctx
        if name == "i":
            return DiffFunction.constant(I, ctx)
        if name == "o":
            raise ParseError("composition 'o' is only valid in operators", t.pos, self.text)
        if name == ctx.indep:
            return DiffFunction.indep(ctx)
        if name == ctx.dep:
            if self.at("_"):
                self.advance()
                if self.tok.kind == "num":
                    return DiffFunction.jet(self.nat(), ctx)
                if self.tok.kind == "name" and set(self.tok.text) == {ctx.indep} and len(ctx.indep) == 1:
                    return DiffFunction.jet(len(self.advance().text), ctx)
                self.error("expected a jet order after '_'")
            return DiffFunction.jet(0, ctx)
        raise ParseError(
            f"unknown variable {name!r} (context is {ctx.indep},{ctx.dep})", t.pos, self.text
        )

    # -- operators -------------------------------------------------------------

    def opexpr(self) -> LinDiffOp:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.advance().text == "-" else 1
        value = self.opprod()
        if sign < 0:
            value = -value
        while self.at("+") or self.at("-"):
            op = self.advance().text
            rhs = self.opprod()
            value = value + rhs if op == "+" else value - rhs
        return value

    def opprod(self) -> LinDiffOp:
        value = self.opfactor()
        while self.at("o"):
            self.advance()
            value = value @ self.opfactor()
        return value

    def opfactor(self) -> LinDiffOp:
        if self.at("D") and not self._is_derivative_call():
            self.advance()
            k = 1
            if self.at("^"):
                caret = self.advance()
                if self.at("-"):
                    raise ParseError("negative powers of D are nonlocal and not supported",
                                     caret.pos, self.text)
                k = self.nat()
            return LinDiffOp.D(k, self.ctx)
        if self.at("("):
            # a parenthesized expression is a multiplication operator; fall back
            # to a parenthesized operator sum
            start = self.i
            try:
                value = self.term()
                if not (self.at("o") or self.at("+") or self.at("-") or self.at(")")
                        or self.tok.kind == "end"):
                    self.error("unexpected input after multiplication operator")
                return LinDiffOp.mult(value, self.ctx)
            except ParseError:
                self.i = start
            self.advance()
            value = self.opexpr()
            self.expect(")")
            return value
        return LinDiffOp.mult(self.term(), self.ctx)


def parse_expression(text: str, ctx: JetContext = DEFAULT_CONTEXT) -> DiffFunction:
    p = _Parser(text, ctx)
    value = p.expr()
    p.finish()
    return value


def parse_operator(text: str, ctx: JetContext = DEFAULT_CONTEXT) -> LinDiffOp:
    p = _Parser(text, ctx)
    value = p.opexpr()
    p.finish()
    return value
