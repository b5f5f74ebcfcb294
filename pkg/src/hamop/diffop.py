"""Linear differential operators ``sum a_i D^i`` with differential-function
coefficients, always held in expanded normal form."""

from __future__ import annotations

from math import comb
from typing import Sequence

from .diffalg import DEFAULT_CONTEXT, DiffFunction, JetContext, equals, is_quasiconstant, total_derivative
from .errors import ContextError, NonlocalResult

__all__ = ["LinDiffOp", "compose", "adjoint", "apply", "commutator", "is_skew_adjoint", "Witness"]


def _derivatives(f: DiffFunction, upto: int) -> list[DiffFunction]:
    out = [f]
    for _ in range(upto):
        out.append(total_derivative(out[-1]))
    return out


class LinDiffOp:
    """``coeffs[i]`` multiplies ``D**i``.  Trailing zero coefficients are dropped,
    so the zero operator has an empty coefficient tuple."""

    __slots__ = ("coeffs", "ctx")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, coeffs: Sequence[DiffFunction | int], ctx: JetContext = DEFAULT_CONTEXT):
        cs = []
        for c in coeffs:
            if not isinstance(c, DiffFunction):
                c = DiffFunction.constant(c, ctx)
            elif c.ctx != ctx:
                raise ContextError(f"coefficient in ({c.ctx}), operator in ({ctx})")
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.ctx = ctx

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, ctx: JetContext = DEFAULT_CONTEXT) -> "LinDiffOp":
        return cls((), ctx)

    @classmethod
    def identity(cls, ctx: JetContext = DEFAULT_CONTEXT) -> "LinDiffOp":
        return cls((1,), ctx)

    @classmethod
    def D(cls, k: int = 1, ctx: JetContext = DEFAULT_CONTEXT) -> "LinDiffOp":
        if k < 0:
            raise NonlocalResult("negative powers of D are not representable")
        return cls([0] * k + [1], ctx)

    @classmethod
    def mult(cls, f: DiffFunction | int, ctx: JetContext | None = None) -> "LinDiffOp":
        if isinstance(f, DiffFunction):
            return cls((f,), f.ctx if ctx is None else ctx)
        return cls((f,), DEFAULT_CONTEXT if ctx is None else ctx)

    # -- structure ---------------------------------------------------------

    @property
    def order(self) -> int:
        """Order of the operator; ``-1`` for the zero operator."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> DiffFunction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return DiffFunction.zero(self.ctx)

    def is_zero(self) -> bool:
        return not self.coeffs

    def has_constant_coefficients(self) -> bool:
        return all(c.is_constant() for c in self.coeffs)

    def is_quasiconstant(self) -> bool:
        return all(is_quasiconstant(c) for c in self.coeffs)

    # -- algebra -------------------------------------------------------------

    def _check(self, other: "LinDiffOp") -> None:
        if other.ctx != self.ctx:
            raise ContextError(f"context mismatch: ({self.ctx}) vs ({other.ctx})")

    def _lift(self, other) -> "LinDiffOp":
        if isinstance(other, LinDiffOp):
            self._check(other)
            return other
        if isinstance(other, DiffFunction):
            return LinDiffOp.mult(other, self.ctx)
        return LinDiffOp((other,), self.ctx)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return LinDiffOp([self.coeff(i) + other.coeff(i) for i in range(n)], self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return LinDiffOp([-c for c in self.coeffs], self.ctx)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def scale(self, c) -> "LinDiffOp":
        if isinstance(c, DiffFunction):
            return LinDiffOp.mult(c, self.ctx) @ self
        return LinDiffOp([a.scale(c) for a in self.coeffs], self.ctx)

    def __mul__(self, c):
        # scalars only; composition is ``@``
        if isinstance(c, LinDiffOp):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return compose(self, self._lift(other))

    def __rmatmul__(self, other):
        return compose(self._lift(other), self)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise NonlocalResult("operator inverses are nonlocal")
        result = LinDiffOp.identity(self.ctx)
        for _ in range(k):
            result = compose(result, self)
        return result

    def __call__(self, f: DiffFunction) -> DiffFunction:
        return apply(self, f)

    def __eq__(self, other):
        if not isinstance(other, LinDiffOp):
            if isinstance(other, (DiffFunction, int)):
                other = self._lift(other)
            else:
                return NotImplemented
        return first_difference(self, other) is None

    def __str__(self):
        from .printing import format_operator

        return format_operator(self)

    def __repr__(self):
        return f"LinDiffOp({str(self)!r}, ctx=({self.ctx}))"


def compose(a: LinDiffOp, b: LinDiffOp) -> LinDiffOp:
    """Expanded ``a o b`` via ``D^i o f = sum_k C(i,k) D^k(f) D^(i-k)``."""
    a._check(b)
    ctx = a.ctx
    if a.is_zero() or b.is_zero():
        return LinDiffOp.zero(ctx)
    n = a.order
    out = [DiffFunction.zero(ctx) for _ in range(a.order + b.order + 1)]
    for j, bj in enumerate(b.coeffs):
        if bj.is_zero():
            continue
        ders = _derivatives(bj, n)
        for i, ai in enumerate(a.coeffs):
            if ai.is_zero():
                continue
            for k in range(i + 1):
                dk = ders[k]
                if dk.is_zero():
                    continue
                out[i - k + j] = out[i - k + j] + ai * dk.scale(comb(i, k))
    return LinDiffOp(out, ctx)


def adjoint(a: LinDiffOp) -> LinDiffOp:
    """Formal adjoint ``sum (-1)^i D^i o a_i``."""
    ctx = a.ctx
    out = [DiffFunction.zero(ctx) for _ in range(len(a.coeffs))]
    for i, ai in enumerate(a.coeffs):
        ders = _derivatives(ai, i)
        sign = -1 if i % 2 else 1
        for k in range(i + 1):
            if not ders[k].is_zero():
                out[i - k] = out[i - k] + ders[k].scale(sign * comb(i, k))
    return LinDiffOp(out, ctx)


def apply(a: LinDiffOp, f: DiffFunction) -> DiffFunction:
    if f.ctx != a.ctx:
        raise ContextError(f"operator in ({a.ctx}), function in ({f.ctx})")
    result = DiffFunction.zero(a.ctx)
    g = f
    for i, ai in enumerate(a.coeffs):
        if i:
            g = total_derivative(g)
        if not ai.is_zero():
            result = result + ai * g
    return result


def commutator(a: LinDiffOp, b: LinDiffOp) -> LinDiffOp:
    return compose(a, b) - compose(b, a)


class Witness(tuple):
    """``(index, difference)`` for the first coefficient where two operators differ."""

    __slots__ = ()

    def __new__(cls, index: int, difference: DiffFunction):
        return super().__new__(cls, (index, difference))

    @property
    def index(self) -> int:
        return self[0]

    @property
    def difference(self) -> DiffFunction:
        return self[1]

    def __str__(self):
        return f"coefficient of D^{self.index} differs by {self.difference}"


def first_difference(a: LinDiffOp, b: LinDiffOp) -> Witness | None:
    a._check(b)
    n = max(len(a.coeffs), len(b.coeffs))
    for i in range(n):
        ai, bi = a.coeff(i), b.coeff(i)
        if not equals(ai, bi):
            return Witness(i, ai - bi)
    return None


def equals_op(a: LinDiffOp, b: LinDiffOp) -> bool:
    return first_difference(a, b) is None


def is_skew_adjoint(a: LinDiffOp) -> bool:
    return equals_op(adjoint(a), -a)
