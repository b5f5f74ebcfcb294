"""Constructors for the operator families H^(N,0), their potential forms and
their constant-coefficient images, plus Gardner and quasiconstant operators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Literal

from .coeff import coerce
from .diffalg import DEFAULT_CONTEXT, DiffFunction, JetContext, is_quasiconstant
from .diffop import LinDiffOp, compose
from .errors import IndexBoundError

__all__ = [
    "FamilyIndex",
    "LinearCombSpec",
    "n_max",
    "make_H",
    "make_H_check",
    "make_H_tilde",
    "gardner",
    "linear_combination",
    "make_quasiconstant",
]

DEFAULT_N_MAX = 6


def n_max() -> int:
    """Family index bound; the ``HAMOP_NMAX`` environment variable overrides it."""
    raw = os.environ.get("HAMOP_NMAX")
    if raw is None:
        return DEFAULT_N_MAX
    try:
        value = int(raw)
    except ValueError:
        raise IndexBoundError(f"HAMOP_NMAX must be an integer, got {raw!r}") from None
    if value < 0:
        raise IndexBoundError("HAMOP_NMAX must be nonnegative")
    return value


@dataclass(frozen=True)
class FamilyIndex:
    """``n >= 0`` and the operator order ``N = 2n + 3``."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 0:
            raise IndexBoundError(f"family index must be a nonnegative integer, got {self.n!r}")

    @property
    def N(self) -> int:
        return 2 * self.n + 3

    @classmethod
    def from_N(cls, N: int) -> "FamilyIndex":
        if N < 3 or N % 2 == 0:
            raise IndexBoundError(f"N must be odd and >= 3, got {N}")
        return cls((N - 3) // 2)

    def check_bound(self) -> None:
        bound = n_max()
        if self.n > bound:
            raise IndexBoundError(f"n = {self.n} exceeds n_max = {bound}")


def _index(idx: FamilyIndex | int) -> FamilyIndex:
    idx = idx if isinstance(idx, FamilyIndex) else FamilyIndex(idx)
    idx.check_bound()
    return idx


@dataclass(frozen=True)
class LinearCombSpec:
    terms: tuple[tuple[object, FamilyIndex], ...]

    def __init__(self, terms: Iterable[tuple[object, FamilyIndex | int]]):
        norm = tuple(
            (coerce(c), i if isinstance(i, FamilyIndex) else FamilyIndex(i)) for c, i in terms
        )
        if not norm:
            raise ValueError("a linear combination needs at least one term")
        object.__setattr__(self, "terms", norm)

    def is_nontrivial(self) -> bool:
        return any(c != 0 for c, _ in self.terms)


@lru_cache(maxsize=None)
def _H(n: int, ctx: JetContext) -> LinDiffOp:
    D = LinDiffOp.D(1, ctx)
    inv_u_D = compose(LinDiffOp.mult(DiffFunction.jet(0, ctx) ** -1), D)
    op = D
    for _ in range(2 * n):
        op = compose(inv_u_D, op)
    return compose(LinDiffOp.D(2, ctx), op)


@lru_cache(maxsize=None)
def _H_check(n: int, ctx: JetContext) -> LinDiffOp:
    D = LinDiffOp.D(1, ctx)
    inv_w1_D = compose(LinDiffOp.mult(DiffFunction.jet(1, ctx) ** -1), D)
    op = -D
    for _ in range(2 * n):
        op = compose(op, inv_w1_D)
    return op


def make_H(idx: FamilyIndex | int, ctx: JetContext = DEFAULT_CONTEXT) -> LinDiffOp:
    """``D^2 o ((1/u) o D)^(2n) o D``, expanded; order ``2n + 3``."""
    return _H(_index(idx).n, ctx)


def make_H_check(idx: FamilyIndex | int, ctx: JetContext = JetContext("z", "w")) -> LinDiffOp:
    """Potential form ``-D o ((1/w_1) D)^(2n)``; order ``2n + 1``."""
    return _H_check(_index(idx).n, ctx)


def make_H_tilde(idx: FamilyIndex | int, ctx: JetContext = JetContext("y", "v")) -> LinDiffOp:
    """Constant-coefficient image ``-D^(2n+1)``."""
    return -LinDiffOp.D(2 * _index(idx).n + 1, ctx)


def gardner(ctx: JetContext = DEFAULT_CONTEXT) -> LinDiffOp:
    return LinDiffOp.D(1, ctx)


_FAMILIES = {"H": make_H, "H_check": make_H_check, "H_tilde": make_H_tilde}


def linear_combination(spec: LinearCombSpec, family: Literal["H", "H_check", "H_tilde"] = "H",
                       ctx: JetContext | None = None) -> LinDiffOp:
    build = _FAMILIES[family]
    result = None
    for c, idx in spec.terms:
        op = build(idx) if ctx is None else build(idx, ctx)
        term = op.scale(c)
        result = term if result is None else result + term
    return result


def make_quasiconstant(coeffs: Iterable[DiffFunction | int], ctx: JetContext = DEFAULT_CONTEXT) -> LinDiffOp:
    """``sum a_i(x) D^i``; every ``a_i`` must be free of jet variables."""
    op = LinDiffOp(list(coeffs), ctx)
    for i, a in enumerate(op.coeffs):
        if not is_quasiconstant(a):
            raise ValueError(f"coefficient of D^{i} is not quasiconstant: {a}")
    return op
