"""Variational calculus on differential functions.

Functionals are densities modulo total divergences; two functionals are equal
when the Euler operator annihilates the difference of their densities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diffalg import (
    NO_ORDER,
    DiffFunction,
    JetContext,
    from_laurent,
    laurent_terms,
    order,
    partial_derivative,
    total_derivative,
)
from .diffop import LinDiffOp, apply, commutator
from .errors import ContextError, NotADivergence, UnsupportedIntegration

__all__ = [
    "Functional",
    "EvolutionEquation",
    "euler",
    "frechet",
    "prolong",
    "prolong_op",
    "is_total_derivative",
    "integrate_total_derivative",
    "poisson_bracket",
    "verify_hamiltonian_form",
    "verify_recursion_operator",
    "DEFAULT_DENSITIES",
    "default_densities",
]


@dataclass(frozen=True, eq=False)
class Functional:
    """``int density d(indep)``."""

    density: DiffFunction

    @property
    def ctx(self) -> JetContext:
        return self.density.ctx

    def __eq__(self, other):
        if not isinstance(other, Functional):
            return NotImplemented
        return functional_equal(self, other)

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "Functional") -> "Functional":
        return Functional(self.density + other.density)

    def __neg__(self):
        return Functional(-self.density)

    def __sub__(self, other: "Functional") -> "Functional":
        return Functional(self.density - other.density)

    def scale(self, c) -> "Functional":
        return Functional(self.density.scale(c))

    def __str__(self):
        return f"int {self.density} d{self.ctx.indep}"


@dataclass(frozen=True, eq=False)
class EvolutionEquation:
    """``dep_t = rhs``; time never appears as a symbol."""

    rhs: DiffFunction

    @property
    def ctx(self) -> JetContext:
        return self.rhs.ctx

    def __eq__(self, other):
        if not isinstance(other, EvolutionEquation):
            return NotImplemented
        return self.ctx == other.ctx and self.rhs == other.rhs

    __hash__ = None  # type: ignore[assignment]

    def __str__(self):
        return f"{self.ctx.dep}_t = {self.rhs}"


def _density(T) -> DiffFunction:
    return T.density if isinstance(T, Functional) else T


def euler(T: Functional | DiffFunction) -> DiffFunction:
    """Variational derivative ``sum_i (-D)^i (dT/du_i)``."""
    f = _density(T)
    k = order(f)
    result = DiffFunction.zero(f.ctx)
    # Horner in -D from the top order down
    for i in range(k, -1, -1):
        result = partial_derivative(f, i) - total_derivative(result)
    return result


def frechet(K: DiffFunction) -> LinDiffOp:
    """Linearization ``sum_i (dK/du_i) D^i``."""
    k = order(K)
    return LinDiffOp([partial_derivative(K, i) for i in range(k + 1)], K.ctx)


def prolong(K: DiffFunction, f: DiffFunction) -> DiffFunction:
    """``pr v_K (f) = sum_i D^i(K) df/du_i``."""
    if K.ctx != f.ctx:
        raise ContextError(f"characteristic in ({K.ctx}), function in ({f.ctx})")
    k = order(f)
    result = DiffFunction.zero(f.ctx)
    DK = K
    for i in range(k + 1):
        if i:
            DK = total_derivative(DK)
        d = partial_derivative(f, i)
        if not d.is_zero():
            result = result + DK * d
    return result


def prolong_op(K: DiffFunction, A: LinDiffOp) -> LinDiffOp:
    if K.ctx != A.ctx:
        raise ContextError(f"characteristic in ({K.ctx}), operator in ({A.ctx})")
    return LinDiffOp([prolong(K, a) for a in A.coeffs], A.ctx)


def is_total_derivative(P: DiffFunction) -> bool:
    return euler(P).is_zero()


# --------------------------------------------------------------------------
# divergence integration


def _integrate_laurent(f: DiffFunction, slot: int) -> DiffFunction:
    """Antiderivative in one slot, termwise by the power rule."""
    if not f.has_monomial_denominator():
        raise UnsupportedIntegration("non-polynomial density not supported by integrator")
    out = []
    for exps, c in laurent_terms(f):
        if len(exps) <= slot:
            exps = exps + [0] * (slot + 1 - len(exps))
        e = exps[slot]
        if e == -1:
            name = f.ctx.slot_name(slot)
            raise UnsupportedIntegration(f"antiderivative would need log({name})")
        exps = list(exps)
        exps[slot] = e + 1
        out.append((exps, c / (e + 1)))
    return from_laurent(out, f.ctx)


def _slope_in_top(P: DiffFunction, k: int) -> DiffFunction:
    """``A`` in ``P = A*u_k + B``; raise if ``P`` is not affine in ``u_k``."""
    A = partial_derivative(P, k)
    if not partial_derivative(A, k).is_zero():
        raise NotADivergence("not a divergence: nonlinear in the highest jet")
    return A


def integrate_total_derivative(P: DiffFunction) -> DiffFunction:
    """Find ``F`` with ``D(F) = P``.

    Strips the highest derivative repeatedly: a divergence of order ``k >= 1``
    is affine in ``u_k`` and its ``u_k``-coefficient integrates in
    ``u_{k-1}``.  Works for densities whose denominator is a single monomial
    (polynomial in jets with Laurent dependence allowed); the result is
    re-checked with ``D`` before being returned.
    """
    if not is_total_derivative(P):
        raise NotADivergence("not a divergence: Euler operator does not vanish")
    if not P.has_monomial_denominator():
        raise UnsupportedIntegration("non-polynomial density not supported by integrator")
    ctx = P.ctx
    F = DiffFunction.zero(ctx)
    rest = P
    while not rest.is_zero():
        k = order(rest)
        if k == NO_ORDER:
            F = F + _integrate_laurent(rest, 0)
            break
        if k == 0:
            # a divergence of order 0 cannot depend on u
            raise NotADivergence("not a divergence: residual of order 0 depends on the jet")
        A = _slope_in_top(rest, k)
        G = _integrate_laurent(A, k)  # slot k == jet u_{k-1}
        F = F + G
        new_rest = rest - total_derivative(G)
        if order(new_rest) >= k:
            raise UnsupportedIntegration("highest-derivative stripping did not reduce the order")
        rest = new_rest
    if not (total_derivative(F) - P).is_zero():
        raise UnsupportedIntegration("integration re-check failed")
    return F


# --------------------------------------------------------------------------
# brackets and Hamiltonian structure


def poisson_bracket(H: LinDiffOp, F: Functional, G: Functional) -> Functional:
    """``{F, G}_H`` with density ``delta(F) * H(delta(G))``."""
    if not (H.ctx == F.ctx == G.ctx):
        raise ContextError("bracket arguments live in different contexts")
    return Functional(euler(F) * apply(H, euler(G)))


def functional_equal(F: Functional, G: Functional) -> bool:
    if F.ctx != G.ctx:
        raise ContextError(f"context mismatch: ({F.ctx}) vs ({G.ctx})")
    return euler(F.density - G.density).is_zero()


def verify_hamiltonian_form(eq: EvolutionEquation, H: LinDiffOp, T: Functional) -> bool:
    """``rhs == H(delta T)`` exactly."""
    if not (eq.ctx == H.ctx == T.ctx):
        raise ContextError("equation, operator and functional must share a context")
    return (eq.rhs - apply(H, euler(T))).is_zero()


def recursion_residual(eq: EvolutionEquation, R: LinDiffOp) -> LinDiffOp:
    """``pr v_K(R) - [D_K, R]``."""
    return prolong_op(eq.rhs, R) - commutator(frechet(eq.rhs), R)


def verify_recursion_operator(eq: EvolutionEquation, R: LinDiffOp) -> bool:
    return recursion_residual(eq, R).is_zero()


DEFAULT_DENSITIES = ("u^3", "u*u_1^2", "x*u^2", "u_2^2", "x^2*u", "u^4 + u_1*u_2")


def default_densities(ctx: JetContext = JetContext()) -> list[DiffFunction]:
    """The fixed test-functional densities, built in ``ctx``."""
    x = DiffFunction.indep(ctx)
    u, u1, u2 = (DiffFunction.jet(k, ctx) for k in range(3))
    return [u**3, u * u1**2, x * u**2, u2**2, x**2 * u, u**4 + u1 * u2]

