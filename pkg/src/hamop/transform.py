"""Differential substitutions and the conjugation law for Hamiltonian operators.

A substitution ``x = phi[v], u = psi[v]`` (new independent variable ``y``)
carries an operator ``L1`` in ``(x, u)`` to an operator ``L2`` in ``(y, v)``
related by

    L1_bar = (D phi)^-1 K* o L2 o K,
    K = sum_i (-1)^i D^i o (dpsi/dv_i D(phi) - dphi/dv_i D(psi)),

where ``L1_bar`` is ``L1`` rewritten with ``D_x = (D phi)^-1 D_y``.  The
engine never solves for ``L2`` (that would need ``K^-1``); it checks a
supplied candidate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .coeff import coerce, unit_power
from .diffalg import (
    DiffFunction,
    JetContext,
    from_laurent,
    laurent_terms,
    order,
    partial_derivative,
    substitute_jets,
    total_derivative,
)
from .diffop import LinDiffOp, Witness, adjoint, compose, first_difference, is_skew_adjoint
from .errors import ContextError, DegenerateSubstitution, NonlocalResult
from .hamfam import FamilyIndex, gardner, make_H, _index
from .varcalc import EvolutionEquation, Functional, frechet, integrate_total_derivative

__all__ = [
    "Substitution",
    "XU",
    "ZW",
    "YV",
    "k_operator",
    "transform_operator_pushforward",
    "verify_operator_transform",
    "TransformCheck",
    "potentiation",
    "hodograph",
    "composite",
    "darboux",
    "then",
    "derive_darboux_constant",
    "transform_functional",
    "transform_equation",
    "verify_factorization",
    "UNITS",
]

XU = JetContext("x", "u")
ZW = JetContext("z", "w")
YV = JetContext("y", "v")

UNITS = (coerce(1), coerce(-1), unit_power(1), unit_power(3))


class Substitution:
    """``source.indep = phi``, ``source.dep = psi``; ``phi`` and ``psi`` are
    differential functions in the target context."""

    __slots__ = ("phi", "psi", "source_ctx", "target_ctx", "name", "D_phi", "_jets")

    def __init__(self, phi: DiffFunction, psi: DiffFunction, source_ctx: JetContext = XU,
                 name: str | None = None):
        if phi.ctx != psi.ctx:
            raise ValueError("phi and psi must live in the same target context")
        D_phi = total_derivative(phi)
        if D_phi.is_zero():
            raise DegenerateSubstitution(f"D({phi}) = 0: degenerate substitution")
        self.phi = phi
        self.psi = psi
        self.source_ctx = source_ctx
        self.target_ctx = phi.ctx
        self.name = name
        self.D_phi = D_phi
        self._jets = [psi]

    @property
    def m(self) -> int:
        return order(self.phi)

    @property
    def n_ord(self) -> int:
        return order(self.psi)

    def jet_image(self, k: int) -> DiffFunction:
        """Image of ``u_k``: ``U_0 = psi``, ``U_{k+1} = D(U_k) / D(phi)``."""
        jets = self._jets
        while len(jets) <= k:
            jets.append(total_derivative(jets[-1]) / self.D_phi)
        return jets[k]

    def __repr__(self):
        s, t = self.source_ctx, self.target_ctx
        label = f"{self.name}: " if self.name else ""
        return f"<Substitution {label}{s.indep} = {self.phi}, {s.dep} = {self.psi} (new {t.indep},{t.dep})>"


def k_operator(s: Substitution) -> LinDiffOp:
    ctx = s.target_ctx
    phi, psi = s.phi, s.psi
    D_psi = total_derivative(psi)
    top = max(s.m, s.n_ord, 0)
    out = [DiffFunction.zero(ctx) for _ in range(top + 1)]
    for i in range(top + 1):
        c = partial_derivative(psi, i) * s.D_phi - partial_derivative(phi, i) * D_psi
        if c.is_zero():
            continue
        # (-1)^i D^i o c = (-1)^i sum_k C(i,k) D^k(c) D^(i-k)
        sign = -1 if i % 2 else 1
        dk = c
        for k in range(i + 1):
            if k:
                dk = total_derivative(dk)
            out[i - k] = out[i - k] + dk.scale(sign * comb(i, k))
    return LinDiffOp(out, ctx)


def transform_operator_pushforward(L1: LinDiffOp, s: Substitution) -> LinDiffOp:
    """``L1`` with coefficients substituted and ``D_x -> (D phi)^-1 D``."""
    if L1.ctx != s.source_ctx:
        raise ContextError(f"operator in ({L1.ctx}), substitution from ({s.source_ctx})")
    ctx = s.target_ctx
    Dx = compose(LinDiffOp.mult(s.D_phi.inverse(), ctx), LinDiffOp.D(1, ctx))
    result = LinDiffOp.zero(ctx)
    power = LinDiffOp.identity(ctx)
    for i, a in enumerate(L1.coeffs):
        if i:
            power = compose(Dx, power)
        if a.is_zero():
            continue
        result = result + compose(LinDiffOp.mult(substitute_jets(a, s), ctx), power)
    return result


@dataclass(frozen=True, eq=False)
class TransformCheck:
    ok: bool
    lhs: LinDiffOp
    rhs: LinDiffOp
    witness: Witness | None

    def __bool__(self):
        return self.ok


def conjugated_target(L2: LinDiffOp, s: Substitution) -> LinDiffOp:
    """``(D phi)^-1 K* o L2 o K``."""
    K = k_operator(s)
    inner = compose(compose(adjoint(K), L2), K)
    return compose(LinDiffOp.mult(s.D_phi.inverse(), s.target_ctx), inner)


def verify_operator_transform(L1: LinDiffOp, s: Substitution, L2: LinDiffOp) -> TransformCheck:
    if L2.ctx != s.target_ctx:
        raise ContextError(f"target operator in ({L2.ctx}), substitution targets ({s.target_ctx})")
    lhs = transform_operator_pushforward(L1, s)
    rhs = conjugated_target(L2, s)
    w = first_difference(lhs, rhs)
    return TransformCheck(w is None, lhs, rhs, w)


# --------------------------------------------------------------------------
# named substitutions


def potentiation(source: JetContext = XU, target: JetContext = ZW) -> Substitution:
    """``x = z, u = w_1``."""
    return Substitution(DiffFunction.indep(target), DiffFunction.jet(1, target), source, "potentiation")


def hodograph(source: JetContext = ZW, target: JetContext = YV) -> Substitution:
    """``z = v, w = y``: exchange of dependent and independent variables."""
    return Substitution(DiffFunction.jet(0, target), DiffFunction.indep(target), source, "hodograph")


def composite(source: JetContext = XU, target: JetContext = YV) -> Substitution:
    """``x = v, u = 1/v_1``, the potentiation followed by the hodograph."""
    return Substitution(DiffFunction.jet(0, target), DiffFunction.jet(1, target) ** -1, source, "composite")


def darboux(idx: FamilyIndex | int, c=None, source: JetContext = XU, target: JetContext = ZW) -> Substitution:
    """``x = c w_n, u = c / w_{n+1}``; ``c`` defaults to ``i^(n+1)``."""
    n = _index(idx).n
    c = unit_power(n + 1) if c is None else coerce(c)
    if not c:
        raise DegenerateSubstitution("darboux constant must be nonzero")
    phi = DiffFunction.jet(n, target).scale(c)
    psi = DiffFunction.jet(n + 1, target).inverse().scale(c)
    return Substitution(phi, psi, source, f"darboux(n={n})")


def then(first: Substitution, second: Substitution) -> Substitution:
    """Substitution equivalent to applying ``first`` and then ``second``."""
    if first.target_ctx != second.source_ctx:
        raise ValueError("substitutions do not chain")
    phi = substitute_jets(first.phi, second)
    psi = substitute_jets(first.psi, second)
    name = f"{first.name} then {second.name}" if first.name and second.name else None
    return Substitution(phi, psi, first.source_ctx, name)


def derive_darboux_constant(idx: FamilyIndex | int) -> list:
    """Units ``c`` in ``{1, -1, i, -i}`` for which ``darboux(n, c)`` maps
    ``H^(N,0)`` to the Gardner operator (exhaustive symbolic check)."""
    n = _index(idx).n
    H = make_H(n, XU)
    return [c for c in UNITS if verify_operator_transform(H, darboux(n, c), gardner(ZW)).ok]


# --------------------------------------------------------------------------
# functionals and equations


def transform_functional(T: Functional, s: Substitution) -> Functional:
    """Density rule ``T[u] dx -> T[psi] D(phi) dy``."""
    return Functional(substitute_jets(T.density, s) * s.D_phi)


def evolution_operator(s: Substitution) -> LinDiffOp:
    """``M = D_psi - U_1 D_phi``; the new field obeys ``M(v_t) = K[U]``."""
    return frechet(s.psi) - frechet(s.phi).scale(s.jet_image(1))


def _log_factor(r: DiffFunction) -> DiffFunction | None:
    """A monomial ``b`` with ``D(b) = r b``, or ``None``.

    ``D(b)/b`` of ``b = x^e0 u^e1 u_1^e2 ...`` is ``e0/x + sum e_(k+1) u_(k+1)/u_k``,
    so each Laurent term of ``r`` must have exactly that shape with an integer
    coefficient.
    """
    if not r.has_monomial_denominator():
        return None
    exps: dict[int, int] = {}
    for e, c in laurent_terms(r):
        nz = {slot: k for slot, k in enumerate(e) if k}
        if nz == {0: -1}:
            slot = 0
        elif len(nz) == 2 and set(nz.values()) == {-1, 1}:
            slot = next(sl for sl, k in nz.items() if k == -1)
            if slot == 0 or nz.get(slot + 1) != 1:
                return None
        else:
            return None
        if c != int(c):
            return None
        exps[slot] = exps.get(slot, 0) + int(c)
    b = from_laurent([([exps.get(k, 0) for k in range(max(exps, default=0) + 1)], 1)], r.ctx)
    return b if b.D() == r * b else None


def transform_equation(eq: EvolutionEquation, s: Substitution) -> EvolutionEquation:
    """Rewrite ``u_t = K[u]`` in the substitution's new variables.

    Differentiating ``u(phi[v], t) = psi[v]`` in ``t`` gives
    ``M(v_t) = K[U]`` with ``M = D_psi - U_1 D_phi``.  Two shapes of ``M`` are
    solved locally:

    * order 0 (the hodograph has ``M = -U_1``): divide;
    * order 1 of the form ``a o D o b`` with ``b`` a monomial (the
      potentiation has ``M = D``; ``x = v, u = 1/v_1`` has
      ``M = -(1/v_1) o D o (1/v_1)``): ``v_t = D^-1(K[U]/a) / b``, which needs
      ``K[U]/a`` to be a divergence.

    Anything else would need a nonlocal inverse and is refused.
    """
    K_bar = substitute_jets(eq.rhs, s)
    M = evolution_operator(s)
    if M.is_zero():
        raise DegenerateSubstitution("time evolution is not determined by this substitution")
    if M.order == 0:
        return EvolutionEquation(K_bar / M.coeffs[0])
    if M.order == 1:
        c0, c1 = M.coeffs
        b = _log_factor(c0 / c1)
        if b is not None:
            a = c1 / b
            return EvolutionEquation(integrate_total_derivative(K_bar / a) / b)
    raise NonlocalResult(f"solving {M} for the new time derivative needs a nonlocal inverse")


def verify_factorization(H: LinDiffOp, B: LinDiffOp) -> TransformCheck:
    """Check ``H == B o D o B*``: the substitution ``x = y, v = sum b_i(x) v_i``
    sends ``H`` to the Gardner operator exactly when this holds."""
    if H.ctx != B.ctx:
        raise ContextError("H and B must share a context")
    if not H.is_quasiconstant():
        raise ValueError("H must have quasiconstant coefficients")
    if not is_skew_adjoint(H):
        raise ValueError("H must be skew-adjoint")
    if not B.is_quasiconstant():
        raise ValueError("B must have quasiconstant coefficients")
    rhs = compose(compose(B, gardner(H.ctx)), adjoint(B))
    w = first_difference(H, rhs)
    return TransformCheck(w is None, H, rhs, w)
