"""Sampled evidence that an operator is Hamiltonian.

For a skew-adjoint ``H`` the bracket ``{F, G} = int delta(F) H(delta(G))`` is
tested on every unordered triple drawn from a fixed set of densities: the
cyclic sum ``{{F,G},P} + {{G,P},F} + {{P,F},G}`` must be a total divergence.
Passing is evidence, not proof; a failing triple is a genuine
counterexample.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .diffalg import DiffFunction
from .diffop import LinDiffOp, is_skew_adjoint
from .varcalc import Functional, default_densities, euler, poisson_bracket

__all__ = ["JacobiCase", "JacobiReport", "jacobi_sampled_check", "compatibility_check", "jacobi_residual"]


@dataclass(frozen=True)
class JacobiCase:
    indices: tuple[int, int, int]
    densities: tuple[str, str, str]
    passed: bool
    residual: str | None  # Euler image of the cyclic sum when nonzero


@dataclass
class JacobiReport:
    operator: str
    skew_adjoint: bool
    jacobi_cases: list[JacobiCase] = field(default_factory=list)
    compatible_cases: list[JacobiCase] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.skew_adjoint
            and all(c.passed for c in self.jacobi_cases)
            and all(c.passed for c in self.compatible_cases)
        )

    def first_failure(self) -> JacobiCase | None:
        for case in (*self.jacobi_cases, *self.compatible_cases):
            if not case.passed:
                return case
        return None


def jacobi_residual(H: LinDiffOp, F: DiffFunction, G: DiffFunction, P: DiffFunction) -> DiffFunction:
    """Euler image of the cyclic sum for one triple; zero when Jacobi holds."""
    fs = [Functional(F), Functional(G), Functional(P)]
    total = DiffFunction.zero(H.ctx)
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        inner = poisson_bracket(H, fs[a], fs[b])
        total = total + poisson_bracket(H, inner, fs[c]).density
    return euler(total)


def _cases(H: LinDiffOp, densities: Sequence[DiffFunction]) -> list[JacobiCase]:
    out = []
    for idx in combinations(range(len(densities)), 3):
        F, G, P = (densities[i] for i in idx)
        r = jacobi_residual(H, F, G, P)
        ok = r.is_zero()
        out.append(JacobiCase(idx, (str(F), str(G), str(P)), ok, None if ok else str(r)))
    return out


def jacobi_sampled_check(H: LinDiffOp, densities: Sequence[DiffFunction] | None = None) -> JacobiReport:
    if densities is None:
        densities = default_densities(H.ctx)
    report = JacobiReport(str(H), is_skew_adjoint(H))
    if report.skew_adjoint:
        report.jacobi_cases = _cases(H, densities)
    return report


def compatibility_check(H1: LinDiffOp, H2: LinDiffOp,
                        densities: Sequence[DiffFunction] | None = None) -> JacobiReport:
    """Both operators and the pencil member ``H1 + H2``.

    The cyclic sum is quadratic in the operator, so once the pure terms vanish
    the ``H1 + H2`` check isolates the mixed term.
    """
    if densities is None:
        densities = default_densities(H1.ctx)
    first = jacobi_sampled_check(H1, densities)
    second = jacobi_sampled_check(H2, densities)
    report = JacobiReport(f"{H1} ; {H2}", first.skew_adjoint and second.skew_adjoint)
    report.jacobi_cases = first.jacobi_cases + second.jacobi_cases
    if report.skew_adjoint:
        report.compatible_cases = _cases(H1 + H2, densities)
    return report
