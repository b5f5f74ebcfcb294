"""Seeded random generators and hypothesis strategies shared by the suites."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from hamop.diffalg import DiffFunction, JetContext
from hamop.diffop import LinDiffOp

XU = JetContext()


def _monomial(rng: random.Random, ctx: JetContext, max_order: int, max_degree: int,
              with_x: bool) -> DiffFunction:
    m = DiffFunction.one(ctx)
    for _ in range(rng.randint(0, max_degree)):
        if with_x and rng.random() < 0.2:
            m = m * DiffFunction.indep(ctx)
        else:
            m = m * DiffFunction.jet(rng.randint(0, max_order), ctx)
    return m


def random_poly(rng: random.Random, ctx: JetContext = XU, *, max_order: int = 3,
                max_degree: int = 3, max_terms: int = 4, with_x: bool = True) -> DiffFunction:
    f = DiffFunction.zero(ctx)
    for _ in range(rng.randint(1, max_terms)):
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        f = f + _monomial(rng, ctx, max_order, max_degree, with_x).scale(c)
    return f


def random_laurent(rng: random.Random, ctx: JetContext = XU) -> DiffFunction:
    """Polynomial over a random power of u, so quotients get exercised."""
    return random_poly(rng, ctx, max_order=2, max_degree=2) * DiffFunction.jet(0, ctx) ** -rng.randint(0, 2)


def random_op(rng: random.Random, ctx: JetContext = XU, *, max_order: int = 3) -> LinDiffOp:
    coeffs = [random_poly(rng, ctx, max_order=2, max_degree=2, max_terms=2)
              for _ in range(rng.randint(1, max_order + 1))]
    return LinDiffOp(coeffs, ctx)


def seeded_cases(seed: int, count: int = 100):
    rng = random.Random(seed)
    return [random.Random(rng.getrandbits(64)) for _ in range(count)]


# -- hypothesis strategies ---------------------------------------------------------

_coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)
_var = st.integers(min_value=-1, max_value=3)  # -1 stands for x


def _build(terms) -> DiffFunction:
    f = DiffFunction.zero(XU)
    for c, vars_ in terms:
        m = DiffFunction.one(XU)
        for v in vars_:
            m = m * (DiffFunction.indep(XU) if v < 0 else DiffFunction.jet(v, XU))
        f = f + m.scale(c)
    return f


polys = st.lists(st.tuples(_coef, st.lists(_var, max_size=3)), min_size=1, max_size=4).map(_build)
nonzero_polys = polys.filter(lambda f: not f.is_zero())
laurents = st.tuples(polys, st.integers(min_value=0, max_value=2)).map(
    lambda t: t[0] * DiffFunction.jet(0, XU) ** -t[1])
ops = st.lists(polys, min_size=1, max_size=4).map(lambda cs: LinDiffOp(cs, XU))
